#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wernerqd/errors.hpp"
#include "wernerqd/scaled_value.hpp"

namespace wernerqd {

/// Symbolic eigenvalue count 2^pow2 + offset (pow2 absent means just offset).
struct Multiplicity {
  std::optional<int> pow2;
  std::int64_t offset = 0;

  static Multiplicity exactly(std::int64_t k) { return {std::nullopt, k}; }
  static Multiplicity power_of_two_plus(int k, std::int64_t off) { return {k, off}; }

  /// Exact count; only meaningful while it fits in 63 bits.
  std::int64_t count() const {
    if (pow2 && *pow2 > 62) throw CapacityError("multiplicity 2^" + std::to_string(*pow2) + " overflows");
    return (pow2 ? (std::int64_t{1} << *pow2) : 0) + offset;
  }

  double count_as_double() const { return (pow2 ? std::ldexp(1.0, *pow2) : 0.0) + double(offset); }

  bool is_zero() const { return !pow2 && offset == 0; }

  friend bool operator==(const Multiplicity&, const Multiplicity&) = default;
};

struct SpectralEntry {
  ScaledValue value;
  Multiplicity multiplicity;

  /// multiplicity * value, evaluated without forming 2^n.
  double weight() const {
    double w = double(multiplicity.offset) * std::ldexp(value.mantissa, value.exponent);
    if (multiplicity.pow2) w += std::ldexp(value.mantissa, value.exponent + *multiplicity.pow2);
    return w;
  }
};

/// Exact eigenvalue families of a 2^n-dimensional operator.
struct StructuredSpectrum {
  std::vector<SpectralEntry> entries;
  int total_dim_log2 = 0;

  double total_weight() const {
    double s = 0.0;
    for (const auto& e : entries) s += e.weight();
    return s;
  }

  /// Smallest value among entries with nonzero multiplicity.
  ScaledValue min_value() const {
    std::optional<ScaledValue> best;
    for (const auto& e : entries) {
      if (e.multiplicity.is_zero()) continue;
      if (!best || e.value < *best) best = e.value;
    }
    if (!best) throw ValidationError("structured spectrum has no populated entries");
    return *best;
  }

  /// Checks that the multiplicities add up to 2^n.
  bool multiplicities_consistent() const {
    std::map<int, std::int64_t> pows;
    std::int64_t offsets = 0;
    for (const auto& e : entries) {
      if (e.multiplicity.pow2) ++pows[*e.multiplicity.pow2];
      offsets += e.multiplicity.offset;
    }
    // Carry 2^k + 2^k -> 2^(k+1); map insertion keeps iterators valid.
    for (auto it = pows.begin(); it != pows.end(); ++it)
      if (it->second >= 2) {
        pows[it->first + 1] += it->second / 2;
        it->second %= 2;
      }
    std::map<int, std::int64_t> reduced = pows;
    std::erase_if(reduced, [](const auto& kv) { return kv.second == 0; });
    const int n = total_dim_log2;
    if (reduced.size() == 1 && reduced.begin()->first == n && reduced.begin()->second == 1)
      return offsets == 0;
    if (n <= 120) {
      unsigned __int128 total = 0;
      for (const auto& [k, c] : reduced) {
        if (k > 120) return false;
        total += static_cast<unsigned __int128>(c) << k;
      }
      const __int128 signed_total = static_cast<__int128>(total) + offsets;
      return signed_total == (static_cast<__int128>(1) << n);
    }
    return false;
  }

  /// All 2^n eigenvalues as doubles, descending. Small n only.
  std::vector<double> expand() const {
    if (total_dim_log2 > 24) throw CapacityError("expand: structured spectrum too large to materialize");
    std::vector<double> out;
    for (const auto& e : entries) out.insert(out.end(), std::size_t(e.multiplicity.count()), e.value.to_double());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
  }
};

}  // namespace wernerqd
