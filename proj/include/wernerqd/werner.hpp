#pragma once

// Generalized n-qubit Werner state p|GHZ><GHZ| + (1-p) I / 2^n.
// Subsystem B is the last (least-significant) qubit; A is the leading n-1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "wernerqd/errors.hpp"
#include "wernerqd/linalg.hpp"
#include "wernerqd/structured_spectrum.hpp"

namespace wernerqd {

inline constexpr int kDenseMaxQubits = 12;
inline constexpr double kProbabilityClampTol = 1e-12;

/// Clamps p into [0,1] if it lies within 1e-12 outside, otherwise throws.
inline double validated_probability(double p) {
  if (!(p >= -kProbabilityClampTol && p <= 1.0 + kProbabilityClampTol))
    throw ParameterError("probability " + std::to_string(p) + " outside [0, 1]");
  return std::clamp(p, 0.0, 1.0);
}

class WernerParams {
 public:
  WernerParams(int n, double p) : n_(n), p_(validated_probability(p)) {
    if (n < 2) throw ParameterError("qubit count must be at least 2, got " + std::to_string(n));
  }

  int n() const noexcept { return n_; }
  double p() const noexcept { return p_; }

  friend bool operator==(const WernerParams&, const WernerParams&) = default;

 private:
  int n_;
  double p_;
};

inline void require_dense(int n) {
  if (n > kDenseMaxQubits)
    throw CapacityError("n = " + std::to_string(n) + " exceeds dense cap of " +
                        std::to_string(kDenseMaxQubits) + " qubits");
}

inline std::size_t dense_dim(int n) {
  require_dense(n);
  return std::size_t{1} << n;
}

inline ComplexMatrix build_ghz(int n) {
  if (n < 2) throw ParameterError("GHZ state needs at least 2 qubits");
  const std::size_t dim = dense_dim(n);
  ComplexMatrix m(dim);
  m(0, 0) = m(0, dim - 1) = m(dim - 1, 0) = m(dim - 1, dim - 1) = 0.5;
  return m;
}

inline ComplexMatrix build_werner_dense(const WernerParams& params) {
  const std::size_t dim = dense_dim(params.n());
  const double p = params.p();
  const double background = std::ldexp(1.0 - p, -params.n());
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = background;
  m(0, 0) += 0.5 * p;
  m(dim - 1, dim - 1) += 0.5 * p;
  m(0, dim - 1) = m(dim - 1, 0) = 0.5 * p;
  return m;
}

/// Single-qubit marginal on B; I/2 for every member of the family.
inline ComplexMatrix reduced_state_B(const WernerParams&) {
  return ComplexMatrix::identity(2) * Complex{0.5};
}

namespace detail {

// p|GHZ_m><GHZ_m| + (1-p) I / 2^m on m qubits: (1-p) 2^-m with multiplicity
// 2^m - 1 and p + (1-p) 2^-m once; a single uniform family at p = 0.
inline StructuredSpectrum ghz_mixture_spectrum(int m, double p) {
  const ScaledValue low = ScaledValue::pow2_scaled(1.0 - p, -m);
  if (p == 0.0) return {{{low, Multiplicity::power_of_two_plus(m, 0)}}, m};
  const ScaledValue high = ScaledValue::of(p) + low;
  return {{{high, Multiplicity::exactly(1)}, {low, Multiplicity::power_of_two_plus(m, -1)}}, m};
}

}  // namespace detail

inline StructuredSpectrum werner_spectrum(const WernerParams& params) {
  return detail::ghz_mixture_spectrum(params.n(), params.p());
}

/// Spectrum of the A-state left after a rank-1 measurement on B. It is the
/// same family on n-1 qubits, whatever the measurement angles.
inline StructuredSpectrum post_measurement_spectrum(const WernerParams& params) {
  return detail::ghz_mixture_spectrum(params.n() - 1, params.p());
}

/// Partial-transpose spectrum: (1-p)/2^n - p/2 once, (1-p)/2^n + p/2 three
/// times, (1-p)/2^n for the remaining 2^n - 4.
inline StructuredSpectrum pt_spectrum(const WernerParams& params) {
  const int n = params.n();
  const double p = params.p();
  const ScaledValue background = ScaledValue::pow2_scaled(1.0 - p, -n);
  // 2^-n (1 - p (1 + 2^(n-1))) keeps the threshold crossing exact where 2^(n-1) is representable.
  const ScaledValue lowest = n < 1000
                                 ? ScaledValue::pow2_scaled(1.0 - p * (1.0 + std::ldexp(1.0, n - 1)), -n)
                                 : background - ScaledValue::pow2_scaled(p, -1);
  const ScaledValue raised = background + ScaledValue::pow2_scaled(p, -1);
  return {{{raised, Multiplicity::exactly(3)},
           {background, Multiplicity::power_of_two_plus(n, -4)},
           {lowest, Multiplicity::exactly(1)}},
          n};
}

}  // namespace wernerqd
