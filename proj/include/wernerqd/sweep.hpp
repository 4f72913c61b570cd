#pragma once

// Batch front end: parameter sweeps, CSV emission, the verification suite and
// the structured-vs-dense benchmark. The CLI binary is a thin shell over this.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wernerqd/discord.hpp"
#include "wernerqd/errors.hpp"
#include "wernerqd/negativity.hpp"
#include "wernerqd/werner.hpp"

namespace wernerqd {

inline constexpr double kDiscordGapBound = 1e-6;

/// Raised when a computed result disagrees with its independent route.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { analytic, numeric, both };

inline std::optional<Mode> parse_mode(std::string_view s) {
  if (s == "analytic") return Mode::analytic;
  if (s == "numeric") return Mode::numeric;
  if (s == "both") return Mode::both;
  return std::nullopt;
}

struct SweepConfig {
  std::vector<int> n_list;
  double p_min = 0.0;
  double p_max = 1.0;
  int steps = 101;
  Mode mode = Mode::analytic;
  MeasurementGrid grid;
  std::string output_path = "-";

  bool needs_dense() const { return mode != Mode::analytic; }

  /// Throws UsageError for malformed configs, CapacityError when a dense mode
  /// is asked for n beyond the cap.
  void validate() const {
    if (n_list.empty()) throw UsageError("at least one qubit count is required");
    for (int n : n_list)
      if (n < 2) throw UsageError("qubit counts must be at least 2");
    if (!(p_min >= 0.0 && p_max <= 1.0 && p_min < p_max))
      throw UsageError("need 0 <= p-min < p-max <= 1");
    if (steps < 2) throw UsageError("steps must be at least 2");
    if (grid.theta_steps < 1 || grid.phi_steps < 1) throw UsageError("measurement grid must be non-empty");
    if (needs_dense())
      for (int n : n_list) require_dense(n);
  }
};

/// steps points from p_min to p_max, both endpoints included exactly.
inline std::vector<double> p_grid(double p_min, double p_max, int steps) {
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) out[i] = p_min + (p_max - p_min) * i / (steps - 1);
  out.back() = p_max;
  return out;
}

struct CurveSample {
  int n = 0;
  double p = 0.0;
  double discord_closed = 0.0;
  std::optional<double> discord_numeric;
  std::optional<double> abs_gap;
  double log_negativity = 0.0;
  bool separable = true;

  bool gap_ok() const { return !abs_gap || *abs_gap < kDiscordGapBound; }
};

inline constexpr std::string_view kCurveHeader =
    "n,p,discord_closed,discord_numeric,abs_gap,log_negativity,separable";

/// 12 significant digits, always with a decimal point; exponent notation
/// only below 1e-4 in magnitude.
inline std::string format_real(double v) {
  if (v == 0.0) return "0.0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

inline void write_curve_csv(std::ostream& os, std::span<const CurveSample> rows) {
  os << kCurveHeader << '\n';
  for (const auto& r : rows) {
    os << r.n << ',' << format_real(r.p) << ',' << format_real(r.discord_closed) << ','
       << (r.discord_numeric ? format_real(*r.discord_numeric) : "") << ','
       << (r.abs_gap ? format_real(*r.abs_gap) : "") << ',' << format_real(r.log_negativity) << ','
       << (r.separable ? "true" : "false") << '\n';
  }
}

/// Discord rows, n outer ascending and p inner ascending. Dense modes attach
/// the brute-force value and its gap to the closed form.
inline std::vector<CurveSample> discord_curve(const SweepConfig& config, const JacobiOptions& eig = {}) {
  config.validate();
  std::vector<int> ns = config.n_list;
  std::sort(ns.begin(), ns.end());
  std::vector<CurveSample> rows;
  for (int n : ns)
    for (double p : p_grid(config.p_min, config.p_max, config.steps)) {
      const WernerParams params(n, p);
      CurveSample s;
      s.n = n;
      s.p = params.p();
      s.discord_closed = discord_closed(params);
      const NegativityResult neg = log_negativity(params);
      s.log_negativity = neg.value;
      s.separable = neg.separable;
      if (config.needs_dense()) {
        s.discord_numeric = discord_numeric(params, config.grid, eig).discord;
        s.abs_gap = std::abs(s.discord_closed - *s.discord_numeric);
      }
      rows.push_back(s);
    }
  return rows;
}

/// Negativity rows. numeric takes N_L from the dense partial transpose;
/// both keeps the closed form and throws VerificationFailure if the dense
/// route disagrees by 1e-10 or more.
inline std::vector<CurveSample> negativity_curve(const SweepConfig& config, const JacobiOptions& eig = {}) {
  config.validate();
  std::vector<int> ns = config.n_list;
  std::sort(ns.begin(), ns.end());
  std::vector<CurveSample> rows;
  for (int n : ns)
    for (double p : p_grid(config.p_min, config.p_max, config.steps)) {
      const WernerParams params(n, p);
      CurveSample s;
      s.n = n;
      s.p = params.p();
      s.discord_closed = discord_closed(params);
      const NegativityResult neg = log_negativity(params);
      s.log_negativity = neg.value;
      s.separable = neg.separable;
      if (config.mode == Mode::numeric) {
        s.log_negativity = log_negativity_dense(params, eig);
        s.separable = min_pt_eigenvalue_dense(params, eig) >= -kNegativeClampTol;
      } else if (config.mode == Mode::both) {
        const double dense = log_negativity_dense(params, eig);
        if (!(std::abs(dense - neg.value) < 1e-10)) {
          std::ostringstream msg;
          msg << "log negativity mismatch at n=" << n << " p=" << format_real(p) << ": closed "
              << format_real(neg.value) << " dense " << format_real(dense);
          throw VerificationFailure(msg.str());
        }
      }
      rows.push_back(s);
    }
  return rows;
}

// ---------------------------------------------------------------------------
// Verification suite

struct CheckResult {
  std::string check;
  int n = 0;
  bool passed = true;
  double worst = 0.0;
  double bound = 0.0;
  std::optional<double> at_p;
  std::string detail;
};

struct VerifyOptions {
  int n_max = 6;
  MeasurementGrid grid;
  JacobiOptions eig;
};

namespace detail {

inline double multiset_distance(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// Tracks the worst value of one check across a p-sweep.
class CheckAccumulator {
 public:
  CheckAccumulator(std::string name, int n, double bound) {
    r_.check = std::move(name);
    r_.n = n;
    r_.bound = bound;
  }

  /// Records a sample; the report keeps the first failure, else the worst value.
  void record(double p, double value, bool ok) {
    if (!ok && r_.passed) {
      r_.passed = false;
      r_.worst = value;
      r_.at_p = p;
    } else if (r_.passed && (!r_.at_p || value > r_.worst)) {
      r_.worst = value;
      r_.at_p = p;
    }
  }

  void fail(double p, const std::string& why) {
    if (r_.passed) {
      r_.at_p = p;
      r_.detail = why;
      r_.worst = std::numeric_limits<double>::infinity();
    }
    r_.passed = false;
  }

  CheckResult result() const { return r_; }

 private:
  CheckResult r_;
};

template <class F>
void guarded(CheckAccumulator& acc, double p, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    acc.fail(p, e.what());
  }
}

}  // namespace detail

/// The full oracle suite for n = 2..n_max (dense cap applies).
inline std::vector<CheckResult> run_verify(const VerifyOptions& opts) {
  if (opts.n_max < 2) throw UsageError("n must be at least 2");
  require_dense(opts.n_max);
  const std::vector<double> coarse = p_grid(0.0, 1.0, 11);
  const std::vector<double> fine = p_grid(0.0, 1.0, 101);

  std::vector<CheckResult> out;
  for (int n = 2; n <= opts.n_max; ++n) {
    detail::CheckAccumulator spectrum("spectrum_equivalence", n, 1e-10);
    detail::CheckAccumulator pt("pt_spectrum_equivalence", n, 1e-10);
    detail::CheckAccumulator gap("discord_gap", n, kDiscordGapBound);
    detail::CheckAccumulator flat("measurement_flatness", n, 1e-10);
    for (double p : coarse) {
      const WernerParams params(n, p);
      detail::guarded(spectrum, p, [&] {
        const double d = detail::multiset_distance(
            werner_spectrum(params).expand(), eig_hermitian(build_werner_dense(params), opts.eig).eigenvalues);
        spectrum.record(p, d, d < 1e-10);
      });
      detail::guarded(pt, p, [&] {
        const std::size_t dim = dense_dim(n);
        const double d = detail::multiset_distance(
            pt_spectrum(params).expand(),
            eig_hermitian(partial_transpose_B(build_werner_dense(params), dim / 2, 2), opts.eig).eigenvalues);
        pt.record(p, d, d < 1e-10);
      });
      detail::guarded(gap, p, [&] {
        DiscordBreakdown b;
        try {
          b = discord_numeric(params, opts.grid, opts.eig);
        } catch (const std::exception& e) {
          flat.fail(p, e.what());
          throw;
        }
        const double g = std::abs(b.discord - discord_closed(params));
        gap.record(p, g, g < kDiscordGapBound);
        flat.record(p, b.conditional_spread(), b.conditional_spread() < 1e-10);
      });
    }

    detail::CheckAccumulator sign("threshold_sign_change", n, 1e-4);
    const double t = separability_threshold(n);
    detail::guarded(sign, t, [&] {
      const double below = min_pt_eigenvalue_dense(WernerParams(n, t - 1e-4), opts.eig);
      const double above = min_pt_eigenvalue_dense(WernerParams(n, t + 1e-4), opts.eig);
      if (below > 0.0 && above < 0.0)
        sign.record(t, 1e-4, true);
      else
        sign.fail(t, "min PT eigenvalue " + format_real(below) + " below, " + format_real(above) + " above");
    });

    detail::CheckAccumulator convex("convexity", n, 1e-4);
    detail::CheckAccumulator concave("concavity", n, 1e-4);
    for (std::size_t i = 1; i + 1 < fine.size(); ++i) {
      const double p = fine[i];
      detail::guarded(convex, p, [&] {
        const ConvexityWitness w = discord_second_derivative(WernerParams(n, p));
        const double rel = std::abs(w.second_derivative_fd - w.second_derivative_closed) / w.second_derivative_closed;
        convex.record(p, rel, w.second_derivative_fd > 0.0 && rel < 1e-4);
      });
      if (p - fd::kStep > t && p + fd::kStep <= 1.0)
        detail::guarded(concave, p, [&] {
          const WernerParams params(n, p);
          const double numeric = negativity_second_derivative_fd(params);
          const double closed = negativity_second_derivative(params);
          const double rel = std::abs(numeric - closed) / std::abs(closed);
          concave.record(p, rel, numeric < 0.0 && rel < 1e-4);
        });
    }

    for (const auto* acc : {&spectrum, &pt, &gap, &flat, &sign, &convex, &concave}) out.push_back(acc->result());
  }
  return out;
}

inline bool all_passed(std::span<const CheckResult> results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

/// One line per check: key=value pairs, status first.
inline void write_verify_report(std::ostream& os, std::span<const CheckResult> results) {
  for (const auto& r : results) {
    os << "status=" << (r.passed ? "pass" : "fail") << " check=" << r.check << " n=" << r.n
       << " worst=" << format_real(r.worst) << " bound=" << format_real(r.bound);
    if (r.at_p) os << " p=" << format_real(*r.at_p);
    if (!r.detail.empty()) os << " detail=\"" << r.detail << '"';
    os << '\n';
  }
  const bool ok = all_passed(results);
  os << "status=" << (ok ? "pass" : "fail") << " check=overall checks=" << results.size() << '\n';
}

// ---------------------------------------------------------------------------
// Benchmark

struct BenchRow {
  int n = 0;
  std::string path;  // "structured" or "dense"
  int repetitions = 0;
  std::optional<double> seconds_per_rep;
  std::string status;  // "ok" or "skipped"
};

inline constexpr std::string_view kBenchHeader = "n,path,repetitions,seconds_per_rep,status";

/// Times the closed-form evaluation against dense build + eigensolve + entropy.
inline std::vector<BenchRow> run_bench(std::vector<int> n_list, int repetitions) {
  if (repetitions < 1) throw UsageError("repetitions must be at least 1");
  if (n_list.empty()) throw UsageError("at least one qubit count is required");
  for (int n : n_list)
    if (n < 2) throw UsageError("qubit counts must be at least 2");
  std::sort(n_list.begin(), n_list.end());

  using Clock = std::chrono::steady_clock;
  volatile double sink = 0.0;
  std::vector<BenchRow> rows;
  for (int n : n_list) {
    const WernerParams params(n, 0.5);
    auto start = Clock::now();
    for (int r = 0; r < repetitions; ++r)
      sink = sink + joint_entropy(params) + conditional_entropy(params) + discord_closed(params) +
             log_negativity(params).value;
    const double structured = std::chrono::duration<double>(Clock::now() - start).count() / repetitions;
    rows.push_back({n, "structured", repetitions, structured, "ok"});

    if (n > kDenseMaxQubits) {
      rows.push_back({n, "dense", repetitions, std::nullopt, "skipped"});
      continue;
    }
    start = Clock::now();
    for (int r = 0; r < repetitions; ++r)
      sink = sink + shannon_entropy_bits(eig_hermitian(build_werner_dense(params)));
    const double dense = std::chrono::duration<double>(Clock::now() - start).count() / repetitions;
    rows.push_back({n, "dense", repetitions, dense, "ok"});
  }
  return rows;
}

inline void write_bench_csv(std::ostream& os, std::span<const BenchRow> rows) {
  os << kBenchHeader << '\n';
  for (const auto& r : rows)
    os << r.n << ',' << r.path << ',' << r.repetitions << ','
       << (r.seconds_per_rep ? format_real(*r.seconds_per_rep) : "") << ',' << r.status << '\n';
}

}  // namespace wernerqd
