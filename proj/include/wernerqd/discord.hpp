#pragma once

// Quantum discord D(A:B) = S(B) - S(A,B) + S(A|B) of the Werner family, with
// B measured by the rank-1 projectors I_A ⊗ |u><u|, I_A ⊗ |v><v|.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <type_traits>
#include <utility>

#include "wernerqd/errors.hpp"
#include "wernerqd/finite_difference.hpp"
#include "wernerqd/linalg.hpp"
#include "wernerqd/structured_spectrum.hpp"
#include "wernerqd/werner.hpp"

namespace wernerqd {

inline constexpr double kNegativeClampTol = 1e-12;
inline constexpr double kNegligibleEigenvalue = 1e-300;

// ---------------------------------------------------------------------------
// Entropies

/// von Neumann entropy in bits of a dense spectrum.
inline double shannon_entropy_bits(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double v : eigenvalues) {
    if (v < -kNegativeClampTol)
      throw ValidationError("entropy: eigenvalue " + std::to_string(v) + " is negative");
    if (v < kNegligibleEigenvalue) continue;
    s -= v * std::log2(v);
  }
  return s;
}

inline double shannon_entropy_bits(const Spectrum& spectrum) {
  return shannon_entropy_bits(std::span<const double>(spectrum.eigenvalues));
}

/// Entropy of a structured spectrum, summed as -weight * log2(value) so that
/// neither 2^n nor 2^-n is ever formed.
inline double shannon_entropy_bits(const StructuredSpectrum& spectrum) {
  double s = 0.0;
  for (const auto& e : spectrum.entries) {
    if (e.multiplicity.is_zero() || e.value.is_zero()) continue;
    if (e.value.is_negative()) {
      const double v = e.value.to_double();
      if (v < -kNegativeClampTol)
        throw ValidationError("entropy: spectral entry " + std::to_string(v) + " is negative");
      continue;
    }
    s -= e.weight() * e.value.log2_abs();
  }
  return s;
}

/// S(A,B) of the Werner state, from its exact spectrum.
inline double joint_entropy(const WernerParams& params) {
  return shannon_entropy_bits(werner_spectrum(params));
}

/// S(A|B): entropy of the post-measurement A-state. Both outcomes occur
/// with probability 1/2 and share one spectrum, so no minimization remains.
inline double conditional_entropy(const WernerParams& params) {
  return shannon_entropy_bits(post_measurement_spectrum(params));
}

// ---------------------------------------------------------------------------
// Measurements on B

struct MeasurementAngles {
  double theta = 0.0;
  double phi = 0.0;

  MeasurementAngles() = default;
  MeasurementAngles(double theta_, double phi_) : theta(theta_), phi(phi_) {
    constexpr double tol = 1e-12;
    if (!(theta >= -tol && theta <= std::numbers::pi / 2 + tol))
      throw ParameterError("theta must lie in [0, pi/2]");
    if (!(phi >= -tol && phi <= 2 * std::numbers::pi + tol))
      throw ParameterError("phi must lie in [0, 2pi]");
  }
};

/// |u><u| (outcome 1) or |v><v| (outcome 2) on the measured qubit, with
/// |u> = cos t |0> + e^{i f} sin t |1>, |v> = sin t |0> - e^{i f} cos t |1>.
inline ComplexMatrix qubit_projector(const MeasurementAngles& angles, int which) {
  if (which != 1 && which != 2) throw ParameterError("measurement outcome must be 1 or 2");
  const double c = std::cos(angles.theta), s = std::sin(angles.theta);
  const Complex phase = std::polar(1.0, angles.phi);
  const Complex a0 = which == 1 ? Complex{c} : Complex{s};
  const Complex a1 = which == 1 ? phase * s : -phase * c;
  ComplexMatrix proj(2);
  proj(0, 0) = a0 * std::conj(a0);
  proj(0, 1) = a0 * std::conj(a1);
  proj(1, 0) = a1 * std::conj(a0);
  proj(1, 1) = a1 * std::conj(a1);
  return proj;
}

/// Full-register projectors I_A ⊗ |u><u| and I_A ⊗ |v><v|.
inline std::pair<ComplexMatrix, ComplexMatrix> measurement_projectors(const MeasurementAngles& angles,
                                                                       int n) {
  const std::size_t dim_a = dense_dim(n) / 2;
  const ComplexMatrix id_a = ComplexMatrix::identity(dim_a);
  return {kron(id_a, qubit_projector(angles, 1)), kron(id_a, qubit_projector(angles, 2))};
}

struct PostMeasurement {
  double probability;
  ComplexMatrix state;
};

/// p_k = tr(Pi_k rho Pi_k) and rho_{A|Pi_k} = tr_B(Pi_k rho Pi_k) / p_k for a dense n-qubit rho.
inline PostMeasurement post_measurement_state(const ComplexMatrix& rho, const MeasurementAngles& angles,
                                              int which) {
  if (rho.dim() < 4 || rho.dim() % 2 != 0) throw DimensionError("post_measurement_state: need A ⊗ qubit");
  const std::size_t dim_a = rho.dim() / 2;
  ComplexMatrix block = partial_trace_B_after(rho, dim_a, 2, qubit_projector(angles, which));
  const double prob = block.trace().real();
  if (prob > 0.0) block *= Complex{1.0 / prob};
  return {prob, std::move(block)};
}

inline PostMeasurement post_measurement_state(const WernerParams& params, const MeasurementAngles& angles,
                                              int which) {
  return post_measurement_state(build_werner_dense(params), angles, which);
}

// ---------------------------------------------------------------------------
// Closed form

/// p - D(n, p). With d = (1-p) 2^-n this is
///   d (n - 2) - d log2(1-p) - d log2(p + d) + 2 d log2(p + 2d)
///     - p [log1p(d/p) - log1p(2d/p)] / ln 2,
/// which keeps full relative accuracy as n grows and the gap shrinks like n 2^-n.
template <class Real = double>
Real discord_shortfall(int n, std::type_identity_t<Real> p) {
  using std::log1p, std::log2, std::ldexp;
  if (n < 2) throw ParameterError("qubit count must be at least 2");
  if (!(p >= Real(-kProbabilityClampTol) && p <= Real(1 + kProbabilityClampTol)))
    throw ParameterError("probability outside [0, 1]");
  p = std::clamp(p, Real(0), Real(1));
  const Real x = Real(1) - p;
  const Real d = ldexp(x, -n);
  if (d == Real(0)) return Real(0);
  Real r = d * Real(n - 2) - d * log2(x) - d * log2(p + d) + Real(2) * d * log2(p + Real(2) * d);
  if (p > Real(0)) r -= p * (log1p(d / p) - log1p(Real(2) * d / p)) / std::numbers::ln2_v<Real>;
  return r;
}

/// Closed-form discord in bits.
template <class Real = double>
Real discord_closed(int n, std::type_identity_t<Real> p) {
  return std::clamp(p, Real(0), Real(1)) - discord_shortfall<Real>(n, p);
}

inline double discord_closed(const WernerParams& params) {
  return discord_closed<double>(params.n(), params.p());
}

/// n -> infinity limit: the unit-slope line D = p.
inline double discord_limit(double p) { return validated_probability(p); }

// ---------------------------------------------------------------------------
// Dense pipeline

struct MeasurementGrid {
  int theta_steps = 32;
  int phi_steps = 32;

  static constexpr int kMinimumSteps = 8;
  bool coarse() const { return theta_steps < kMinimumSteps || phi_steps < kMinimumSteps; }

  /// theta spans [0, pi/2] inclusive; phi spans [0, 2pi) without the seam.
  double theta(int i) const {
    return theta_steps == 1 ? 0.0 : (std::numbers::pi / 2) * i / (theta_steps - 1);
  }
  double phi(int j) const { return 2 * std::numbers::pi * j / phi_steps; }
};

struct DiscordBreakdown {
  double s_b = 0.0;
  double s_ab = 0.0;
  double s_a_given_b = 0.0;
  double discord = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;

  // Grid metadata.
  MeasurementAngles best_angles;
  double conditional_min = 0.0;
  double conditional_max = 0.0;
  int evaluations = 0;
  bool coarse_grid = false;

  double conditional_spread() const { return conditional_max - conditional_min; }
};

/// Brute-force discord: dense state, dense eigensolves, exhaustive (theta, phi) grid.
inline DiscordBreakdown discord_numeric(const WernerParams& params, const MeasurementGrid& grid = {},
                                        const JacobiOptions& eig_opts = {}) {
  if (grid.theta_steps < 1 || grid.phi_steps < 1) throw ParameterError("measurement grid must be non-empty");
  const ComplexMatrix rho = build_werner_dense(params);
  const std::size_t dim_a = rho.dim() / 2;

  DiscordBreakdown out;
  out.coarse_grid = grid.coarse();
  out.s_ab = shannon_entropy_bits(eig_hermitian(rho, eig_opts));
  out.s_b = shannon_entropy_bits(eig_hermitian(partial_trace_A(rho, dim_a, 2), eig_opts));

  out.conditional_min = std::numeric_limits<double>::infinity();
  out.conditional_max = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.theta_steps; ++i)
    for (int j = 0; j < grid.phi_steps; ++j) {
      const MeasurementAngles angles(grid.theta(i), grid.phi(j));
      double conditional = 0.0;
      double probs[2] = {0.0, 0.0};
      for (int k = 1; k <= 2; ++k) {
        PostMeasurement pm = post_measurement_state(rho, angles, k);
        probs[k - 1] = pm.probability;
        if (pm.probability <= 0.0) continue;
        conditional += pm.probability * shannon_entropy_bits(eig_hermitian(std::move(pm.state), eig_opts));
      }
      ++out.evaluations;
      out.conditional_max = std::max(out.conditional_max, conditional);
      if (conditional < out.conditional_min) {
        out.conditional_min = conditional;
        out.best_angles = angles;
        out.p1 = probs[0];
        out.p2 = probs[1];
      }
    }
  out.s_a_given_b = out.conditional_min;
  out.discord = out.s_b - out.s_ab + out.s_a_given_b;
  return out;
}

// ---------------------------------------------------------------------------
// Convexity

/// d^2 D / dp^2 = 2^(2n-1) / [2^n ln2 (1-p)(1+(2^n-1)p)(1+(2^(n-1)-1)p)],
/// evaluated as 2^-n / [ln2 (1-p) (p + d) (p + 2d)] with d = (1-p) 2^-n.
template <class Real = double>
Real discord_second_derivative_closed(int n, std::type_identity_t<Real> p) {
  using std::ldexp;
  const Real x = Real(1) - p;
  const Real d = ldexp(x, -n);
  return ldexp(Real(1), -n) / (std::numbers::ln2_v<Real> * x * (p + d) * (p + Real(2) * d));
}

struct ConvexityWitness {
  double x = 0.0;  // 1 - p
  double y = 0.0;  // 1 + (2^n - 1) p
  double z = 0.0;  // 1 + (2^(n-1) - 1) p
  double second_derivative_closed = 0.0;
  double second_derivative_fd = 0.0;
  double alpha_numerator = 0.0;
  double gamma_denominator = 0.0;
};

/// Central difference of the closed form, evaluated in extended precision
/// so that the h^-2 amplification does not swamp the curvature at larger n.
inline double discord_second_derivative_fd(int n, double p, double h = fd::kStep) {
  using Ext = long double;
  const Ext step = std::min<Ext>(h, std::min<Ext>(p, 1.0 - p) / 2);
  return double(fd::central_second<Ext>([n](Ext q) { return discord_closed<Ext>(n, q); }, Ext(p), step));
}

inline ConvexityWitness discord_second_derivative(const WernerParams& params) {
  const int n = params.n();
  const double p = params.p();
  if (!(p > 0.0 && p < 1.0)) throw DomainError("second derivative of discord needs 0 < p < 1");

  using Ext = long double;
  const Ext pe = p;
  const Ext big = std::ldexp(Ext(1), n) - 1;       // 2^n - 1
  const Ext half = std::ldexp(Ext(1), n - 1) - 1;  // 2^(n-1) - 1
  const Ext x = 1 - pe, y = 1 + big * pe, z = 1 + half * pe;
  const Ext alpha = y * z + big * big * x * z - 2 * half * half * x * y;
  const Ext gamma = std::ldexp(Ext(1), n) * std::numbers::ln2_v<Ext> * x * y * z;

  ConvexityWitness w;
  w.x = double(x);
  w.y = double(y);
  w.z = double(z);
  w.alpha_numerator = double(alpha);
  w.gamma_denominator = double(gamma);
  w.second_derivative_closed = double(discord_second_derivative_closed<Ext>(n, pe));
  w.second_derivative_fd = discord_second_derivative_fd(n, p);
  return w;
}

}  // namespace wernerqd
