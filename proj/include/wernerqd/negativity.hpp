#pragma once

// Logarithmic negativity N_L = log2 ||rho^{T_B}||_1 of the Werner family.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>

#include "wernerqd/errors.hpp"
#include "wernerqd/finite_difference.hpp"
#include "wernerqd/linalg.hpp"
#include "wernerqd/werner.hpp"

namespace wernerqd {

/// 1 / (1 + 2^(n-1)): the largest p with a positive semidefinite partial transpose.
template <class Real = double>
Real separability_threshold(int n) {
  if (n < 2) throw ParameterError("qubit count must be at least 2");
  const Real b = std::ldexp(Real(1), -(n - 1));
  return b / (Real(1) + b);
}

namespace detail {

// log2(1 + p - 2^-(n-1) (1 - p)), the entangled branch.
template <class Real>
Real log_negativity_branch(int n, Real p) {
  const Real b = std::ldexp(Real(1), -(n - 1));
  return std::log1p(p - b * (Real(1) - p)) / std::numbers::ln2_v<Real>;
}

// (2^(n-1) - 1) / (2^(n-1) + 1) written as (1 - b) / (1 + b), b = 2^-(n-1).
template <class Real>
Real negativity_offset(int n) {
  const Real b = std::ldexp(Real(1), -(n - 1));
  return (Real(1) - b) / (Real(1) + b);
}

}  // namespace detail

/// Closed form; zero on the separable side including the boundary point.
template <class Real = double>
Real log_negativity_value(int n, std::type_identity_t<Real> p) {
  if (n < 2) throw ParameterError("qubit count must be at least 2");
  if (!(p >= Real(-kProbabilityClampTol) && p <= Real(1 + kProbabilityClampTol)))
    throw ParameterError("probability outside [0, 1]");
  p = std::clamp(p, Real(0), Real(1));
  if (p <= separability_threshold<Real>(n)) return Real(0);
  return detail::log_negativity_branch<Real>(n, p);
}

struct NegativityResult {
  double threshold = 0.0;
  double value = 0.0;
  bool separable = true;
  /// dN_L/dp; only meaningful when !separable.
  double derivative = 0.0;
};

inline double negativity_derivative(const WernerParams& params);

inline NegativityResult log_negativity(const WernerParams& params) {
  NegativityResult r;
  r.threshold = separability_threshold(params.n());
  r.separable = params.p() <= r.threshold;
  r.value = log_negativity_value(params.n(), params.p());
  if (!r.separable) r.derivative = negativity_derivative(params);
  return r;
}

/// n -> infinity limit log2(1 + p).
inline double log_negativity_limit(double p) {
  return std::log2(1.0 + validated_probability(p));
}

namespace detail {

inline void require_entangled(const WernerParams& params, const char* who) {
  if (!(params.p() > separability_threshold(params.n())))
    throw DomainError(std::string(who) + ": p must exceed the separability threshold");
}

}  // namespace detail

/// 1 / [ln2 (p + (2^(n-1)-1)/(2^(n-1)+1))] on (threshold, 1].
inline double negativity_derivative(const WernerParams& params) {
  detail::require_entangled(params, "negativity_derivative");
  return 1.0 / (std::numbers::ln2 * (params.p() + detail::negativity_offset<double>(params.n())));
}

/// -1 / [ln2 (p + (2^(n-1)-1)/(2^(n-1)+1))^2] on (threshold, 1].
inline double negativity_second_derivative(const WernerParams& params) {
  detail::require_entangled(params, "negativity_second_derivative");
  const double s = params.p() + detail::negativity_offset<double>(params.n());
  return -1.0 / (std::numbers::ln2 * s * s);
}

/// Finite-difference first derivative of the closed form. Central where the
/// stencil fits inside (threshold, 1]; otherwise one-sided away from the
/// kink or the endpoint, never across either.
inline double negativity_derivative_fd(const WernerParams& params, double h = fd::kStep) {
  detail::require_entangled(params, "negativity_derivative_fd");
  using Ext = long double;
  const int n = params.n();
  const Ext p = params.p(), step = h;
  const Ext t = separability_threshold<Ext>(n);
  auto f = [n](Ext q) { return detail::log_negativity_branch<Ext>(n, q); };
  if (p - step <= t) return double(fd::forward_first<Ext>(f, p, step));
  if (p + step > 1) return double(fd::backward_first<Ext>(f, p, step));
  return double(fd::central_first<Ext>(f, p, step));
}

/// Central second difference of the closed form; the whole stencil must sit
/// strictly inside the entangled interval.
inline double negativity_second_derivative_fd(const WernerParams& params, double h = fd::kStep) {
  using Ext = long double;
  const int n = params.n();
  const Ext p = params.p(), step = h;
  if (!(p - step > separability_threshold<Ext>(n) && p + step <= 1))
    throw DomainError("negativity_second_derivative_fd: stencil leaves the entangled interval");
  return double(fd::central_second<Ext>([n](Ext q) { return log_negativity_value<Ext>(n, q); }, p, step));
}

// ---------------------------------------------------------------------------
// Dense route

/// Smallest eigenvalue of the dense partial transpose.
inline double min_pt_eigenvalue_dense(const WernerParams& params, const JacobiOptions& opts = {}) {
  const std::size_t dim = dense_dim(params.n());
  ComplexMatrix pt = partial_transpose_B(build_werner_dense(params), dim / 2, 2);
  return eig_hermitian(std::move(pt), opts).min();
}

/// log2 of the trace norm of the dense partial transpose.
inline double log_negativity_dense(const WernerParams& params, const JacobiOptions& opts = {}) {
  const std::size_t dim = dense_dim(params.n());
  return std::log2(trace_norm(partial_transpose_B(build_werner_dense(params), dim / 2, 2), opts));
}

}  // namespace wernerqd
