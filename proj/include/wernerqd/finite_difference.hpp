#pragma once

namespace wernerqd::fd {

/// Step used by every derivative witness in the library.
inline constexpr double kStep = 1e-4;

template <class Real, class F>
Real central_first(F&& f, Real x, Real h) {
  return (f(x + h) - f(x - h)) / (Real(2) * h);
}

template <class Real, class F>
Real central_second(F&& f, Real x, Real h) {
  return (f(x + h) - Real(2) * f(x) + f(x - h)) / (h * h);
}

/// Second-order one-sided stencils for points next to a kink or an endpoint.
template <class Real, class F>
Real forward_first(F&& f, Real x, Real h) {
  return (Real(-3) * f(x) + Real(4) * f(x + h) - f(x + Real(2) * h)) / (Real(2) * h);
}

template <class Real, class F>
Real backward_first(F&& f, Real x, Real h) {
  return (Real(3) * f(x) - Real(4) * f(x - h) + f(x - Real(2) * h)) / (Real(2) * h);
}

}  // namespace wernerqd::fd
