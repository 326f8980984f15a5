#pragma once

// Modified Bessel function of imaginary order K_{i nu}(x) and the ordinary J0(x).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "rindler/errors.hpp"
#include "rindler/quadrature.hpp"

namespace rindler {

/// The real order nu of K_{i nu}; for Rindler modes nu = omega / a.
class BesselOrder {
 public:
  explicit BesselOrder(double nu) : nu_(nu) {
    if (!std::isfinite(nu) || nu < 0.0) throw DomainError("BesselOrder: nu must be finite and >= 0");
  }
  double nu() const noexcept { return nu_; }

 private:
  double nu_;
};

/// K_{i nu}(x) = mantissa * exp(-log_scale). Keeping the exponent apart lets callers form
/// sinh(pi nu) K_{i nu}^2 for large nu, where K itself is ~exp(-pi nu / 2).
struct ScaledBessel {
  double mantissa = 0.0;
  double log_scale = 0.0;
  double error = 0.0;  // absolute error of the mantissa
  double value() const { return mantissa * std::exp(-log_scale); }
};

namespace detail {

inline constexpr double kHalfPi = 0.5 * std::numbers::pi;
// The contour tilt stops this far (times 1/nu) short of pi/2; the cancellation
// left in the shifted integral is then at most exp(-kContourMargin).
inline constexpr double kContourMargin = 2.0;

}  // namespace detail

/// K_{i nu}(x) for x > 0 from K_{i nu}(x) = Int_0^inf exp(-x cosh t) cos(nu t) dt.
///
/// The integral is taken along the line Im t = alpha, which Cauchy's theorem allows for
/// any 0 <= alpha < pi/2:
///   K_{i nu}(x) = exp(-x cos(alpha) - nu alpha)
///                 Int_0^inf exp(-x cos(alpha) (cosh u - 1)) cos(nu u - x sin(alpha) sinh u) du.
/// alpha is the saddle angle asin(nu/x) when nu < x, capped at pi/2 - 2/nu, so the
/// exponentially small factor is carried by log_scale and not by cancellation.
/// For nu <= 4/pi the tilt is zero and this is the real-axis integral.
inline ScaledBessel bessel_k_imag_scaled(BesselOrder order, double x, const QuadratureSpec& spec) {
  using std::numbers::pi;
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("bessel_k_imag: x must be finite and > 0");
  const double nu = order.nu();

  double alpha = 0.0;
  if (nu > 0.0) {
    const double cap = std::max(0.0, detail::kHalfPi - detail::kContourMargin / nu);
    alpha = std::min(nu < x ? std::asin(nu / x) : detail::kHalfPi, cap);
  }
  const double damp = x * std::cos(alpha);
  const double twist = x * std::sin(alpha);

  const double cutoff = std::max(30.0, -std::log(std::min(spec.abs_tol, spec.rel_tol)) + 7.0);
  const double u_max = std::acosh(1.0 + cutoff / damp);

  // Panels at most half a local oscillation of the phase nu u - twist sinh u.
  std::vector<double> pts{0.0};
  for (double u = 0.0; u < u_max;) {
    auto rate = [&](double v) { return std::abs(nu - twist * std::cosh(v)); };
    double step = std::min(0.5, pi / std::max(rate(u), 1e-300));
    step = std::min(step, pi / std::max(rate(std::min(u + step, u_max)), 1e-300));
    u = std::min(u + step, u_max);
    pts.push_back(u);
  }

  auto integrand = [=](double u) {
    const double envelope = std::exp(-damp * (std::cosh(u) - 1.0));
    return envelope == 0.0 ? 0.0 : envelope * std::cos(nu * u - twist * std::sinh(u));
  };
  const auto r = integrate_adaptive(integrand, pts, spec);
  return {r.value, damp + nu * alpha, r.error};
}

/// K_{i nu}(x) as a plain double; underflows to 0 once x exceeds ~745.
inline double bessel_k_imag(BesselOrder order, double x, const QuadratureSpec& spec) {
  return bessel_k_imag_scaled(order, x, spec).value();
}

namespace detail {

inline double j0_series(double x) {
  const double q = -0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (double(k) * double(k));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// (1/2pi) Int_0^{2pi} cos(x sin t) dt by the trapezoid rule. For a periodic analytic
// integrand the aliasing error is 2 sum_k J_{kN}(x), negligible once N > x + 40.
inline double j0_trapezoid(double x) {
  const int n = 2 * (static_cast<int>(x / 2.0) + 24);
  double sum = 0.0;
  for (int k = 0; k < n; ++k) sum += std::cos(x * std::sin(2.0 * std::numbers::pi * k / n));
  return sum / n;
}

// Hankel asymptotic expansion, J0 = sqrt(2/(pi x)) (P cos chi - Q sin chi).
inline double j0_hankel(double x) {
  double p = 1.0, q = 0.0;
  double term = 1.0;
  const double inv8x = 1.0 / (8.0 * x);
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * odd * odd * inv8x / k;
    if (std::abs(next) > std::abs(term)) break;
    term = next;
    // P = 1 - 9/(128 x^2) + ..., Q = -1/(8 x) + 75/(1024 x^3) - ...
    const int m = k / 2;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0)
      p += sign * term;
    else
      q -= sign * term;
    if (std::abs(term) < 1e-17) break;
  }
  const double chi = x - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

inline constexpr double kJ0SeriesLimit = 2.0;
inline constexpr double kJ0AsymptoticLimit = 25.0;

}  // namespace detail

/// J0(x), x >= 0: power series below 8, trapezoid rule on the Bessel integral up to 25,
/// Hankel expansion beyond. The three branches agree to ~1e-15 at the switchovers.
inline double bessel_j0(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("bessel_j0: x must be finite and >= 0");
  if (x < detail::kJ0SeriesLimit) return detail::j0_series(x);
  if (x < detail::kJ0AsymptoticLimit) return detail::j0_trapezoid(x);
  return detail::j0_hankel(x);
}

inline double bessel_j0(double x, const QuadratureSpec& /*spec*/) { return bessel_j0(x); }

}  // namespace rindler
