#pragma once

// Linear susceptibility chi = (1/2) <0|[phi(x_A(tau)), phi(x_B(tau'))]|0> of a massless
// scalar field between two coaccelerated worldlines, by three routes:
//   * the closed spectral form  c(w) = -(1/8 pi^2) sin(w s) / (z sqrt N),
//   * the Rindler mode sum over K_{i w/a} modes,
//   * Fourier extraction from the Minkowski-vacuum Wightman function.
// In every route chi(dtau) = Int_0^inf dw c(w) (e^{i w dtau} - e^{-i w dtau}).

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "rindler/errors.hpp"
#include "rindler/kinematics.hpp"
#include "rindler/quadrature.hpp"
#include "rindler/specfun.hpp"
#include "rindler/types.hpp"

namespace rindler {

struct ScalarModeIndex {
  double omega = 1.0;
  double k_y = 0.0;
  double k_z = 0.0;
  double k_perp() const { return std::hypot(k_y, k_z); }
};

/// Tabulated spectral coefficient of a field commutator on an omega grid.
struct SpectralSusceptibility {
  Channel channel = Channel::scalar;
  std::string component = "scalar";  // "scalar" or an index pair such as "xz"
  std::map<double, double> values;
  double z = 0.0;
  double a = 0.0;
};

/// Rindler mode v(tau, xi, y, z) = (1/(2 pi^2 sqrt a)) sqrt(sinh(pi w/a)) K_{i w/a}(k_perp e^{a xi}/a)
///                                 e^{i(k_y y + k_z z)} e^{-i w tau}.
inline std::complex<double> scalar_mode_function(const ScalarModeIndex& mode, const TrajectoryEvent& event, double a,
                                                 const QuadratureSpec& spec = QuadratureSpec::special_function()) {
  using std::numbers::pi;
  if (!(a > 0.0)) throw DomainError("scalar_mode_function: acceleration must be > 0");
  if (!(mode.omega > 0.0)) throw DomainError("scalar_mode_function: omega must be > 0");
  const double k_perp = mode.k_perp();
  if (!(k_perp > 0.0))
    throw DomainError("scalar_mode_function: k_perp = 0 is outside the domain of K_{i nu}");
  const double nu = mode.omega / a;
  const auto k = bessel_k_imag_scaled(BesselOrder(nu), k_perp * std::exp(a * event.xi) / a, spec);
  // sqrt(sinh(pi nu)) * K, with the exponentials combined before evaluation.
  const double radial = k.mantissa * std::exp(0.5 * pi * nu - k.log_scale) *
                        std::sqrt(0.5 * -std::expm1(-2.0 * pi * nu));
  const double norm = 1.0 / (2.0 * pi * pi * std::sqrt(a));
  const double phase = mode.k_y * event.y + mode.k_z * event.z - mode.omega * event.tau;
  return std::polar(norm * radial, phase);
}

namespace detail {

/// M(w) with <[phi_A(tau), phi_B(tau')]> = Int_0^inf dw M(w) (e^{-i w dtau} - e^{i w dtau}),
/// for a signed separation z = z_A - z_B (M is even in z).
inline double scalar_spectral_density(double omega, double z, double a) {
  using std::numbers::pi;
  const double s = effective_separation(z, a);
  const double n = 1.0 + 0.25 * a * a * z * z;
  return std::sin(omega * s) / (4.0 * pi * pi * z * std::sqrt(n));
}

/// Minkowski Wightman function between the two worldlines at complex proper-time
/// difference w, expressed through the invariant interval
/// sigma^2 = (4/a^2) sinh^2(a w/2) - z^2.
inline std::complex<double> scalar_wightman(std::complex<double> w, double z, double a) {
  using std::numbers::pi;
  const std::complex<double> h = a == 0.0 ? w : (2.0 / a) * std::sinh(0.5 * a * w);
  return -1.0 / (4.0 * pi * pi * ((h - z) * (h + z)));
}

/// Regulator values in the time domain: the schedule in natural units, shrunk for a > 1 so
/// that a eps stays well inside the strip |Im w| < 2 pi / a free of further poles.
inline std::vector<double> time_regulators(const QuadratureSpec& spec, double time_unit) {
  std::vector<double> eps;
  eps.reserve(spec.regulator_schedule.size());
  for (double e : spec.regulator_schedule) eps.push_back(e * time_unit);
  return eps;
}

/// Breakpoints for a time integral over [0, end] with a Lorentzian-like peak of width eps
/// at `peak` and oscillation of half-period `half_period`.
inline std::vector<double> peak_breakpoints(double peak, double eps, double end, double half_period) {
  std::vector<double> pts{0.0, end};
  for (double k : {0.0, 1.0, 3.0, 10.0, 30.0}) {
    for (double sgn : {-1.0, 1.0}) {
      const double p = peak + sgn * k * eps;
      if (p > 0.0 && p < end) pts.push_back(p);
    }
  }
  const double step = std::min(half_period, 1.0);
  for (double p = step; p < end; p += step) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

inline OracleEstimate finish_extrapolation(const std::vector<double>& eps, const std::vector<double>& vals,
                                           const QuadratureSpec& spec, const std::string& what) {
  const auto ex = extrapolate_to_zero(eps, vals);
  const double noise = 10.0 * std::max(spec.abs_tol, spec.rel_tol * std::abs(ex.value));
  if (!residuals_converging(ex, noise)) {
    std::ostringstream os;
    os << what << ": regulator extrapolation residuals are not decreasing (";
    for (double r : ex.residuals) os << ' ' << r;
    os << " )";
    throw OracleError(os.str());
  }
  OracleEstimate out{ex.value, std::max(ex.error, noise / 10.0), {}};
  for (std::size_t k = 0; k < eps.size(); ++k) out.regulator_report.push_back({eps[k], vals[k]});
  return out;
}

inline std::string context(const char* op, double omega, double z, double a) {
  std::ostringstream os;
  os << op << "(omega=" << omega << ", z=" << z << ", a=" << a << ")";
  return os.str();
}

}  // namespace detail

/// Coefficient c(w) of (e^{i w dtau} - e^{-i w dtau}) in chi:
/// c(w) = -(1/8 pi^2) sin(w s) / (z sqrt N), s = (2/a) arsinh(a z/2).
inline double chi_scalar_spectral_closed(double omega, const GeometryScalars& geo) {
  if (!(omega > 0.0)) throw DomainError("chi_scalar_spectral_closed: omega must be > 0");
  return -0.5 * detail::scalar_spectral_density(omega, geo.z, geo.a);
}

/// The same coefficient from the Rindler mode sum. The (k_y, k_z) integral of
/// |v|^2 e^{i k_z z} is reduced to polar form,
///   M(w) = (a/(2 pi^3)) sinh(pi nu) Int_0^inf x J0(a z x) K_{i nu}(x)^2 dx,  nu = w/a,
/// and c = -M/2.
inline OracleEstimate chi_scalar_mode_sum(double omega, const GeometryScalars& geo, const QuadratureSpec& spec) {
  using std::numbers::pi;
  if (!(omega > 0.0)) throw DomainError("chi_scalar_mode_sum: omega must be > 0");
  if (!(geo.a > 0.0)) throw DomainError("chi_scalar_mode_sum: Rindler modes need a > 0");
  const double a = geo.a;
  const double nu = omega / a;
  const double c = a * geo.z;
  const BesselOrder order(nu);

  // Upper cut where sinh(pi nu) K^2 has fallen below ~1e-20 of its scale: for x > nu the
  // log-magnitude is pi nu - 2 (sqrt(x^2 - nu^2) + nu asin(nu/x)), which is <= pi nu - 2x.
  constexpr double kDecades = 46.0;
  auto log_size = [nu](double x) {
    return pi * nu - 2.0 * (std::sqrt(x * x - nu * nu) + nu * std::asin(nu / x));
  };
  double lo = nu, hi = 0.5 * pi * nu + 0.5 * kDecades + 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (log_size(mid) > -kDecades ? lo : hi) = mid;
  }
  const double x_max = std::max(hi, 1.0);

  // Panels: half-periods of J0(c x) and of the oscillation of K_{i nu}(x)^2 for x < nu,
  // whose local wavenumber is ~2 sqrt(nu^2 - x^2)/x.
  std::vector<double> pts{0.0};
  double x = std::min(1e-6, x_max / 2);
  pts.push_back(x);
  while (x < x_max) {
    double w = 1.0;
    if (c > 0.0) w = std::min(w, pi / c);
    if (x < 0.999 * nu) w = std::min(w, 0.5 * pi * x / std::sqrt(nu * nu - x * x));
    x = std::min(x + w, x_max);
    pts.push_back(x);
  }

  const double tail_factor = 0.5 * -std::expm1(-2.0 * pi * nu);
  // Normalized so the integral is O(sin(w s)/sqrt N): c = -G / (8 pi^2 z).
  const double norm = 2.0 * c / pi;
  auto integrand = [&](double xx) {
    const auto k = bessel_k_imag_scaled(order, xx, spec);
    const double weight = std::exp(pi * nu - 2.0 * k.log_scale) * tail_factor;
    return norm * xx * bessel_j0(c * xx) * weight * k.mantissa * k.mantissa;
  };
  try {
    const auto r = integrate_adaptive(integrand, pts, spec);
    const double scale = -1.0 / (8.0 * pi * pi * geo.z);
    return {scale * r.value, std::abs(scale) * r.error, {}};
  } catch (const QuadratureError& e) {
    throw QuadratureError(detail::context("chi_scalar_mode_sum", omega, geo.z, a) + ": " + e.what(),
                          e.partial_value(), e.error_estimate());
  }
}

/// Minkowski vacuum Wightman function <0|phi(x_A(tau)) phi(x_B(tau'))|0> on the two
/// worldlines, -1/(4 pi^2 sigma^2), with the positive-frequency regulator placed on the
/// proper-time difference (tau - tau' - i eps). It depends on tau - tau' only.
inline std::complex<double> wightman_minkowski_on_trajectories(double tau, double tau_p, const GeometryScalars& geo,
                                                               double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("wightman_minkowski_on_trajectories: epsilon must be > 0");
  return detail::scalar_wightman({tau - tau_p, -epsilon}, geo.z, geo.a);
}

/// Regulator unit (time) for Wightman-based extractions at acceleration a and frequency
/// omega: the regulated coefficient carries a factor ~e^{-omega eps}, so eps is kept small
/// against 1/omega as well as against the thermal time 1/a.
inline double wightman_time_unit(double a, double omega) {
  double unit = 1.0;
  if (a > 1.0) unit = 1.0 / a;
  if (omega > 1.0) unit = std::min(unit, 1.0 / omega);
  return unit;
}

/// The coefficient c(w) extracted from the Wightman function. The commutator is
/// 2i Im W(dtau - i eps); its sine transform gives
///   c_eps(w) = (1/pi) Int_0^inf Im W(u - i eps) sin(w u) du,
/// which tends to c(w) linearly in eps and is extrapolated over the regulator schedule.
inline OracleEstimate chi_scalar_from_wightman(double omega, const GeometryScalars& geo, const QuadratureSpec& spec) {
  using std::numbers::pi;
  if (!(omega > 0.0)) throw DomainError("chi_scalar_from_wightman: omega must be > 0");
  spec.validate();
  const auto eps = detail::time_regulators(spec, wightman_time_unit(geo.a, omega));
  const double half_period = pi / omega;
  std::vector<double> vals;
  try {
    for (double e : eps) {
      auto integrand = [&](double u) {
        return std::imag(detail::scalar_wightman({u, -e}, geo.z, geo.a)) * std::sin(omega * u);
      };
      const double end = geo.s + std::max(60.0 * e, 2.0 * half_period);
      const auto pts = detail::peak_breakpoints(geo.s, e, end, half_period);
      const auto head = integrate_adaptive(integrand, pts, spec);
      const auto tail = integrate_oscillatory_tail(integrand, end, half_period, spec);
      vals.push_back((head.value + tail.value) / pi);
    }
  } catch (const QuadratureError& e) {
    throw QuadratureError(detail::context("chi_scalar_from_wightman", omega, geo.z, geo.a) + ": " + e.what(),
                          e.partial_value(), e.error_estimate());
  }
  return detail::finish_extrapolation(eps, vals, spec, detail::context("chi_scalar_from_wightman", omega, geo.z, geo.a));
}

enum class ScalarSpectrumMethod { closed_form, mode_sum, wightman };

/// Tabulates the scalar spectral coefficient on an omega grid by the chosen route.
inline SpectralSusceptibility scalar_spectrum(std::span<const double> omegas, const GeometryScalars& geo,
                                              ScalarSpectrumMethod method, const QuadratureSpec& spec) {
  SpectralSusceptibility out;
  out.channel = Channel::scalar;
  out.z = geo.z;
  out.a = geo.a;
  for (double w : omegas) {
    switch (method) {
      case ScalarSpectrumMethod::closed_form: out.values[w] = chi_scalar_spectral_closed(w, geo); break;
      case ScalarSpectrumMethod::mode_sum: out.values[w] = chi_scalar_mode_sum(w, geo, spec).value; break;
      case ScalarSpectrumMethod::wightman: out.values[w] = chi_scalar_from_wightman(w, geo, spec).value; break;
    }
  }
  return out;
}

}  // namespace rindler
