#pragma once

// Electric-field susceptibility tensor between the two worldlines, with components
// measured in the instantaneous rest frames of the atoms (acceleration along x,
// separation along z):
//   chi_ij(dtau) = (1/8 pi^2) Int_0^inf dw (e^{-i w dtau} - e^{i w dtau})
//                  [f_ij cos(w s) + g_ij sin(w s)].

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "rindler/errors.hpp"
#include "rindler/kinematics.hpp"
#include "rindler/quadrature.hpp"
#include "rindler/scalar_channel.hpp"
#include "rindler/types.hpp"

namespace rindler {

enum class Axis { x = 0, y = 1, z = 2 };
using Tensor3 = std::array<std::array<double, 3>, 3>;

inline char axis_name(Axis a) { return "xyz"[static_cast<int>(a)]; }

inline Axis parse_axis(char c) {
  switch (c) {
    case 'x': return Axis::x;
    case 'y': return Axis::y;
    case 'z': return Axis::z;
    default: throw DomainError(std::string("unknown axis '") + c + "'");
  }
}

/// True for the components that can be nonzero: the diagonal and xz, zx.
inline bool in_nonzero_pattern(Axis i, Axis j) {
  return i == j || (i == Axis::x && j == Axis::z) || (i == Axis::z && j == Axis::x);
}

struct SusceptibilityTensorPoint {
  double omega = 0.0;
  double z = 0.0;
  double a = 0.0;
  double s = 0.0;
  Tensor3 f{};
  Tensor3 g{};
  Tensor3 bracket{};  // f cos(w s) + g sin(w s)

  double at(Axis i, Axis j) const { return bracket[static_cast<int>(i)][static_cast<int>(j)]; }
  /// Coefficient of (e^{-i w dtau} - e^{i w dtau}) in chi_ij.
  double coefficient(Axis i, Axis j) const { return at(i, j) / (8.0 * std::numbers::pi * std::numbers::pi); }
};

namespace detail {

// Both tensors are written for a signed separation z = z_A - z_B; the cross components
// then pick up the sign of z together with s.
inline Tensor3 f_tensor_signed(double omega, double z, double a) {
  const double q = a * a * z * z;
  const double n = 1.0 + 0.25 * q;
  Tensor3 f{};
  f[0][0] = omega * (1.0 + q) / (z * z * n * n);
  f[1][1] = omega * (1.0 + 0.5 * q) / (z * z * n);
  f[2][2] = -2.0 * omega * (1.0 + q / 8.0 + q * q / 16.0) / (z * z * n * n);
  f[0][2] = a * omega * (1.0 - 0.5 * q) / (2.0 * z * n * n);
  f[2][0] = -f[0][2];
  return f;
}

inline Tensor3 g_tensor_signed(double omega, double z, double a) {
  const double q = a * a * z * z;
  const double n = 1.0 + 0.25 * q;
  const double wz2 = omega * omega * z * z;
  const double z3 = z * z * z;
  const double n32 = n * std::sqrt(n);
  const double n52 = n * n32;
  Tensor3 g{};
  g[0][0] = -(1.0 + 0.25 * q * (2.0 + q) - wz2 * (1.0 + 0.25 * q)) / (z3 * n52);
  g[1][1] = -(1.0 - wz2 * (1.0 + 0.25 * q)) / (z3 * n32);
  g[2][2] = 2.0 * ((1.0 + 0.625 * q) - 0.125 * q * wz2 * (1.0 + 0.25 * q)) / (z3 * n52);
  g[0][2] = -a * ((1.0 + q) + wz2 * (1.0 + 0.25 * q)) / (2.0 * z * z * n52);
  g[2][0] = -g[0][2];
  return g;
}

inline SusceptibilityTensorPoint em_spectral_signed(double omega, double z, double a) {
  SusceptibilityTensorPoint p;
  p.omega = omega;
  p.z = z;
  p.a = a;
  p.s = effective_separation(z, a);
  p.f = f_tensor_signed(omega, z, a);
  p.g = g_tensor_signed(omega, z, a);
  const double c = std::cos(omega * p.s), sn = std::sin(omega * p.s);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p.bracket[i][j] = p.f[i][j] * c + p.g[i][j] * sn;
  return p;
}

using CTensor3 = std::array<std::array<std::complex<double>, 3>, 3>;

/// <E_i(x_A(w)) E_j(x_B(0))> in the Minkowski vacuum, for complex proper time w of atom A
/// and signed separation z. E_i = F_{mu nu} u^mu e_i^nu with the comoving tetrad
/// u = (cosh a tau, sinh a tau, 0, 0), e_x = (sinh a tau, cosh a tau, 0, 0), e_y, e_z.
///
/// With <A_mu A'_rho> = -eta_{mu rho} W and W = -1/(4 pi^2 sigma^2), X = x_A - x_B,
///   <F_{mu nu} F'_{rho sigma}> p^mu q^nu r^rho w^sigma
///     = (q.w) D(p,r) - (q.r) D(p,w) - (p.w) D(q,r) + (p.r) D(q,w),
///   D(v1,v2) = -v1^mu v2^rho d_mu d'_rho W = -(1/4 pi^2) [-2 v1.v2/sigma^4 + 8 (X.v1)(X.v2)/sigma^6].
/// All products are taken in closed form (signature +,-,-,-); forming them from the
/// Cartesian components loses everything to cancellation once a |w| is large.
inline CTensor3 em_wightman_tensor(std::complex<double> w, double z, double a) {
  using std::numbers::pi;
  std::complex<double> ch = 1.0, sh = 0.0, sh_a = w, chm1_a = 0.0, sigma2 = w * w - z * z;
  if (a != 0.0) {
    const auto half = std::sinh(0.5 * a * w);
    ch = std::cosh(a * w);
    sh = std::sinh(a * w);
    sh_a = sh / a;
    chm1_a = 2.0 * half * half / a;
    const auto h = 2.0 * half / a;
    sigma2 = (h - z) * (h + z);
  }
  // Rows: u_A, e_x, e_y, e_z at A; columns: u_B, e_x, e_y, e_z at B.
  using Row = std::array<std::complex<double>, 4>;
  const std::array<Row, 4> ab{Row{ch, -sh, 0.0, 0.0}, Row{sh, -ch, 0.0, 0.0}, Row{0.0, 0.0, -1.0, 0.0},
                              Row{0.0, 0.0, 0.0, -1.0}};
  const Row xa{sh_a, chm1_a, 0.0, -z};
  const Row xb{sh_a, -chm1_a, 0.0, -z};

  const auto inv4 = 1.0 / (sigma2 * sigma2);
  const auto inv6 = inv4 / sigma2;
  const double k = -1.0 / (4.0 * pi * pi);
  auto d = [&](int m, int n) { return k * (-2.0 * ab[m][n] * inv4 + 8.0 * xa[m] * xb[n] * inv6); };
  const auto d00 = d(0, 0);
  CTensor3 out{};
  for (int i = 0; i < 3; ++i) {
    const int q = i + 1;
    const auto dq0 = d(q, 0);
    for (int j = 0; j < 3; ++j) {
      const int r = j + 1;
      out[i][j] = ab[q][r] * d00 - ab[q][0] * d(0, r) - ab[0][r] * dq0 + ab[0][0] * d(q, r);
    }
  }
  return out;
}

// The correlator falls off as exp(-2 a |Re w|); past this a |Re w| it is below exp(-400)
// and is returned as 0 before sigma^6 overflows.
inline constexpr double kHyperbolicCap = 200.0;

inline CTensor3 em_wightman_tensor_safe(std::complex<double> w, double z, double a) {
  if (a * std::abs(w.real()) > kHyperbolicCap) return CTensor3{};
  return em_wightman_tensor(w, z, a);
}

}  // namespace detail

/// f_ij(w, z, a), the coefficient of cos(w s) in the spectral bracket.
inline Tensor3 f_tensor(double omega, const GeometryScalars& geo) {
  return detail::f_tensor_signed(omega, geo.z, geo.a);
}

/// g_ij(w, z, a), the coefficient of sin(w s) in the spectral bracket.
inline Tensor3 g_tensor(double omega, const GeometryScalars& geo) {
  return detail::g_tensor_signed(omega, geo.z, geo.a);
}

inline SusceptibilityTensorPoint chi_em_spectral(double omega, const GeometryScalars& geo) {
  if (!(omega > 0.0)) throw DomainError("chi_em_spectral: omega must be > 0");
  return detail::em_spectral_signed(omega, geo.z, geo.a);
}

/// Rest-frame electric-field Wightman function <E_i(x_A(tau)) E_j(x_B(tau'))> with the
/// regulator on the proper-time difference, tau - tau' - i eps.
inline std::complex<double> em_wightman_on_trajectories(Axis i, Axis j, double tau, double tau_p,
                                                        const GeometryScalars& geo, double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("em_wightman_on_trajectories: epsilon must be > 0");
  return detail::em_wightman_tensor({tau - tau_p, -epsilon}, geo.z, geo.a)[static_cast<int>(i)][static_cast<int>(j)];
}

/// Bracket f_ij cos(w s) + g_ij sin(w s) recovered from the field correlator. The
/// commutator is 2i Im G, so
///   bracket_eps(w) = -4 pi Int_0^inf [Im G(u - i eps) - Im G(-u - i eps)] sin(w u) du,
/// extrapolated to eps -> 0 over the regulator schedule.
inline OracleEstimate chi_em_from_wightman(Axis i, Axis j, double omega, const GeometryScalars& geo,
                                           const QuadratureSpec& spec) {
  using std::numbers::pi;
  if (!(omega > 0.0)) throw DomainError("chi_em_from_wightman: omega must be > 0");
  if (!in_nonzero_pattern(i, j))
    throw DomainError(std::string("chi_em_from_wightman: component ") + axis_name(i) + axis_name(j) +
                      " is outside the pattern {xx, yy, zz, xz, zx}");
  spec.validate();
  const int ii = static_cast<int>(i), jj = static_cast<int>(j);
  const auto eps = detail::time_regulators(spec, wightman_time_unit(geo.a, omega));
  const double half_period = pi / omega;
  const std::string what =
      detail::context((std::string("chi_em_from_wightman[") + axis_name(i) + axis_name(j) + "]").c_str(), omega,
                      geo.z, geo.a);
  std::vector<double> vals;
  try {
    for (double e : eps) {
      auto integrand = [&](double u) {
        const auto plus = detail::em_wightman_tensor_safe({u, -e}, geo.z, geo.a)[ii][jj];
        const auto minus = detail::em_wightman_tensor_safe({-u, -e}, geo.z, geo.a)[ii][jj];
        return (plus.imag() - minus.imag()) * std::sin(omega * u);
      };
      const double end = geo.s + std::max(60.0 * e, 2.0 * half_period);
      const auto pts = detail::peak_breakpoints(geo.s, e, end, half_period);
      const auto head = integrate_adaptive(integrand, pts, spec);
      const auto tail = integrate_oscillatory_tail(integrand, end, half_period, spec);
      vals.push_back(-4.0 * pi * (head.value + tail.value));
    }
  } catch (const QuadratureError& e) {
    throw QuadratureError(what + ": " + e.what(), e.partial_value(), e.error_estimate());
  }
  return detail::finish_extrapolation(eps, vals, spec, what);
}

}  // namespace rindler
