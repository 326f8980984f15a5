#pragma once

// Resonance interaction energy of two identical two-level atoms sharing one excitation in
// (|g_A e_B> +/- |e_A g_B>)/sqrt(2), on parallel hyperbolic worldlines. Only the
// radiation-reaction part contributes:
//   dE = -i Int_{-inf}^{tau} dtau' chi(x_A(tau), x_B(tau')) C_AB(tau, tau') + (A <-> B).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "rindler/em_channel.hpp"
#include "rindler/errors.hpp"
#include "rindler/kinematics.hpp"
#include "rindler/quadrature.hpp"
#include "rindler/scalar_channel.hpp"
#include "rindler/types.hpp"

namespace rindler {

using Vec3 = std::array<double, 3>;

struct AtomPairConfig {
  double omega0 = 1.0;
  double a = 0.0;
  double z = 1.0;
  StateSymmetry symmetry = StateSymmetry::symmetric;
  double coupling_lambda = 1.0;  // scalar channel
  Vec3 dipole_A{0.0, 0.0, 1.0};  // EM channel, charge absorbed
  Vec3 dipole_B{0.0, 0.0, 1.0};

  void validate() const {
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw DomainError("omega0 must be finite and > 0");
    if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("z must be finite and > 0");
    if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("a must be finite and >= 0");
    if (!std::isfinite(coupling_lambda)) throw DomainError("lambda must be finite");
    for (double d : dipole_A)
      if (!std::isfinite(d)) throw DomainError("dipole_A must be finite");
    for (double d : dipole_B)
      if (!std::isfinite(d)) throw DomainError("dipole_B must be finite");
  }
  GeometryScalars geometry() const { return geometry_scalars(z, a); }
  double state_sign() const { return symmetry == StateSymmetry::symmetric ? 1.0 : -1.0; }
};

struct EnergyShiftResult {
  double value = 0.0;
  Channel channel = Channel::scalar;
  Method method = Method::closed_form;
  std::vector<RegulatorSample> regulator_report;
  double error_estimate = 0.0;
};

/// C_AB(dtau) = (1/2) <psi|{sigma_2^A(tau), sigma_2^B(tau')}|psi> = +/- (1/4) cos(w0 dtau).
inline double c_ab_scalar(double delta_tau, const AtomPairConfig& cfg) {
  return cfg.state_sign() * 0.25 * std::cos(cfg.omega0 * delta_tau);
}

/// C_ij(dtau) = +/- mu^A_i mu^B_j cos(w0 dtau).
inline Tensor3 c_ab_em(double delta_tau, const AtomPairConfig& cfg) {
  const double k = cfg.state_sign() * std::cos(cfg.omega0 * delta_tau);
  Tensor3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c[i][j] = k * cfg.dipole_A[i] * cfg.dipole_B[j];
  return c;
}

/// -/+ (lambda^2 / 16 pi) cos(w0 s) / (z sqrt N), upper sign for the symmetric state.
inline EnergyShiftResult delta_e_scalar_closed(const AtomPairConfig& cfg) {
  using std::numbers::pi;
  cfg.validate();
  const auto geo = cfg.geometry();
  const double lam2 = cfg.coupling_lambda * cfg.coupling_lambda;
  EnergyShiftResult r;
  r.value = -cfg.state_sign() * lam2 / (16.0 * pi) * std::cos(cfg.omega0 * geo.s) / (geo.z * geo.sqrt_N());
  r.channel = Channel::scalar;
  r.method = Method::closed_form;
  return r;
}

/// +/- (1/4 pi) { sum_i mu^A_i mu^B_i [f_ii sin(w0 s) - g_ii cos(w0 s)]
///              + (mu^A_x mu^B_z - mu^A_z mu^B_x) [f_xz sin(w0 s) - g_xz cos(w0 s)] }.
inline EnergyShiftResult delta_e_em_closed(const AtomPairConfig& cfg) {
  using std::numbers::pi;
  cfg.validate();
  const auto geo = cfg.geometry();
  const auto f = f_tensor(cfg.omega0, geo);
  const auto g = g_tensor(cfg.omega0, geo);
  const double sn = std::sin(cfg.omega0 * geo.s), cs = std::cos(cfg.omega0 * geo.s);
  const auto& mA = cfg.dipole_A;
  const auto& mB = cfg.dipole_B;
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) sum += mA[i] * mB[i] * (f[i][i] * sn - g[i][i] * cs);
  sum += (mA[0] * mB[2] - mA[2] * mB[0]) * (f[0][2] * sn - g[0][2] * cs);
  EnergyShiftResult r;
  r.value = cfg.state_sign() * sum / (4.0 * pi);
  r.channel = Channel::em;
  r.method = Method::closed_form;
  return r;
}

namespace detail {

// Both orderings (A <-> B) are integrated separately; they must agree to this many
// multiples of the quadrature tolerance.
inline constexpr double kExchangeSlack = 100.0;

inline void check_exchange(double term_ab, double term_ba, const QuadratureSpec& spec, const std::string& what) {
  const double tol = kExchangeSlack * std::max(spec.abs_tol, spec.rel_tol * std::abs(term_ab));
  if (std::abs(term_ab - term_ba) > tol)
    throw OracleError(what + ": the A->B and B->A terms differ (" + std::to_string(term_ab) + " vs " +
                      std::to_string(term_ba) + ")");
}

inline std::string shift_context(const char* op, const AtomPairConfig& cfg) {
  std::ostringstream os;
  os << op << "(omega0=" << cfg.omega0 << ", z=" << cfg.z << ", a=" << cfg.a << ")";
  return os.str();
}

// Regulator unit for time-domain shift integrals: small against the transition period,
// the thermal time 1/a and the separation s. The regulated integral is analytic in eps
// only for |eps| < s and its Taylor coefficients grow like s^{-k} (faster for the
// third-order EM pole), so the schedule is kept within s/4.
inline double shift_time_unit(const AtomPairConfig& cfg, const GeometryScalars& geo) {
  double unit = std::min(1.0 / cfg.omega0, 0.25 * geo.s);
  if (cfg.a > 0.0) unit = std::min(unit, 1.0 / cfg.a);
  return unit;
}

// Int_0^inf h(u) du for a time-domain integrand peaked at u = s and oscillating at w0.
template <class F>
double time_domain_integral(F&& h, double s, double eps, double omega0, const QuadratureSpec& spec) {
  const double half_period = std::numbers::pi / omega0;
  const double end = s + std::max(60.0 * eps, 2.0 * half_period);
  const auto pts = peak_breakpoints(s, eps, end, half_period);
  return integrate_adaptive(h, pts, spec).value + integrate_oscillatory_tail(h, end, half_period, spec).value;
}

}  // namespace detail

/// Scalar shift from the spectral form of the susceptibility. The tau' integral with
/// damping e^{-eps u} is done in closed form,
///   Int_0^inf sin(w u) cos(w0 u) e^{-eps u} du
///     = (1/2) [(w + w0)/((w + w0)^2 + eps^2) + (w - w0)/((w - w0)^2 + eps^2)],
/// leaving a regulated principal-value integral over w; each ordering contributes
/// 2 lambda^2 C_AB(0) Int_0^inf c(w) L_eps(w) dw, and the sum is extrapolated to eps -> 0.
inline EnergyShiftResult delta_e_scalar_oracle(const AtomPairConfig& cfg, const QuadratureSpec& spec) {
  using std::numbers::pi;
  cfg.validate();
  spec.validate();
  const auto geo = cfg.geometry();
  const std::string what = detail::shift_context("delta_e_scalar_oracle", cfg);
  const double w0 = cfg.omega0;
  const double lam2 = cfg.coupling_lambda * cfg.coupling_lambda;
  const double c0 = c_ab_scalar(0.0, cfg);
  const double half_period = pi / geo.s;

  std::vector<double> eps, vals;
  for (double e : spec.regulator_schedule) eps.push_back(e * w0);
  try {
    for (double e : eps) {
      auto ordering = [&](double z_signed) {
        auto integrand = [&](double w) {
          const double p = w + w0, m = w - w0;
          const double l = 0.5 * (p / (p * p + e * e) + m / (m * m + e * e));
          return -0.5 * detail::scalar_spectral_density(w, z_signed, cfg.a) * l;
        };
        const double end = 2.0 * w0 + std::max(60.0 * e, 2.0 * half_period);
        std::vector<double> pts{0.0, end};
        for (double k : {0.0, 1.0, 3.0, 10.0, 30.0}) {
          for (double sgn : {-1.0, 1.0}) {
            const double p = w0 + sgn * k * e;
            if (p > 0.0 && p < end) pts.push_back(p);
          }
        }
        for (double p = half_period; p < end; p += half_period) pts.push_back(p);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        const double head = integrate_adaptive(integrand, pts, spec).value;
        const double tail = integrate_oscillatory_tail(integrand, end, half_period, spec).value;
        return 2.0 * lam2 * c0 * (head + tail);
      };
      const double ab = ordering(cfg.z);
      const double ba = ordering(-cfg.z);
      detail::check_exchange(ab, ba, spec, what);
      vals.push_back(ab + ba);
    }
  } catch (const QuadratureError& e) {
    throw QuadratureError(what + ": " + e.what(), e.partial_value(), e.error_estimate());
  }
  const auto est = detail::finish_extrapolation(eps, vals, spec, what);
  return {est.value, Channel::scalar, Method::oracle, est.regulator_report, est.error};
}

/// Scalar shift computed directly in proper time from the Minkowski Wightman function:
/// the commutator is 2i Im W, so each ordering is lambda^2 Int_0^inf Im W(u - i eps) C_AB(u) du.
inline EnergyShiftResult delta_e_scalar_wightman_oracle(const AtomPairConfig& cfg, const QuadratureSpec& spec) {
  cfg.validate();
  spec.validate();
  const auto geo = cfg.geometry();
  const std::string what = detail::shift_context("delta_e_scalar_wightman_oracle", cfg);
  const double lam2 = cfg.coupling_lambda * cfg.coupling_lambda;
  const auto eps = detail::time_regulators(spec, detail::shift_time_unit(cfg, geo));
  std::vector<double> vals;
  try {
    for (double e : eps) {
      auto ordering = [&](double z_signed) {
        auto h = [&](double u) {
          return std::imag(detail::scalar_wightman({u, -e}, z_signed, cfg.a)) * c_ab_scalar(u, cfg);
        };
        return lam2 * detail::time_domain_integral(h, geo.s, e, cfg.omega0, spec);
      };
      const double ab = ordering(cfg.z);
      const double ba = ordering(-cfg.z);
      detail::check_exchange(ab, ba, spec, what);
      vals.push_back(ab + ba);
    }
  } catch (const QuadratureError& e) {
    throw QuadratureError(what + ": " + e.what(), e.partial_value(), e.error_estimate());
  }
  const auto est = detail::finish_extrapolation(eps, vals, spec, what);
  return {est.value, Channel::scalar, Method::oracle, est.regulator_report, est.error};
}

/// EM shift in proper time from the rest-frame field correlator: each ordering is
/// sum_ij Int_0^inf Im G_ij(u - i eps) C_ij(u) du, the B -> A ordering using -z and
/// the dipoles exchanged.
inline EnergyShiftResult delta_e_em_oracle(const AtomPairConfig& cfg, const QuadratureSpec& spec) {
  cfg.validate();
  spec.validate();
  const auto geo = cfg.geometry();
  const std::string what = detail::shift_context("delta_e_em_oracle", cfg);
  const auto eps = detail::time_regulators(spec, detail::shift_time_unit(cfg, geo));
  std::vector<double> vals;
  try {
    for (double e : eps) {
      auto ordering = [&](double z_signed, const Vec3& m1, const Vec3& m2) {
        auto h = [&](double u) {
          const auto gt = detail::em_wightman_tensor_safe({u, -e}, z_signed, cfg.a);
          double sum = 0.0;
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) sum += m1[i] * m2[j] * gt[i][j].imag();
          return cfg.state_sign() * std::cos(cfg.omega0 * u) * sum;
        };
        return detail::time_domain_integral(h, geo.s, e, cfg.omega0, spec);
      };
      const double ab = ordering(cfg.z, cfg.dipole_A, cfg.dipole_B);
      const double ba = ordering(-cfg.z, cfg.dipole_B, cfg.dipole_A);
      detail::check_exchange(ab, ba, spec, what);
      vals.push_back(ab + ba);
    }
  } catch (const QuadratureError& e) {
    throw QuadratureError(what + ": " + e.what(), e.partial_value(), e.error_estimate());
  }
  const auto est = detail::finish_extrapolation(eps, vals, spec, what);
  return {est.value, Channel::em, Method::oracle, est.regulator_report, est.error};
}

inline EnergyShiftResult delta_e(const AtomPairConfig& cfg, Channel channel, Method method,
                                 const QuadratureSpec& spec = QuadratureSpec::oracle()) {
  if (channel == Channel::scalar)
    return method == Method::closed_form ? delta_e_scalar_closed(cfg) : delta_e_scalar_oracle(cfg, spec);
  return method == Method::closed_form ? delta_e_em_closed(cfg) : delta_e_em_oracle(cfg, spec);
}

/// Outcome of the vacuum-fluctuation cross term: the value and the largest entry of the
/// commutator [sigma_2^A(tau), sigma_2^B(tau')] seen over the sampled time pairs.
struct VacuumFluctuationCheck {
  double value = 0.0;
  double max_commutator_entry = 0.0;
  std::size_t samples = 0;
};

namespace detail {

using Op4 = std::array<std::complex<double>, 16>;  // two-atom operator, index 2*A + B

inline Op4 mul(const Op4& x, const Op4& y) {
  Op4 out{};
  for (int r = 0; r < 4; ++r)
    for (int k = 0; k < 4; ++k)
      for (int c = 0; c < 4; ++c) out[4 * r + c] += x[4 * r + k] * y[4 * k + c];
  return out;
}

// sigma_2(tau) = (i/2)(sigma_- e^{-i w0 tau} - sigma_+ e^{i w0 tau}) acting on one atom,
// embedded as op (x) 1 for atom A or 1 (x) op for atom B.
inline Op4 sigma2_embedded(double omega0, double tau, bool atom_a) {
  const std::complex<double> i(0.0, 1.0);
  // single-atom 2x2 in basis {g, e}: sigma_- = |g><e| (row 0, col 1), sigma_+ = |e><g|.
  std::array<std::complex<double>, 4> s{};
  s[1] = 0.5 * i * std::exp(-i * omega0 * tau);
  s[2] = -0.5 * i * std::exp(i * omega0 * tau);
  Op4 out{};
  for (int a1 = 0; a1 < 2; ++a1)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int b2 = 0; b2 < 2; ++b2) {
          const std::complex<double> v = atom_a ? (b1 == b2 ? s[2 * a1 + a2] : 0.0) : (a1 == a2 ? s[2 * b1 + b2] : 0.0);
          out[4 * (2 * a1 + b1) + (2 * a2 + b2)] = v;
        }
  return out;
}

}  // namespace detail

/// Interatomic vacuum-fluctuation contribution. It is proportional to
/// <psi|[sigma_2^A(tau), sigma_2^B(tau')]|psi>, which vanishes because operators of
/// distinct atoms commute; the commutator is formed explicitly on sampled time pairs.
inline VacuumFluctuationCheck vf_cross_term(const AtomPairConfig& cfg) {
  cfg.validate();
  const double r = 1.0 / std::sqrt(2.0);
  std::array<std::complex<double>, 4> psi{0.0, r, cfg.state_sign() * r, 0.0};  // |g e>, |e g>
  VacuumFluctuationCheck out;
  std::complex<double> total = 0.0;
  const double period = 2.0 * std::numbers::pi / cfg.omega0;
  for (int p = 0; p < 8; ++p) {
    for (int q = 0; q < 8; ++q) {
      const double tau = 0.37 * p * period, tau_p = -0.29 * q * period;
      const auto sa = detail::sigma2_embedded(cfg.omega0, tau, true);
      const auto sb = detail::sigma2_embedded(cfg.omega0, tau_p, false);
      const auto ab = detail::mul(sa, sb), ba = detail::mul(sb, sa);
      std::complex<double> expect = 0.0;
      for (int k = 0; k < 16; ++k) {
        const auto comm = ab[k] - ba[k];
        out.max_commutator_entry = std::max(out.max_commutator_entry, std::abs(comm));
        expect += std::conj(psi[k / 4]) * comm * psi[k % 4];
      }
      total += expect;
      ++out.samples;
    }
  }
  out.value = total.real();
  return out;
}

}  // namespace rindler
