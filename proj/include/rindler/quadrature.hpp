#pragma once

// Adaptive Gauss-Kronrod quadrature, oscillatory tails, Cauchy principal values
// and polynomial extrapolation of regulated sequences.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "rindler/errors.hpp"

namespace rindler {

/// Tolerances and regulator settings shared by every integrator in the library.
struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 4000;
  /// Regulator values for epsilon -> 0 extrapolation, strictly decreasing. Each oracle
  /// documents the unit it attaches to them.
  std::vector<double> regulator_schedule{0.1, 0.05, 0.025, 0.0125};
  /// Half-width of the symmetric window around a simple pole.
  double pole_window = 1e-2;

  void validate() const {
    if (!(abs_tol > 0) || !(rel_tol > 0))
      throw DomainError("QuadratureSpec: abs_tol and rel_tol must be positive");
    if (max_subdivisions < 1)
      throw DomainError("QuadratureSpec: max_subdivisions must be positive");
    if (!(pole_window > 0))
      throw DomainError("QuadratureSpec: pole_window must be positive");
    if (regulator_schedule.empty())
      throw DomainError("QuadratureSpec: regulator_schedule is empty");
    for (std::size_t k = 0; k < regulator_schedule.size(); ++k) {
      if (!(regulator_schedule[k] > 0))
        throw DomainError("QuadratureSpec: regulator values must be positive");
      if (k > 0 && !(regulator_schedule[k] < regulator_schedule[k - 1]))
        throw DomainError("QuadratureSpec: regulator_schedule must be strictly decreasing");
    }
  }

  QuadratureSpec with_tolerances(double abs, double rel) const {
    QuadratureSpec s = *this;
    s.abs_tol = abs;
    s.rel_tol = rel;
    return s;
  }

  /// Tolerances used for special-function evaluation.
  static QuadratureSpec special_function() { return QuadratureSpec{}; }
  /// Looser tolerances for oracle integrals, which stack several quadrature layers.
  static QuadratureSpec oracle() { return QuadratureSpec{}.with_tolerances(1e-8, 1e-6); }
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kKronrodNodes{
    0.00000000000000000e+00, 1.48874338981631211e-01, 2.94392862701460198e-01,
    4.33395394129247191e-01, 5.62757134668604683e-01, 6.79409568299024406e-01,
    7.80817726586416897e-01, 8.65063366688984511e-01, 9.30157491355708226e-01,
    9.73906528517171720e-01, 9.95657163025808081e-01};
inline constexpr std::array<double, 11> kKronrodWeights{
    1.49445554002916906e-01, 1.47739104901338491e-01, 1.42775938577060081e-01,
    1.34709217311473326e-01, 1.23491976262065851e-01, 1.09387158802297642e-01,
    9.31254545836976055e-02, 7.50396748109199528e-02, 5.47558965743519960e-02,
    3.25581623079647275e-02, 1.16946388673718743e-02};
// Gauss weights for the nodes at odd Kronrod indices.
inline constexpr std::array<double, 5> kGaussWeights{
    2.95524224714752870e-01, 2.69266719309996355e-01, 2.19086362515982044e-01,
    1.49451349150580593e-01, 6.66713443086881376e-02};

struct Panel {
  double a, b, value, error;
};

inline void check_finite(double v, double x) {
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "integrand is not finite at x = " << x;
    throw QuadratureError(os.str(), std::numeric_limits<double>::quiet_NaN(),
                          std::numeric_limits<double>::infinity());
  }
}

template <class F>
Panel kronrod21(F& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<double, 11> lo{}, hi{};
  const double fc = f(center);
  check_finite(fc, center);
  double kronrod = kKronrodWeights[0] * fc;
  double gauss = 0.0;
  double abs_sum = std::abs(kronrod);
  for (std::size_t j = 1; j < 11; ++j) {
    const double dx = half * kKronrodNodes[j];
    lo[j] = f(center - dx);
    hi[j] = f(center + dx);
    check_finite(lo[j], center - dx);
    check_finite(hi[j], center + dx);
    kronrod += kKronrodWeights[j] * (lo[j] + hi[j]);
    abs_sum += kKronrodWeights[j] * (std::abs(lo[j]) + std::abs(hi[j]));
    if (j % 2 == 1) gauss += kGaussWeights[(j - 1) / 2] * (lo[j] + hi[j]);
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[0] * std::abs(fc - mean);
  for (std::size_t j = 1; j < 11; ++j)
    asc += kKronrodWeights[j] * (std::abs(lo[j] - mean) + std::abs(hi[j] - mean));

  const double scale = std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  asc *= scale;
  abs_sum *= scale;
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  if (abs_sum > tiny / (50.0 * eps)) err = std::max(50.0 * eps * abs_sum, err);
  return {a, b, kronrod * half, err};
}

inline bool error_order(const Panel& l, const Panel& r) { return l.error < r.error; }

template <class F>
QuadratureResult adaptive_core(F& f, std::span<const double> points, const QuadratureSpec& spec) {
  std::vector<Panel> heap;
  heap.reserve(points.size() + 64);
  long evals = 0;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    if (points[k + 1] == points[k]) continue;
    heap.push_back(kronrod21(f, points[k], points[k + 1]));
    evals += 21;
  }
  std::make_heap(heap.begin(), heap.end(), error_order);

  double settled_value = 0.0, settled_error = 0.0;
  auto totals = [&] {
    double v = settled_value, e = settled_error;
    for (const auto& p : heap) {
      v += p.value;
      e += p.error;
    }
    return std::pair{v, e};
  };

  auto [total, error] = totals();
  int splits = 0;
  for (;;) {
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    if (error <= tol) break;
    if (heap.empty()) {
      std::ostringstream os;
      os << "quadrature limited by roundoff: error estimate " << error << " > tolerance " << tol;
      throw QuadratureError(os.str(), total, error);
    }
    if (splits >= spec.max_subdivisions) {
      std::ostringstream os;
      os << "quadrature did not converge within " << spec.max_subdivisions
         << " subdivisions: error estimate " << error << " > tolerance " << tol;
      throw QuadratureError(os.str(), total, error);
    }
    std::pop_heap(heap.begin(), heap.end(), error_order);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    const double span = std::abs(worst.b - worst.a);
    const double floor =
        64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(worst.a), std::abs(worst.b));
    if (mid <= std::min(worst.a, worst.b) || mid >= std::max(worst.a, worst.b) || span <= floor) {
      settled_value += worst.value;
      settled_error += worst.error;
      continue;
    }
    const Panel left = kronrod21(f, worst.a, mid);
    const Panel right = kronrod21(f, mid, worst.b);
    evals += 42;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), error_order);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), error_order);
    ++splits;
    if (splits % 64 == 0) {
      std::tie(total, error) = totals();
    } else {
      total += left.value + right.value - worst.value;
      error += left.error + right.error - worst.error;
    }
  }
  std::tie(total, error) = totals();
  return {total, error, evals};
}

}  // namespace detail

/// Integrates f over [a, b]; b may be +infinity, in which case the integrand must decay.
/// Stops once the global error estimate is below max(abs_tol, rel_tol |value|).
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, const QuadratureSpec& spec) {
  if (std::isnan(a) || std::isnan(b) || std::isinf(a))
    throw DomainError("integrate_adaptive: invalid interval");
  if (std::isinf(b)) {
    if (b < 0) throw DomainError("integrate_adaptive: upper limit -infinity is not supported");
    auto mapped = [&f, a](double t) {
      const double one_minus = 1.0 - t;
      const double x = a + t / one_minus;
      const double v = f(x);
      return v == 0.0 ? 0.0 : v / (one_minus * one_minus);
    };
    const std::array<double, 2> pts{0.0, 1.0};
    return detail::adaptive_core(mapped, pts, spec);
  }
  const std::array<double, 2> pts{a, b};
  return detail::adaptive_core(f, pts, spec);
}

/// Same as integrate_adaptive over [points.front(), points.back()], seeded with the given
/// (finite, ordered) breakpoints as the initial partition.
template <class F>
QuadratureResult integrate_adaptive(F&& f, std::span<const double> points, const QuadratureSpec& spec) {
  if (points.size() < 2) throw DomainError("integrate_adaptive: need at least two breakpoints");
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (!std::isfinite(points[k])) throw DomainError("integrate_adaptive: breakpoints must be finite");
    if (k > 0 && points[k] < points[k - 1])
      throw DomainError("integrate_adaptive: breakpoints must be non-decreasing");
  }
  return detail::adaptive_core(f, points, spec);
}

namespace detail {

// Wynn epsilon algorithm on partial sums; returns the highest even-column estimate.
inline double wynn_epsilon(std::span<const double> sums) {
  const std::size_t n = sums.size();
  if (n < 3) return sums.back();
  std::vector<double> prev(n + 1, 0.0);  // column k-1
  std::vector<double> cur(sums.begin(), sums.end());  // column k
  double best = sums.back();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> next(cur.size() - 1);
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const double diff = cur[i + 1] - cur[i];
      if (diff == 0.0) return k % 2 == 1 ? cur[i + 1] : best;
      next[i] = prev[i + 1] + 1.0 / diff;
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (k % 2 == 0) best = cur.back();
    if (cur.size() < 2) break;
  }
  return best;
}

}  // namespace detail

/// Integrates a slowly decaying oscillatory integrand over [a, +infinity) by summing
/// panels one half-period long and accelerating the partial sums with Wynn's epsilon
/// algorithm.
template <class F>
QuadratureResult integrate_oscillatory_tail(F&& f, double a, double half_period, const QuadratureSpec& spec,
                                            int max_panels = 20000) {
  if (!(half_period > 0) || !std::isfinite(a))
    throw DomainError("integrate_oscillatory_tail: half_period must be positive and a finite");
  constexpr std::size_t window = 24;
  const QuadratureSpec panel_spec = spec.with_tolerances(spec.abs_tol * 1e-2, spec.rel_tol);
  std::vector<double> sums;
  sums.reserve(window);
  double sum = 0.0, error = 0.0, last_estimate = 0.0;
  long evals = 0;
  int stable = 0, quiet = 0;
  for (int k = 0; k < max_panels; ++k) {
    const double lo = a + k * half_period;
    const auto panel = integrate_adaptive(f, lo, lo + half_period, panel_spec);
    evals += panel.evaluations;
    sum += panel.value;
    error += panel.error;
    if (sums.size() == window) sums.erase(sums.begin());
    sums.push_back(sum);

    const double estimate = detail::wynn_epsilon(sums);
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(estimate));
    quiet = std::abs(panel.value) <= 1e-3 * tol ? quiet + 1 : 0;
    if (quiet >= 3) return {sum, error + std::abs(estimate - sum), evals};
    if (k >= 4) {
      stable = std::abs(estimate - last_estimate) <= tol ? stable + 1 : 0;
      if (stable >= 3) return {estimate, error + std::abs(estimate - last_estimate), evals};
    }
    last_estimate = estimate;
  }
  throw QuadratureError("oscillatory tail did not converge", last_estimate, std::abs(sum - last_estimate));
}

/// Cauchy principal value of f over (a, b) where f has a simple pole at `pole`.
/// Inside pole_window the integrand is paired symmetrically, f(pole+t) + f(pole-t),
/// which removes the singular part; outside it ordinary adaptive quadrature is used.
template <class F>
QuadratureResult principal_value_integrate(F&& f, double pole, double a, double b, const QuadratureSpec& spec) {
  if (!(a < pole && pole < b)) throw DomainError("principal_value_integrate: pole must lie inside (a, b)");
  const double room = std::min(pole - a, b - pole);
  const double window = spec.pole_window < room ? spec.pole_window : 0.5 * room;
  // The offset is taken from the rounded abscissa so that both sides sit at exactly the
  // same distance from the pole and the singular parts cancel without roundoff.
  auto paired = [&f, pole](double t) {
    const double right = pole + t;
    const double d = right - pole;
    if (d == 0.0) return 0.0;
    return f(right) + f(pole - d);
  };
  const auto inner = integrate_adaptive(paired, 0.0, window, spec);
  const std::array<double, 2> left_pts{a, pole - window};
  const std::array<double, 2> right_pts{pole + window, b};
  const auto left = detail::adaptive_core(f, left_pts, spec);
  const auto right = detail::adaptive_core(f, right_pts, spec);
  return {inner.value + left.value + right.value, inner.error + left.error + right.error,
          inner.evaluations + left.evaluations + right.evaluations};
}

/// Result of extrapolating a regulated sequence y(h) to h = 0.
struct Extrapolation {
  double value = 0.0;
  double error = 0.0;
  std::vector<double> diagonal;   // successive extrapolants using 1, 2, ... samples
  std::vector<double> residuals;  // |diagonal[k] - diagonal[k-1]|
};

/// Polynomial (Richardson/Neville) extrapolation of y(h) to h = 0 using every sample.
inline Extrapolation extrapolate_to_zero(std::span<const double> h, std::span<const double> y) {
  if (h.size() != y.size() || h.empty()) throw DomainError("extrapolate_to_zero: size mismatch");
  const std::size_t n = h.size();
  Extrapolation out;
  // Diagonal entries use samples 0..k; table[i] holds P_{i..i+k}(0).
  std::vector<double> table(y.begin(), y.end());
  out.diagonal.push_back(table[0]);
  std::vector<std::vector<double>> columns{table};
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> next(n - k);
    const auto& prev = columns.back();
    for (std::size_t i = 0; i + k < n; ++i)
      next[i] = (h[i] * prev[i + 1] - h[i + k] * prev[i]) / (h[i] - h[i + k]);
    columns.push_back(next);
    out.diagonal.push_back(next[0]);
    out.residuals.push_back(std::abs(out.diagonal[k] - out.diagonal[k - 1]));
  }
  out.value = out.diagonal.back();
  out.error = out.residuals.empty() ? std::abs(out.value) : out.residuals.back();
  return out;
}

/// True when extrapolation residuals shrink monotonically, ignoring residuals already
/// below `noise_floor`.
inline bool residuals_converging(const Extrapolation& e, double noise_floor) {
  for (std::size_t k = 1; k < e.residuals.size(); ++k) {
    if (e.residuals[k] <= noise_floor) continue;
    if (!(e.residuals[k] < e.residuals[k - 1])) return false;
  }
  return true;
}

}  // namespace rindler
