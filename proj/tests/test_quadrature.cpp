#include <gtest/gtest.h>

#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "rindler/quadrature.hpp"
#include "support/oracles.hpp"

using namespace rindler;
using std::numbers::pi;

namespace {
const QuadratureSpec kSpec{};

double tol_of(double v, const QuadratureSpec& s = kSpec) { return std::max(s.abs_tol, s.rel_tol * std::abs(v)); }
}  // namespace

TEST(QuadratureSpec, DefaultsAreValid) {
  EXPECT_NO_THROW(kSpec.validate());
  EXPECT_NO_THROW(QuadratureSpec::oracle().validate());
  EXPECT_EQ(QuadratureSpec::oracle().abs_tol, 1e-8);
  EXPECT_EQ(QuadratureSpec::oracle().rel_tol, 1e-6);
}

TEST(QuadratureSpec, RejectsBadFields) {
  auto s = kSpec;
  s.abs_tol = 0;
  EXPECT_THROW(s.validate(), DomainError);
  s = kSpec;
  s.rel_tol = -1;
  EXPECT_THROW(s.validate(), DomainError);
  s = kSpec;
  s.regulator_schedule = {0.1, 0.1};
  EXPECT_THROW(s.validate(), DomainError);
  s.regulator_schedule = {0.1, 0.2};
  EXPECT_THROW(s.validate(), DomainError);
  s.regulator_schedule = {0.1, -0.05};
  EXPECT_THROW(s.validate(), DomainError);
  s.regulator_schedule = {};
  EXPECT_THROW(s.validate(), DomainError);
  s = kSpec;
  s.max_subdivisions = 0;
  EXPECT_THROW(s.validate(), DomainError);
}

TEST(IntegrateAdaptive, PolynomialsAreExactOnOnePanel) {
  // GK21 integrates degree <= 31 exactly.
  for (int p = 0; p <= 30; p += 3) {
    auto r = integrate_adaptive([p](double x) { return std::pow(x, p); }, 0.0, 1.0, kSpec);
    EXPECT_NEAR(r.value, 1.0 / (p + 1), 1e-15) << "degree " << p;
  }
}

TEST(IntegrateAdaptive, ExponentialOnHalfLine) {
  auto r = integrate_adaptive([](double x) { return std::exp(-x); }, 0.0, INFINITY, kSpec);
  EXPECT_NEAR(r.value, 1.0, tol_of(1.0));
}

TEST(IntegrateAdaptive, LorentzianOnHalfLine) {
  auto r = integrate_adaptive([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, INFINITY, kSpec);
  EXPECT_NEAR(r.value, pi / 2, tol_of(pi / 2));
}

TEST(IntegrateAdaptive, DampedFastSine) {
  auto r = integrate_adaptive([](double x) { return std::exp(-x) * std::sin(50 * x); }, 0.0, INFINITY, kSpec);
  EXPECT_NEAR(r.value, 50.0 / 2501.0, 10 * tol_of(50.0 / 2501.0));
}

TEST(IntegrateAdaptive, BreakpointOverloadMatchesPlain) {
  auto f = [](double x) { return std::sqrt(std::abs(x - 0.3)); };
  const std::vector<double> pts{0.0, 0.3, 1.0};
  auto r = integrate_adaptive(f, std::span<const double>(pts), kSpec);
  const double exact = (2.0 / 3.0) * (std::pow(0.3, 1.5) + std::pow(0.7, 1.5));
  EXPECT_NEAR(r.value, exact, tol_of(exact));
  EXPECT_GT(r.evaluations, 0);
}

TEST(IntegrateAdaptive, BudgetExhaustionCarriesPartialValue) {
  QuadratureSpec s = kSpec;
  s.max_subdivisions = 5;
  try {
    integrate_adaptive([](double x) { return std::sin(1.0 / x) / x; }, 1e-6, 1.0, s);
    FAIL() << "expected QuadratureError";
  } catch (const QuadratureError& e) {
    EXPECT_TRUE(std::isfinite(e.partial_value()));
    EXPECT_GT(e.error_estimate(), 0.0);
  }
}

TEST(IntegrateAdaptive, NonFiniteIntegrandIsReported) {
  EXPECT_THROW(integrate_adaptive([](double) { return NAN; }, 0.0, 1.0, kSpec), QuadratureError);
}

TEST(IntegrateAdaptive, InvalidIntervals) {
  auto f = [](double x) { return x; };
  EXPECT_THROW(integrate_adaptive(f, NAN, 1.0, kSpec), DomainError);
  EXPECT_THROW(integrate_adaptive(f, 0.0, -INFINITY, kSpec), DomainError);
  const std::vector<double> bad{0.0, 2.0, 1.0};
  EXPECT_THROW(integrate_adaptive(f, std::span<const double>(bad), kSpec), DomainError);
}

TEST(OscillatoryTail, SineIntegral) {
  // Int_1^inf sin(x)/x dx = pi/2 - Si(1)
  auto r = integrate_oscillatory_tail([](double x) { return std::sin(x) / x; }, 1.0, pi, kSpec);
  const double si1 = 0.94608307036718301494;
  EXPECT_NEAR(r.value, pi / 2 - si1, 1e-9);
}

TEST(OscillatoryTail, ExponentiallyDampedStopsEarly) {
  auto r = integrate_oscillatory_tail([](double x) { return std::exp(-x) * std::cos(x); }, 0.0, pi, kSpec);
  EXPECT_NEAR(r.value, 0.5, 1e-11);
}

TEST(WynnEpsilon, AcceleratesAlternatingSeries) {
  std::vector<double> sums;
  double s = 0.0;
  for (int k = 1; k <= 12; ++k) {
    s += (k % 2 ? 1.0 : -1.0) / k;
    sums.push_back(s);
  }
  // Epsilon-table diagonal for these 12 sums, evaluated in 50-digit arithmetic.
  EXPECT_NEAR(detail::wynn_epsilon(sums), 0.69314717951777676126833860371, 1e-14);
  EXPECT_LT(std::abs(detail::wynn_epsilon(sums) - std::log(2.0)), 2e-9);
  EXPECT_GT(std::abs(sums.back() - std::log(2.0)), 1e-2);
}

TEST(PrincipalValue, OddAboutPoleIsZero) {
  auto r = principal_value_integrate([](double x) { return 1.0 / (x - 1.0); }, 1.0, 0.0, 2.0, kSpec);
  EXPECT_NEAR(r.value, 0.0, kSpec.abs_tol);
}

TEST(PrincipalValue, ShiftedHyperbola) {
  auto r = principal_value_integrate([](double x) { return x / (x - 1.0); }, 1.0, 0.0, 2.0, kSpec);
  EXPECT_NEAR(r.value, 2.0, tol_of(2.0));
}

TEST(PrincipalValue, ExponentialMatchesWindowShrinkAndEi) {
  auto f = [](double x) { return std::exp(x) / (x - 1.0); };
  auto r = principal_value_integrate(f, 1.0, 0.0, 2.0, kSpec);
  // Exact: e (Ei(1) - Ei(-1)).
  const double exact = std::exp(1.0) * (boost::math::expint(1.0) - boost::math::expint(-1.0));
  EXPECT_NEAR(r.value, exact, 1e-9);
  // Independent: excise (1 - d, 1 + d) with shrinking d; the remainder is O(d).
  std::vector<double> d{1e-2, 5e-3, 2.5e-3}, v;
  for (double w : d)
    v.push_back(oracle::simpson(f, 0.0, 1.0 - w, 200000) + oracle::simpson(f, 1.0 + w, 2.0, 200000));
  const double richardson = 2.0 * v[2] - v[1];
  EXPECT_NEAR(r.value, richardson, 1e-6);
}

TEST(PrincipalValue, PoleOutsideIntervalIsDomainError) {
  auto f = [](double x) { return 1.0 / (x - 3.0); };
  EXPECT_THROW(principal_value_integrate(f, 3.0, 0.0, 2.0, kSpec), DomainError);
  EXPECT_THROW(principal_value_integrate(f, 0.0, 0.0, 2.0, kSpec), DomainError);
}

TEST(PrincipalValue, WindowShrinksNearEndpoint) {
  // pole_window 1e-2 exceeds the room to the endpoint; the result must still be correct.
  auto r = principal_value_integrate([](double x) { return 1.0 / (x - 0.995); }, 0.995, 0.99, 2.0, kSpec);
  EXPECT_NEAR(r.value, std::log(1.005 / 0.005), 1e-9);
}

TEST(Extrapolation, PolynomialIsRecoveredExactly) {
  const std::vector<double> h{0.1, 0.05, 0.025, 0.0125};
  std::vector<double> y;
  for (double x : h) y.push_back(3.0 - 2.0 * x + 5.0 * x * x - x * x * x);
  const auto e = extrapolate_to_zero(h, y);
  EXPECT_NEAR(e.value, 3.0, 1e-13);
  ASSERT_EQ(e.residuals.size(), 3u);
  EXPECT_TRUE(residuals_converging(e, 1e-14));
}

TEST(Extrapolation, NonMonotoneResidualsAreDetected) {
  const std::vector<double> h{0.1, 0.05, 0.025, 0.0125};
  const std::vector<double> y{1.0, 1.0, 1.0, 2.0};
  const auto e = extrapolate_to_zero(h, y);
  EXPECT_FALSE(residuals_converging(e, 1e-12));
}

TEST(Extrapolation, SizeMismatch) {
  const std::vector<double> h{0.1, 0.05}, y{1.0};
  EXPECT_THROW(extrapolate_to_zero(h, y), DomainError);
}
