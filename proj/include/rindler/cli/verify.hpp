#pragma once

// The verification suite behind `rindler verify`: the frame-equivalence comparisons, the
// inertial limit, exact structural identities and a special-function spot check, each
// recorded with its reference, computed value, error and tolerance.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rindler/em_channel.hpp"
#include "rindler/parallel.hpp"
#include "rindler/scalar_channel.hpp"
#include "rindler/shift_engine.hpp"
#include "rindler/specfun.hpp"

namespace rindler::cli {

struct CheckRecord {
  std::string name;
  std::string point;
  double reference = 0.0;
  double computed = 0.0;
  double error = 0.0;  // relative unless `absolute`
  double tolerance = 0.0;
  bool absolute = false;
  bool passed = false;
  double runtime_s = 0.0;
  std::string note;
};

struct VerificationReport {
  std::vector<CheckRecord> records;
  double runtime_s = 0.0;

  bool passed() const {
    for (const auto& r : records)
      if (!r.passed) return false;
    return true;
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& r : records) n += r.passed ? 0 : 1;
    return n;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["passed"] = passed();
    j["failures"] = failures();
    j["runtime_s"] = runtime_s;
    j["records"] = nlohmann::json::array();
    for (const auto& r : records) {
      j["records"].push_back({{"name", r.name},
                              {"point", r.point},
                              {"reference", r.reference},
                              {"computed", r.computed},
                              {"error", r.error},
                              {"error_kind", r.absolute ? "absolute" : "relative"},
                              {"tolerance", r.tolerance},
                              {"passed", r.passed},
                              {"runtime_s", r.runtime_s},
                              {"note", r.note}});
    }
    return j;
  }

  /// One line per check group with its worst error, then every failing record.
  void print_table(std::ostream& os) const {
    struct Group {
      std::string name;
      std::size_t count = 0, failed = 0;
      double worst = 0.0, tolerance = 0.0, runtime = 0.0;
    };
    std::vector<Group> groups;
    for (const auto& r : records) {
      auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) { return g.name == r.name; });
      if (it == groups.end()) {
        groups.push_back({r.name});
        it = groups.end() - 1;
      }
      ++it->count;
      it->failed += r.passed ? 0 : 1;
      it->worst = std::max(it->worst, std::isfinite(r.error) ? r.error : INFINITY);
      it->tolerance = r.tolerance;
      it->runtime += r.runtime_s;
    }
    char line[256];
    std::snprintf(line, sizeof line, "%-34s %6s %6s %12s %12s %9s  %s\n", "check", "points", "failed", "worst err",
                  "tolerance", "time[s]", "status");
    os << line;
    for (const auto& g : groups) {
      std::snprintf(line, sizeof line, "%-34s %6zu %6zu %12.3e %12.3e %9.2f  %s\n", g.name.c_str(), g.count, g.failed,
                    g.worst, g.tolerance, g.runtime, g.failed ? "FAIL" : "ok");
      os << line;
    }
    for (const auto& r : records) {
      if (r.passed) continue;
      os << "  FAIL " << r.name << " at " << r.point << ": reference " << r.reference << ", computed " << r.computed
         << ", error " << r.error << " > " << r.tolerance;
      if (!r.note.empty()) os << " (" << r.note << ")";
      os << '\n';
    }
    std::snprintf(line, sizeof line, "%zu checks, %zu failed, %.1f s: %s\n", records.size(), failures(), runtime_s,
                  passed() ? "PASS" : "FAIL");
    os << line;
  }
};

struct VerifyGrid {
  std::vector<double> chi_omegas{0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<double> chi_zs{0.1, 0.5, 1.0, 2.0};
  std::vector<double> chi_as{0.1, 1.0, 5.0};
  std::vector<double> shift_omega0s{0.5, 1.0, 2.0};
  std::vector<double> shift_zs{0.3, 1.0, 2.0};
  std::vector<double> shift_as{0.0, 0.5, 2.0};
  std::vector<double> em_omegas{0.5, 1.0, 2.0};
  std::vector<double> em_zs{0.5, 1.0};
  std::vector<double> em_as{0.5, 1.0};

  /// Replaces every acceleration list.
  void restrict_acceleration(const std::vector<double>& as) { chi_as = shift_as = em_as = as; }
};

struct VerifyOptions {
  VerifyGrid grid;
  std::optional<double> tolerance_override;
  unsigned threads = default_thread_count();
  QuadratureSpec mode_sum_spec = QuadratureSpec{}.with_tolerances(1e-13, 1e-9);
  QuadratureSpec oracle_spec = QuadratureSpec::oracle();
  std::uint64_t seed = 20240611;
};

// Tolerances of the individual checks.
inline constexpr double kTolModeSum = 1e-5;
inline constexpr double kTolWightman = 1e-3;
inline constexpr double kTolShiftOracle = 1e-3;
inline constexpr double kTolShiftFrames = 2e-3;
inline constexpr double kTolInertialLimit = 1e-6;
inline constexpr double kTolAtRest = 1e-8;
inline constexpr double kTolEmFrames = 1e-2;
inline constexpr double kTolPolynomialFit = 1e-12;
inline constexpr double kTolSpecfun = 1e-10;
inline constexpr double kInertialAcceleration = 1e-6;

namespace detail {

inline double rel_err(double computed, double reference) {
  return reference == 0.0 ? std::abs(computed) : std::abs(computed - reference) / std::abs(reference);
}

inline std::string point_str(std::initializer_list<std::pair<const char*, double>> kv, const std::string& extra = "") {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : kv) {
    os << (first ? "" : " ") << k << "=" << v;
    first = false;
  }
  if (!extra.empty()) os << " " << extra;
  return os.str();
}

struct Job {
  std::string name;
  std::string point;
  double tolerance = 0.0;
  bool absolute = false;
  // Returns (reference, computed); an exception marks the record failed.
  std::function<std::pair<double, double>()> run;
};

inline CheckRecord execute(const Job& job, std::optional<double> override_tol) {
  CheckRecord r;
  r.name = job.name;
  r.point = job.point;
  r.tolerance = override_tol.value_or(job.tolerance);
  r.absolute = job.absolute;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const auto [ref, got] = job.run();
    r.reference = ref;
    r.computed = got;
    r.error = job.absolute ? std::abs(got - ref) : rel_err(got, ref);
    r.passed = std::isfinite(r.error) && r.error <= r.tolerance;
  } catch (const std::exception& e) {
    r.error = INFINITY;
    r.passed = false;
    r.note = e.what();
  }
  r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline double inertial_scalar_coefficient(double omega, double z) {
  using std::numbers::pi;
  return -std::sin(omega * z) / (8.0 * pi * pi * z);
}

// Worst relative residual of a least-squares fit y ~ c1 x^p1 + c2 x^p2 (p2 < 0: single term).
inline double fit_residual(const std::vector<double>& xs, const std::vector<double>& ys, int p1, int p2) {
  double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0, scale = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double u = std::pow(xs[k], p1), v = p2 >= 0 ? std::pow(xs[k], p2) : 0.0;
    a11 += u * u;
    a12 += u * v;
    a22 += v * v;
    b1 += u * ys[k];
    b2 += v * ys[k];
    scale = std::max(scale, std::abs(ys[k]));
  }
  double c1, c2 = 0.0;
  if (p2 < 0) {
    c1 = b1 / a11;
  } else {
    const double det = a11 * a22 - a12 * a12;
    c1 = (b1 * a22 - b2 * a12) / det;
    c2 = (a11 * b2 - a12 * b1) / det;
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double fit = c1 * std::pow(xs[k], p1) + (p2 >= 0 ? c2 * std::pow(xs[k], p2) : 0.0);
    worst = std::max(worst, std::abs(fit - ys[k]));
  }
  return scale == 0.0 ? worst : worst / scale;
}

inline AtomPairConfig em_pair(double omega0, double z, double a, Vec3 da, Vec3 db) {
  AtomPairConfig c;
  c.omega0 = omega0;
  c.z = z;
  c.a = a;
  c.dipole_A = da;
  c.dipole_B = db;
  return c;
}

struct Pairing {
  const char* name;
  Vec3 a, b;
};
inline const std::array<Pairing, 4> kPairings{Pairing{"xx", {1, 0, 0}, {1, 0, 0}}, Pairing{"yy", {0, 1, 0}, {0, 1, 0}},
                                              Pairing{"zz", {0, 0, 1}, {0, 0, 1}}, Pairing{"xz", {1, 0, 0}, {0, 0, 1}}};

}  // namespace detail

/// Builds the list of checks for a grid without running them.
inline std::vector<detail::Job> verification_jobs(const VerifyOptions& opt) {
  using detail::Job;
  using detail::point_str;
  const auto& g = opt.grid;
  std::vector<Job> jobs;

  // Scalar susceptibility: mode sum and Wightman extraction against the closed form.
  for (double a : g.chi_as)
    for (double z : g.chi_zs)
      for (double w : g.chi_omegas) {
        const auto pt = point_str({{"omega", w}, {"z", z}, {"a", a}});
        const auto geo = geometry_scalars(z, a);
        if (std::abs(chi_scalar_spectral_closed(w, geo)) <= 1e-12) continue;
        if (a > 0.0) {
          jobs.push_back({"scalar.chi.mode_sum", pt, kTolModeSum, false, [=, spec = opt.mode_sum_spec] {
                            return std::pair{chi_scalar_spectral_closed(w, geo), chi_scalar_mode_sum(w, geo, spec).value};
                          }});
        } else {
          jobs.push_back({"scalar.chi.closed_at_rest", pt, kTolAtRest, false, [=] {
                            return std::pair{detail::inertial_scalar_coefficient(w, z), chi_scalar_spectral_closed(w, geo)};
                          }});
        }
        jobs.push_back({"scalar.chi.wightman", pt, kTolWightman, false, [=, spec = opt.oracle_spec] {
                          return std::pair{chi_scalar_spectral_closed(w, geo), chi_scalar_from_wightman(w, geo, spec).value};
                        }});
      }

  // Energy shift: closed forms against the oracles, and the two frames against each other.
  for (double a : g.shift_as)
    for (double z : g.shift_zs)
      for (double w0 : g.shift_omega0s) {
        AtomPairConfig c;
        c.omega0 = w0;
        c.z = z;
        c.a = a;
        const auto pt = point_str({{"omega0", w0}, {"z", z}, {"a", a}});
        const auto spec = opt.oracle_spec;
        jobs.push_back({"shift.scalar.spectral_oracle", pt, kTolShiftOracle, false, [=] {
                          return std::pair{delta_e_scalar_closed(c).value, delta_e_scalar_oracle(c, spec).value};
                        }});
        jobs.push_back({"shift.scalar.wightman_oracle", pt, kTolShiftOracle, false, [=] {
                          return std::pair{delta_e_scalar_closed(c).value, delta_e_scalar_wightman_oracle(c, spec).value};
                        }});
        jobs.push_back({"shift.scalar.frames", pt, kTolShiftFrames, false, [=] {
                          return std::pair{delta_e_scalar_wightman_oracle(c, spec).value,
                                           delta_e_scalar_oracle(c, spec).value};
                        }});
        for (const auto& p : detail::kPairings) {
          const auto ce = detail::em_pair(w0, z, a, p.a, p.b);
          if (std::abs(delta_e_em_closed(ce).value) <= 1e-12) continue;
          jobs.push_back({"shift.em.oracle", point_str({{"omega0", w0}, {"z", z}, {"a", a}}, p.name), kTolShiftOracle,
                          false, [=] { return std::pair{delta_e_em_closed(ce).value, delta_e_em_oracle(ce, spec).value}; }});
        }
      }

  // Inertial limit: a tiny acceleration reproduces the a = 0 closed forms. The xz pairing
  // vanishes at a = 0, so its deviation is measured in absolute terms.
  for (double z : g.shift_zs)
    for (double w0 : g.shift_omega0s) {
      using std::numbers::pi;
      const auto pt = point_str({{"omega0", w0}, {"z", z}, {"a", kInertialAcceleration}});
      AtomPairConfig c;
      c.omega0 = w0;
      c.z = z;
      c.a = kInertialAcceleration;
      jobs.push_back({"limit.scalar", pt, kTolInertialLimit, false, [=] {
                        return std::pair{-std::cos(w0 * z) / (16.0 * pi * z), delta_e_scalar_closed(c).value};
                      }});
      for (const auto& p : detail::kPairings) {
        const auto ce = detail::em_pair(w0, z, kInertialAcceleration, p.a, p.b);
        // a = 0 reduction: +(1/4 pi) sum_i mu_i mu_i [f_ii sin(w0 z) - g_ii cos(w0 z)] with the inertial f, g.
        const double sn = std::sin(w0 * z), cs = std::cos(w0 * z);
        const double fii[3] = {w0 / (z * z), w0 / (z * z), -2.0 * w0 / (z * z)};
        const double gii[3] = {-(1.0 - w0 * w0 * z * z) / (z * z * z), -(1.0 - w0 * w0 * z * z) / (z * z * z),
                               2.0 / (z * z * z)};
        double ref = 0.0;
        for (int i = 0; i < 3; ++i) ref += p.a[i] * p.b[i] * (fii[i] * sn - gii[i] * cs);
        ref /= 4.0 * pi;
        const bool zero_ref = ref == 0.0;
        jobs.push_back({std::string("limit.em.") + p.name, pt, kTolInertialLimit, zero_ref,
                        [=] { return std::pair{ref, delta_e_em_closed(ce).value}; }});
      }
    }

  // Exact structure of the EM tensors.
  for (double a : g.em_as)
    for (double z : g.em_zs) {
      const auto geo = geometry_scalars(z, a);
      const auto pt = point_str({{"z", z}, {"a", a}});
      jobs.push_back({"em.tensor.antisymmetry", pt, 0.0, true, [=] {
                        double worst = 0.0;
                        for (double w : g.em_omegas) {
                          const auto f = f_tensor(w, geo), gg = g_tensor(w, geo);
                          worst = std::max({worst, std::abs(f[0][2] + f[2][0]), std::abs(gg[0][2] + gg[2][0])});
                        }
                        return std::pair{0.0, worst};
                      }});
      jobs.push_back({"em.tensor.omega_structure", pt, kTolPolynomialFit, true, [=] {
                        const std::vector<double> ws{0.3, 0.7, 1.1, 1.9, 3.2};
                        double worst = 0.0;
                        for (int i = 0; i < 3; ++i)
                          for (int j = 0; j < 3; ++j) {
                            std::vector<double> fs, gs;
                            for (double w : ws) {
                              fs.push_back(f_tensor(w, geo)[i][j]);
                              gs.push_back(g_tensor(w, geo)[i][j]);
                            }
                            worst = std::max({worst, detail::fit_residual(ws, fs, 1, -1), detail::fit_residual(ws, gs, 0, 2)});
                          }
                        return std::pair{0.0, worst};
                      }});
    }

  // EM susceptibility against the rest-frame field correlator.
  for (double a : g.em_as)
    for (double z : g.em_zs)
      for (double w : g.em_omegas)
        for (auto [i, j] : {std::pair{Axis::x, Axis::x}, {Axis::y, Axis::y}, {Axis::z, Axis::z}, {Axis::x, Axis::z}}) {
          const auto geo = geometry_scalars(z, a);
          const std::string comp{axis_name(i), axis_name(j)};
          jobs.push_back({"em.chi.wightman", point_str({{"omega", w}, {"z", z}, {"a", a}}, comp), kTolEmFrames, false,
                          [=, spec = opt.oracle_spec] {
                            return std::pair{chi_em_spectral(w, geo).at(i, j), chi_em_from_wightman(i, j, w, geo, spec).value};
                          }});
        }

  // Structural zero and the state sign flip on randomized configurations.
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto random_cfg = [&] {
    AtomPairConfig c;
    c.omega0 = 0.1 + 4.9 * u01(rng);
    c.z = 0.05 + 4.95 * u01(rng);
    c.a = u01(rng) < 0.1 ? 0.0 : 10.0 * u01(rng);
    c.coupling_lambda = 0.1 + 2.0 * u01(rng);
    for (int k = 0; k < 3; ++k) {
      c.dipole_A[k] = 2.0 * u01(rng) - 1.0;
      c.dipole_B[k] = 2.0 * u01(rng) - 1.0;
    }
    return c;
  };
  for (int n = 0; n < 100; ++n) {
    AtomPairConfig c = random_cfg();
    c.symmetry = n % 2 ? StateSymmetry::antisymmetric : StateSymmetry::symmetric;
    const auto pt = point_str({{"omega0", c.omega0}, {"z", c.z}, {"a", c.a}});
    jobs.push_back({"vf.cross_term_zero", pt, 0.0, true, [=] {
                      const auto v = vf_cross_term(c);
                      return std::pair{0.0, std::max(std::abs(v.value), v.max_commutator_entry)};
                    }});
    for (Channel ch : {Channel::scalar, Channel::em}) {
      jobs.push_back({"state.sign_flip." + to_string(ch), pt, 0.0, true, [=] {
                        AtomPairConfig s = c, t = c;
                        s.symmetry = StateSymmetry::symmetric;
                        t.symmetry = StateSymmetry::antisymmetric;
                        const double vs = delta_e(s, ch, Method::closed_form).value;
                        const double vt = delta_e(t, ch, Method::closed_form).value;
                        return std::pair{0.0, vs + vt};
                      }});
    }
  }

  // K_0 on [0.1, 20] against the standard library's cylindrical Bessel function.
  for (int k = 0; k <= 40; ++k) {
    const double x = 0.1 * std::pow(200.0, k / 40.0);
    jobs.push_back({"specfun.k0", point_str({{"x", x}}), kTolSpecfun, false, [=] {
                      return std::pair{std::cyl_bessel_k(0.0, x),
                                       bessel_k_imag(BesselOrder(0.0), x, QuadratureSpec::special_function())};
                    }});
  }
  return jobs;
}

inline VerificationReport run_verify(const VerifyOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto jobs = verification_jobs(opt);
  VerificationReport report;
  report.records = parallel_map(
      jobs, [&](const detail::Job& j) { return detail::execute(j, opt.tolerance_override); }, opt.threads);
  report.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace rindler::cli
