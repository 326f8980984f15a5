#pragma once

// Flat JSON configuration shared by the `point` and `sweep` subcommands. Every key is
// optional; unknown keys are rejected.
//
//   channel     "scalar" | "em"
//   method      "closed" | "oracle"
//   state       "sym" | "antisym"
//   a, z, omega0, lambda               numbers (natural units)
//   dipole_a, dipole_b                 [x, y, z]
//   tol_profile "default" | "strict" | "fast"
//   vary        "z" | "a" | "omega0"     (sweep only)
//   start, stop, num_points            (sweep only)
//   spacing     "linear" | "log"         (sweep only)
//   methods     ["closed", "oracle"]     (sweep only)
//   out         output path              (sweep only)

#include <cmath>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rindler/errors.hpp"
#include "rindler/quadrature.hpp"
#include "rindler/shift_engine.hpp"
#include "rindler/types.hpp"

namespace rindler::cli {

/// Quadrature tolerances behind the named profiles.
inline QuadratureSpec tolerance_profile(std::string_view name) {
  if (name == "default") return QuadratureSpec::oracle();
  if (name == "strict") return QuadratureSpec{}.with_tolerances(1e-11, 1e-9);
  if (name == "fast") return QuadratureSpec{}.with_tolerances(1e-6, 1e-4);
  throw DomainError("unknown tolerance profile '" + std::string(name) + "' (expected default|strict|fast)");
}

enum class SweepVariable { z, a, omega0 };
enum class Spacing { linear, log };

inline std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::z: return "z";
    case SweepVariable::a: return "a";
    case SweepVariable::omega0: return "omega0";
  }
  return "?";
}

inline SweepVariable parse_sweep_variable(std::string_view s) {
  if (s == "z") return SweepVariable::z;
  if (s == "a") return SweepVariable::a;
  if (s == "omega0") return SweepVariable::omega0;
  throw DomainError("unknown sweep variable '" + std::string(s) + "' (expected z|a|omega0)");
}

inline Spacing parse_spacing(std::string_view s) {
  if (s == "linear") return Spacing::linear;
  if (s == "log") return Spacing::log;
  throw DomainError("unknown spacing '" + std::string(s) + "' (expected linear|log)");
}

struct SweepRange {
  double start = 0.0;
  double stop = 1.0;
  int num_points = 2;
  Spacing spacing = Spacing::linear;
};

struct SweepConfig {
  Channel channel = Channel::scalar;
  SweepVariable vary = SweepVariable::z;
  SweepRange range;
  AtomPairConfig fixed;
  std::vector<Method> methods{Method::closed_form};
  std::string output_path;

  void validate() const {
    if (range.num_points < 2) throw DomainError("sweep: num_points must be >= 2");
    if (!(range.start < range.stop)) throw DomainError("sweep: start must be < stop");
    if (range.spacing == Spacing::log && !(range.start > 0.0)) throw DomainError("sweep: log spacing needs start > 0");
    if (methods.empty()) throw DomainError("sweep: at least one method is required");
    if (output_path.empty()) throw DomainError("sweep: output path is required");
  }

  std::vector<double> grid() const {
    std::vector<double> g(static_cast<std::size_t>(range.num_points));
    const double last = range.num_points - 1;
    for (int k = 0; k < range.num_points; ++k) {
      const double t = k / last;
      g[k] = range.spacing == Spacing::linear ? range.start + t * (range.stop - range.start)
                                              : range.start * std::pow(range.stop / range.start, t);
    }
    g.back() = range.stop;
    return g;
  }
};

/// Everything a single evaluation needs.
struct PointOptions {
  AtomPairConfig cfg;
  Channel channel = Channel::scalar;
  Method method = Method::closed_form;
  std::string tol_profile = "default";
};

namespace detail {

inline Vec3 read_vec3(const nlohmann::json& j, const char* key) {
  if (!j.is_array() || j.size() != 3) throw DomainError(std::string(key) + " must be an array of 3 numbers");
  Vec3 v{};
  for (int k = 0; k < 3; ++k) v[k] = j[k].get<double>();
  return v;
}

}  // namespace detail

/// Applies the keys of a config object to point and sweep settings (either may be null).
inline void apply_config(const nlohmann::json& j, PointOptions* point, SweepConfig* sweep) {
  if (!j.is_object()) throw DomainError("config: top level must be a JSON object");
  try {
    for (const auto& [key, val] : j.items()) {
      AtomPairConfig* cfgs[2] = {point ? &point->cfg : nullptr, sweep ? &sweep->fixed : nullptr};
      auto each = [&](auto&& set) {
        for (auto* c : cfgs)
          if (c) set(*c);
      };
      if (key == "channel") {
        const auto c = parse_channel(val.get<std::string>());
        if (point) point->channel = c;
        if (sweep) sweep->channel = c;
      } else if (key == "method") {
        if (point) point->method = parse_method(val.get<std::string>());
      } else if (key == "state") {
        const auto s = parse_state(val.get<std::string>());
        each([&](AtomPairConfig& c) { c.symmetry = s; });
      } else if (key == "a") {
        each([&](AtomPairConfig& c) { c.a = val.get<double>(); });
      } else if (key == "z") {
        each([&](AtomPairConfig& c) { c.z = val.get<double>(); });
      } else if (key == "omega0") {
        each([&](AtomPairConfig& c) { c.omega0 = val.get<double>(); });
      } else if (key == "lambda") {
        each([&](AtomPairConfig& c) { c.coupling_lambda = val.get<double>(); });
      } else if (key == "dipole_a") {
        const auto v = detail::read_vec3(val, "dipole_a");
        each([&](AtomPairConfig& c) { c.dipole_A = v; });
      } else if (key == "dipole_b") {
        const auto v = detail::read_vec3(val, "dipole_b");
        each([&](AtomPairConfig& c) { c.dipole_B = v; });
      } else if (key == "tol_profile") {
        const auto p = val.get<std::string>();
        tolerance_profile(p);
        if (point) point->tol_profile = p;
      } else if (key == "vary") {
        if (sweep) sweep->vary = parse_sweep_variable(val.get<std::string>());
      } else if (key == "start") {
        if (sweep) sweep->range.start = val.get<double>();
      } else if (key == "stop") {
        if (sweep) sweep->range.stop = val.get<double>();
      } else if (key == "num_points") {
        if (sweep) sweep->range.num_points = val.get<int>();
      } else if (key == "spacing") {
        if (sweep) sweep->range.spacing = parse_spacing(val.get<std::string>());
      } else if (key == "methods") {
        if (sweep) {
          sweep->methods.clear();
          for (const auto& m : val) sweep->methods.push_back(parse_method(m.get<std::string>()));
        }
      } else if (key == "out") {
        if (sweep) sweep->output_path = val.get<std::string>();
      } else {
        throw DomainError("config: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("config: ") + e.what());
  }
}

inline nlohmann::json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("config: cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("config: '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace rindler::cli
