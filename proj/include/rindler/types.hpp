#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rindler/errors.hpp"

namespace rindler {

enum class Channel { scalar, em };
enum class Method { closed_form, oracle };
/// The sign choice of the correlated one-excitation state (|g e> +/- |e g>)/sqrt(2).
enum class StateSymmetry { symmetric, antisymmetric };

/// One regulated evaluation feeding an epsilon -> 0 extrapolation.
struct RegulatorSample {
  double epsilon = 0.0;
  double value = 0.0;
};

/// Value produced by a numerical oracle, with its error estimate and the regulated
/// sequence it was extrapolated from (empty when no regulator is involved).
struct OracleEstimate {
  double value = 0.0;
  double error = 0.0;
  std::vector<RegulatorSample> regulator_report;
};

inline std::string to_string(Channel c) { return c == Channel::scalar ? "scalar" : "em"; }
inline std::string to_string(Method m) { return m == Method::closed_form ? "closed_form" : "oracle"; }
inline std::string to_string(StateSymmetry s) { return s == StateSymmetry::symmetric ? "sym" : "antisym"; }

inline Channel parse_channel(std::string_view s) {
  if (s == "scalar") return Channel::scalar;
  if (s == "em") return Channel::em;
  throw DomainError("unknown channel '" + std::string(s) + "' (expected scalar|em)");
}

inline Method parse_method(std::string_view s) {
  if (s == "closed" || s == "closed_form") return Method::closed_form;
  if (s == "oracle") return Method::oracle;
  throw DomainError("unknown method '" + std::string(s) + "' (expected closed|oracle)");
}

inline StateSymmetry parse_state(std::string_view s) {
  if (s == "sym" || s == "symmetric") return StateSymmetry::symmetric;
  if (s == "antisym" || s == "antisymmetric") return StateSymmetry::antisymmetric;
  throw DomainError("unknown state '" + std::string(s) + "' (expected sym|antisym)");
}

}  // namespace rindler
