#pragma once

// Hyperbolic worldlines, the Rindler <-> Minkowski map and the geometric scalars
// N(z, a) = 1 + a^2 z^2 / 4 and s(z, a) = (2/a) arsinh(a z / 2).
//
// Axes: acceleration along x, separation along z. Natural units (hbar = c = k_B = 1),
// so acceleration carries the dimension of temperature.

#include <cmath>
#include <utility>

#include "rindler/errors.hpp"

namespace rindler {

/// A point on a hyperbolic worldline in Rindler (tau, xi) and Minkowski (t, x, y, z) form.
struct TrajectoryEvent {
  double tau = 0.0;
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double xi = 0.0;
};

struct GeometryScalars {
  double z = 1.0;  // separation, > 0
  double a = 0.0;  // proper acceleration, >= 0
  double N = 1.0;  // 1 + a^2 z^2 / 4
  double s = 1.0;  // effective separation (2/a) arsinh(a z / 2); s = z at a = 0

  double sqrt_N() const { return std::sqrt(N); }
};

/// t = sinh(a tau)/a, x = cosh(a tau)/a on the worldline at fixed z = z_atom (xi = y = 0).
inline TrajectoryEvent trajectory(double tau, double a, double z_atom) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("trajectory: acceleration must be > 0");
  TrajectoryEvent e;
  e.tau = tau;
  e.t = std::sinh(a * tau) / a;
  e.x = std::cosh(a * tau) / a;
  e.y = 0.0;
  e.z = z_atom;
  e.xi = 0.0;
  return e;
}

/// (tau, xi) -> (t, x); the image lies in the right wedge |t| <= x.
inline std::pair<double, double> rindler_to_minkowski(double tau, double xi, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("rindler_to_minkowski: acceleration must be > 0");
  const double r = std::exp(a * xi) / a;
  return {r * std::sinh(a * tau), r * std::cosh(a * tau)};
}

namespace detail {
// Below this a z the effective separation is taken from its Taylor series.
inline constexpr double kSeriesThreshold = 1e-6;
}  // namespace detail

/// Effective separation (2/a) arsinh(a z/2), continuous through a = 0 and defined for
/// either sign of z (it is odd in z).
inline double effective_separation(double z, double a) {
  const double az = a * z;
  if (a == 0.0) return z;
  if (std::abs(az) < detail::kSeriesThreshold) {
    const double q = az * az;
    return z * (1.0 - q / 24.0 + 3.0 * q * q / 640.0);
  }
  return 2.0 / a * std::asinh(0.5 * az);
}

inline GeometryScalars geometry_scalars(double z, double a) {
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("geometry_scalars: separation z must be > 0");
  if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("geometry_scalars: acceleration must be >= 0");
  GeometryScalars g;
  g.z = z;
  g.a = a;
  g.N = 1.0 + 0.25 * a * a * z * z;
  g.s = effective_separation(z, a);
  return g;
}

}  // namespace rindler
