#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "hyperperc/rng.hpp"

namespace hyperperc {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Parameters of the ensemble G(N; alpha, nu). The disk radius is derived
/// from N = nu * exp(R / 2).
struct ModelParams {
  std::uint64_t n = 1;
  double alpha = 0.75;
  double nu = 1.0;
  double radius = 0.0;
  std::uint64_t seed = 0;
  /// Set when alpha lies outside (1/2, 1), where none of the phase-transition
  /// results apply. The model itself is still well defined.
  bool alpha_outside_theory = false;

  /// Validates and derives `radius`. Throws ParameterError.
  static ModelParams make(std::uint64_t n, double alpha, double nu, std::uint64_t seed = 0);

  bool operator==(const ModelParams&) const = default;
};

/// Native representation: hyperbolic distance to the origin equals r.
struct PolarPoint {
  double r = 0.0;
  double theta = 0.0;

  bool operator==(const PolarPoint&) const = default;
};

/// Type of a point, t = R - r.
inline double vertex_type(const PolarPoint& p, double radius) noexcept { return radius - p.r; }

/// Exact inverse CDF of the radial density alpha sinh(alpha r) / (cosh(alpha R) - 1).
double sample_radius(double uniform_draw, const ModelParams& params);

/// Consumes two draws from `stream`: the angle first, then the radius.
PolarPoint sample_point(RandomStream& stream, const ModelParams& params);

/// Smaller of the two angles between theta_a and theta_b, in [0, pi].
double relative_angle(double theta_a, double theta_b) noexcept;

/// Per-point quantities reused across many distance evaluations.
struct CachedPoint {
  double sinh_r = 0.0;
  double exp_half_r = 1.0;
  double sin_half_theta = 0.0;
  double cos_half_theta = 1.0;

  static CachedPoint from(const PolarPoint& p) noexcept;
};

/// sinh^2(d/2) for the hyperbolic distance d between the two points, from
///   cosh d = cosh(r_a - r_b) + sinh r_a sinh r_b (1 - cos dtheta)
/// with 1 - cos dtheta = 2 sin^2(dtheta/2). Every term is non-negative, so
/// there is no cancellation at large radii and small angles. Symmetric in its
/// arguments bit for bit.
inline double sinh2_half_distance(const CachedPoint& a, const CachedPoint& b) noexcept {
  const double q_ab = a.exp_half_r / b.exp_half_r;
  const double q_ba = b.exp_half_r / a.exp_half_r;
  const double sh = 0.5 * (q_ab - q_ba);
  const double s = a.sin_half_theta * b.cos_half_theta - a.cos_half_theta * b.sin_half_theta;
  return sh * sh + (a.sinh_r * b.sinh_r) * (s * s);
}

/// Threshold on sinh2_half_distance equivalent to d < radius.
inline double adjacency_threshold(double radius) noexcept {
  const double s = std::sinh(0.5 * radius);
  return s * s;
}

double hyperbolic_distance(const PolarPoint& a, const PolarPoint& b) noexcept;

struct AngleBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Relative-angle envelope 2(1 -/+ eps) exp((t_u + t_v - R) / 2). Below
/// `lower` the points are adjacent, above `upper` they are not, provided
/// t_u + t_v < R - c0. Throws ParameterError if t_u + t_v >= R or eps is
/// outside (0, 1).
AngleBounds angle_threshold(double t_u, double t_v, const ModelParams& params, double epsilon);

/// Constants under which the relative-angle envelope is trusted.
struct EnvelopeConstants {
  double c0 = 15.0;
  double n0 = 1e4;
};

inline bool envelope_applies(double t_u, double t_v, const ModelParams& params,
                             const EnvelopeConstants& k = {}) noexcept {
  return t_u + t_v < params.radius - k.c0 && static_cast<double>(params.n) > k.n0;
}

}  // namespace hyperperc
