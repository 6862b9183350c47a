#include "hyperperc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyperperc/errors.hpp"

namespace hyperperc {

ModelParams ModelParams::make(std::uint64_t n, double alpha, double nu, std::uint64_t seed) {
  if (n < 1) throw ParameterError("N must be at least 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be positive");
  if (!(nu > 0.0) || !std::isfinite(nu)) throw ParameterError("nu must be positive");
  if (static_cast<double>(n) < nu) {
    throw ParameterError("N must be at least nu (the disk radius 2 ln(N/nu) would be negative)");
  }
  ModelParams p;
  p.n = n;
  p.alpha = alpha;
  p.nu = nu;
  p.radius = 2.0 * std::log(static_cast<double>(n) / nu);
  p.seed = seed;
  p.alpha_outside_theory = !(alpha > 0.5 && alpha < 1.0);
  return p;
}

double sample_radius(double uniform_draw, const ModelParams& params) {
  const double radius = params.radius;
  if (uniform_draw >= 1.0) return radius;
  if (uniform_draw <= 0.0) return 0.0;
  // cosh(aR) - 1 = 2 sinh^2(aR/2); arcosh(1 + x) = log1p(x + sqrt(x (x + 2))).
  const double half = std::sinh(0.5 * params.alpha * radius);
  const double x = uniform_draw * 2.0 * half * half;
  const double r = std::log1p(x + std::sqrt(x * (x + 2.0))) / params.alpha;
  return std::clamp(r, 0.0, radius);
}

PolarPoint sample_point(RandomStream& stream, const ModelParams& params) {
  PolarPoint p;
  p.theta = kTwoPi * stream.uniform();
  if (p.theta >= kTwoPi) p.theta = 0.0;
  p.r = sample_radius(stream.uniform(), params);
  return p;
}

double relative_angle(double theta_a, double theta_b) noexcept {
  const double d = std::fabs(theta_a - theta_b);
  return std::min(d, kTwoPi - d);
}

CachedPoint CachedPoint::from(const PolarPoint& p) noexcept {
  CachedPoint c;
  c.sinh_r = std::sinh(p.r);
  c.exp_half_r = std::exp(0.5 * p.r);
  c.sin_half_theta = std::sin(0.5 * p.theta);
  c.cos_half_theta = std::cos(0.5 * p.theta);
  return c;
}

double hyperbolic_distance(const PolarPoint& a, const PolarPoint& b) noexcept {
  if (a == b) return 0.0;
  const double s2 = sinh2_half_distance(CachedPoint::from(a), CachedPoint::from(b));
  return 2.0 * std::asinh(std::sqrt(std::max(s2, 0.0)));
}

AngleBounds angle_threshold(double t_u, double t_v, const ModelParams& params, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
  const double excess = t_u + t_v - params.radius;
  if (!(excess < 0.0)) {
    throw ParameterError("angle envelope needs t_u + t_v < R (got t_u + t_v - R = " +
                         std::to_string(excess) + ")");
  }
  const double scale = 2.0 * std::exp(0.5 * excess);
  return {(1.0 - epsilon) * scale, (1.0 + epsilon) * scale};
}

}  // namespace hyperperc
