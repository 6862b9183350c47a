#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hyperperc/errors.hpp"
#include "hyperperc/geometry.hpp"

using namespace hyperperc;

namespace {

// Textbook forms evaluated in extended precision.
long double oracle_radius(long double u, long double alpha, long double R) {
  return std::acosh(1.0L + u * (std::cosh(alpha * R) - 1.0L)) / alpha;
}

long double oracle_cdf(long double r, long double alpha, long double R) {
  return (std::cosh(alpha * r) - 1.0L) / (std::cosh(alpha * R) - 1.0L);
}

long double oracle_distance(const PolarPoint& a, const PolarPoint& b) {
  const long double ra = a.r, rb = b.r;
  const long double c = std::cosh(ra) * std::cosh(rb) -
                        std::sinh(ra) * std::sinh(rb) *
                            std::cos(static_cast<long double>(a.theta) - b.theta);
  return std::acosh(std::max(c, 1.0L));
}

// Simpson's rule for E[R - r] under the radial density.
long double oracle_mean_type(long double alpha, long double R) {
  const int n = 200000;
  const long double h = R / n;
  const long double z = std::cosh(alpha * R) - 1.0L;
  const auto f = [&](long double r) { return (R - r) * alpha * std::sinh(alpha * r) / z; };
  long double s = f(0) + f(R);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0L : 2.0L) * f(k * h);
  return s * h / 3.0L;
}

}  // namespace

TEST_CASE("model parameters") {
  const auto p = ModelParams::make(100000, 0.75, 1.0);
  CHECK(p.radius == doctest::Approx(2.0 * std::log(1e5)).epsilon(1e-15));
  CHECK_FALSE(p.alpha_outside_theory);
  CHECK(ModelParams::make(100, 1.2, 1.0).alpha_outside_theory);
  CHECK(ModelParams::make(100, 0.5, 1.0).alpha_outside_theory);
  CHECK(ModelParams::make(1, 0.75, 1.0).radius == 0.0);
  CHECK_THROWS_AS(ModelParams::make(0, 0.75, 1.0), ParameterError);
  CHECK_THROWS_AS(ModelParams::make(10, 0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(ModelParams::make(10, 0.75, -1.0), ParameterError);
  CHECK_THROWS_AS(ModelParams::make(10, 0.75, 20.0), ParameterError);
  CHECK_THROWS_AS(ModelParams::make(10, NAN, 1.0), ParameterError);
}

TEST_CASE("radial inverse CDF") {
  ModelParams p = ModelParams::make(100, 1.0, 1.0);
  p.radius = 10.0;
  CHECK(sample_radius(0.0, p) == 0.0);
  CHECK(sample_radius(1.0, p) == 10.0);
  const double mid = sample_radius(0.5, p);
  CHECK(mid == doctest::Approx(static_cast<double>(oracle_radius(0.5L, 1.0L, 10.0L))).epsilon(1e-13));
  CHECK(mid == doctest::Approx(9.3069).epsilon(1e-5));

  const auto q = ModelParams::make(static_cast<std::uint64_t>(std::exp(10.0)), 0.9, 1.0);
  for (int k = 1; k < 1000; ++k) {
    const double u = k / 1000.0;
    const double r = sample_radius(u, q);
    CHECK(std::fabs(static_cast<double>(oracle_cdf(r, q.alpha, q.radius)) - u) < 1e-10);
  }
  for (int k = 1; k < 100; ++k) {
    const double u = std::pow(10.0, -k * 0.15);
    CHECK(sample_radius(u, q) ==
          doctest::Approx(static_cast<double>(oracle_radius(u, q.alpha, q.radius))).epsilon(1e-12));
  }
}

TEST_CASE("sampled types follow the radial law") {
  ModelParams p = ModelParams::make(22026, 0.9, 1.0);
  p.radius = 20.0;
  RandomStream rng(42, Purpose::testing);
  const int n = 1000000;
  double sum = 0.0;
  int deep = 0;
  for (int k = 0; k < n; ++k) {
    const PolarPoint pt = sample_point(rng, p);
    REQUIRE(pt.theta >= 0.0);
    REQUIRE(pt.theta < kTwoPi);
    REQUIRE(pt.r >= 0.0);
    REQUIRE(pt.r <= p.radius);
    const double t = vertex_type(pt, p.radius);
    sum += t;
    if (t >= 0.5 * p.radius) ++deep;
  }
  const double mean_oracle = static_cast<double>(oracle_mean_type(0.9L, 20.0L));
  CHECK(mean_oracle == doctest::Approx(1.0 / 0.9).epsilon(0.05));
  CHECK(sum / n == doctest::Approx(mean_oracle).epsilon(0.05));

  const double q = static_cast<double>(oracle_cdf(10.0L, 0.9L, 20.0L));
  const double se = std::sqrt(n * q * (1.0 - q));
  CHECK(std::fabs(deep - n * q) <= 3.0 * se);
}

TEST_CASE("sample_point draw order") {
  const auto p = ModelParams::make(1000, 0.75, 1.0);
  RandomStream a(7, Purpose::vertices, 3);
  RandomStream b(7, Purpose::vertices, 3);
  const PolarPoint pt = sample_point(a, p);
  CHECK(pt.theta == kTwoPi * b.uniform());
  CHECK(pt.r == sample_radius(b.uniform(), p));
  CHECK(a.position() == 2);
}

TEST_CASE("distance special cases") {
  const PolarPoint a{5.0, 0.3};
  CHECK(hyperbolic_distance(a, a) == 0.0);
  CHECK(hyperbolic_distance(a, PolarPoint{0.0, 1.7}) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(hyperbolic_distance(PolarPoint{3.0, 0.0}, PolarPoint{4.0, std::numbers::pi}) ==
        doctest::Approx(7.0).epsilon(1e-14));
  const PolarPoint b{5.0, 0.3 + std::numbers::pi / 2};
  const long double ref = std::acosh(std::cosh(5.0L) * std::cosh(5.0L));
  CHECK(hyperbolic_distance(a, b) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-13));
  CHECK(hyperbolic_distance(a, b) == doctest::Approx(9.3069).epsilon(1e-5));
  CHECK(relative_angle(0.1, kTwoPi - 0.1) == doctest::Approx(0.2));
  CHECK(relative_angle(1.0, 1.0) == 0.0);
}

TEST_CASE("distance against extended-precision law of cosines") {
  RandomStream rng(1, Purpose::testing);
  for (int k = 0; k < 20000; ++k) {
    const PolarPoint a{10.0 * rng.uniform(), kTwoPi * rng.uniform()};
    const PolarPoint b{10.0 * rng.uniform(), kTwoPi * rng.uniform()};
    const double d = hyperbolic_distance(a, b);
    const double ref = static_cast<double>(oracle_distance(a, b));
    if (ref > 0.1) REQUIRE(d == doctest::Approx(ref).epsilon(1e-9));
    REQUIRE(d == hyperbolic_distance(b, a));
  }
}

TEST_CASE("triangle inequality") {
  RandomStream rng(2, Purpose::testing);
  for (int k = 0; k < 20000; ++k) {
    PolarPoint p[3];
    for (auto& x : p) x = {30.0 * rng.uniform(), kTwoPi * rng.uniform()};
    const double ab = hyperbolic_distance(p[0], p[1]);
    const double bc = hyperbolic_distance(p[1], p[2]);
    const double ac = hyperbolic_distance(p[0], p[2]);
    REQUIRE(ac <= ab + bc + 1e-9 * (1.0 + ac));
  }
}

TEST_CASE("angle threshold") {
  const auto p = ModelParams::make(100000, 0.75, 1.0);
  const AngleBounds b = angle_threshold(2.0, 3.0, p, 0.1);
  const double scale = 2.0 * std::exp((5.0 - p.radius) / 2.0);
  CHECK(b.lower == doctest::Approx(0.9 * scale));
  CHECK(b.upper == doctest::Approx(1.1 * scale));
  CHECK_THROWS_AS(angle_threshold(12.0, 12.0, p, 0.1), ParameterError);
  CHECK_THROWS_AS(angle_threshold(1.0, 1.0, p, 0.0), ParameterError);
  CHECK_THROWS_AS(angle_threshold(1.0, 1.0, p, 1.0), ParameterError);
  CHECK(envelope_applies(1.0, 2.0, p));
  CHECK_FALSE(envelope_applies(5.0, 5.0, p));
  CHECK_FALSE(envelope_applies(0.1, 0.1, ModelParams::make(10000, 0.75, 1.0)));
}

TEST_CASE("angle envelope brackets adjacency") {
  const auto p = ModelParams::make(100000, 0.75, 1.0);
  const EnvelopeConstants k;
  RandomStream rng(3, Purpose::testing);
  int checked = 0;
  while (checked < 10000) {
    const double tu = p.radius - sample_radius(rng.uniform(), p);
    const double tv = p.radius - sample_radius(rng.uniform(), p);
    const double dtheta_draw = rng.uniform();
    const double theta = kTwoPi * rng.uniform();
    if (tu + tv >= p.radius - k.c0) continue;
    const AngleBounds b = angle_threshold(tu, tv, p, 0.1);
    const double dtheta = std::min(3.0 * b.upper * dtheta_draw, std::numbers::pi);
    const double d =
        hyperbolic_distance({p.radius - tu, theta}, {p.radius - tv, std::fmod(theta + dtheta, kTwoPi)});
    if (dtheta < b.lower) REQUIRE(d < p.radius);
    if (dtheta > b.upper) REQUIRE(d >= p.radius);
    ++checked;
  }
}
