#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hyperperc/graph.hpp"
#include "hyperperc/graph_stats.hpp"

using namespace hyperperc;

namespace {

Graph from_edges(std::size_t n, std::vector<Edge> edges) {
  const auto p = ModelParams::make(n, 0.75, 1.0);
  std::vector<Vertex> vs;
  for (VertexId k = 0; k < n; ++k) vs.push_back({k, {0, 0}, p.radius});
  return Graph(p, std::move(vs), std::move(edges));
}

std::vector<std::size_t> brute_triangles(const Graph& g) {
  std::vector<std::size_t> t(g.size(), 0);
  for (VertexId a = 0; a < g.size(); ++a)
    for (VertexId b = a + 1; b < g.size(); ++b)
      for (VertexId c = b + 1; c < g.size(); ++c)
        if (g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(a, c)) ++t[a], ++t[b], ++t[c];
  return t;
}

double brute_clustering(const Graph& g) {
  const auto t = brute_triangles(g);
  double s = 0.0;
  for (VertexId v = 0; v < g.size(); ++v) {
    const double d = static_cast<double>(g.degree(v));
    if (d >= 2) s += 2.0 * t[v] / (d * (d - 1));
  }
  return g.size() ? s / g.size() : 0.0;
}

}  // namespace

TEST_CASE("degree histogram") {
  const Graph star = from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  const auto h = degree_histogram(star);
  CHECK(h.size() == 2);
  CHECK(h.at(1) == 3);
  CHECK(h.at(3) == 1);
}

TEST_CASE("Hill estimator on Pareto samples") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double gamma : {1.2, 1.5, 2.0}) {
    std::vector<std::size_t> xs(1000000);
    for (auto& x : xs) x = static_cast<std::size_t>(1e6 * std::pow(1.0 - u(rng), -1.0 / gamma));
    const auto est = hill_exponent(xs);
    REQUIRE(est.has_value());
    CHECK(*est == doctest::Approx(1.0 + gamma).epsilon(0.05 / (1.0 + gamma)));
  }
}

TEST_CASE("Hill estimator on hand data") {
  // top k = 1 of 100: 1 + 1 / ln(X_(1) / X_(2))
  std::vector<std::size_t> xs(100, 1);
  xs[0] = 40;
  xs[1] = 10;
  CHECK(*hill_exponent(xs) == doctest::Approx(1.0 + 1.0 / std::log(4.0)));
  CHECK_FALSE(hill_exponent(std::vector<std::size_t>(100, 3)).has_value());
  CHECK_FALSE(hill_exponent(std::vector<std::size_t>{}).has_value());
  CHECK_FALSE(hill_exponent(std::vector<std::size_t>{5}).has_value());
  std::vector<std::size_t> zeros(100, 0);
  zeros[0] = 7;
  CHECK_FALSE(hill_exponent(zeros).has_value());
}

TEST_CASE("clustering hand examples") {
  std::vector<Edge> k5;
  for (VertexId a = 0; a < 5; ++a)
    for (VertexId b = a + 1; b < 5; ++b) k5.push_back({a, b});
  CHECK(mean_local_clustering(from_edges(5, k5)) == doctest::Approx(1.0));
  CHECK(triangle_counts(from_edges(5, k5)) == std::vector<std::size_t>(5, 6));
  CHECK(mean_local_clustering(from_edges(5, {})) == 0.0);
  CHECK(mean_local_clustering(from_edges(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}})) ==
        doctest::Approx(7.0 / 12.0));
  CHECK(mean_local_clustering(from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}})) == 0.0);
}

TEST_CASE("triangle counts agree with brute force") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Graph g = build_graph(ModelParams::make(250, 0.6 + 0.05 * seed, 1.0 + seed, seed));
    CHECK(triangle_counts(g) == brute_triangles(g));
    CHECK(mean_local_clustering(g) == doctest::Approx(brute_clustering(g)).epsilon(1e-12));
  }
}

TEST_CASE("degree constants") {
  const Graph g = build_graph(ModelParams::make(20000, 0.75, 1.0, 2));
  const DegreeConstants dc = degree_constants(g);
  const double hi = g.params().radius / (2.0 * g.params().alpha);
  std::size_t expect = 0;
  for (const Vertex& v : g.vertices()) expect += (v.type >= 1.0 && v.type < hi);
  CHECK(dc.sample == expect);
  CHECK(dc.q05 <= dc.median);
  CHECK(dc.median <= dc.q95);
  CHECK(dc.mean > 0.0);
  const DegreeConstants light = degree_constants(g, 1.0, 3.0);
  CHECK(light.sample == dc.sample);
  CHECK(light.mean <= dc.mean);
}
