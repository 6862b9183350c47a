#include "hyperperc/graph_stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace hyperperc {

std::map<std::size_t, std::size_t> degree_histogram(const Graph& g) {
  std::map<std::size_t, std::size_t> h;
  for (VertexId v = 0; v < g.size(); ++v) ++h[g.degree(v)];
  return h;
}

std::optional<double> hill_exponent(std::span<const std::size_t> values, double tail_fraction) {
  const auto k = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(tail_fraction * static_cast<double>(values.size()))));
  if (values.size() < k + 1) return std::nullopt;
  std::vector<std::size_t> x(values.begin(), values.end());
  std::nth_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k), x.end(),
                   std::greater<>());
  const double floor_value = static_cast<double>(x[k]);
  if (floor_value <= 0.0) return std::nullopt;
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += std::log(static_cast<double>(x[i]) / floor_value);
  if (!(sum > 0.0)) return std::nullopt;
  return 1.0 + static_cast<double>(k) / sum;
}

std::vector<std::size_t> triangle_counts(const Graph& g) {
  const std::size_t n = g.size();
  // Orient each edge toward the endpoint of higher (degree, id) rank; every
  // triangle is then found exactly once from its lowest-ranked vertex.
  const auto higher = [&](VertexId a, VertexId b) {
    return g.degree(a) != g.degree(b) ? g.degree(a) < g.degree(b) : a < b;
  };
  std::vector<std::size_t> offsets(n + 1, 0);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v : g.neighbors(u)) offsets[u + 1] += higher(u, v);
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<VertexId> out(offsets[n]);
  for (VertexId u = 0; u < n; ++u) {
    std::size_t k = offsets[u];
    for (VertexId v : g.neighbors(u)) {
      if (higher(u, v)) out[k++] = v;
    }
  }
  std::vector<std::size_t> tri(n, 0);
  std::vector<char> mark(n, 0);
  for (VertexId u = 0; u < n; ++u) {
    for (std::size_t a = offsets[u]; a < offsets[u + 1]; ++a) mark[out[a]] = 1;
    for (std::size_t a = offsets[u]; a < offsets[u + 1]; ++a) {
      const VertexId v = out[a];
      for (std::size_t b = offsets[v]; b < offsets[v + 1]; ++b) {
        const VertexId w = out[b];
        if (mark[w]) {
          ++tri[u];
          ++tri[v];
          ++tri[w];
        }
      }
    }
    for (std::size_t a = offsets[u]; a < offsets[u + 1]; ++a) mark[out[a]] = 0;
  }
  return tri;
}

double mean_local_clustering(const Graph& g) {
  if (g.size() == 0) return 0.0;
  const auto tri = triangle_counts(g);
  double sum = 0.0;
  for (VertexId v = 0; v < g.size(); ++v) {
    const double d = static_cast<double>(g.degree(v));
    if (d >= 2.0) sum += static_cast<double>(tri[v]) / (0.5 * d * (d - 1.0));
  }
  return sum / static_cast<double>(g.size());
}

DegreeConstants degree_constants(const Graph& g, double t_min, std::optional<double> light_c) {
  const ModelParams& p = g.params();
  const double t_max = p.radius / (2.0 * p.alpha);
  std::vector<double> ratio;
  for (const Vertex& v : g.vertices()) {
    if (v.type < t_min || v.type >= t_max) continue;
    std::size_t d = 0;
    if (light_c) {
      for (VertexId w : g.neighbors(v.id)) d += g.vertex(w).type < *light_c;
    } else {
      d = g.degree(v.id);
    }
    ratio.push_back(static_cast<double>(d) * std::exp(-0.5 * v.type));
  }
  DegreeConstants out;
  out.sample = ratio.size();
  if (ratio.empty()) return out;
  std::sort(ratio.begin(), ratio.end());
  const auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(ratio.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, ratio.size() - 1);
    return ratio[lo] + (pos - static_cast<double>(lo)) * (ratio[hi] - ratio[lo]);
  };
  out.q05 = quantile(0.05);
  out.median = quantile(0.5);
  out.q95 = quantile(0.95);
  out.mean = std::accumulate(ratio.begin(), ratio.end(), 0.0) / static_cast<double>(ratio.size());
  return out;
}

}  // namespace hyperperc
