#include "hyperperc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <new>
#include <numeric>
#include <string>

#include "hyperperc/errors.hpp"

namespace hyperperc {

Graph::Graph(ModelParams params, std::vector<Vertex> vertices, std::vector<Edge> edges)
    : params_(params), vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n > std::numeric_limits<VertexId>::max()) throw ValidationError("too many vertices");
  for (std::size_t i = 0; i < n; ++i) {
    if (vertices_[i].id != i) {
      throw ValidationError("vertex ids must be dense and ordered (vertex " + std::to_string(i) +
                            " has id " + std::to_string(vertices_[i].id) + ")");
    }
  }
  std::sort(edges.begin(), edges.end());
  std::vector<std::size_t> degree(n, 0);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Edge& e = edges[k];
    if (e.u >= e.v) {
      throw ValidationError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                            ") is not in canonical (min, max) form");
    }
    if (e.v >= n) throw ValidationError("edge endpoint out of range: " + std::to_string(e.v));
    if (k > 0 && edges[k - 1] == e) {
      throw ValidationError("duplicate edge (" + std::to_string(e.u) + ", " +
                            std::to_string(e.v) + ")");
    }
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.resize(offsets_[n]);
  // Lexicographic edge order fills every list in increasing neighbor order.
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges) {
    adjacency_[cursor[e.u]++] = e.v;
    adjacency_[cursor[e.v]++] = e.u;
  }
}

bool Graph::adjacent(VertexId a, VertexId b) const noexcept {
  if (a >= size() || b >= size()) return false;
  const auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (VertexId u = 0; u < size(); ++u) {
    for (VertexId v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

std::vector<Vertex> vertices_from_points(const ModelParams& params,
                                         std::span<const PolarPoint> points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return points[a].theta < points[b].theta;
  });
  std::vector<Vertex> out(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const PolarPoint& p = points[order[i]];
    if (!(p.r >= 0.0 && p.r <= params.radius) || !(p.theta >= 0.0 && p.theta < kTwoPi)) {
      throw ParameterError("point outside the disk or angle outside [0, 2pi)");
    }
    out[i] = Vertex{static_cast<VertexId>(i), p, vertex_type(p, params.radius)};
  }
  return out;
}

std::vector<Vertex> sample_vertices(const ModelParams& params) {
  std::vector<PolarPoint> points(params.n);
  for (std::uint64_t k = 0; k < params.n; ++k) {
    RandomStream stream(params.seed, Purpose::vertices, k);
    points[k] = sample_point(stream, params);
  }
  return vertices_from_points(params, points);
}

namespace {

// The envelope upper bound proves non-adjacency for t_u + t_v < R - c0 when
//   (1 + eps)^2 (1 - e^{-2 c0})^2 (1 - x^2 / 6)^2 >= 1,  x = (1 + eps) e^{-c0/2},
// independently of N (sinh r >= e^r (1 - e^{-2 c0}) / 2 since r > c0, and
// sin x >= x - x^3 / 6).
bool envelope_prune_is_sound(double epsilon, double c0) {
  const double x = (1.0 + epsilon) * std::exp(-0.5 * c0);
  const double a = (1.0 + epsilon) * (1.0 - std::exp(-2.0 * c0)) * (1.0 - x * x / 6.0);
  return x < 0.5 * std::numbers::pi && a * a > 1.0;
}

struct Bucket {
  std::vector<VertexId> ids;  // increasing, hence increasing angle
  double max_type = 0.0;
  // Angles and ids replicated at theta - 2pi, theta, theta + 2pi.
  std::vector<double> ext_theta;
  std::vector<VertexId> ext_ids;
};

std::vector<Bucket> make_buckets(std::span<const Vertex> vertices, double width) {
  std::vector<Bucket> buckets;
  for (const Vertex& v : vertices) {
    const auto k = static_cast<std::size_t>(std::max(0.0, std::floor(v.type / width)));
    if (k >= buckets.size()) buckets.resize(k + 1);
    buckets[k].ids.push_back(v.id);
    buckets[k].max_type = std::max(buckets[k].max_type, v.type);
  }
  for (Bucket& b : buckets) {
    const std::size_t m = b.ids.size();
    b.ext_theta.resize(3 * m);
    b.ext_ids.resize(3 * m);
    for (int copy = 0; copy < 3; ++copy) {
      for (std::size_t i = 0; i < m; ++i) {
        b.ext_theta[copy * m + i] = vertices[b.ids[i]].point.theta + (copy - 1) * kTwoPi;
        b.ext_ids[copy * m + i] = b.ids[i];
      }
    }
  }
  return buckets;
}

}  // namespace

Graph build_geometric_graph(const ModelParams& params, std::vector<Vertex> vertices,
                            const BuildOptions& options) {
  const std::size_t n = vertices.size();
  std::vector<CachedPoint> cache(n);
  for (std::size_t i = 0; i < n; ++i) cache[i] = CachedPoint::from(vertices[i].point);
  const double threshold = adjacency_threshold(params.radius);
  const auto linked = [&](VertexId a, VertexId b) {
    return sinh2_half_distance(cache[a], cache[b]) < threshold;
  };

  std::vector<Edge> edges;
  try {
    if (options.mode == BuildMode::exact_bruteforce) {
      for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = u + 1; v < n; ++v) {
          if (linked(u, v)) edges.push_back({u, v});
        }
      }
    } else {
      if (!(options.bucket_width > 0.0)) throw ParameterError("bucket width must be positive");
      if (!(options.epsilon > 0.0 && options.epsilon < 1.0)) {
        throw ParameterError("epsilon must lie in (0, 1)");
      }
      if (!envelope_prune_is_sound(options.epsilon, options.guard_c0)) {
        throw ParameterError("guard_c0 too small for the angular envelope at this epsilon");
      }
      const auto buckets = make_buckets(vertices, options.bucket_width);
      for (std::size_t a = 0; a < buckets.size(); ++a) {
        const Bucket& ba = buckets[a];
        if (ba.ids.empty()) continue;
        for (std::size_t b = a; b < buckets.size(); ++b) {
          const Bucket& bb = buckets[b];
          if (bb.ids.empty()) continue;
          const double type_sum = ba.max_type + bb.max_type;
          double window =
              2.0 * (1.0 + options.epsilon) * std::exp(0.5 * (type_sum - params.radius));
          if (type_sum >= params.radius - options.guard_c0 || window >= std::numbers::pi) {
            // sinh^2(d/2) >= sinh r_u sinh r_v sin^2(dtheta/2) bounds the
            // window for the smallest radii in both buckets.
            const double s = std::sinh(0.5 * params.radius);
            const double q = s * s / (std::sinh(params.radius - ba.max_type) *
                                      std::sinh(params.radius - bb.max_type));
            window = q < 1.0 ? 2.0 * std::asin(std::sqrt(q)) : std::numbers::pi;
          }
          if (window >= std::numbers::pi) {
            for (std::size_t i = 0; i < ba.ids.size(); ++i) {
              const std::size_t j0 = (a == b) ? i + 1 : 0;
              for (std::size_t j = j0; j < bb.ids.size(); ++j) {
                const VertexId u = ba.ids[i];
                const VertexId v = bb.ids[j];
                if (linked(u, v)) edges.push_back({std::min(u, v), std::max(u, v)});
              }
            }
            continue;
          }
          // Outside the window the pair is provably non-adjacent; pad it
          // slightly so rounding never drops a candidate.
          const double reach = window * (1.0 + 1e-9) + 1e-12;
          std::size_t start = 0;
          for (VertexId u : ba.ids) {
            const double theta = vertices[u].point.theta;
            while (start < bb.ext_theta.size() && bb.ext_theta[start] < theta - reach) ++start;
            for (std::size_t j = start; j < bb.ext_theta.size() && bb.ext_theta[j] <= theta + reach;
                 ++j) {
              const VertexId v = bb.ext_ids[j];
              if (a == b && v <= u) continue;
              if (linked(u, v)) edges.push_back({std::min(u, v), std::max(u, v)});
            }
          }
        }
      }
    }
  } catch (const std::bad_alloc&) {
    throw ResourceError("out of memory while building a graph with " + std::to_string(n) +
                        " vertices");
  }
  return Graph(params, std::move(vertices), std::move(edges));
}

Graph build_graph(const ModelParams& params, const BuildOptions& options) {
  if (params.n > std::numeric_limits<VertexId>::max()) throw ParameterError("N too large");
  return build_geometric_graph(params, sample_vertices(params), options);
}

Graph build_graph(const ModelParams& params, BuildMode mode) {
  BuildOptions options;
  options.mode = mode;
  return build_graph(params, options);
}

Graph bond_percolate(const Graph& g, double rho, std::uint64_t seed) {
  if (!(rho > 0.0 && rho <= 1.0)) throw ParameterError("rho must lie in (0, 1]");
  std::vector<Edge> kept;
  kept.reserve(static_cast<std::size_t>(static_cast<double>(g.edge_count()) * rho) + 16);
  for (VertexId u = 0; u < g.size(); ++u) {
    for (VertexId v : g.neighbors(u)) {
      if (u < v && keyed_uniform(seed, Purpose::edges, u, v) < rho) kept.push_back({u, v});
    }
  }
  return Graph(g.params(), std::vector<Vertex>(g.vertices().begin(), g.vertices().end()),
               std::move(kept));
}

std::vector<std::size_t> degree_sequence(const Graph& g) {
  std::vector<std::size_t> out(g.size());
  for (VertexId v = 0; v < g.size(); ++v) out[v] = g.degree(v);
  return out;
}

std::size_t Components::largest() const noexcept {
  return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
}

Components connected_components(const Graph& g) {
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  Components c;
  c.label.assign(g.size(), unset);
  std::vector<VertexId> queue;
  queue.reserve(g.size());
  for (VertexId s = 0; s < g.size(); ++s) {
    if (c.label[s] != unset) continue;
    const auto id = static_cast<std::uint32_t>(c.sizes.size());
    queue.clear();
    queue.push_back(s);
    c.label[s] = id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (VertexId w : g.neighbors(queue[head])) {
        if (c.label[w] == unset) {
          c.label[w] = id;
          queue.push_back(w);
        }
      }
    }
    c.sizes.push_back(queue.size());
  }
  return c;
}

}  // namespace hyperperc
