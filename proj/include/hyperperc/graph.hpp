#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hyperperc/geometry.hpp"

namespace hyperperc {

using VertexId = std::uint32_t;

struct Vertex {
  VertexId id = 0;
  PolarPoint point;
  double type = 0.0;  // R - point.r

  bool operator==(const Vertex&) const = default;
};

/// Undirected edge in canonical form (u < v).
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  auto operator<=>(const Edge&) const = default;
};

/// Immutable simple graph in compressed adjacency form. Vertices carry their
/// sampled coordinates; neighbor lists are sorted.
class Graph {
 public:
  Graph() = default;

  /// `edges` may be in any order but must be canonical (u < v), in range and
  /// free of duplicates. Vertex ids must be 0..N-1 in order. Throws
  /// ValidationError otherwise.
  Graph(ModelParams params, std::vector<Vertex> vertices, std::vector<Edge> edges);

  const ModelParams& params() const noexcept { return params_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  std::span<const Vertex> vertices() const noexcept { return vertices_; }
  const Vertex& vertex(VertexId v) const { return vertices_[v]; }

  std::span<const VertexId> neighbors(VertexId v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  bool adjacent(VertexId a, VertexId b) const noexcept;

  /// Canonical edge list sorted lexicographically.
  std::vector<Edge> edges() const;

  bool operator==(const Graph&) const = default;

 private:
  ModelParams params_;
  std::vector<Vertex> vertices_;
  std::vector<std::size_t> offsets_{0};
  std::vector<VertexId> adjacency_;
};

enum class BuildMode { exact_bruteforce, windowed };

struct BuildOptions {
  BuildMode mode = BuildMode::windowed;
  /// Envelope slack used to size angular windows.
  double epsilon = 0.1;
  /// Bucket pairs whose maximal types sum to at least R - guard_c0 use the
  /// window sin^2(dtheta/2) < sinh^2(R/2) / (sinh r_u sinh r_v) instead of
  /// the envelope, and all pairs once that window reaches pi.
  double guard_c0 = 15.0;
  /// Width of the type buckets.
  double bucket_width = 0.25;
};

/// Draws N points (vertex k from substream (seed, vertices, k)) and relabels
/// them by increasing angle.
std::vector<Vertex> sample_vertices(const ModelParams& params);

/// Vertices for explicit points, relabeled by increasing angle.
std::vector<Vertex> vertices_from_points(const ModelParams& params,
                                         std::span<const PolarPoint> points);

/// Samples G(N; alpha, nu). u ~ v iff hyperbolic distance < R, in both modes.
Graph build_graph(const ModelParams& params, const BuildOptions& options = {});
Graph build_graph(const ModelParams& params, BuildMode mode);

/// Geometric graph on given vertices (ids 0..N-1, sorted by angle).
Graph build_geometric_graph(const ModelParams& params, std::vector<Vertex> vertices,
                            const BuildOptions& options = {});

/// Keeps each edge independently with probability rho. The draw for edge
/// (u, v) depends only on (seed, u, v).
Graph bond_percolate(const Graph& g, double rho, std::uint64_t seed);

std::vector<std::size_t> degree_sequence(const Graph& g);

struct Components {
  std::vector<std::uint32_t> label;  // component index per vertex
  std::vector<std::size_t> sizes;    // vertices per component
  std::size_t largest() const noexcept;
};

Components connected_components(const Graph& g);

}  // namespace hyperperc
