#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hyperperc/graph.hpp"

namespace hyperperc {

/// (rho, p, r, seed) for one percolation experiment.
struct PercolationConfig {
  double rho = 1.0;
  double p = 0.0;
  int threshold_r = 2;
  std::uint64_t seed = 0;

  /// Throws ParameterError unless 0 < rho <= 1, 0 <= p <= 1, r >= 1.
  void validate() const;
};

/// Vertex sets are sorted, duplicate-free id lists.
struct BootstrapResult {
  std::vector<VertexId> initially_infected;
  std::vector<VertexId> finally_infected;
  int rounds = 0;
  std::vector<std::size_t> per_round_new;
};

struct CoreResult {
  std::vector<VertexId> core_vertices;
  std::size_t core_size = 0;
};

/// Each vertex v is infected iff keyed_uniform(seed, infection, v) < p.
std::vector<VertexId> initial_infection(const Graph& g, double p, std::uint64_t seed);

/// Synchronous r-neighbor bootstrap percolation run to fixation. Work is
/// proportional to the total degree of infected vertices. `a0` may be in any
/// order and may repeat ids; out-of-range ids throw ParameterError.
BootstrapResult bootstrap(const Graph& g, std::span<const VertexId> a0, int threshold_r);

/// Reference implementation that rescans every vertex each round.
BootstrapResult naive_bootstrap_oracle(const Graph& g, std::span<const VertexId> a0,
                                       int threshold_r);

/// Maximal vertex set inducing minimum degree >= r, by peeling.
CoreResult r_core(const Graph& g, int threshold_r);

/// True if no vertex outside `infected` has >= r neighbors inside it.
bool is_fixed_point(const Graph& g, std::span<const VertexId> infected, int threshold_r);

/// True if every vertex of A_f \ A_0 has >= r neighbors in A_f.
bool infected_set_supported(const Graph& g, const BootstrapResult& result, int threshold_r);

}  // namespace hyperperc
