#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "hyperperc/graph.hpp"

namespace hyperperc {

/// degree -> number of vertices with that degree.
std::map<std::size_t, std::size_t> degree_histogram(const Graph& g);

/// Hill estimate of the density exponent of a power-law degree tail:
///   1 + k / sum_{i<=k} ln(X_(i) / X_(k+1))
/// over the k = max(1, floor(tail_fraction * n)) largest values. Empty when the
/// tail is degenerate (fewer than k+1 values or X_(k+1) = 0 or all ties).
std::optional<double> hill_exponent(std::span<const std::size_t> values,
                                    double tail_fraction = 0.01);

/// Average over all vertices of the local clustering coefficient; vertices of
/// degree < 2 contribute 0.
double mean_local_clustering(const Graph& g);

/// Triangles through each vertex.
std::vector<std::size_t> triangle_counts(const Graph& g);

/// Empirical spread of deg(v) / e^{t_v/2} over vertices with
/// t_min <= t_v < R / (2 alpha). With `light_c` set, only neighbors of type
/// below it are counted.
struct DegreeConstants {
  std::size_t sample = 0;
  double q05 = 0.0;
  double median = 0.0;
  double q95 = 0.0;
  double mean = 0.0;
};
DegreeConstants degree_constants(const Graph& g, double t_min = 1.0,
                                 std::optional<double> light_c = std::nullopt);

}  // namespace hyperperc
