#include "hyperperc/percolation.hpp"

#include <algorithm>
#include <string>

#include "hyperperc/errors.hpp"

namespace hyperperc {

namespace {

void check_threshold(int r) {
  if (r < 1) throw ParameterError("threshold r must be >= 1, got " + std::to_string(r));
}

std::vector<char> membership(const Graph& g, std::span<const VertexId> ids) {
  std::vector<char> in(g.size(), 0);
  for (VertexId v : ids) {
    if (v >= g.size()) {
      throw ParameterError("unknown vertex id " + std::to_string(v) + " (graph has " +
                           std::to_string(g.size()) + " vertices)");
    }
    in[v] = 1;
  }
  return in;
}

std::vector<VertexId> members(const std::vector<char>& in) {
  std::vector<VertexId> out;
  for (std::size_t v = 0; v < in.size(); ++v) {
    if (in[v]) out.push_back(static_cast<VertexId>(v));
  }
  return out;
}

}  // namespace

void PercolationConfig::validate() const {
  if (!(rho > 0.0 && rho <= 1.0)) throw ParameterError("rho must lie in (0, 1]");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("p must lie in [0, 1]");
  check_threshold(threshold_r);
}

std::vector<VertexId> initial_infection(const Graph& g, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("p must lie in [0, 1]");
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.size(); ++v) {
    if (keyed_uniform(seed, Purpose::infection, v) < p) out.push_back(v);
  }
  return out;
}

BootstrapResult bootstrap(const Graph& g, std::span<const VertexId> a0, int threshold_r) {
  check_threshold(threshold_r);
  std::vector<char> infected = membership(g, a0);
  BootstrapResult result;
  result.initially_infected = members(infected);

  const auto r = static_cast<std::uint32_t>(threshold_r);
  std::vector<std::uint32_t> count(g.size(), 0);
  std::vector<VertexId> frontier = result.initially_infected;
  std::vector<VertexId> next;
  while (!frontier.empty()) {
    next.clear();
    for (VertexId u : frontier) {
      for (VertexId w : g.neighbors(u)) {
        if (!infected[w] && ++count[w] == r) next.push_back(w);
      }
    }
    if (next.empty()) break;
    for (VertexId w : next) infected[w] = 1;
    ++result.rounds;
    result.per_round_new.push_back(next.size());
    frontier.swap(next);
  }
  result.finally_infected = members(infected);
  return result;
}

BootstrapResult naive_bootstrap_oracle(const Graph& g, std::span<const VertexId> a0,
                                       int threshold_r) {
  check_threshold(threshold_r);
  std::vector<char> infected = membership(g, a0);
  BootstrapResult result;
  result.initially_infected = members(infected);
  for (;;) {
    std::vector<VertexId> fresh;
    for (VertexId v = 0; v < g.size(); ++v) {
      if (infected[v]) continue;
      int k = 0;
      for (VertexId w : g.neighbors(v)) k += infected[w];
      if (k >= threshold_r) fresh.push_back(v);
    }
    if (fresh.empty()) break;
    for (VertexId v : fresh) infected[v] = 1;
    ++result.rounds;
    result.per_round_new.push_back(fresh.size());
  }
  result.finally_infected = members(infected);
  return result;
}

CoreResult r_core(const Graph& g, int threshold_r) {
  check_threshold(threshold_r);
  const auto r = static_cast<std::size_t>(threshold_r);
  std::vector<std::size_t> degree = degree_sequence(g);
  std::vector<char> removed(g.size(), 0);
  std::vector<VertexId> stack;
  for (VertexId v = 0; v < g.size(); ++v) {
    if (degree[v] < r) {
      removed[v] = 1;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : g.neighbors(v)) {
      if (!removed[w] && --degree[w] < r) {
        removed[w] = 1;
        stack.push_back(w);
      }
    }
  }
  CoreResult out;
  for (VertexId v = 0; v < g.size(); ++v) {
    if (!removed[v]) out.core_vertices.push_back(v);
  }
  out.core_size = out.core_vertices.size();
  return out;
}

bool is_fixed_point(const Graph& g, std::span<const VertexId> infected, int threshold_r) {
  check_threshold(threshold_r);
  const std::vector<char> in = membership(g, infected);
  for (VertexId v = 0; v < g.size(); ++v) {
    if (in[v]) continue;
    int k = 0;
    for (VertexId w : g.neighbors(v)) k += in[w];
    if (k >= threshold_r) return false;
  }
  return true;
}

bool infected_set_supported(const Graph& g, const BootstrapResult& result, int threshold_r) {
  check_threshold(threshold_r);
  const std::vector<char> in = membership(g, result.finally_infected);
  const std::vector<char> seed = membership(g, result.initially_infected);
  for (VertexId v : result.finally_infected) {
    if (seed[v]) continue;
    int k = 0;
    for (VertexId w : g.neighbors(v)) k += in[w];
    if (k < threshold_r) return false;
  }
  return true;
}

}  // namespace hyperperc
