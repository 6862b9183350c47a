#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hyperperc/graph.hpp"
#include "hyperperc/percolation.hpp"

namespace hyperperc {

/// p = m N^{-1/(2 alpha)}, clamped to [0, 1].
double p_from_multiplier(double m, std::uint64_t n, double alpha);

/// Outcome of percolate -> infect -> bootstrap -> components -> core.
struct RunRecord {
  std::uint64_t seed = 0;
  double p = 0.0;
  double rho = 1.0;
  int r = 2;
  std::uint64_t n = 0;
  double alpha = 0.0;
  double nu = 0.0;
  std::size_t a0_size = 0;
  std::size_t af_size = 0;
  int rounds = 0;
  std::size_t core_size = 0;  // r-core of the percolated graph
  std::size_t l1 = 0;         // largest component of the percolated graph
};

/// Edge retention, infection and the graph itself may share `cfg.seed`; each
/// uses its own substream.
RunRecord run_single(const Graph& g, const PercolationConfig& cfg);

nlohmann::json to_json(const RunRecord& rec);

struct SweepSpec {
  std::vector<std::uint64_t> n{100000};
  std::vector<double> alpha{0.75};
  double nu = 1.0;
  std::vector<double> p_multipliers{1.0};
  std::vector<double> rho{1.0};
  std::vector<int> r{2};
  int seeds = 1;
  std::uint64_t base_seed = 1;
  unsigned workers = 1;
  bool record_timing = true;
  BuildOptions build;

  /// Throws ParameterError.
  void validate() const;
  std::size_t row_count() const noexcept;
};

inline constexpr std::array<std::string_view, 15> kSweepColumns = {
    "N",    "alpha",   "nu",          "rho",        "r",           "p",
    "p_multiplier",    "seed",        "a0_size",    "af_size",     "af_fraction",
    "rounds",          "l1_fraction", "core_fraction", "wall_time_ms"};

struct SweepRow {
  std::uint64_t n = 0;
  double alpha = 0.0;
  double nu = 0.0;
  double rho = 0.0;
  int r = 0;
  double p = 0.0;
  double p_multiplier = 0.0;
  std::uint64_t seed = 0;
  std::size_t a0_size = 0;
  std::size_t af_size = 0;
  double af_fraction = 0.0;
  int rounds = 0;
  double l1_fraction = 0.0;
  double core_fraction = 0.0;
  double wall_time_ms = 0.0;

  static SweepRow from(const RunRecord& rec, double p_multiplier, double wall_time_ms);
};

std::string csv_header();
std::string csv_line(const SweepRow& row);
/// Parses a line produced by csv_line. Throws SchemaError.
SweepRow parse_csv_line(std::string_view line);

struct SweepSummary {
  std::size_t rows_written = 0;
  std::vector<std::string> errors;  // one entry per failed cell
};

/// Rows are ordered by (N, alpha, seed, rho, r, m). One graph is sampled per
/// (N, alpha, seed) and shared by its cells; graph seeds are base_seed + k.
/// Groups run on up to `workers` threads and are written in order, each row
/// flushed as soon as all earlier rows are out. Failed cells are reported in
/// the summary and on `progress` and the sweep continues.
SweepSummary run_sweep(const SweepSpec& spec, std::ostream& csv, std::ostream* progress = nullptr);

}  // namespace hyperperc
