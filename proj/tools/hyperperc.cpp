// Command-line front end: generate, run, sweep, stats, bands.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperperc/bands.hpp"
#include "hyperperc/errors.hpp"
#include "hyperperc/experiment.hpp"
#include "hyperperc/graph.hpp"
#include "hyperperc/graph_io.hpp"
#include "hyperperc/graph_stats.hpp"
#include "hyperperc/percolation.hpp"

using namespace hyperperc;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 2, kIo = 3, kNumeric = 4 };

struct ModelFlags {
  std::uint64_t n = 10000;
  double alpha = 0.75;
  double nu = 1.0;
  std::uint64_t seed = 1;
  std::string mode = "windowed";
};

void add_model_flags(CLI::App* sub, ModelFlags& m) {
  sub->add_option("--n", m.n, "Number of vertices")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--alpha", m.alpha, "Radial density exponent")->capture_default_str();
  sub->add_option("--nu", m.nu, "Scale constant, N = nu e^{R/2}")->capture_default_str();
  sub->add_option("--seed", m.seed, "Master seed")->capture_default_str();
  sub->add_option("--mode", m.mode, "Edge search: windowed or exact")
      ->check(CLI::IsMember({"windowed", "exact"}))
      ->capture_default_str();
}

BuildOptions build_options(const ModelFlags& m) {
  BuildOptions b;
  b.mode = m.mode == "exact" ? BuildMode::exact_bruteforce : BuildMode::windowed;
  return b;
}

/// Every option's resolved value, as strings.
json resolved_config(const CLI::App* sub) {
  json opts = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help") continue;
    const auto& res = opt->results();
    if (!res.empty()) {
      opts[name] = res.size() == 1 ? json(res.front()) : json(res);
    } else if (!opt->get_default_str().empty()) {
      opts[name] = opt->get_default_str();
    } else if (opt->get_type_size() == 0) {
      opts[name] = false;
    }
  }
  return {{"command", sub->get_name()}, {"version", "0.1.0"}, {"options", opts}};
}

/// Replaces the sampling flags by the parameters of the graph actually used.
json with_model(json config, const Graph& g, bool loaded) {
  if (loaded) {
    for (const char* key : {"n", "alpha", "nu", "seed", "mode"}) config["options"].erase(key);
  }
  config["model"] = {{"N", g.params().n},
                     {"alpha", g.params().alpha},
                     {"nu", g.params().nu},
                     {"R", g.params().radius},
                     {"seed", g.params().seed}};
  return config;
}

void emit(const json& doc, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream f(out, std::ios::trunc);
  if (!f) throw IoError("cannot open '" + out + "' for writing");
  f << doc.dump(2) << '\n';
  if (!f) throw IoError("failed writing '" + out + "'");
}

Graph obtain_graph(const std::string& path, const ModelFlags& m) {
  if (!path.empty()) return load_graph(path);
  return build_graph(ModelParams::make(m.n, m.alpha, m.nu, m.seed), build_options(m));
}

json graph_summary(const Graph& g) {
  std::size_t max_degree = 0;
  for (VertexId v = 0; v < g.size(); ++v) max_degree = std::max(max_degree, g.degree(v));
  const double mean = g.size() ? 2.0 * static_cast<double>(g.edge_count()) / g.size() : 0.0;
  return {{"N", g.size()},
          {"R", g.params().radius},
          {"edge_count", g.edge_count()},
          {"mean_degree", mean},
          {"max_degree", max_degree},
          {"alpha_outside_theory", g.params().alpha_outside_theory}};
}

json census_json(const BandCensus& c) {
  return {{"n0", c.n0},
          {"n0_floor", c.n0_floor},
          {"n0_ok", c.n0_ok()},
          {"counts", c.counts},
          {"bounds_lo", c.bounds_lo},
          {"bounds_hi", c.bounds_hi},
          {"in_bounds", c.in_bounds},
          {"all_in_bounds", c.all_in_bounds()},
          {"remainder", c.remainder},
          {"theta_times_prev", c.theta_times_prev},
          {"theta_times_prev_in_range", c.theta_times_prev_in_range}};
}

json decomposition_json(const BandDecomposition& bd) {
  return {{"t", bd.t},
          {"T", bd.T},
          {"T1", bd.T1},
          {"C", bd.C},
          {"lambda", bd.lambda},
          {"epsilon", bd.epsilon},
          {"theta_i", bd.theta},
          {"B_i", bd.B},
          {"residuals", bd.residual},
          {"assumption_with_nu", bd.assumption_with_nu},
          {"assumption_without_nu", bd.assumption_without_nu},
          {"contracts", bd.contracts},
          {"sum_exponentials", bd.sum_exponentials()},
          {"sum_exponentials_floor", bd.sum_exponentials_floor()}};
}

template <class T>
std::vector<T> levels_field(const BlockDiagnostics& d, T BlockLevel::*member) {
  std::vector<T> out;
  for (const BlockLevel& lv : d.levels) out.push_back(lv.*member);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bootstrap percolation on random hyperbolic graphs"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with option values; flags override it");

  // generate
  ModelFlags gen_model;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "Sample a graph and save it");
  add_model_flags(gen, gen_model);
  gen->add_option("--out", gen_out, "Graph file to write")->required();

  // run
  ModelFlags run_model;
  std::string run_graph, run_out, run_format = "json";
  double run_rho = 1.0, run_pmult = 1.0, run_p = -1.0;
  int run_r = 2;
  std::optional<std::uint64_t> run_seed;
  auto* run = app.add_subcommand("run", "One percolation + bootstrap experiment");
  add_model_flags(run, run_model);
  run->add_option("--graph", run_graph, "Graph file (otherwise sampled from the model flags)");
  run->add_option("--rho", run_rho, "Edge retention probability")->capture_default_str();
  auto* pm = run->add_option("--p-mult", run_pmult, "p = m N^{-1/(2 alpha)}")->capture_default_str();
  run->add_option("--p", run_p, "Initial infection probability")->excludes(pm);
  run->add_option("--r", run_r, "Activation threshold")->capture_default_str();
  run->add_option("--run-seed", run_seed, "Percolation/infection seed (default: graph seed)");
  run->add_option("--out", run_out, "Output file (default stdout)");
  run->add_option("--format", run_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  // sweep
  std::vector<std::uint64_t> sw_n{100000};
  std::vector<double> sw_alpha{0.75}, sw_pmult{1.0}, sw_rho{1.0};
  std::vector<int> sw_r{2};
  double sw_nu = 1.0;
  int sw_seeds = 1;
  std::uint64_t sw_seed = 1;
  unsigned sw_workers = 1;
  std::string sw_out = "-", sw_format = "csv", sw_mode = "windowed";
  bool sw_no_timing = false, sw_quiet = false;
  auto* sweep = app.add_subcommand("sweep", "Phase-transition sweep over (N, alpha, rho, r, m, seed)");
  sweep->add_option("--n", sw_n, "Vertex counts")->check(CLI::PositiveNumber)->capture_default_str();
  sweep->add_option("--alpha", sw_alpha, "alpha values")->capture_default_str();
  sweep->add_option("--nu", sw_nu, "Scale constant")->capture_default_str();
  sweep->add_option("--p-mult", sw_pmult, "p multipliers m")->capture_default_str();
  sweep->add_option("--rho", sw_rho, "Retention probabilities")->capture_default_str();
  sweep->add_option("--r", sw_r, "Activation thresholds")->capture_default_str();
  sweep->add_option("--seeds", sw_seeds, "Seeds per cell")->capture_default_str();
  sweep->add_option("--seed", sw_seed, "First seed")->capture_default_str();
  sweep->add_option("--workers", sw_workers, "Worker threads")
      ->envname("HYPERPERC_WORKERS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_option("--mode", sw_mode, "Edge search: windowed or exact")
      ->check(CLI::IsMember({"windowed", "exact"}))
      ->capture_default_str();
  sweep->add_option("--out", sw_out, "Output file ('-' for stdout)")->capture_default_str();
  sweep->add_option("--format", sw_format, "csv or json")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  sweep->add_flag("--no-timing", sw_no_timing, "Write wall_time_ms = 0");
  sweep->add_flag("--quiet", sw_quiet, "No progress on stderr");

  // stats
  ModelFlags st_model;
  std::string st_graph, st_out;
  double st_eps = 0.1;
  std::string st_big_c = "auto";
  auto* stats = app.add_subcommand("stats", "Degree, clustering, component and band statistics");
  add_model_flags(stats, st_model);
  stats->add_option("--graph", st_graph, "Graph file (otherwise sampled from the model flags)");
  stats->add_option("--epsilon", st_eps, "Band slack")->capture_default_str();
  stats->add_option("--big-c", st_big_c, "Band floor C, or auto")->capture_default_str();
  stats->add_option("--out", st_out, "Output file (default stdout)");

  // bands
  ModelFlags bd_model;
  std::string bd_graph, bd_out, bd_big_c = "auto";
  double bd_eps = 0.1, bd_rho = 1.0, bd_c_block = 1.0, bd_delta = 0.1;
  int bd_r = 2;
  std::optional<std::uint64_t> bd_run_seed;
  auto* bands = app.add_subcommand("bands", "Band recurrence, census, black blocks, error sums");
  add_model_flags(bands, bd_model);
  bands->add_option("--graph", bd_graph, "Graph file (otherwise sampled from the model flags)");
  bands->add_option("--epsilon", bd_eps, "Band slack")->capture_default_str();
  bands->add_option("--big-c", bd_big_c, "Band floor C, or auto")->capture_default_str();
  bands->add_option("--rho", bd_rho, "Edge retention probability")->capture_default_str();
  bands->add_option("--r", bd_r, "Activation threshold")->capture_default_str();
  bands->add_option("--c-block", bd_c_block, "Block constant c")->capture_default_str();
  bands->add_option("--delta", bd_delta, "delta in the discovered-set floor")->capture_default_str();
  bands->add_option("--run-seed", bd_run_seed, "Percolation seed (default: graph seed)");
  bands->add_option("--out", bd_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const auto resolve_c = [](const std::string& text, const CInputs& in) {
    if (text == "auto") return compute_C(in);
    std::size_t used = 0;
    double c = 0.0;
    try {
      c = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || !(c > 0.0)) throw ParameterError("--big-c must be 'auto' or > 0");
    return c;
  };

  try {
    if (*gen) {
      const Graph g = build_graph(
          ModelParams::make(gen_model.n, gen_model.alpha, gen_model.nu, gen_model.seed),
          build_options(gen_model));
      save_graph(g, gen_out);
      json doc = graph_summary(g);
      doc["file"] = gen_out;
      doc["config"] = with_model(resolved_config(gen), g, false);
      std::cout << doc.dump(2) << '\n';
    } else if (*run) {
      const Graph g = obtain_graph(run_graph, run_model);
      const bool direct_p = run->count("--p") > 0;
      const double p =
          direct_p ? run_p : p_from_multiplier(run_pmult, g.params().n, g.params().alpha);
      const double m =
          direct_p ? p * std::pow(static_cast<double>(g.size()), 1.0 / (2.0 * g.params().alpha))
                   : run_pmult;
      const PercolationConfig cfg{run_rho, p, run_r, run_seed.value_or(g.params().seed)};
      const RunRecord rec = run_single(g, cfg);
      if (run_format == "csv") {
        std::string text = csv_header() + "\n" + csv_line(SweepRow::from(rec, m, 0.0)) + "\n";
        if (run_out.empty() || run_out == "-") {
          std::cout << text;
        } else {
          std::ofstream f(run_out, std::ios::trunc);
          if (!(f << text)) throw IoError("cannot write '" + run_out + "'");
          emit(with_model(resolved_config(run), g, !run_graph.empty()), run_out + ".config.json");
        }
      } else {
        json doc = to_json(rec);
        doc["p_multiplier"] = m;
        doc["config"] = with_model(resolved_config(run), g, !run_graph.empty());
        emit(doc, run_out);
      }
    } else if (*sweep) {
      SweepSpec spec;
      spec.n = sw_n;
      spec.alpha = sw_alpha;
      spec.nu = sw_nu;
      spec.p_multipliers = sw_pmult;
      spec.rho = sw_rho;
      spec.r = sw_r;
      spec.seeds = sw_seeds;
      spec.base_seed = sw_seed;
      spec.workers = sw_workers;
      spec.record_timing = !sw_no_timing;
      spec.build.mode = sw_mode == "exact" ? BuildMode::exact_bruteforce : BuildMode::windowed;
      spec.validate();
      json config = resolved_config(sweep);
      config["rows"] = spec.row_count();
      std::ostream* progress = sw_quiet ? nullptr : &std::cerr;
      const bool to_stdout = sw_out.empty() || sw_out == "-";
      SweepSummary summary;
      if (sw_format == "csv") {
        if (to_stdout) {
          summary = run_sweep(spec, std::cout, progress);
        } else {
          std::ofstream f(sw_out, std::ios::trunc);
          if (!f) throw IoError("cannot open '" + sw_out + "' for writing");
          emit(config, sw_out + ".config.json");
          summary = run_sweep(spec, f, progress);
        }
      } else {
        std::ostringstream buf;
        summary = run_sweep(spec, buf, progress);
        json rows = json::array();
        std::istringstream in(buf.str());
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
          const SweepRow r = parse_csv_line(line);
          rows.push_back({{"N", r.n}, {"alpha", r.alpha}, {"nu", r.nu}, {"rho", r.rho},
                          {"r", r.r}, {"p", r.p}, {"p_multiplier", r.p_multiplier},
                          {"seed", r.seed}, {"a0_size", r.a0_size}, {"af_size", r.af_size},
                          {"af_fraction", r.af_fraction}, {"rounds", r.rounds},
                          {"l1_fraction", r.l1_fraction}, {"core_fraction", r.core_fraction},
                          {"wall_time_ms", r.wall_time_ms}});
        }
        emit({{"config", config}, {"rows", rows}, {"errors", summary.errors}},
             to_stdout ? "-" : sw_out);
      }
      if (!summary.errors.empty()) {
        std::cerr << summary.errors.size() << " cell(s) failed\n";
        return kNumeric;
      }
    } else if (*stats) {
      const Graph g = obtain_graph(st_graph, st_model);
      json doc = graph_summary(g);
      json hist = json::array();
      for (const auto& [d, c] : degree_histogram(g)) hist.push_back({d, c});
      doc["degree_histogram"] = hist;
      const auto degrees = degree_sequence(g);
      const auto hill = hill_exponent(degrees);
      doc["hill_exponent"] = hill ? json(*hill) : json(nullptr);
      doc["hill_target"] = 2.0 * g.params().alpha + 1.0;
      doc["clustering"] = mean_local_clustering(g);
      doc["l1"] = connected_components(g).largest();
      const DegreeConstants dc = degree_constants(g);
      doc["degree_constants"] = {{"sample", dc.sample}, {"q05", dc.q05}, {"median", dc.median},
                                 {"q95", dc.q95},       {"mean", dc.mean}};
      try {
        CInputs in;
        in.alpha = g.params().alpha;
        in.nu = g.params().nu;
        in.epsilon = st_eps;
        const double C = resolve_c(st_big_c, in);
        const auto bd = solve_band_recurrence(BandModel::of(g.params()), st_eps, C);
        json census = census_json(band_census(g, bd));
        census["T"] = bd.T;
        census["C"] = C;
        doc["band_census"] = census;
      } catch (const Error& e) {
        doc["band_census"] = {{"error", e.what()}};
      }
      doc["config"] = with_model(resolved_config(stats), g, !st_graph.empty());
      emit(doc, st_out);
    } else if (*bands) {
      const Graph g = obtain_graph(bd_graph, bd_model);
      CInputs in{g.params().alpha, g.params().nu, bd_eps, bd_rho, bd_r, bd_c_block};
      in.validate();
      const double C = resolve_c(bd_big_c, in);
      const auto conditions = check_c_conditions(in, C);
      const auto bd = solve_band_recurrence(BandModel::of(g.params()), bd_eps, C);
      const Graph kept = bond_percolate(g, bd_rho, bd_run_seed.value_or(g.params().seed));
      const BandCensus census = band_census(g, bd);
      const BlockDiagnostics diag =
          black_block_diagnostics(g, kept, bd, bd_r, BlockOptions{bd_rho, bd_c_block, bd_delta});
      const ErrorTermReport err = error_term_report(bd, bd_rho, bd_r, bd_c_block);

      json doc = decomposition_json(bd);
      std::vector<long long> K;
      if (bd.T >= 1) K.push_back(bd.K1());
      for (std::size_t k = 1; k < diag.levels.size(); ++k) K.push_back(diag.levels[k].K);
      doc["K_i"] = K;
      doc["C_conditions"] = conditions;
      doc["census"] = census_json(census);
      doc["S_i"] = levels_field(diag, &BlockLevel::S);
      doc["Theta_i"] = levels_field(diag, &BlockLevel::Theta);
      doc["L_i"] = levels_field(diag, &BlockLevel::L);
      doc["eps_i"] = levels_field(diag, &BlockLevel::eps);
      doc["M1_i"] = levels_field(diag, &BlockLevel::M1);
      doc["M2_i"] = levels_field(diag, &BlockLevel::M2);
      doc["discovered_i"] = levels_field(diag, &BlockLevel::discovered);
      doc["discovered_floor_i"] = levels_field(diag, &BlockLevel::discovered_floor);
      doc["blocks_formed_i"] = levels_field(diag, &BlockLevel::candidates);
      doc["T2_observed"] = diag.T2_observed ? json(*diag.T2_observed) : json(nullptr);
      doc["kappa"] = diag.kappa;
      doc["discovered_total"] = diag.discovered_total;
      doc["error_sums"] = {{"first", err.first}, {"second", err.second}, {"third", err.third},
                           {"terms", err.terms}};
      bool theta_ok = true;
      for (const BlockLevel& lv : diag.levels) theta_ok = theta_ok && lv.Theta > 0.5 * std::numbers::pi;
      doc["flags"] = {{"first_sum", err.first_ok},
                      {"second_sum", err.second_ok},
                      {"third_sum", err.third_ok},
                      {"census_in_bounds", census.all_in_bounds()},
                      {"n0_floor", census.n0_ok()},
                      {"theta1_gt_pi", !diag.levels.empty() && diag.levels[0].Theta > std::numbers::pi},
                      {"theta_i_gt_half_pi", theta_ok},
                      {"sum_exponentials",
                       bd.sum_exponentials() >= bd.sum_exponentials_floor()}};
      doc["config"] = with_model(resolved_config(bands), g, !bd_graph.empty());
      emit(doc, bd_out);
    }
  } catch (const CSearchError& e) {
    std::cerr << "error: " << e.what() << " (condition " << e.condition() << ")\n";
    return kNumeric;
  } catch (const DecompositionError& e) {
    std::cerr << "error: " << e.what();
    if (e.condition() > 0) std::cerr << " (condition " << e.condition() << ")";
    std::cerr << '\n';
    return kNumeric;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kOk;
}
