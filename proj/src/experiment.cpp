#include "hyperperc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <mutex>
#include <new>
#include <ostream>
#include <thread>

#include "hyperperc/errors.hpp"

namespace hyperperc {

double p_from_multiplier(double m, std::uint64_t n, double alpha) {
  const double p = m * std::pow(static_cast<double>(n), -1.0 / (2.0 * alpha));
  return std::clamp(p, 0.0, 1.0);
}

RunRecord run_single(const Graph& g, const PercolationConfig& cfg) {
  cfg.validate();
  const Graph kept = bond_percolate(g, cfg.rho, cfg.seed);
  const auto a0 = initial_infection(kept, cfg.p, cfg.seed);
  const BootstrapResult br = bootstrap(kept, a0, cfg.threshold_r);
  RunRecord rec;
  rec.seed = cfg.seed;
  rec.p = cfg.p;
  rec.rho = cfg.rho;
  rec.r = cfg.threshold_r;
  rec.n = g.params().n;
  rec.alpha = g.params().alpha;
  rec.nu = g.params().nu;
  rec.a0_size = br.initially_infected.size();
  rec.af_size = br.finally_infected.size();
  rec.rounds = br.rounds;
  rec.core_size = r_core(kept, cfg.threshold_r).core_size;
  rec.l1 = connected_components(kept).largest();
  return rec;
}

nlohmann::json to_json(const RunRecord& rec) {
  return {{"seed", rec.seed},       {"p", rec.p},           {"rho", rec.rho},
          {"r", rec.r},             {"N", rec.n},           {"alpha", rec.alpha},
          {"nu", rec.nu},           {"a0_size", rec.a0_size}, {"af_size", rec.af_size},
          {"rounds", rec.rounds},   {"core_size", rec.core_size}, {"l1", rec.l1}};
}

void SweepSpec::validate() const {
  if (n.empty() || alpha.empty() || p_multipliers.empty() || rho.empty() || r.empty()) {
    throw ParameterError("sweep lists must be nonempty");
  }
  if (seeds < 1) throw ParameterError("seeds must be >= 1");
  if (workers < 1) throw ParameterError("workers must be >= 1");
  for (std::uint64_t x : n) ModelParams::make(x, alpha.front(), nu);
  for (double a : alpha) ModelParams::make(n.front(), a, nu);
  for (double m : p_multipliers) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw ParameterError("p multipliers must be >= 0");
  }
  for (double x : rho) PercolationConfig{x, 0.0, 1, 0}.validate();
  for (int x : r) PercolationConfig{1.0, 0.0, x, 0}.validate();
}

std::size_t SweepSpec::row_count() const noexcept {
  return n.size() * alpha.size() * static_cast<std::size_t>(std::max(seeds, 0)) * rho.size() *
         r.size() * p_multipliers.size();
}

SweepRow SweepRow::from(const RunRecord& rec, double p_multiplier, double wall_time_ms) {
  const double n = static_cast<double>(rec.n);
  SweepRow row;
  row.n = rec.n;
  row.alpha = rec.alpha;
  row.nu = rec.nu;
  row.rho = rec.rho;
  row.r = rec.r;
  row.p = rec.p;
  row.p_multiplier = p_multiplier;
  row.seed = rec.seed;
  row.a0_size = rec.a0_size;
  row.af_size = rec.af_size;
  row.af_fraction = static_cast<double>(rec.af_size) / n;
  row.rounds = rec.rounds;
  row.l1_fraction = static_cast<double>(rec.l1) / n;
  row.core_fraction = static_cast<double>(rec.core_size) / n;
  row.wall_time_ms = wall_time_ms;
  return row;
}

namespace {

template <class T>
void put(std::string& out, T value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, res.ptr);
}

template <class T>
T take(std::string_view field, std::string_view name) {
  T value{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw SchemaError("CSV field " + std::string(name) + ": cannot parse '" + std::string(field) +
                      "'");
  }
  return value;
}

}  // namespace

std::string csv_header() {
  std::string out;
  for (std::size_t i = 0; i < kSweepColumns.size(); ++i) {
    if (i) out += ',';
    out += kSweepColumns[i];
  }
  return out;
}

std::string csv_line(const SweepRow& row) {
  std::string out;
  const auto sep = [&] { out += ','; };
  put(out, row.n), sep();
  put(out, row.alpha), sep();
  put(out, row.nu), sep();
  put(out, row.rho), sep();
  put(out, row.r), sep();
  put(out, row.p), sep();
  put(out, row.p_multiplier), sep();
  put(out, row.seed), sep();
  put(out, row.a0_size), sep();
  put(out, row.af_size), sep();
  put(out, row.af_fraction), sep();
  put(out, row.rounds), sep();
  put(out, row.l1_fraction), sep();
  put(out, row.core_fraction), sep();
  put(out, row.wall_time_ms);
  return out;
}

SweepRow parse_csv_line(std::string_view line) {
  std::vector<std::string_view> f;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    f.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (f.size() != kSweepColumns.size()) {
    throw SchemaError("CSV row has " + std::to_string(f.size()) + " fields, expected " +
                      std::to_string(kSweepColumns.size()));
  }
  SweepRow row;
  std::size_t k = 0;
  const auto next = [&]() { return std::pair{f[k], kSweepColumns[k]}; };
  const auto u64 = [&] { auto [v, n] = next(); ++k; return take<std::uint64_t>(v, n); };
  const auto dbl = [&] { auto [v, n] = next(); ++k; return take<double>(v, n); };
  const auto int_ = [&] { auto [v, n] = next(); ++k; return take<int>(v, n); };
  const auto sz = [&] { auto [v, n] = next(); ++k; return take<std::size_t>(v, n); };
  row.n = u64();
  row.alpha = dbl();
  row.nu = dbl();
  row.rho = dbl();
  row.r = int_();
  row.p = dbl();
  row.p_multiplier = dbl();
  row.seed = u64();
  row.a0_size = sz();
  row.af_size = sz();
  row.af_fraction = dbl();
  row.rounds = int_();
  row.l1_fraction = dbl();
  row.core_fraction = dbl();
  row.wall_time_ms = dbl();
  return row;
}

namespace {

struct Group {
  std::uint64_t n;
  double alpha;
  std::uint64_t seed;
};

struct GroupOutput {
  std::vector<std::string> lines;
  std::size_t written = 0;
  bool done = false;
};

class OrderedWriter {
 public:
  OrderedWriter(std::ostream& out, std::size_t groups) : out_(out), groups_(groups) {}

  void add(std::size_t group, std::string line) {
    std::lock_guard lock(mu_);
    groups_[group].lines.push_back(std::move(line));
    drain();
  }
  void finish(std::size_t group, std::vector<std::string> errors) {
    std::lock_guard lock(mu_);
    groups_[group].done = true;
    for (auto& e : errors) errors_.push_back(std::move(e));
    drain();
  }
  std::size_t rows() const { return rows_; }
  std::vector<std::string> errors() { return std::move(errors_); }

 private:
  void drain() {
    while (next_ < groups_.size()) {
      GroupOutput& g = groups_[next_];
      while (g.written < g.lines.size()) {
        out_ << g.lines[g.written++] << '\n';
        out_.flush();
        ++rows_;
      }
      if (!g.done) return;
      g.lines.clear();
      g.lines.shrink_to_fit();
      ++next_;
    }
  }

  std::mutex mu_;
  std::ostream& out_;
  std::vector<GroupOutput> groups_;
  std::size_t next_ = 0;
  std::size_t rows_ = 0;
  std::vector<std::string> errors_;
};

}  // namespace

SweepSummary run_sweep(const SweepSpec& spec, std::ostream& csv, std::ostream* progress) {
  spec.validate();
  std::vector<Group> groups;
  for (std::uint64_t n : spec.n) {
    for (double a : spec.alpha) {
      for (int k = 0; k < spec.seeds; ++k) {
        groups.push_back({n, a, spec.base_seed + static_cast<std::uint64_t>(k)});
      }
    }
  }
  csv << csv_header() << '\n';
  csv.flush();
  if (!csv) throw IoError("cannot write sweep output");

  OrderedWriter writer(csv, groups.size());
  std::mutex progress_mu;
  std::atomic<std::size_t> next{0};
  const auto report = [&](const std::string& msg) {
    if (!progress) return;
    std::lock_guard lock(progress_mu);
    *progress << msg << '\n';
    progress->flush();
  };

  const auto worker = [&] {
    for (std::size_t gi = next++; gi < groups.size(); gi = next++) {
      const Group& grp = groups[gi];
      const std::string where = "N=" + std::to_string(grp.n) + " alpha=" +
                                std::to_string(grp.alpha) + " seed=" + std::to_string(grp.seed);
      std::vector<std::string> errors;
      try {
        const ModelParams params = ModelParams::make(grp.n, grp.alpha, spec.nu, grp.seed);
        const Graph g = build_graph(params, spec.build);
        for (double rho : spec.rho) {
          for (int r : spec.r) {
            for (double m : spec.p_multipliers) {
              const std::string cell = where + " rho=" + std::to_string(rho) +
                                       " r=" + std::to_string(r) + " m=" + std::to_string(m);
              try {
                const auto t0 = std::chrono::steady_clock::now();
                const PercolationConfig cfg{rho, p_from_multiplier(m, grp.n, grp.alpha), r,
                                            grp.seed};
                const RunRecord rec = run_single(g, cfg);
                const double ms =
                    spec.record_timing
                        ? std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count()
                        : 0.0;
                writer.add(gi, csv_line(SweepRow::from(rec, m, ms)));
              } catch (const std::bad_alloc&) {
                errors.push_back(cell + ": out of memory");
                report("error: " + errors.back());
              } catch (const Error& e) {
                errors.push_back(cell + ": " + e.what());
                report("error: " + errors.back());
              }
            }
          }
        }
      } catch (const std::bad_alloc&) {
        errors.push_back(where + ": out of memory");
        report("error: " + errors.back());
      } catch (const Error& e) {
        errors.push_back(where + ": " + e.what());
        report("error: " + errors.back());
      }
      report("[" + std::to_string(gi + 1) + "/" + std::to_string(groups.size()) + "] " + where +
             " done");
      writer.finish(gi, std::move(errors));
    }
  };

  const unsigned threads =
      std::min<unsigned>(spec.workers, static_cast<unsigned>(std::max<std::size_t>(groups.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (!csv) throw IoError("failed writing sweep output");
  return SweepSummary{writer.rows(), writer.errors()};
}

}  // namespace hyperperc
