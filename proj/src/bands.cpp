#include "hyperperc/bands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hyperperc {

namespace {

constexpr double kPi = std::numbers::pi;

double band_k(double nu, double epsilon) {
  const double q = 1.0 - epsilon;
  return 4.0 * kPi / (nu * q * q * q * q);
}

void check_alpha_eps(double alpha, double epsilon) {
  if (!(alpha > 0.5 && alpha < 1.0)) {
    throw ParameterError("band analysis needs alpha in (1/2, 1), got " + std::to_string(alpha));
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
}

}  // namespace

BandModel BandModel::of(const ModelParams& params) {
  return BandModel{static_cast<double>(params.n), params.alpha, params.nu, params.radius};
}

BandModel BandModel::analytic(double n, double alpha, double nu) {
  if (!(n >= 1.0) || !std::isfinite(n)) throw ParameterError("N must be a finite value >= 1");
  if (!(alpha > 0.0)) throw ParameterError("alpha must be positive");
  if (!(nu > 0.0) || nu > n) throw ParameterError("nu must lie in (0, N]");
  return BandModel{n, alpha, nu, 2.0 * std::log(n / nu)};
}

long long BandDecomposition::K1() const noexcept {
  return B.empty() ? 0 : static_cast<long long>(std::floor(2.0 * kPi / B[0]));
}

double BandDecomposition::sum_exponentials() const noexcept {
  double s = 0.0;
  for (int i = 1; i <= T - 1; ++i) s += std::exp(-model.alpha * t[i]);
  return s;
}

double BandDecomposition::sum_exponentials_floor() const noexcept {
  return std::exp(-model.alpha * C / lambda);
}

double band_residual(double t, double t_prev, double alpha, double nu, double epsilon) noexcept {
  return t - 2.0 * std::log(band_k(nu, epsilon) * t) - (2.0 * alpha - 1.0) * t_prev;
}

double solve_band_step(double t_prev, double alpha, double nu, double epsilon) {
  const auto g = [&](double t) { return band_residual(t, t_prev, alpha, nu, epsilon); };
  const double lambda = 2.0 * alpha - 1.0;
  double lo = std::max(2.0, lambda * t_prev);
  double hi = t_prev;
  if (!(hi > 2.0)) {
    throw DecompositionError("band recurrence: t_prev = " + std::to_string(t_prev) +
                             " leaves no room on the branch t > 2");
  }
  if (g(lo) > 0.0) lo = 2.0;
  if (g(lo) > 0.0) {
    throw DecompositionError("band recurrence: no root on t > 2 below t_prev = " +
                             std::to_string(t_prev));
  }
  if (g(hi) < 0.0) {
    throw DecompositionError("band recurrence does not contract: the root for t_prev = " +
                             std::to_string(t_prev) + " lies above t_prev");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {
    const double step = g(t) / (1.0 - 2.0 / t);
    const double next = t - step;
    if (!(next >= lo && next <= hi) || std::fabs(g(next)) >= std::fabs(g(t))) break;
    t = next;
  }
  return t;
}

BandDecomposition solve_band_recurrence(const BandModel& model, double epsilon, double C,
                                        int max_bands) {
  check_alpha_eps(model.alpha, epsilon);
  if (!(C > 0.0)) throw ParameterError("C must be positive");
  BandDecomposition bd;
  bd.model = model;
  bd.epsilon = epsilon;
  bd.lambda = 2.0 * model.alpha - 1.0;
  bd.C = C;
  bd.t.push_back(0.5 * model.radius);
  while (bd.t.back() >= C) {
    const double prev = bd.t.back();
    if (static_cast<int>(bd.t.size()) > max_bands) {
      throw DecompositionError("band recurrence exceeded " + std::to_string(max_bands) +
                               " bands without dropping below C");
    }
    const double next = solve_band_step(prev, model.alpha, model.nu, epsilon);
    if (!(prev - next > 1e-9)) {
      throw DecompositionError("band recurrence stalls at t = " + std::to_string(prev) +
                               ", above C = " + std::to_string(C));
    }
    bd.t.push_back(next);
  }
  bd.T1 = static_cast<int>(bd.t.size()) - 1;
  bd.T = bd.T1;

  const double k = band_k(model.nu, epsilon);
  const double k_no_nu = band_k(1.0, epsilon);
  for (int i = 1; i <= bd.T; ++i) {
    const double ti = bd.t[i];
    const double tp = bd.t[i - 1];
    const double theta = 2.0 * (1.0 - epsilon) * std::exp(0.5 * (ti + tp - model.radius));
    bd.theta.push_back(theta);
    bd.B.push_back(theta / ti);
    bd.residual.push_back(std::fabs(band_residual(ti, tp, model.alpha, model.nu, epsilon)));
    bd.assumption_with_nu.push_back(1.0 - model.alpha > (2.0 / ti) * std::log(k * ti));
    bd.assumption_without_nu.push_back(1.0 - model.alpha > (2.0 / ti) * std::log(k_no_nu * ti));
    bd.contracts.push_back(ti < model.alpha * tp);
  }
  return bd;
}

void CInputs::validate() const {
  check_alpha_eps(alpha, epsilon);
  if (!(nu > 0.0)) throw ParameterError("nu must be positive");
  if (!(rho > 0.0 && rho <= 1.0)) throw ParameterError("rho must lie in (0, 1]");
  if (threshold_r < 1) throw ParameterError("threshold r must be >= 1");
  if (!(c_block > 0.0)) throw ParameterError("c_block must be positive");
}

double condition6_floor(double alpha) {
  const double lambda = 2.0 * alpha - 1.0;
  return std::max((4.0 / lambda) * alpha / (1.0 - alpha * alpha),
                  2.0 * alpha / ((1.0 - alpha) * (1.0 - alpha) * (1.0 + alpha)));
}

std::array<bool, kCConditionCount> check_c_conditions(const CInputs& in, double C) {
  const double a = in.alpha;
  const double lambda = 2.0 * a - 1.0;
  const double k = band_k(in.nu, in.epsilon);
  const double crr = in.c_block * std::pow(in.rho, in.threshold_r);
  std::array<bool, kCConditionCount> ok{};

  ok[0] = std::exp(-C * a * (1.0 - a)) < in.epsilon;

  const auto h = [&](double x) { return x - 2.0 * std::log(k * x); };
  double x_min = 2.0;
  if (h(x_min) < lambda * C) {
    double lo = 2.0;
    double hi = 4.0;
    while (h(hi) < lambda * C) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (h(mid) < lambda * C ? lo : hi) = mid;
    }
    x_min = hi;
  }
  ok[1] = 1.0 / k < x_min;

  ok[2] = (2.0 / (lambda * C)) * std::log(k * lambda * C) < 0.5 * (1.0 - lambda);

  ok[3] = std::exp(-crr * lambda * C) / (1.0 - std::exp(-crr * (1.0 - a) * C)) < 0.125;

  const double eta = 0.5 * (1.0 / a - a);
  const double lower = 0.5 * (1.0 - eta * eta) * C;
  ok[4] = (lower + 1.0) * std::exp(-lower) < (1.0 - eta * eta) / (32.0 * eta);

  ok[5] = C > condition6_floor(a);
  return ok;
}

double compute_C(const CInputs& in) {
  in.validate();
  double C = kCGridStart;
  std::array<bool, kCConditionCount> ok{};
  while (C <= kCGridMax) {
    ok = check_c_conditions(in, C);
    if (std::all_of(ok.begin(), ok.end(), [](bool b) { return b; })) return C;
    C *= kCGridFactor;
  }
  const int failing = static_cast<int>(std::find(ok.begin(), ok.end(), false) - ok.begin()) + 1;
  throw CSearchError("no C <= 1e6 satisfies condition " + std::to_string(failing), failing);
}

namespace {

void check_matches(const Graph& g, const BandDecomposition& bd) {
  const ModelParams& p = g.params();
  const BandModel& m = bd.model;
  if (m.n != static_cast<double>(g.size()) || m.alpha != p.alpha || m.nu != p.nu ||
      std::fabs(m.radius - p.radius) > 1e-9) {
    throw ParameterError("band decomposition was built for different model parameters");
  }
}

/// Index of the band holding type `t`: 0 for t > R/2, i for t_i <= t < t_{i-1}
/// (1 <= i <= T-1), and -1 for the remainder.
int band_of(double t, const BandDecomposition& bd) {
  if (t > bd.t[0]) return 0;
  for (int i = 1; i <= bd.T - 1; ++i) {
    if (t >= bd.t[i]) return i;
  }
  return -1;
}

}  // namespace

bool BandCensus::all_in_bounds() const noexcept {
  return std::all_of(in_bounds.begin(), in_bounds.end(), [](bool b) { return b; });
}

BandCensus band_census(const Graph& g, const BandDecomposition& bd) {
  check_matches(g, bd);
  const double n = static_cast<double>(g.size());
  const double a = bd.model.alpha;
  const double R = bd.model.radius;
  const double eps = bd.epsilon;
  BandCensus c;
  const int bands = std::max(0, bd.T - 1);
  c.counts.assign(static_cast<std::size_t>(bands), 0);
  for (const Vertex& v : g.vertices()) {
    const int b = band_of(v.type, bd);
    if (b == 0) {
      ++c.n0;
    } else if (b > 0) {
      ++c.counts[static_cast<std::size_t>(b - 1)];
    } else {
      ++c.remainder;
    }
  }
  c.n0_floor = 0.5 * n * (std::exp(-a * R / 2.0) - std::exp(-3.0 * a * R / 4.0));
  for (int i = 1; i <= bands; ++i) {
    const double base = n * std::exp(-a * bd.t[i]);
    const double lo = std::pow(1.0 - eps, 3) * base;
    const double hi = std::pow(1.0 + eps, 3) * base;
    const auto count = static_cast<double>(c.counts[static_cast<std::size_t>(i - 1)]);
    c.bounds_lo.push_back(lo);
    c.bounds_hi.push_back(hi);
    c.in_bounds.push_back(count >= lo && count <= hi);
  }
  const double q = std::pow(1.0 - eps, 4);
  for (int i = 2; i <= bands; ++i) {
    const double prod = bd.theta[i - 1] * static_cast<double>(c.counts[i - 2]);
    const double ti = bd.t[i];
    c.theta_times_prev.push_back(prod);
    c.theta_times_prev_in_range.push_back(prod >= 4.0 * kPi * ti &&
                                          prod <= 4.0 * kPi * std::pow(1.0 + eps, 3) * ti / q);
  }
  return c;
}

bool disk_covers_arc(const PolarPoint& center, double circle_radius, double a, double b,
                     double radius) {
  const auto cc = CachedPoint::from(center);
  const double threshold = adjacency_threshold(radius);
  const auto inside = [&](double phi) {
    double wrapped = std::fmod(phi, kTwoPi);
    if (wrapped < 0.0) wrapped += kTwoPi;
    return sinh2_half_distance(cc, CachedPoint::from(PolarPoint{circle_radius, wrapped})) <
           threshold;
  };
  if (!inside(a) || !inside(b)) return false;
  double anti = center.theta + kPi;
  while (anti < a) anti += kTwoPi;
  while (anti - kTwoPi >= a) anti -= kTwoPi;
  if (anti <= b) return inside(anti);
  return true;
}

namespace {

/// Half-width of the trace of the radius-R disk around `p` on the circle of
/// radius `rho`; negative if the trace is empty.
double trace_half_width(const PolarPoint& p, double rho, double R) {
  const double sr = std::sinh(p.r) * std::sinh(rho);
  const double sh = std::sinh(0.5 * (p.r - rho));
  const double sR = std::sinh(0.5 * R);
  const double num = sR * sR - sh * sh;
  if (num <= 0.0) return -1.0;
  if (sr <= 0.0) return kPi;
  const double q = num / sr;
  return q >= 1.0 ? kPi : 2.0 * std::asin(std::sqrt(q));
}

/// Number of covering disks per block, blocks given by sorted start angles.
std::vector<std::size_t> coverage_counts(const Graph& g, std::span<const VertexId> centers,
                                         const std::vector<double>& starts, double width,
                                         double rho, double R) {
  std::vector<std::size_t> count(starts.size(), 0);
  if (starts.empty()) return count;
  const double pad = 1e-7 + width * 1e-9;
  for (VertexId x : centers) {
    const PolarPoint& p = g.vertex(x).point;
    const double w = trace_half_width(p, rho, R);
    if (w < 0.0) continue;
    const auto test = [&](std::size_t j) {
      if (disk_covers_arc(p, rho, starts[j], starts[j] + width, R)) ++count[j];
    };
    if (2.0 * w + width + 2.0 * pad >= kTwoPi) {
      for (std::size_t j = 0; j < starts.size(); ++j) test(j);
      continue;
    }
    const double lo = p.theta - w - width - pad;
    const double hi = p.theta + w + pad;
    for (double shift : {-kTwoPi, 0.0, kTwoPi}) {
      auto it = std::lower_bound(starts.begin(), starts.end(), lo - shift);
      for (; it != starts.end() && *it <= hi - shift; ++it) {
        test(static_cast<std::size_t>(it - starts.begin()));
      }
    }
  }
  return count;
}

/// Block (by sorted start) containing angle theta, or -1.
long long block_containing(const std::vector<double>& starts, double width, double theta) {
  for (double shift : {0.0, kTwoPi}) {
    const double x = theta + shift;
    auto it = std::upper_bound(starts.begin(), starts.end(), x);
    if (it == starts.begin()) continue;
    --it;
    if (x < *it + width) return it - starts.begin();
  }
  return -1;
}

double wrap(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  return y;
}

}  // namespace

BlockDiagnostics black_block_diagnostics(const Graph& g, const Graph& g_percolated,
                                         const BandDecomposition& bd, int threshold_r,
                                         const BlockOptions& options) {
  check_matches(g, bd);
  if (g_percolated.size() != g.size() || !(g_percolated.params() == g.params()) ||
      g_percolated.edge_count() > g.edge_count()) {
    throw ParameterError("percolated graph does not derive from the sampled graph");
  }
  if (threshold_r < 1) throw ParameterError("threshold r must be >= 1");
  if (!(options.rho > 0.0 && options.rho <= 1.0)) throw ParameterError("rho must lie in (0, 1]");
  if (!(options.c_block > 0.0)) throw ParameterError("c_block must be positive");
  if (!(options.delta > 0.0 && options.delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");

  const double R = bd.model.radius;
  const double rho_r = std::pow(options.rho, threshold_r);
  const auto r = static_cast<std::size_t>(threshold_r);
  BlockDiagnostics out;
  out.kappa = std::pow(1.0 - bd.epsilon, 4) * (1.0 - options.delta) * rho_r *
              std::exp(-bd.model.alpha * bd.C / bd.lambda) / 4.0;

  std::vector<std::vector<VertexId>> members(static_cast<std::size_t>(std::max(1, bd.T)));
  for (const Vertex& v : g.vertices()) {
    const int b = band_of(v.type, bd);
    if (b >= 0) members[static_cast<std::size_t>(b)].push_back(v.id);
  }

  std::vector<char> prev_found(g.size(), 0);
  for (VertexId v : members[0]) prev_found[v] = 1;
  std::vector<VertexId> prev_set = members[0];
  out.discovered_total = members[0].size();

  std::vector<double> starts;
  double prev_width = 0.0;
  std::size_t prev_S = 0;
  double prev_Theta = kTwoPi;
  for (int i = 1; i <= bd.T - 1; ++i) {
    const double width = bd.B[i - 1];
    const double theta_i = bd.theta[i - 1];
    const double ti = bd.t[i];
    BlockLevel lv;
    lv.i = i;
    std::vector<double> next;
    if (i == 1) {
      lv.K = static_cast<long long>(std::floor(kTwoPi / width));
      for (long long j = 0; j < lv.K; ++j) next.push_back(static_cast<double>(j) * width);
      lv.L = static_cast<double>(lv.K) * (1.0 - std::exp(-ti));
    } else {
      lv.K = static_cast<long long>(std::floor(prev_Theta / width));
      const double central = prev_width - 2.0 * theta_i;
      const long long m = central > 0.0 ? static_cast<long long>(std::floor(central / width)) : 0;
      for (double a : starts) {
        for (long long j = 0; j < m; ++j) {
          next.push_back(wrap(a + theta_i + static_cast<double>(j) * width));
        }
      }
      std::sort(next.begin(), next.end());
      lv.L = static_cast<double>(prev_S) * (prev_width / width - 2.0 * ti) *
             (1.0 - std::exp(-options.c_block * rho_r * ti));
    }
    lv.candidates = next.size();

    const auto cover = coverage_counts(g, prev_set, next, width, R - ti, R);
    std::vector<double> black;
    for (std::size_t j = 0; j < next.size(); ++j) {
      if (cover[j] >= r) black.push_back(next[j]);
    }
    lv.S = black.size();
    lv.Theta = static_cast<double>(lv.S) * width;
    lv.eps = std::pow(theta_i, 1.0 / 6.0);
    lv.M2 = 1.0 / (ti * std::pow(theta_i, 2.0 / 3.0));
    const auto& band = members[static_cast<std::size_t>(i)];
    lv.band_size = band.size();
    lv.M1 = options.delta * options.delta * static_cast<double>(lv.band_size) * rho_r / 8.0;
    lv.discovered_floor = (1.0 - options.delta) * static_cast<double>(lv.band_size) * rho_r / 4.0;

    std::vector<VertexId> found;
    for (VertexId v : band) {
      if (block_containing(black, width, g.vertex(v).point.theta) < 0) continue;
      std::size_t k = 0;
      for (VertexId w : g_percolated.neighbors(v)) k += prev_found[w];
      if (k >= r) found.push_back(v);
    }
    lv.discovered = found.size();
    out.discovered_total += found.size();
    if (!out.T2_observed && lv.Theta < 0.5 * kPi) out.T2_observed = i;

    for (VertexId v : prev_set) prev_found[v] = 0;
    for (VertexId v : found) prev_found[v] = 1;
    prev_set = std::move(found);
    starts = std::move(black);
    prev_width = width;
    prev_S = lv.S;
    prev_Theta = lv.Theta;
    out.levels.push_back(lv);
  }
  return out;
}

ErrorTermReport error_term_report(const BandDecomposition& bd, double rho, int threshold_r,
                                  double c_block) {
  if (!(rho > 0.0 && rho <= 1.0)) throw ParameterError("rho must lie in (0, 1]");
  if (threshold_r < 1) throw ParameterError("threshold r must be >= 1");
  if (!(c_block > 0.0)) throw ParameterError("c_block must be positive");
  const double crr = c_block * std::pow(rho, threshold_r);
  ErrorTermReport rep;
  for (int i = 2; i <= bd.T - 1; ++i) {
    rep.first += bd.theta[i - 1] / bd.theta[i - 2] * bd.t[i - 1];
    rep.second += std::exp(-crr * bd.t[i]);
    rep.third += std::pow(bd.theta[i - 1], 1.0 / 6.0);
    ++rep.terms;
  }
  rep.first_ok = rep.first < 1.0 / 16.0;
  rep.second_ok = rep.second < 1.0 / 8.0;
  rep.third_ok = rep.third < 1.0 / 8.0;
  return rep;
}

}  // namespace hyperperc
