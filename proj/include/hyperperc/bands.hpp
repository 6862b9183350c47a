#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperperc/errors.hpp"
#include "hyperperc/graph.hpp"

namespace hyperperc {

/// Ensemble scalars used by the band construction. N is real-valued so the
/// recurrence can be studied far beyond sampleable sizes.
struct BandModel {
  double n = 1.0;
  double alpha = 0.75;
  double nu = 1.0;
  double radius = 0.0;

  static BandModel of(const ModelParams& params);
  /// radius = 2 ln(n / nu). Throws ParameterError.
  static BandModel analytic(double n, double alpha, double nu);
};

/// Bands t_0 = R/2 > t_1 > ... > t_T, where t_i solves
///   t_i - 2 ln(4 pi t_i / (nu (1 - eps)^4)) = lambda t_{i-1},  lambda = 2 alpha - 1,
/// and T = T1 = min{i : t_i < C}. Per-band vectors are 0-based: entry k
/// belongs to band k + 1.
struct BandDecomposition {
  BandModel model;
  double epsilon = 0.1;
  double lambda = 0.5;
  double C = 0.0;
  std::vector<double> t;  // t_0 .. t_T
  int T = 0;
  int T1 = 0;
  std::optional<int> T2_observed;

  std::vector<double> theta;     // theta^(i) = 2 (1 - eps) e^{(t_i + t_{i-1} - R) / 2}
  std::vector<double> B;         // B_i = theta^(i) / t_i
  std::vector<double> residual;  // |g(t_i)|
  /// 1 - alpha > (2 / t_i) ln(4 pi t_i / (nu (1 - eps)^4)), and the same
  /// predicate with nu dropped.
  std::vector<bool> assumption_with_nu;
  std::vector<bool> assumption_without_nu;
  std::vector<bool> contracts;  // t_i < alpha t_{i-1}

  /// floor(2 pi / B_1), or 0 when there is no band 1.
  long long K1() const noexcept;
  /// sum_{i=1}^{T-1} e^{-alpha t_i} and its floor e^{-alpha C / lambda}.
  double sum_exponentials() const noexcept;
  double sum_exponentials_floor() const noexcept;
};

/// Root of t - 2 ln(k t) = lambda t_prev with k = 4 pi / (nu (1 - eps)^4) on
/// the increasing branch t > 2, bracketed by [max(2, lambda t_prev), t_prev]
/// and polished by Newton steps. Throws DecompositionError when the bracket
/// holds no root (the recurrence does not contract at t_prev).
double solve_band_step(double t_prev, double alpha, double nu, double epsilon);

/// Recurrence residual t - 2 ln(k t) - lambda t_prev.
double band_residual(double t, double t_prev, double alpha, double nu, double epsilon) noexcept;

/// Throws ParameterError on invalid inputs and DecompositionError if some
/// step has no root or the sequence stalls above C.
BandDecomposition solve_band_recurrence(const BandModel& model, double epsilon, double C,
                                        int max_bands = 100000);

struct CInputs {
  double alpha = 0.75;
  double nu = 1.0;
  double epsilon = 0.1;
  double rho = 1.0;
  int threshold_r = 2;
  double c_block = 1.0;

  void validate() const;
};

inline constexpr int kCConditionCount = 6;
/// Index k of the result holds condition k + 1 of the list that defines C:
///   1. e^{-C alpha (1 - alpha)} < eps
///   2. on x >= 2: x - 2 ln(4 pi x / (nu (1 - eps)^4)) >= lambda C implies
///      nu (1 - eps)^4 / (4 pi) < x
///   3. (2 / (lambda C)) ln(4 pi lambda C / (nu (1 - eps)^4)) < (1 - lambda) / 2
///   4. e^{-c rho^r lambda C} / (1 - e^{-c rho^r (1 - alpha) C}) < 1/8
///   5. (a + 1) e^{-a} < (1 - eta^2) / (32 eta),  a = (1 - eta^2) C / 2,
///      eta = (1/alpha - alpha) / 2
///   6. C > max{(4 / lambda) alpha / (1 - alpha^2), 2 alpha / ((1 - alpha)^2 (1 + alpha))}
std::array<bool, kCConditionCount> check_c_conditions(const CInputs& in, double C);

/// Lower bound in condition 6.
double condition6_floor(double alpha);

/// Grid exhaustion while searching for C. `condition()` is the first
/// condition still failing at the grid end.
class CSearchError : public ParameterError {
 public:
  CSearchError(const std::string& what, int condition)
      : ParameterError(what), condition_(condition) {}
  int condition() const noexcept { return condition_; }

 private:
  int condition_;
};

inline constexpr double kCGridStart = 1.0;
inline constexpr double kCGridFactor = 1.05;
inline constexpr double kCGridMax = 1e6;

/// Smallest C = 1.05^k (k >= 0) satisfying all six conditions.
double compute_C(const CInputs& in);

struct BandCensus {
  std::size_t n0 = 0;        // vertices with t_v > R/2
  double n0_floor = 0.0;     // 0.5 N (e^{-alpha R/2} - e^{-3 alpha R/4})
  std::vector<std::size_t> counts;  // N_i, i = 1 .. T-1
  std::vector<double> bounds_lo;    // (1 - eps)^3 N e^{-alpha t_i}
  std::vector<double> bounds_hi;    // (1 + eps)^3 N e^{-alpha t_i}
  std::vector<bool> in_bounds;
  std::size_t remainder = 0;  // the rest of the vertex set
  /// theta^(i) N_{i-1} against [4 pi t_i, 4 pi (1 + eps)^3 t_i / (1 - eps)^4],
  /// i = 2 .. T-1.
  std::vector<double> theta_times_prev;
  std::vector<bool> theta_times_prev_in_range;

  bool n0_ok() const noexcept { return static_cast<double>(n0) >= n0_floor; }
  bool all_in_bounds() const noexcept;
};

/// Throws ParameterError when `bd` was not built for g's parameters.
BandCensus band_census(const Graph& g, const BandDecomposition& bd);

struct BlockOptions {
  double rho = 1.0;
  double c_block = 1.0;
  double delta = 0.1;
};

/// One level of the block construction, i = 1 .. T-1.
struct BlockLevel {
  int i = 0;
  long long K = 0;            // floor(2 pi / B_1) at level 1, floor(Theta_{i-1} / B_i) after
  std::size_t candidates = 0;  // uncolored blocks actually formed
  std::size_t S = 0;          // black blocks
  double Theta = 0.0;         // S B_i
  double L = 0.0;             // expected floor
  double eps = 0.0;           // theta^(i)^{1/6}
  double M1 = 0.0;            // delta^2 N_i rho^r / 8
  double M2 = 0.0;            // 1 / (t_i theta^(i)^{2/3})
  std::size_t band_size = 0;  // N_i
  std::size_t discovered = 0;  // N_i'
  double discovered_floor = 0.0;  // (1 - delta) N_i rho^r / 4
};

struct BlockDiagnostics {
  std::vector<BlockLevel> levels;
  std::optional<int> T2_observed;  // first level with Theta_i < pi/2
  double kappa = 0.0;  // (1 - eps)^4 (1 - delta) rho^r e^{-alpha C / lambda} / 4
  std::size_t discovered_total = 0;  // |core| + sum N_i'
};

/// Arc [a, b] (counter-clockwise, b - a < 2 pi) on the circle of radius
/// `circle_radius` lies inside the open radius-R disk around `center`. The
/// trace of such a disk on the circle is an arc symmetric about the center's
/// angle, so the endpoints and, if enclosed, the antipodal angle decide it.
bool disk_covers_arc(const PolarPoint& center, double circle_radius, double a, double b,
                     double radius);

/// Black-block construction on a sampled graph and its bond-percolated copy.
BlockDiagnostics black_block_diagnostics(const Graph& g, const Graph& g_percolated,
                                         const BandDecomposition& bd, int threshold_r,
                                         const BlockOptions& options = {});

struct ErrorTermReport {
  double first = 0.0;   // sum_{i=2}^{T-1} (theta^(i) / theta^(i-1)) t_{i-1}
  double second = 0.0;  // sum_{i=2}^{T-1} e^{-c rho^r t_i}
  double third = 0.0;   // sum_{i=2}^{T-1} theta^(i)^{1/6}
  int terms = 0;
  bool first_ok = false;   // < 1/16
  bool second_ok = false;  // < 1/8
  bool third_ok = false;   // < 1/8
};

ErrorTermReport error_term_report(const BandDecomposition& bd, double rho, int threshold_r,
                                  double c_block);

}  // namespace hyperperc
