#pragma once

// The stagewise probability measure on a Cantor-type plan and its
// Fourier-Stieltjes transform, evaluated as a product of per-level
// exponential sums
//   Q_k(u) = (1/d_k) Σ_{a∈A_k} e^{-2πi u a / M_k},
//   μ̂(u)  = Q_1(u) · Π_{k>=1} Q_{k+1}(η_1···η_k u).

#include "salem/cantor.hpp"
#include "salem/core_sets.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace salem {

/// Per-level exponential sum Q_k(u), 1-based k.
std::complex<double> q_factor(const LevelPlan& plan, std::size_t k, double u);

/// (N/d) · dft_char(A)(m) where N is the set's horizon and d = |A|.
std::complex<double> q_from_dft(const IntegerSet& level_set, std::int64_t m);

struct TransformValue {
  std::complex<double> value;
  std::size_t levels_used = 0;
  bool shallow = false;  ///< truncation cap reached while the next factor was still active
};

class StagewiseMeasure {
 public:
  /// truncation_depth must be in [1, plan depth]. threshold 0 disables early
  /// truncation (every level up to truncation_depth is multiplied in).
  StagewiseMeasure(LevelPlan plan, std::size_t truncation_depth, double truncation_threshold = 1e-3,
                   double u_max = 1e12);

  const LevelPlan& plan() const { return plan_; }
  std::size_t truncation_depth() const { return truncation_depth_; }
  double truncation_threshold() const { return threshold_; }
  double u_max() const { return u_max_; }

  /// Product formula with the smallest p such that η_1···η_p|u|/M_{p+1} < θ,
  /// i.e. levels 1..p+1, capped at truncation_depth. Throws if |u| > u_max.
  TransformValue mu_hat(double u) const;

  /// Exact transform of the depth-p discrete product (levels 1..p, no truncation).
  std::complex<double> mu_hat_at_depth(double u, std::size_t p) const;

 private:
  std::complex<double> factor(std::size_t level_index, double scaled_u) const;

  LevelPlan plan_;
  std::size_t truncation_depth_;
  double threshold_;
  double u_max_;
  // Per level: digits, M_k and η_1···η_{k-1} in double precision.
  std::vector<std::vector<double>> digits_;
  std::vector<double> level_products_;
  std::vector<double> scales_;
};

/// μ̂ over a grid of arguments (OpenMP).
std::vector<TransformValue> mu_hat_grid(const StagewiseMeasure& measure, std::span<const double> us);

namespace serial {
std::vector<TransformValue> mu_hat_grid(const StagewiseMeasure& measure, std::span<const double> us);
}  // namespace serial

/// Piecewise-linear distribution function F_k of the stage-k measure: mass
/// 1/Π d_j spread uniformly over each stage interval.
class StageDistribution {
 public:
  StageDistribution(const LevelPlan& plan, std::size_t k);
  /// Exact F_k(x) for x in [0, 1].
  Rational exact(const Rational& x) const;
  double operator()(const Rational& x) const { return to_double(exact(x)); }
  const CantorStage& stage() const { return stage_; }

 private:
  CantorStage stage_;
};

/// F_k(x); requires k <= truncation_depth and x in [0, 1].
double stage_cdf(const StagewiseMeasure& measure, std::size_t k, const Rational& x);

struct DecayGrid {
  double u_min = 2.0;
  double u_max = 4096.0;
  int per_octave = 16;  ///< 0 samples every integer in [u_min, u_max]
};

struct DecayReport {
  double alpha_hat = 0.0;
  double beta_target = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::size_t truncation_depth_used = 0;
  bool shallow = false;
  std::vector<DecaySample> envelope;  ///< one (argmax u, max |μ̂|) per dyadic block
  std::vector<std::pair<double, std::complex<double>>> spectrum;
};

/// Integer u on a geometric grid, dyadic-block maxima of |μ̂|, bound-fitting
/// exponent; pass iff alpha_hat >= beta - tolerance.
DecayReport decay_check(const StagewiseMeasure& measure, const DecayGrid& grid, double beta,
                        double tolerance = 0.1);

}  // namespace salem
