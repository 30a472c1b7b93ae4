#pragma once

// Perfect sets in [0,1] built level by level from integer digit sets, with
// exact rational endpoints.
//
// A point is x = Σ_j (η_1···η_{j-1}) a_j / M_j with a_j ∈ A_j and
// M_j = N_1···N_j; the stage-k intervals are [x_k, x_k + L_k) with
// L_k = (η_1···η_k) / M_k.

#include "salem/integer_set.hpp"
#include "salem/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace salem {

struct PlanLevel {
  std::int64_t horizon = 1;            ///< N_k
  std::vector<std::int64_t> digits;    ///< A_k, strictly increasing, < N_k
  Rational eta{1};                     ///< η_k ∈ (0, 1]
};

struct LevelPlan {
  std::vector<PlanLevel> levels;
  double target_beta = 1.0;
  Rational c_lower{1, 4};
  Rational c_upper{4};

  std::size_t depth() const { return levels.size(); }
  /// d_k / N_k^β for 1-based level k.
  double c_constant(std::size_t k) const;
};

/// η_k = 1 - 1/(k+1)^2 = k(k+2)/(k+1)^2 for 1-based k.
Rational default_eta(std::size_t level);

struct PlanOptions {
  Rational c_lower{1, 4};
  Rational c_upper{4};
  bool unit_eta = false;  ///< η_k = 1 at every level instead of the default schedule
};

/// Level k uses digits A ∩ [0, N_k). Horizons must be non-decreasing and
/// within A's horizon. Throws std::invalid_argument naming the offending level.
LevelPlan make_plan(const IntegerSet& set, std::span<const std::int64_t> level_horizons, double beta,
                    const PlanOptions& options = {});

/// The same (N, digits) at every level; β = log d / log N.
LevelPlan repeated_plan(std::int64_t horizon, std::vector<std::int64_t> digits, std::size_t levels,
                        bool unit_eta);

/// Checks every LevelPlan invariant; throws std::invalid_argument.
void validate_plan(const LevelPlan& plan);

/// M_k = N_1···N_k (M_0 = 1).
BigInt level_product(const LevelPlan& plan, std::size_t k);
/// η_1···η_k (empty product 1).
Rational eta_prefix(const LevelPlan& plan, std::size_t k);
/// L_k = η_1···η_k / M_k.
Rational stage_interval_length(const LevelPlan& plan, std::size_t k);

struct CantorStage {
  std::size_t depth = 0;
  std::vector<Rational> left_endpoints;  ///< sorted
  Rational interval_length{1};
};

inline constexpr std::size_t kDefaultDepthCap = 12;

CantorStage build_stage(const LevelPlan& plan, std::size_t depth,
                        std::size_t depth_cap = kDefaultDepthCap);

/// Digit values a_j ∈ A_j, one per level from the first.
struct DigitPoint {
  std::vector<std::int64_t> digits;
};

/// Exact truncated digit expansion; equals the left endpoint of the
/// corresponding stage interval.
Rational point_from_digits(const LevelPlan& plan, const DigitPoint& point);

/// log(Π d_j) / log(M_k) at k = max_depth.
double box_dimension(const LevelPlan& plan, std::size_t max_depth);

/// Pairs of consecutive intervals with x + L > y.
std::size_t count_overlaps(const CantorStage& stage);
/// Child intervals not contained in exactly one parent interval.
std::size_t count_nesting_violations(const CantorStage& parent, const CantorStage& child);

/// Plan text format:
///   beta=<real>
///   [c_bounds=<p/q>,<p/q>]
///   N=<int> digits=<comma list> [eta=<p/q>]     (one line per level)
LevelPlan read_plan(std::istream& in);
LevelPlan load_plan(const std::string& path);
void write_plan(std::ostream& out, const LevelPlan& plan);
std::string format_plan(const LevelPlan& plan);

/// CSV "numerator,denominator,float".
void write_stage_csv(std::ostream& out, const CantorStage& stage);

}  // namespace salem
