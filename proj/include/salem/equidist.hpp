#pragma once

// Grid approximations of subsets of [0,1], equidistribution order of their
// grid points, the Salem characterization check, and the passage from a
// sequence of approximations back to an integer set.

#include "salem/cantor.hpp"
#include "salem/core_sets.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace salem {

/// Cells j of [0,1) at resolution 1/N, i.e. the grid fractions j/N.
struct NApproximation {
  std::int64_t horizon = 1;
  std::vector<std::int64_t> cells;  ///< strictly increasing, in [0, N)

  friend bool operator==(const NApproximation&, const NApproximation&) = default;
};

/// Throws std::invalid_argument if the cells violate the invariants.
void validate_approximation(const NApproximation& approx);

/// Closed on the left; open on the right unless closed_right.
struct RationalInterval {
  Rational lo;
  Rational hi;
  bool closed_right = false;
};

/// A finite union of intervals and isolated points inside [0, 1].
struct Target {
  std::vector<RationalInterval> intervals;
  std::vector<Rational> points;
};

Target target_from_stage(const CantorStage& stage);

/// Cell j is kept iff the target meets [j/N, (j+1)/N); exact comparisons.
NApproximation n_approximation(const Target& target, std::int64_t n);

struct OrderEstimate {
  double alpha = 0.0;
  double cap = 1.0;
  std::int64_t horizon = 0;               ///< N of the approximation used
  std::vector<DecaySample> per_m_bounds;  ///< (m, |normalized Weyl sum|)
};

/// Frequencies sampled by equidist_order for resolution N: 4 per octave over
/// [max(2, ⌈√N⌉), ⌊N/2⌋].
std::vector<std::int64_t> weyl_frequency_grid(std::int64_t n);

/// Bound-fitting order estimate on the finest approximation (largest N >= 16).
OrderEstimate equidist_order(std::span<const NApproximation> approximations, double cap = 1.0);

namespace serial {
OrderEstimate equidist_order(std::span<const NApproximation> approximations, double cap = 1.0);
}  // namespace serial

enum class Verdict { salem, salem_type, neither };
std::string_view to_string(Verdict v);

struct StageDensity {
  std::int64_t horizon = 0;
  std::int64_t count = 0;
  double exponent = 0.0;  ///< log count / log N
  double c = 0.0;         ///< count / N^beta
};

struct CharacterizationReport {
  std::vector<StageDensity> stages;
  double beta = 0.0;
  double beta_hat = 0.0;  ///< least-squares slope of log count against log N
  double density_residual = 0.0;
  bool constants_bounded = false;
  OrderEstimate order;
  double tolerance = 0.1;
  Verdict verdict = Verdict::neither;
};

struct CharacterizeOptions {
  double tolerance = 0.1;
  double c_lower = 0.25;
  double c_upper = 4.0;
  double cap = 1.0;
};

/// Condition (i): counts against N^beta with uniformly bounded constants;
/// condition (ii): equidist_order. Verdict:
///   salem       bounded constants and |beta_hat - alpha| <= tolerance
///   salem_type  bounded constants and tolerance < alpha < beta_hat - tolerance
///   neither     otherwise
CharacterizationReport characterize_salem(std::span<const NApproximation> approximations, double beta,
                                          const CharacterizeOptions& options = {});

/// B = ∪_i {N_{i-1} + a : a/N_i a new cell at stage i}, with N_0 = 0.
IntegerSet integers_from_approximations(std::span<const NApproximation> approximations);

/// Text format: first line "N=<int>", then one cell index per line.
NApproximation read_approximation(std::istream& in);
NApproximation load_approximation(const std::string& path);
void write_approximation(std::ostream& out, const NApproximation& approx);
std::string format_approximation(const NApproximation& approx);

}  // namespace salem
