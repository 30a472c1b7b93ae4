#pragma once

// Arithmetic progressions in integer sets and in exact-rational point sets,
// the dyadic embedding of integers into [0,1), and recovery of progressions
// from the dyadic grid indices of a point set.

#include "salem/core_sets.hpp"
#include "salem/integer_set.hpp"
#include "salem/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace salem {

template <typename T>
struct APWitness {
  T start{};
  T difference{};  ///< > 0
  std::size_t length = 0;

  friend bool operator==(const APWitness&, const APWitness&) = default;
};

using IntegerAP = APWitness<std::int64_t>;
using RationalAP = APWitness<Rational>;

enum class APSearch {
  maximal,  ///< each maximal progression of length >= n once, with its full length
  all,      ///< every (start, difference) carrying n terms, reported with length n
  first,    ///< the lexicographically smallest (start, difference) only
};

/// Witnesses sorted by (start, difference).
std::vector<IntegerAP> find_ap_integers(const IntegerSet& set, std::size_t n,
                                        APSearch mode = APSearch::maximal);

namespace serial {
std::vector<IntegerAP> find_ap_integers(const IntegerSet& set, std::size_t n,
                                        APSearch mode = APSearch::maximal);
}  // namespace serial

/// Exact search over distinct rational points; throws on duplicates.
std::vector<RationalAP> find_ap_points(std::span<const Rational> points, std::size_t n,
                                       APSearch mode = APSearch::maximal);

/// Σ_{k<=depth} 2^{-N_k}.
Rational dyadic_slope(std::span<const std::int64_t> exponents, std::size_t depth);

/// a ↦ a · Σ_{k<=depth} 2^{-N_k}. Requires increasing exponents,
/// 2^{N_1} > max(A), and every image below 1.
std::vector<Rational> dyadic_embed(const IntegerSet& set, std::span<const std::int64_t> exponents,
                                   std::size_t depth);

struct GridAP {
  std::size_t stage = 0;
  std::vector<std::int64_t> indices;      ///< ⌊x·base^stage⌋, an exact integer AP
  std::vector<std::size_t> point_ids;     ///< one distinct input point per index
  int base = 2;
};

enum class DescentStatus { found, no_ap, never_separated };
std::string to_string(DescentStatus s);

struct DescentResult {
  DescentStatus status = DescentStatus::no_ap;
  std::optional<GridAP> ap;
  std::size_t coarsest_stage_checked = 0;
};

/// Walks k = k_max, k_max-1, ... while at least n distinct grid indices
/// remain and returns the finest stage whose index set holds an n-term AP.
/// never_separated: fewer than n distinct indices already at k_max.
DescentResult grid_ap_descent(std::span<const Rational> points, std::size_t n, std::size_t k_max,
                              int base = 2);

struct HypothesisReport {
  double alpha_hat = 0.0;
  double beta = 0.0;
  double constant = 0.0;
  bool density_ok = false;        ///< alpha_hat > 1/2
  bool beta_relation_ok = false;  ///< beta > 2 - 2 alpha_hat
  bool fourier_ok = false;        ///< no bound violations
  std::vector<std::int64_t> bound_violations;
  std::vector<std::string> failed;
  bool hypotheses_hold = false;
  bool ap_found = false;
  DensityEstimate density;
};

/// Fits the density exponent, sweeps |χ̂(k)| <= C (kN)^{-β/2} over a
/// geometric k grid at the full horizon, and searches for a 3-term AP.
/// beta must lie in (2/3, 1].
HypothesisReport check_thm32_hypotheses(const IntegerSet& set, double beta, double constant);

}  // namespace salem
