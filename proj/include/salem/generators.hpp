#pragma once

// Test and demo inputs: squares, quadratic residues, random sets and plans.

#include "salem/cantor.hpp"
#include "salem/integer_set.hpp"

#include <cstdint>
#include <random>

namespace salem::gen {

/// {k^2 : k^2 < horizon}.
IntegerSet squares(std::int64_t horizon);

/// {x^2 mod p : 0 <= x < p}, including 0; p must be prime.
IntegerSet quadratic_residues(std::int64_t p);

/// Each n in [0, horizon) kept with probability `prob`.
IntegerSet bernoulli_set(std::int64_t horizon, double prob, std::mt19937_64& rng);

/// n kept with probability min(1, n^{-exponent}); 0 is always kept.
IntegerSet power_law_set(std::int64_t horizon, double exponent, std::mt19937_64& rng);

/// `size` distinct elements drawn uniformly from [0, horizon).
IntegerSet random_subset(std::int64_t horizon, std::size_t size, std::mt19937_64& rng);

struct RandomPlanShape {
  std::size_t depth = 4;
  std::int64_t min_horizon = 2;
  std::int64_t max_horizon = 6;
  std::size_t max_digits = 3;
  bool unit_eta = false;
};

/// Levels with random N_k and digit sets; β = 1/2 with c in [1/4, 4].
LevelPlan random_plan(const RandomPlanShape& shape, std::mt19937_64& rng);

}  // namespace salem::gen
