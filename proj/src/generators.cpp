#include "salem/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace salem::gen {

namespace {

double uniform(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

}  // namespace

IntegerSet squares(std::int64_t horizon) {
  if (horizon < 1) throw std::invalid_argument("squares: horizon must be positive");
  std::vector<std::int64_t> v;
  for (std::int64_t k = 0; k * k < horizon; ++k) v.push_back(k * k);
  return IntegerSet(std::move(v), horizon);
}

IntegerSet quadratic_residues(std::int64_t p) {
  if (p < 2) throw std::invalid_argument("quadratic_residues: p must be prime");
  for (std::int64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) throw std::invalid_argument("quadratic_residues: p must be prime");
  }
  std::vector<std::int64_t> v;
  for (std::int64_t x = 0; x < p; ++x) v.push_back(x * x % p);
  return IntegerSet::from_unsorted(std::move(v), p);
}

IntegerSet bernoulli_set(std::int64_t horizon, double prob, std::mt19937_64& rng) {
  if (horizon < 1) throw std::invalid_argument("bernoulli_set: horizon must be positive");
  std::vector<std::int64_t> v;
  for (std::int64_t n = 0; n < horizon; ++n) {
    if (uniform(rng) < prob) v.push_back(n);
  }
  return IntegerSet(std::move(v), horizon);
}

IntegerSet power_law_set(std::int64_t horizon, double exponent, std::mt19937_64& rng) {
  if (horizon < 1) throw std::invalid_argument("power_law_set: horizon must be positive");
  std::vector<std::int64_t> v = {0};
  for (std::int64_t n = 1; n < horizon; ++n) {
    if (uniform(rng) < std::min(1.0, std::pow(static_cast<double>(n), -exponent))) v.push_back(n);
  }
  return IntegerSet(std::move(v), horizon);
}

IntegerSet random_subset(std::int64_t horizon, std::size_t size, std::mt19937_64& rng) {
  if (horizon < 1 || size > static_cast<std::size_t>(horizon)) {
    throw std::invalid_argument("random_subset: size exceeds horizon");
  }
  std::vector<std::int64_t> v;
  if (size * 4 > static_cast<std::size_t>(horizon)) {
    std::vector<std::int64_t> all(static_cast<std::size_t>(horizon));
    for (std::int64_t i = 0; i < horizon; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    v.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(size));
  } else {
    std::uniform_int_distribution<std::int64_t> pick(0, horizon - 1);
    while (v.size() < size) {
      const auto x = pick(rng);
      if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
    }
  }
  return IntegerSet::from_unsorted(std::move(v), horizon);
}

LevelPlan random_plan(const RandomPlanShape& shape, std::mt19937_64& rng) {
  if (shape.depth < 1 || shape.min_horizon < 2 || shape.max_horizon < shape.min_horizon ||
      shape.max_digits < 1) {
    throw std::invalid_argument("random_plan: bad shape");
  }
  LevelPlan plan;
  plan.target_beta = 0.5;
  std::uniform_int_distribution<std::int64_t> pick_n(shape.min_horizon, shape.max_horizon);
  for (std::size_t k = 1; k <= shape.depth; ++k) {
    PlanLevel level;
    level.horizon = pick_n(rng);
    const double root = std::sqrt(static_cast<double>(level.horizon));
    // d/√N must stay within [1/4, 4].
    const auto lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(root / 4)));
    const auto hi = std::min<std::int64_t>({level.horizon, static_cast<std::int64_t>(shape.max_digits),
                                            static_cast<std::int64_t>(std::floor(4 * root))});
    const auto d = std::uniform_int_distribution<std::int64_t>(lo, std::max(lo, hi))(rng);
    const auto chosen = random_subset(level.horizon, static_cast<std::size_t>(d), rng);
    level.digits.assign(chosen.elements().begin(), chosen.elements().end());
    level.eta = shape.unit_eta ? Rational(1) : default_eta(k);
    plan.levels.push_back(std::move(level));
  }
  validate_plan(plan);
  return plan;
}

}  // namespace salem::gen
