#include "salem/cantor.hpp"
#include "salem/core_sets.hpp"
#include "salem/errors.hpp"
#include "salem/generators.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace salem;

namespace {

LevelPlan ternary(std::size_t levels, bool unit_eta) { return repeated_plan(3, {0, 2}, levels, unit_eta); }

// Enumerates stage-k endpoints by nested digit loops over the expansion.
std::vector<Rational> brute_endpoints(const LevelPlan& plan, std::size_t k) {
  std::vector<Rational> out = {Rational(0)};
  Rational eta_prod = 1;
  BigInt m = 1;
  for (std::size_t j = 0; j < k; ++j) {
    m *= plan.levels[j].horizon;
    std::vector<Rational> next;
    for (const auto& x : out) {
      for (auto a : plan.levels[j].digits) next.push_back(x + eta_prod * Rational(BigInt(a), m));
    }
    eta_prod *= plan.levels[j].eta;
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("make_plan worked constants") {
  const auto sq = gen::squares(10000);
  const std::vector<std::int64_t> h = {100};
  const auto plan = make_plan(sq, h, 0.5);
  CHECK(plan.levels[0].digits.size() == 10);
  CHECK(plan.c_constant(1) == doctest::Approx(1.0).epsilon(1e-12));

  const IntegerSet two({0, 2}, 3);
  const std::vector<std::int64_t> threes = {3, 3, 3, 3};
  const auto t = make_plan(two, threes, std::log(2.0) / std::log(3.0));
  for (std::size_t k = 1; k <= 4; ++k) CHECK(t.c_constant(k) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("make_plan rejections name the level") {
  const IntegerSet a({5, 9}, 16);
  const std::vector<std::int64_t> h = {8, 4};
  CHECK_THROWS(make_plan(a, h, 0.5));
  const std::vector<std::int64_t> h2 = {4};
  try {
    make_plan(a, h2, 0.5);
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("level 1") != std::string::npos);
  }
  const IntegerSet dense({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}, 16);
  const std::vector<std::int64_t> h3 = {16};
  try {
    make_plan(dense, h3, 0.1);
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("level 1") != std::string::npos);
  }
  CHECK_THROWS(make_plan(dense, h3, 0.0));
  CHECK_THROWS(make_plan(dense, h3, 1.5));
}

TEST_CASE("make_plan on random density-0.6 sets keeps c in bounds") {
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(seed);
    const auto a = gen::power_law_set(128, 0.4, rng);
    const std::vector<std::int64_t> h = {32, 64, 128};
    try {
      make_plan(a, h, 0.6);
      ++ok;
    } catch (const std::invalid_argument&) {
    }
  }
  CHECK(ok >= 190);
}

TEST_CASE("build_stage worked stages") {
  const auto s1 = build_stage(ternary(3, true), 1);
  CHECK(s1.left_endpoints == std::vector<Rational>{Rational(0), Rational(2, 3)});
  CHECK(s1.interval_length == Rational(1, 3));
  const auto d1 = build_stage(ternary(3, false), 1);
  CHECK(d1.left_endpoints == std::vector<Rational>{Rational(0), Rational(2, 3)});
  CHECK(d1.interval_length == Rational(1, 4));
  const auto s0 = build_stage(ternary(3, false), 0);
  CHECK(s0.left_endpoints == std::vector<Rational>{Rational(0)});
  CHECK(s0.interval_length == 1);
  CHECK_THROWS(build_stage(ternary(3, false), 4));
  CHECK_THROWS(build_stage(ternary(14, false), 13));
}

TEST_CASE("point_from_digits worked values") {
  CHECK(point_from_digits(ternary(3, true), {{0, 0, 0}}) == 0);
  CHECK(point_from_digits(ternary(3, true), {{2, 2}}) == Rational(8, 9));
  CHECK(point_from_digits(ternary(3, false), {{2, 2}}) == Rational(5, 6));
  CHECK_THROWS(point_from_digits(ternary(3, true), {{1}}));
  CHECK_THROWS(point_from_digits(ternary(3, true), {{0, 0, 0, 0}}));
}

TEST_CASE("box_dimension worked values") {
  for (std::size_t k = 2; k <= 12; ++k) {
    CHECK(std::abs(box_dimension(ternary(12, false), k) - std::log(2.0) / std::log(3.0)) < 1e-12);
  }
  CHECK(box_dimension(repeated_plan(5, {0, 1, 2, 3, 4}, 3, false), 3) == doctest::Approx(1.0).epsilon(1e-14));
  const auto sq = gen::squares(100);
  const std::vector<std::int64_t> h = {100, 100, 100};
  CHECK(std::abs(box_dimension(make_plan(sq, h, 0.5), 3) - 0.5) < 1e-12);
  CHECK_THROWS(box_dimension(ternary(3, true), 1));
}

TEST_CASE("random plans: enumeration, disjointness, nesting, cardinality") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 20; ++t) {
    gen::RandomPlanShape shape;
    shape.depth = 6;
    shape.unit_eta = (t % 3 == 0);
    const auto plan = gen::random_plan(shape, rng);
    CantorStage prev = build_stage(plan, 0);
    std::size_t expected = 1;
    for (std::size_t k = 1; k <= plan.depth(); ++k) {
      const auto stage = build_stage(plan, k);
      expected *= plan.levels[k - 1].digits.size();
      CHECK(stage.left_endpoints.size() == expected);
      CHECK(stage.left_endpoints == brute_endpoints(plan, k));
      CHECK(count_overlaps(stage) == 0);
      CHECK(count_nesting_violations(prev, stage) == 0);
      prev = stage;
    }
  }
}

TEST_CASE("point_from_digits is the matching stage endpoint") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 30; ++t) {
    const auto plan = gen::random_plan({5, 2, 7, 3, false}, rng);
    const auto stage = build_stage(plan, plan.depth());
    DigitPoint p;
    for (const auto& level : plan.levels) {
      p.digits.push_back(level.digits[std::uniform_int_distribution<std::size_t>(0, level.digits.size() - 1)(rng)]);
    }
    const auto x = point_from_digits(plan, p);
    CHECK(std::binary_search(stage.left_endpoints.begin(), stage.left_endpoints.end(), x));
  }
}

TEST_CASE("box dimension tracks the fitted density for large M") {
  const auto sq = gen::squares(10000);
  const std::vector<std::int64_t> h = {10000, 10000};
  const auto fitted = fractional_density(sq, dyadic_checkpoints(10000, 16)).exponent;
  CHECK(std::abs(box_dimension(make_plan(sq, h, 0.5), 2) - fitted) < 0.05);

  std::mt19937_64 rng(77);
  const auto a = gen::power_law_set(100000, 1.0 / 3.0, rng);
  const std::vector<std::int64_t> h2 = {100000, 100000};
  const double beta = fractional_density(a, dyadic_checkpoints(100000, 16)).exponent;
  CHECK(std::abs(box_dimension(make_plan(a, h2, beta), 2) - beta) < 0.05);
}

TEST_CASE("plan text round trip and errors") {
  std::mt19937_64 rng(3);
  const auto plan = gen::random_plan({4, 2, 6, 3, false}, rng);
  std::istringstream in(format_plan(plan));
  const auto back = read_plan(in);
  CHECK(format_plan(back) == format_plan(plan));
  CHECK(back.target_beta == plan.target_beta);

  std::istringstream minimal("# ternary\nbeta=0.6309297535714574\nN=3 digits=0,2\nN=3 digits=0,2 eta=1/1\n");
  const auto t = read_plan(minimal);
  CHECK(t.depth() == 2);
  CHECK(t.levels[0].eta == Rational(3, 4));
  CHECK(t.levels[1].eta == 1);

  std::istringstream bad("beta=0.5\nN=3 digits=0,x\n");
  CHECK_THROWS_AS(read_plan(bad), FormatError);
  std::istringstream nobeta("N=3 digits=0,2\n");
  CHECK_THROWS_AS(read_plan(nobeta), FormatError);
  CHECK_THROWS_AS(load_plan("/nonexistent/plan.txt"), IoError);
}

TEST_CASE("stage CSV") {
  std::ostringstream out;
  write_stage_csv(out, build_stage(ternary(2, true), 1));
  CHECK(out.str() == "numerator,denominator,float\n0,1,0\n2,3,0.666666666667\n");
}
