#include "salem/aps.hpp"
#include "salem/generators.hpp"

#include <doctest.h>

#include <random>
#include <set>
#include <tuple>

using namespace salem;

namespace {

// Every ordered pair (a_i, a_j), i < j, as first and second term.
std::set<std::pair<std::int64_t, std::int64_t>> brute_force_aps(const IntegerSet& a, std::size_t n) {
  std::set<std::pair<std::int64_t, std::int64_t>> out;
  const auto e = a.elements();
  const std::set<std::int64_t> members(e.begin(), e.end());
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      const auto d = e[j] - e[i];
      bool ok = true;
      for (std::size_t t = 2; t < n && ok; ++t) ok = members.count(e[i] + static_cast<std::int64_t>(t) * d) > 0;
      if (ok) out.insert({e[i], d});
    }
  }
  return out;
}

std::vector<Rational> rationals(std::initializer_list<std::pair<long, long>> pq) {
  std::vector<Rational> v;
  for (auto [p, q] : pq) v.push_back(Rational(p, q));
  return v;
}

}  // namespace

TEST_CASE("find_ap_integers worked values") {
  const auto w = find_ap_integers(IntegerSet({1, 3, 5, 9}, 10), 3);
  CHECK(std::find(w.begin(), w.end(), IntegerAP{1, 2, 3}) != w.end());
  CHECK(find_ap_integers(IntegerSet({0, 1, 5}, 6), 3).empty());
  const auto four = find_ap_integers(IntegerSet({0, 2, 4, 6}, 7), 4);
  REQUIRE(four.size() == 1);
  CHECK(four[0] == IntegerAP{0, 2, 4});
  CHECK_THROWS(find_ap_integers(IntegerSet({0, 1}, 2), 2));
}

TEST_CASE("maximal mode reports each run once with its full length") {
  const auto w = find_ap_integers(IntegerSet({0, 2, 4, 6}, 7), 3);
  CHECK(std::find(w.begin(), w.end(), IntegerAP{0, 2, 4}) != w.end());
  CHECK(std::find(w.begin(), w.end(), IntegerAP{2, 2, 3}) == w.end());
  const auto all = find_ap_integers(IntegerSet({0, 2, 4, 6}, 7), 3, APSearch::all);
  CHECK(std::find(all.begin(), all.end(), IntegerAP{2, 2, 3}) != all.end());
  const auto first = find_ap_integers(IntegerSet({0, 2, 4, 6}, 7), 3, APSearch::first);
  REQUIRE(first.size() == 1);
  CHECK(first[0] == IntegerAP{0, 2, 3});
}

TEST_CASE("find_ap_integers agrees with the brute-force pair oracle") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 40; ++t) {
    const std::int64_t horizon = std::uniform_int_distribution<std::int64_t>(3, 512)(rng);
    const double p = std::uniform_real_distribution<double>(0.02, 0.4)(rng);
    const auto a = gen::bernoulli_set(horizon, p, rng);
    for (std::size_t n : {3, 4, 5}) {
      const auto oracle = brute_force_aps(a, n);
      std::set<std::pair<std::int64_t, std::int64_t>> got;
      for (const auto& w : find_ap_integers(a, n, APSearch::all)) {
        CHECK(w.length == n);
        CHECK(w.difference > 0);
        got.insert({w.start, w.difference});
      }
      CHECK(got == oracle);
      std::set<std::pair<std::int64_t, std::int64_t>> maximal_oracle;
      for (auto [s, d] : oracle) {
        if (!a.contains(s - d)) maximal_oracle.insert({s, d});
      }
      std::set<std::pair<std::int64_t, std::int64_t>> maximal;
      for (const auto& w : find_ap_integers(a, n)) {
        maximal.insert({w.start, w.difference});
        for (std::size_t k = 0; k < w.length; ++k) CHECK(a.contains(w.start + static_cast<std::int64_t>(k) * w.difference));
        CHECK_FALSE(a.contains(w.start + static_cast<std::int64_t>(w.length) * w.difference));
      }
      CHECK(maximal == maximal_oracle);
    }
  }
}

TEST_CASE("find_ap_points worked values") {
  const auto w = find_ap_points(rationals({{1, 6}, {1, 2}, {5, 6}}), 3);
  REQUIRE(w.size() == 1);
  CHECK(w[0].start == Rational(1, 6));
  CHECK(w[0].difference == Rational(1, 3));
  CHECK(w[0].length == 3);
  CHECK(find_ap_points(rationals({{0, 1}, {1, 3}, {3, 4}}), 3).empty());
  CHECK_THROWS(find_ap_points(rationals({{1, 2}, {2, 4}, {3, 4}}), 3));
}

TEST_CASE("planted rational APs among distractors are all recovered") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> num(0, 1000000), den(1, 1000);
  std::set<Rational> pool;
  std::vector<RationalAP> planted;
  while (planted.size() < 50) {
    const Rational start(num(rng), 1000 + den(rng));
    const Rational diff(num(rng) + 1, 1000 + den(rng));
    std::vector<Rational> terms;
    for (int k = 0; k < 5; ++k) terms.push_back(start + diff * k);
    if (std::any_of(terms.begin(), terms.end(), [&](const Rational& x) { return pool.count(x); })) continue;
    pool.insert(terms.begin(), terms.end());
    planted.push_back({start, diff, 5});
  }
  while (pool.size() < 450) pool.insert(Rational(num(rng), 1000 + den(rng)));
  const std::vector<Rational> pts(pool.begin(), pool.end());
  const auto found = find_ap_points(pts, 5, APSearch::all);
  for (const auto& ap : planted) CHECK(std::find(found.begin(), found.end(), ap) != found.end());
}

TEST_CASE("dyadic_embed worked values and order") {
  const IntegerSet a({1, 2, 3}, 4);
  const std::vector<std::int64_t> e = {2, 4};
  CHECK(dyadic_embed(a, e, 2) == rationals({{5, 16}, {10, 16}, {15, 16}}));
  CHECK(dyadic_embed(a, e, 1) == rationals({{1, 4}, {1, 2}, {3, 4}}));
  CHECK(dyadic_slope(e, 2) == Rational(5, 16));
  const std::vector<std::int64_t> small = {1, 3};
  CHECK_THROWS(dyadic_embed(a, small, 2));
  const std::vector<std::int64_t> unsorted = {4, 2};
  CHECK_THROWS(dyadic_embed(a, unsorted, 2));

  std::mt19937_64 rng(29);
  const auto b = gen::bernoulli_set(256, 0.3, rng);
  const std::vector<std::int64_t> e2 = {9, 12, 20};
  const auto img = dyadic_embed(b, e2, 3);
  for (std::size_t i = 1; i < img.size(); ++i) CHECK(img[i - 1] < img[i]);
}

TEST_CASE("embedding preserves APs and the descent recovers them") {
  std::mt19937_64 rng(31);
  const std::vector<std::int64_t> exps = {13, 16, 20};
  const Rational slope = dyadic_slope(exps, 3);
  for (std::size_t n : {3, 4, 5}) {
    for (int t = 0; t < 100; ++t) {
      const std::int64_t d = std::uniform_int_distribution<std::int64_t>(1, 4000 / static_cast<std::int64_t>(n))(rng);
      const std::int64_t s = std::uniform_int_distribution<std::int64_t>(0, 4095 - d * static_cast<std::int64_t>(n - 1))(rng);
      std::vector<std::int64_t> terms;
      for (std::size_t k = 0; k < n; ++k) terms.push_back(s + static_cast<std::int64_t>(k) * d);
      const IntegerSet ap(terms, 4096);
      const auto img = dyadic_embed(ap, exps, 3);
      const auto w = find_ap_points(img, n);
      REQUIRE(w.size() == 1);
      CHECK(w[0].difference == slope * d);
      CHECK(w[0].start == slope * s);
      const auto r = grid_ap_descent(img, n, static_cast<std::size_t>(exps.back() + 3));
      REQUIRE(r.status == DescentStatus::found);
      CHECK(r.ap->stage == static_cast<std::size_t>(exps.back() + 3));
    }
  }
}

TEST_CASE("grid_ap_descent worked values") {
  const auto a = grid_ap_descent(rationals({{1, 8}, {3, 8}, {5, 8}}), 3, 3);
  REQUIRE(a.status == DescentStatus::found);
  CHECK(a.ap->stage == 3);
  CHECK(a.ap->indices == std::vector<std::int64_t>{1, 3, 5});
  const auto b = grid_ap_descent(rationals({{1, 7}, {3, 7}, {5, 7}}), 3, 3);
  REQUIRE(b.status == DescentStatus::found);
  CHECK(b.ap->indices == std::vector<std::int64_t>{1, 3, 5});
  const auto c = grid_ap_descent(rationals({{0, 1}, {3, 8}, {7, 8}}), 3, 6);
  CHECK(c.status == DescentStatus::no_ap);
  CHECK_FALSE(c.ap.has_value());
  const auto d = grid_ap_descent(rationals({{1, 8}, {3, 8}, {5, 8}}), 3, 1);
  CHECK(d.status == DescentStatus::never_separated);
  CHECK_THROWS(grid_ap_descent(rationals({{1, 8}, {1, 8}, {5, 8}}), 3, 3));
}

TEST_CASE("grid_ap_descent reports only separated stages") {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<long> num(0, 9999);
  for (int t = 0; t < 100; ++t) {
    std::set<Rational> pool;
    while (pool.size() < 8) pool.insert(Rational(num(rng), 10000));
    const std::vector<Rational> pts(pool.begin(), pool.end());
    const auto r = grid_ap_descent(pts, 3, 16);
    if (r.status != DescentStatus::found) continue;
    const auto& ap = *r.ap;
    std::set<std::size_t> ids(ap.point_ids.begin(), ap.point_ids.end());
    CHECK(ids.size() == ap.indices.size());
    const auto step = ap.indices[1] - ap.indices[0];
    CHECK(step > 0);
    for (std::size_t i = 0; i < ap.indices.size(); ++i) {
      CHECK(ap.indices[i] == ap.indices[0] + static_cast<std::int64_t>(i) * step);
      const BigInt scale = BigInt(1) << static_cast<unsigned>(ap.stage);
      CHECK(floor_of(pts[ap.point_ids[i]] * Rational(scale)) == ap.indices[i]);
    }
  }
}

TEST_CASE("grid_ap_descent is invariant under dyadic scaling") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> num(0, 999);
  for (int t = 0; t < 50; ++t) {
    std::set<Rational> pool;
    while (pool.size() < 6) pool.insert(Rational(num(rng), 1000));
    const std::vector<Rational> pts(pool.begin(), pool.end());
    const auto base = grid_ap_descent(pts, 3, 12);
    for (unsigned shift : {1u, 3u}) {
      std::vector<Rational> scaled;
      for (const auto& x : pts) scaled.push_back(x / Rational(BigInt(1) << shift));
      const auto r = grid_ap_descent(scaled, 3, 12 + shift);
      CHECK(r.status == base.status);
      if (base.status == DescentStatus::found) {
        CHECK(r.ap->stage == base.ap->stage + shift);
        CHECK(r.ap->indices == base.ap->indices);
      }
    }
  }
}

TEST_CASE("hypothesis check worked values") {
  std::vector<std::int64_t> all(1024);
  for (int i = 0; i < 1024; ++i) all[i] = i;
  const auto full = check_thm32_hypotheses(IntegerSet(all, 1024), 0.9, 1.0);
  CHECK(full.hypotheses_hold);
  CHECK(full.bound_violations.empty());
  CHECK(full.ap_found);

  const auto sparse = check_thm32_hypotheses(IntegerSet({0, 1, 5}, 6), 0.7, 1.0);
  CHECK_FALSE(sparse.density_ok);
  CHECK_FALSE(sparse.hypotheses_hold);
  REQUIRE_FALSE(sparse.failed.empty());
  CHECK(sparse.failed.front().find("(i)") != std::string::npos);
  CHECK_FALSE(sparse.ap_found);

  CHECK_THROWS(check_thm32_hypotheses(IntegerSet({0, 1, 5}, 6), 0.6, 1.0));
  CHECK_THROWS(check_thm32_hypotheses(IntegerSet({0, 1, 5}, 6), 1.1, 1.0));
}

TEST_CASE("hypotheses imply progressions on random dense sets") {
  int passing = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(seed);
    const auto a = gen::power_law_set(1 << 14, 0.2, rng);
    const auto r = check_thm32_hypotheses(a, 0.7, 4.0);
    if (r.hypotheses_hold) {
      ++passing;
      CHECK(r.ap_found);
    }
  }
  MESSAGE("hypotheses held in " << passing << " of 50 seeds");
}
