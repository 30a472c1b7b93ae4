// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "cli.hpp"

#include "salem/aps.hpp"
#include "salem/cantor.hpp"
#include "salem/core_sets.hpp"
#include "salem/equidist.hpp"
#include "salem/generators.hpp"
#include "salem/measures.hpp"
#include "salem/randfrac.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace salem;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

fs::path scratch() {
  const char* env = std::getenv("SALEM_TEST_TMP");
  fs::path dir = env ? fs::path(env) : fs::temp_directory_path() / "salem_acceptance";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

int cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  return cli::run_command(args, out, err);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// 1. Sparse DFT against the full-range sum, plus Parseval.
Outcome dft_oracle() {
  std::mt19937_64 rng(101);
  double worst = 0, worst_parseval = 0;
  for (int t = 0; t < 100; ++t) {
    const auto n = std::uniform_int_distribution<std::int64_t>(2, 4096)(rng);
    const double density = std::uniform_real_distribution<double>(0.01, 0.5)(rng);
    const auto set = gen::bernoulli_set(n, density, rng);
    std::vector<std::int64_t> ks(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) ks[static_cast<std::size_t>(k)] = k;
    const auto fast = dft_char(set, ks);

    std::vector<std::complex<double>> roots(static_cast<std::size_t>(n));
    for (std::int64_t j = 0; j < n; ++j) roots[static_cast<std::size_t>(j)] = std::polar(1.0, -2 * kPi * double(j) / double(n));
    std::vector<double> chi(static_cast<std::size_t>(n), 0.0);
    for (auto a : set.elements()) chi[static_cast<std::size_t>(a)] = 1.0;

    double energy = 0;
    for (std::int64_t k = 0; k < n; ++k) {
      std::complex<double> s = 0;
      std::size_t idx = 0;
      for (std::int64_t x = 0; x < n; ++x) {
        s += chi[static_cast<std::size_t>(x)] * roots[idx];
        idx += static_cast<std::size_t>(k);
        if (idx >= static_cast<std::size_t>(n)) idx -= static_cast<std::size_t>(n);
      }
      s /= double(n);
      worst = std::max(worst, std::abs(s - fast[static_cast<std::size_t>(k)].value));
      energy += std::norm(fast[static_cast<std::size_t>(k)].value);
    }
    worst_parseval = std::max(worst_parseval, std::abs(energy - double(set.size()) / double(n)));
  }
  return {worst <= 1e-10 && worst_parseval <= 1e-10,
          "max |sparse - naive| = " + fmt("%.2e", worst) + ", max Parseval error = " + fmt("%.2e", worst_parseval)};
}

// 2. Exact nesting and disjointness on random plans; ternary box dimension.
Outcome cantor_exactness() {
  std::mt19937_64 rng(202);
  std::size_t violations = 0, stages = 0;
  for (int t = 0; t < 50; ++t) {
    gen::RandomPlanShape shape;
    shape.depth = static_cast<std::size_t>(std::uniform_int_distribution<int>(2, 8)(rng));
    shape.max_horizon = 5;
    shape.unit_eta = t % 2 == 0;
    const auto plan = gen::random_plan(shape, rng);
    auto prev = build_stage(plan, 0);
    for (std::size_t k = 1; k <= plan.depth(); ++k) {
      const auto stage = build_stage(plan, k);
      violations += count_overlaps(stage) + count_nesting_violations(prev, stage);
      prev = stage;
      ++stages;
    }
  }
  double worst = 0;
  const double target = std::log(2.0) / std::log(3.0);
  for (bool unit : {true, false}) {
    const auto ternary = repeated_plan(3, {0, 2}, 12, unit);
    for (std::size_t k = 2; k <= 12; ++k) worst = std::max(worst, std::abs(box_dimension(ternary, k) - target));
  }
  return {violations == 0 && worst <= 1e-12,
          std::to_string(violations) + " violations over " + std::to_string(stages) +
              " stages, max |box_dim - log2/log3| = " + fmt("%.2e", worst)};
}

// 3. Product formula against Stieltjes quadrature of F_8; powers of 3.
Outcome measure_consistency() {
  double worst_ratio = 0;
  for (bool unit : {true, false}) {
    const auto plan = repeated_plan(3, {0, 2}, 30, unit);
    const StagewiseMeasure limit(plan, 30, 0.0);
    const StageDistribution f8(plan, 8);
    const auto& stage = f8.stage();
    const Rational len = stage.interval_length;
    std::vector<double> mass, mid;
    for (const auto& x : stage.left_endpoints) {
      mass.push_back(to_double(f8.exact(x + len) - f8.exact(x)));
      mid.push_back(to_double(x) + to_double(len) / 2);
    }
    const double bound_per_u = 2 * kPi * to_double(len);
    for (double u = 0.25; u <= 100; u += 0.25) {
      std::complex<double> q = 0;
      for (std::size_t j = 0; j < mass.size(); ++j) q += mass[j] * std::polar(1.0, -2 * kPi * u * mid[j]);
      worst_ratio = std::max(worst_ratio, std::abs(limit.mu_hat(u).value - q) / (bound_per_u * u));
    }
  }
  const StagewiseMeasure cantor(repeated_plan(3, {0, 2}, 30, true), 30, 0.0);
  const double base = std::abs(cantor.mu_hat(1.0).value);
  double drift = 0, u = 1;
  for (int k = 1; k <= 6; ++k) {
    u *= 3;
    drift = std::max(drift, std::abs(std::abs(cantor.mu_hat(u).value) - base));
  }
  return {worst_ratio <= 1.0 && drift <= 1e-9,
          "max error / (2 pi L_8 u) = " + fmt("%.3f", worst_ratio) + ", |mu_hat(1)| = " + fmt("%.6f", base) +
              ", max drift over 3^k = " + fmt("%.2e", drift)};
}

// 4. Embedded integer APs are recovered by the point search and the descent.
Outcome ap_preservation() {
  std::mt19937_64 rng(404);
  const std::vector<std::int64_t> exps = {13, 16, 20};
  const Rational slope = dyadic_slope(exps, 3);
  std::size_t ok_points = 0, ok_descent = 0, total = 0;
  for (std::size_t n : {3, 4, 5}) {
    for (int t = 0; t < 100; ++t) {
      const auto sn = static_cast<std::int64_t>(n);
      const std::int64_t d = std::uniform_int_distribution<std::int64_t>(1, 4000 / sn)(rng);
      const std::int64_t s = std::uniform_int_distribution<std::int64_t>(0, 4095 - d * (sn - 1))(rng);
      std::vector<std::int64_t> terms;
      for (std::int64_t k = 0; k < sn; ++k) terms.push_back(s + k * d);
      const auto img = dyadic_embed(IntegerSet(terms, 4096), exps, 3);
      const auto w = find_ap_points(img, n);
      ++total;
      if (w.size() == 1 && w[0].start == slope * s && w[0].difference == slope * d && w[0].length == n) ++ok_points;
      const auto r = grid_ap_descent(img, n, static_cast<std::size_t>(exps.back() + 3));
      if (r.status == DescentStatus::found && r.ap->indices.size() == n) ++ok_descent;
    }
  }
  return {ok_points == total && ok_descent == total,
          "point search " + std::to_string(ok_points) + "/" + std::to_string(total) + ", descent " +
              std::to_string(ok_descent) + "/" + std::to_string(total)};
}

RandomFractalConfig random_config(double beta, std::vector<std::int64_t> sizes, std::size_t trials,
                                  std::uint64_t seed) {
  RandomFractalConfig c;
  c.beta = beta;
  c.depth = sizes.size();
  c.level_sizes = std::move(sizes);
  c.trials = trials;
  c.master_seed = seed;
  return c;
}

// 5. Mean dimension within 0.1 of 1 - beta, extinction below 10%.
Outcome random_dimension() {
  bool pass = true;
  std::string detail;
  for (double beta : {0.25, 0.5}) {
    const auto s = dimension_experiment(random_config(beta, {64, 64, 64}, 50, 505));
    const bool ok = std::isfinite(s.mean_dim) && std::abs(s.mean_dim - (1 - beta)) <= 0.1 && s.extinction_rate < 0.1;
    pass = pass && ok;
    detail += "beta " + fmt("%.2f", beta) + ": mean dim " + fmt("%.4f", s.mean_dim) + ", extinction " +
              fmt("%.2f", s.extinction_rate) + "; ";
  }
  return {pass, detail};
}

// 6. Satisfied fraction non-decreasing in N1 and >= 0.9 at 4096.
Outcome lemma_trend() {
  std::vector<double> fractions;
  std::string detail = "u in [2, " + std::to_string(kDefaultLemmaUMax) + "], fractions:";
  for (std::int64_t n1 : {256, 1024, 4096}) {
    const auto r = lemma63_experiment(random_config(0.5, {n1}, 200, 606), 1.0);
    fractions.push_back(r.satisfied_fraction);
    detail += " N1=" + std::to_string(n1) + ":" + fmt("%.3f", r.satisfied_fraction);
  }
  const bool monotone = std::is_sorted(fractions.begin(), fractions.end());
  return {monotone && fractions.back() >= 0.9, detail};
}

// 7. Random trials equidistributed near 1 - beta; ternary control near 0.
Outcome corollary_separation() {
  std::vector<double> alphas;
  for (const auto& t : generate_trials(random_config(0.5, {64, 64, 64}, 50, 707))) {
    if (!t.extinct) alphas.push_back(corollary64_check(t).alpha);
  }
  const double med = alphas.empty() ? std::nan("") : median(alphas);

  const auto ternary = repeated_plan(3, {0, 2}, 8, true);
  std::vector<NApproximation> approx;
  std::int64_t n = 1;
  for (std::size_t k = 1; k <= 8; ++k) {
    n *= 3;
    approx.push_back(n_approximation(target_from_stage(build_stage(ternary, k)), n));
  }
  const double control = equidist_order(approx).alpha;
  const bool random_ok = med >= 0.35 && med <= 0.65;
  const bool control_ok = control < 0.05;
  return {random_ok && control_ok, "median alpha " + fmt("%.4f", med) + " (" + (random_ok ? "ok" : "out of range") +
                                       "), ternary control alpha " + fmt("%.4f", control) + " at N = 3^8 (" +
                                       (control_ok ? "ok" : "not < 0.05") + ")"};
}

// 8. Round trips and byte-identical reruns.
Outcome round_trips() {
  std::mt19937_64 rng(808);
  std::size_t exact = 0;
  for (int t = 0; t < 50; ++t) {
    std::vector<NApproximation> seq;
    std::int64_t n = 0;
    for (int i = 0; i < 3; ++i) {
      n += std::uniform_int_distribution<std::int64_t>(1, 200)(rng);
      const auto cells = gen::bernoulli_set(n, 0.3, rng);
      seq.push_back({n, {cells.elements().begin(), cells.elements().end()}});
    }
    const auto ints = integers_from_approximations(seq);
    Target pts;
    for (auto x : ints.elements()) {
      if (x < seq[0].horizon) pts.points.push_back(Rational(x, seq[0].horizon));
    }
    if (n_approximation(pts, seq[0].horizon) == seq[0]) ++exact;
  }

  const auto dir = scratch();
  const auto p = [&](const char* name) { return (dir / name).string(); };
  std::size_t file_ok = 0, file_total = 0;
  const auto check = [&](bool ok) {
    ++file_total;
    if (ok) ++file_ok;
  };
  check(cli({"plan", "--ternary", "5", "-o", p("plan.txt")}) == 0 &&
        format_plan(load_plan(p("plan.txt"))) == slurp(p("plan.txt")));
  check(cli({"approximate", "--plan", p("plan.txt"), "--depth", "5", "-N", "729", "-o", p("approx.txt")}) == 0 &&
        format_approximation(load_approximation(p("approx.txt"))) == slurp(p("approx.txt")));
  check(cli({"extract-integers", "--approx", p("approx.txt"), "-o", p("ints.txt")}) == 0 &&
        format_integer_set(load_integer_set(p("ints.txt"))) == slurp(p("ints.txt")));
  check(cli({"ap-embed", "-i", p("ints.txt"), "--exponents", "11,14", "-o", p("points.txt")}) == 0 &&
        format_points(load_points(p("points.txt"))) == slurp(p("points.txt")));

  std::size_t rerun_ok = 0;
  const std::vector<std::vector<std::string>> experiments = {
      {"random-salem", "--levels", "32,32,32", "--trials", "10", "--seed", "8", "--dump"},
      {"lemma63", "--N1", "512", "--trials", "20", "--seed", "8"},
      {"corollary64", "--levels", "32,32,32", "--trials", "10", "--seed", "8"}};
  for (const auto& args : experiments) {
    auto a = args, b = args;
    a.insert(a.end(), {"-o", p("rerun_a.json")});
    b.insert(b.end(), {"-o", p("rerun_b.json")});
    if (cli(a) == 0 && cli(b) == 0 && slurp(p("rerun_a.json")) == slurp(p("rerun_b.json"))) ++rerun_ok;
  }
  return {exact == 50 && file_ok == file_total && rerun_ok == experiments.size(),
          "stage-1 reproduced " + std::to_string(exact) + "/50, file round trips " + std::to_string(file_ok) + "/" +
              std::to_string(file_total) + ", identical reruns " + std::to_string(rerun_ok) + "/" +
              std::to_string(experiments.size())};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, 10, dft_oracle},        {2, 30, cantor_exactness},  {3, 10, measure_consistency},
      {4, 30, ap_preservation},   {5, 120, random_dimension}, {6, 300, lemma_trend},
      {7, 120, corollary_separation}, {8, 10, round_trips},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("AC%d %s (%.2f s of %.0f s) %s%s\n", c.id, pass ? "PASS" : "FAIL", secs, c.limit_seconds,
                o.detail.c_str(), in_time ? "" : " [over time limit]");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
