// OpenMP kernels against their serial references.

#include "salem/aps.hpp"
#include "salem/equidist.hpp"
#include "salem/generators.hpp"
#include "salem/kernels.hpp"
#include "salem/measures.hpp"
#include "salem/randfrac.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace salem;

namespace {

IntegerSet bench_set(std::int64_t n, double density) {
  std::mt19937_64 rng(17);
  return gen::bernoulli_set(n, density, rng);
}

std::vector<std::int64_t> all_freqs(std::int64_t n) {
  std::vector<std::int64_t> ks;
  for (std::int64_t k = 0; k < n; ++k) ks.push_back(k);
  return ks;
}

void BM_SparseDft(benchmark::State& state) {
  const auto a = bench_set(state.range(0), 0.05);
  const auto ks = all_freqs(a.horizon());
  for (auto _ : state) benchmark::DoNotOptimize(kernels::sparse_dft(a.elements(), a.horizon(), ks));
}

void BM_SparseDftSerial(benchmark::State& state) {
  const auto a = bench_set(state.range(0), 0.05);
  const auto ks = all_freqs(a.horizon());
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::sparse_dft(a.elements(), a.horizon(), ks));
}

void BM_CellWeyl(benchmark::State& state) {
  const auto a = bench_set(state.range(0), 0.01);
  const auto ms = weyl_frequency_grid(a.horizon());
  for (auto _ : state) benchmark::DoNotOptimize(kernels::cell_weyl_sums(a.elements(), a.horizon(), ms));
}

void BM_CellWeylSerial(benchmark::State& state) {
  const auto a = bench_set(state.range(0), 0.01);
  const auto ms = weyl_frequency_grid(a.horizon());
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::cell_weyl_sums(a.elements(), a.horizon(), ms));
}

StagewiseMeasure bench_measure() {
  std::mt19937_64 rng(23);
  const auto plan = gen::random_plan({8, 3, 8, 4, false}, rng);
  return StagewiseMeasure(plan, plan.depth(), 1e-3);
}

std::vector<double> u_grid(std::int64_t count) {
  std::vector<double> us;
  for (std::int64_t i = 1; i <= count; ++i) us.push_back(1.37 * static_cast<double>(i));
  return us;
}

void BM_MuHatGrid(benchmark::State& state) {
  const auto m = bench_measure();
  const auto us = u_grid(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mu_hat_grid(m, us));
}

void BM_MuHatGridSerial(benchmark::State& state) {
  const auto m = bench_measure();
  const auto us = u_grid(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(serial::mu_hat_grid(m, us));
}

void BM_FindAp(benchmark::State& state) {
  const auto a = bench_set(state.range(0), 0.02);
  for (auto _ : state) benchmark::DoNotOptimize(find_ap_integers(a, 4, APSearch::all));
}

void BM_FindApSerial(benchmark::State& state) {
  const auto a = bench_set(state.range(0), 0.02);
  for (auto _ : state) benchmark::DoNotOptimize(serial::find_ap_integers(a, 4, APSearch::all));
}

RandomFractalConfig trial_config(std::int64_t trials) {
  RandomFractalConfig c;
  c.beta = 0.5;
  c.level_sizes = {64, 64, 64};
  c.depth = 3;
  c.trials = static_cast<std::size_t>(trials);
  c.master_seed = 1;
  return c;
}

void BM_Trials(benchmark::State& state) {
  const auto c = trial_config(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate_trials(c));
}

void BM_TrialsSerial(benchmark::State& state) {
  const auto c = trial_config(state.range(0));
  for (auto _ : state) {
    for (std::size_t i = 0; i < c.trials; ++i) benchmark::DoNotOptimize(generate_trial(c, i));
  }
}

}  // namespace

BENCHMARK(BM_SparseDft)->Arg(1 << 10)->Arg(1 << 12);
BENCHMARK(BM_SparseDftSerial)->Arg(1 << 10)->Arg(1 << 12);
BENCHMARK(BM_CellWeyl)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_CellWeylSerial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_MuHatGrid)->Arg(1 << 12);
BENCHMARK(BM_MuHatGridSerial)->Arg(1 << 12);
BENCHMARK(BM_FindAp)->Arg(1 << 14);
BENCHMARK(BM_FindApSerial)->Arg(1 << 14);
BENCHMARK(BM_Trials)->Arg(200);
BENCHMARK(BM_TrialsSerial)->Arg(200);

BENCHMARK_MAIN();
