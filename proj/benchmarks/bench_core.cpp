#include <benchmark/benchmark.h>

#include <vector>

#include "cfmimo/channel.hpp"
#include "cfmimo/config.hpp"
#include "cfmimo/montecarlo.hpp"
#include "cfmimo/ofdm.hpp"
#include "cfmimo/rng.hpp"

using namespace cfmimo;

namespace {

ofdm::cvec random_block(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  ofdm::cvec v(n);
  for (auto& x : v) x = rng.cnormal(1.0);
  return v;
}

void BM_Dft1200(benchmark::State& state) {
  ofdm::DftPlan plan(1200);
  const auto x = random_block(1200, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(plan.dft(x));
  }
}
BENCHMARK(BM_Dft1200);

void BM_CyclicConvolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto g = ofdm::cvec(n, {0.0, 0.0});
  Rng rng(2);
  for (int l = 0; l < 9; ++l) g[l] = rng.cnormal(1.0 / 9.0);
  const auto x = random_block(n, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ofdm::cyclic_convolve(g, x));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CyclicConvolve)->Arg(64)->Arg(256)->Arg(1200);

void BM_GenerateDrop(benchmark::State& state) {
  SystemConfig cfg;  // 128 APs x 20 users
  std::uint64_t index = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chan::generate_drop(cfg, index++));
  }
}
BENCHMARK(BM_GenerateDrop);

void BM_ResponseAt(benchmark::State& state) {
  const auto taps = chan::sample_taps(chan::TapProfile::etu(), 18e6, 1200);
  Rng rng(4);
  const auto ch = chan::draw_tap_channel(taps, 1e-9, rng);
  std::vector<int> subs(60);
  for (int i = 0; i < 60; ++i) subs[i] = i * 20;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chan::response_at(ch.gains, taps, subs, 1200));
  }
}
BENCHMARK(BM_ResponseAt);

// one full drop of the realization-based scheme, reference shape
void BM_DropEvaluationOasDp(benchmark::State& state) {
  SystemConfig cfg;
  cfg.drops = 1;
  cfg.realizations = static_cast<int>(state.range(0));
  cfg.threads = 1;
  cfg.schemes = {SchemeKind::kOasDp};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc::run_experiment_raw(cfg));
  }
}
BENCHMARK(BM_DropEvaluationOasDp)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
