#include <benchmark/benchmark.h>

#include <vector>

#include "urn/model.hpp"
#include "urn/monte_carlo.hpp"

namespace {

void BM_SampleNonisolatedUniform(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const urn::UrnModel model = urn::build_model(n, urn::UniformUrns{n});
  urn::Rng rng(1);
  std::vector<std::uint32_t> scratch(n, 0), touched;
  for (auto _ : state) benchmark::DoNotOptimize(urn::sample_nonisolated(model, rng, scratch, touched));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SampleNonisolatedUniform)->RangeMultiplier(4)->Range(64, 16384);

void BM_SampleNonisolatedExplicit(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  std::vector<double> p(n);
  for (std::uint32_t x = 0; x < n; ++x) p[x] = 1.0 + (x % 7);
  double total = 0.0;
  for (const double v : p) total += v;
  for (double& v : p) v /= total;
  const urn::UrnModel model = urn::build_model(n, urn::ExplicitUrns{p});
  urn::Rng rng(2);
  std::vector<std::uint32_t> scratch(n, 0), touched;
  for (auto _ : state) benchmark::DoNotOptimize(urn::sample_nonisolated(model, rng, scratch, touched));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SampleNonisolatedExplicit)->RangeMultiplier(4)->Range(64, 16384);

void BM_MonteCarloRun(benchmark::State& state) {
  const urn::UrnModel model = urn::build_model(1024, urn::UniformUrns{1024});
  urn::McOptions o;
  o.samples = 1u << 15;
  o.seed = 3;
  o.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(urn::mc_run(model, o).d_hat);
  state.SetItemsProcessed(state.iterations() * o.samples);
}
BENCHMARK(BM_MonteCarloRun)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
