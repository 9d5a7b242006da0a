#include <benchmark/benchmark.h>

#include "urn/exact.hpp"
#include "urn/pi_table.hpp"

namespace {

void BM_Enumerate(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const urn::UrnModel model = urn::build_model(n, urn::ExplicitUrns{{0.4, 0.3, 0.2, 0.1}});
  for (auto _ : state) benchmark::DoNotOptimize(urn::enumerate_pmf(model).mean());
}
BENCHMARK(BM_Enumerate)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

void BM_FellerPmf(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const urn::UrnModel model = urn::build_model(n, urn::UniformUrns{n});
  for (auto _ : state) benchmark::DoNotOptimize(urn::feller_pmf(model).mean());
}
BENCHMARK(BM_FellerPmf)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);

void BM_ExactMomentsExplicit(benchmark::State& state) {
  const auto m = static_cast<std::uint32_t>(state.range(0));
  std::vector<double> p(m, 1.0 / m);
  p[0] *= 1.5;
  p[1] *= 0.5;
  const urn::UrnModel model = urn::build_model(2 * m, urn::ExplicitUrns{p});
  for (auto _ : state) benchmark::DoNotOptimize(urn::exact_moments(model).variance);
}
BENCHMARK(BM_ExactMomentsExplicit)->RangeMultiplier(4)->Range(16, 4096);

void BM_PiTable(benchmark::State& state) {
  const auto nu = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(urn::pi_table(nu, 1.0 / nu).values().data());
}
BENCHMARK(BM_PiTable)->RangeMultiplier(8)->Range(8, 32768);

}  // namespace

BENCHMARK_MAIN();
