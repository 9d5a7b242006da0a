#include <benchmark/benchmark.h>

#include "urn/coupling.hpp"
#include "urn/increment.hpp"

namespace {

void BM_CoupleBatch(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const urn::UrnModel model = urn::build_model(n, urn::UniformUrns{n});
  urn::CouplingBatchOptions o;
  o.kind = state.range(1) == 0 ? urn::CouplerKind::kUniform : urn::CouplerKind::kGeneral;
  o.samples = 1u << 14;
  o.seed = 4;
  for (auto _ : state) benchmark::DoNotOptimize(urn::couple_batch(model, o).increment.mean());
  state.SetItemsProcessed(state.iterations() * o.samples);
}
BENCHMARK(BM_CoupleBatch)->ArgsProduct({{16, 256, 4096}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_DrawGiven(benchmark::State& state) {
  const urn::UrnModel model = urn::build_model(1000, urn::UniformUrns{800});
  const urn::GeneralCoupler coupler(model);
  urn::Rng rng(5);
  urn::Occupancy occ;
  occ.load(urn::sample_allocation(model, rng));
  occ.commit();
  for (auto _ : state) benchmark::DoNotOptimize(coupler.draw_given(occ, rng).y_sb);
}
BENCHMARK(BM_DrawGiven);

void BM_ConditionalIncrement(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const urn::UrnModel model = urn::build_model(n, urn::UniformUrns{n});
  const urn::IncrementEvaluator eval(model, state.range(1) == 0 ? urn::CouplerKind::kUniform
                                                                : urn::CouplerKind::kGeneral);
  urn::Rng rng(6);
  const urn::Allocation alloc = urn::sample_allocation(model, rng);
  for (auto _ : state) benchmark::DoNotOptimize(eval(alloc));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ConditionalIncrement)->ArgsProduct({{256, 4096}, {0, 1}});

}  // namespace

BENCHMARK_MAIN();
