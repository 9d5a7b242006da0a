#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "urn/error.hpp"
#include "urn/model.hpp"

namespace urn {
namespace {

TEST(BuildModel, UniformSquareHasGammaOne) {
  const UrnModel model = build_model(100, UniformUrns{100});
  EXPECT_EQ(model.m(), 100u);
  for (std::uint32_t x = 0; x < 100; ++x) EXPECT_DOUBLE_EQ(model.p(x), 0.01);
  EXPECT_DOUBLE_EQ(model.gamma(), 1.0);
  EXPECT_FALSE(model.few_urns());
}

TEST(BuildModel, ExplicitGamma) {
  const UrnModel model = build_model(10, ExplicitUrns{{0.5, 0.25, 0.25}});
  EXPECT_DOUBLE_EQ(model.max_p(), 0.5);
  EXPECT_DOUBLE_EQ(model.gamma(), 5.0);
  EXPECT_TRUE(model.few_urns());
  EXPECT_DOUBLE_EQ(model.sum_p_squared(), 0.375);
}

TEST(BuildModel, RejectsSumOffByMoreThanTolerance) {
  EXPECT_THROW(build_model(5, ExplicitUrns{{0.3, 0.7001}}), DomainError);
}

TEST(BuildModel, RenormalizesWithinTolerance) {
  const UrnModel model = build_model(5, ExplicitUrns{{0.3, 0.7 + 5e-10}});
  const double total = model.p(0) + model.p(1);
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(BuildModel, RejectsBadInput) {
  EXPECT_THROW(build_model(0, UniformUrns{3}), DomainError);
  EXPECT_THROW(build_model(3, UniformUrns{0}), DomainError);
  EXPECT_THROW(build_model(3, ExplicitUrns{{}}), DomainError);
  EXPECT_THROW(build_model(3, ExplicitUrns{{0.0, 1.0}}), DomainError);
  EXPECT_THROW(build_model(3, ExplicitUrns{{-0.5, 1.5}}), DomainError);
}

TEST(Allocation, CountsAreConsistent) {
  const UrnModel model = build_model(2, UniformUrns{2});
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const Allocation a = sample_allocation(model, rng);
    EXPECT_EQ(a.counts[0] + a.counts[1], 2u);
    for (std::uint32_t i = 0; i < a.n(); ++i) EXPECT_EQ(a.m_of[i], a.counts[a.x[i]] - 1);
  }
}

TEST(Allocation, DeterministicInSeed) {
  const UrnModel model = build_model(40, ExplicitUrns{{0.2, 0.3, 0.5}});
  Rng a(99), b(99);
  EXPECT_EQ(sample_allocation(model, a).x, sample_allocation(model, b).x);
}

TEST(Allocation, ExtremeModelConcentratesOnHeavyUrn) {
  // P[some ball leaves urn 0] <= n * 1e-9, so 10^4 allocations all land there
  // except with probability below 1e-4.
  const UrnModel model = build_model(10, ExplicitUrns{{1.0 - 1e-9, 1e-9}});
  Rng rng(5);
  std::uint64_t all_heavy = 0;
  for (int r = 0; r < 10'000; ++r) all_heavy += sample_allocation(model, rng).counts[0] == 10;
  EXPECT_EQ(all_heavy, 10'000u);
}

TEST(NonisolatedCount, HandExamples) {
  EXPECT_EQ(nonisolated_count(Allocation::from_assignment(3, {0, 0, 1})), 2u);
  EXPECT_EQ(nonisolated_count(Allocation::from_assignment(3, {0, 1, 2})), 0u);
  EXPECT_EQ(nonisolated_count(Allocation::from_assignment(3, {0, 0, 0})), 3u);
}

TEST(NonisolatedCount, NeverOneAndMatchesSingletonCount) {
  const UrnModel model = build_model(7, ExplicitUrns{{0.1, 0.2, 0.3, 0.15, 0.25}});
  Rng rng(11);
  std::vector<std::uint32_t> scratch(model.m(), 0), touched;
  for (int r = 0; r < 20'000; ++r) {
    const Allocation a = sample_allocation(model, rng);
    const std::uint32_t y = nonisolated_count(a);
    EXPECT_NE(y, 1u);
    const auto singles = std::count(a.counts.begin(), a.counts.end(), 1u);
    EXPECT_EQ(y, a.n() - singles);
    EXPECT_EQ(y, oracle::count_nonisolated(a.x, a.m()));
  }
}

TEST(NonisolatedCount, FastSamplerLeavesScratchZeroed) {
  const UrnModel model = build_model(30, UniformUrns{17});
  Rng rng(3);
  std::vector<std::uint32_t> scratch(model.m(), 0), touched;
  for (int r = 0; r < 1000; ++r) {
    const std::uint32_t y = sample_nonisolated(model, rng, scratch, touched);
    EXPECT_NE(y, 1u);
    EXPECT_LE(y, 30u);
  }
  EXPECT_TRUE(std::all_of(scratch.begin(), scratch.end(), [](auto c) { return c == 0; }));
}

TEST(AliasTable, FrequenciesMatchWeights) {
  const std::vector<double> w = {0.5, 0.125, 0.25, 0.125};
  const AliasTable table(w);
  Rng rng(17);
  std::vector<double> freq(4, 0.0);
  const int draws = 400'000;
  for (int r = 0; r < draws; ++r) freq[table.sample(rng)] += 1.0 / draws;
  for (std::size_t i = 0; i < w.size(); ++i) {
    // Five binomial standard errors.
    EXPECT_NEAR(freq[i], w[i], 5.0 * std::sqrt(w[i] * (1 - w[i]) / draws));
  }
}

}  // namespace
}  // namespace urn
