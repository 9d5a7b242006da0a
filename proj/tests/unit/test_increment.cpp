#include <gtest/gtest.h>

#include <cmath>

#include "grid.hpp"
#include "oracles.hpp"
#include "urn/coupling.hpp"
#include "urn/error.hpp"
#include "urn/exact.hpp"
#include "urn/increment.hpp"

namespace urn {
namespace {

template <typename Body>
void for_each_assignment(const UrnModel& model, Body&& body) {
  std::vector<std::uint32_t> x(model.n(), 0);
  while (true) {
    double w = 1.0;
    for (const auto u : x) w *= model.p(u);
    body(x, w);
    std::uint32_t pos = 0;
    while (pos < model.n() && ++x[pos] == model.m()) x[pos++] = 0;
    if (pos == model.n()) return;
  }
}

TEST(ConditionalIncrement, TwoBallHandValues) {
  const UrnModel model = build_model(2, UniformUrns{2});
  EXPECT_DOUBLE_EQ(conditional_increment(model, Allocation::from_assignment(2, {0, 1})), 2.0);
  EXPECT_DOUBLE_EQ(conditional_increment(model, Allocation::from_assignment(2, {0, 0})), 0.0);
}

TEST(ConditionalIncrement, PreconditionsAreEnforced) {
  EXPECT_THROW(IncrementEvaluator(build_model(5, ExplicitUrns{{0.2, 0.8}}), CouplerKind::kUniform), DomainError);
  EXPECT_THROW(IncrementEvaluator(build_model(1, UniformUrns{3}), CouplerKind::kGeneral), DomainError);
  const IncrementEvaluator e(build_model(3, UniformUrns{3}), CouplerKind::kGeneral);
  EXPECT_THROW(e(Allocation::from_assignment(3, {0, 1})), DomainError);
}

// Closed forms against exact enumeration of the auxiliary randomness, on
// every allocation of small models.
TEST(ConditionalIncrement, MatchesBruteForceOnEveryAllocation) {
  for (const auto& [label, model] : grid::coupling_grid()) {
    if (std::pow(static_cast<double>(model.m()), model.n()) > 3000.0) continue;
    SCOPED_TRACE(label);
    const IncrementEvaluator general(model, CouplerKind::kGeneral);
    std::optional<IncrementEvaluator> uniform;
    if (model.is_uniform()) uniform.emplace(model, CouplerKind::kUniform);
    for_each_assignment(model, [&](const std::vector<std::uint32_t>& x, double) {
      const Allocation alloc = Allocation::from_assignment(model.m(), x);
      EXPECT_NEAR(general(alloc), oracle::general_increment_brute(model, x), 1e-12);
      if (uniform) {
        EXPECT_NEAR((*uniform)(alloc), oracle::uniform_increment_brute(model, x), 1e-12);
      }
    });
  }
}

TEST(ConditionalIncrement, ModelAverageIsVarianceOverMean) {
  for (const auto& [label, model] : grid::coupling_grid()) {
    if (std::pow(static_cast<double>(model.m()), model.n()) > 1e5) continue;
    SCOPED_TRACE(label);
    const Moments m = exact_moments(model);
    const IncrementEvaluator general(model, CouplerKind::kGeneral);
    std::optional<IncrementEvaluator> uniform;
    if (model.is_uniform()) uniform.emplace(model, CouplerKind::kUniform);
    double g = 0.0, u = 0.0;
    for_each_assignment(model, [&](const std::vector<std::uint32_t>& x, double w) {
      const Allocation alloc = Allocation::from_assignment(model.m(), x);
      g += w * general(alloc);
      if (uniform) u += w * (*uniform)(alloc);
    });
    EXPECT_NEAR(g, m.variance / m.mean, 1e-10);
    if (uniform) {
      EXPECT_NEAR(u, m.variance / m.mean, 1e-10);
    }
  }
}

TEST(ConditionalIncrement, FixedAllocationSimulationAgrees) {
  const UrnModel model = build_model(60, ExplicitUrns{{0.02, 0.08, 0.1, 0.3, 0.5}});
  Rng rng(10);
  for (int r = 0; r < 5; ++r) {
    const Allocation alloc = sample_allocation(model, rng);
    const MomentAccumulator acc =
        fixed_allocation_increments(model, CouplerKind::kGeneral, alloc, 200'000, 10, r);
    EXPECT_NEAR(acc.mean(), conditional_increment(model, alloc), 5.0 * acc.stderr_of_mean() + 1e-12);
  }
}

TEST(DeltaEstimate, TwoBallTwoPointLaw) {
  const DeltaEstimate d = delta_upper_estimate(build_model(2, UniformUrns{2}), 100'000, 3);
  // Values 2 and 0 with probability 1/2 each: variance 1.
  // Sample variance of a +-1 variable: its standard error is tiny, the
  // mean's is 1/sqrt(N).
  EXPECT_NEAR(d.delta_sq, 1.0, 1e-3);
  EXPECT_NEAR(d.mean_increment, 1.0, 5.0 / std::sqrt(100'000.0));
  EXPECT_NEAR(d.delta_hat, std::sqrt(d.delta_sq), 1e-15);
}

TEST(DeltaEstimate, StandardErrorAndReproducibility) {
  const UrnModel model = build_model(50, UniformUrns{50});
  const DeltaEstimate a = delta_upper_estimate(model, 40'000, 4, 1);
  const DeltaEstimate b = delta_upper_estimate(model, 40'000, 4, 3);
  EXPECT_EQ(a.delta_sq, b.delta_sq);
  EXPECT_EQ(a.delta_sq_stderr, b.delta_sq_stderr);
  EXPECT_GT(a.delta_sq_stderr, 0.0);
  EXPECT_LT(a.delta_sq_stderr, 0.1 * a.delta_sq);
  // Binning on Y can only lose variance up to within-bin noise.
  EXPECT_LE(a.delta_sq_binned, a.delta_sq * 1.01);
  EXPECT_NEAR(a.mean_increment, exact_moments(model).variance / exact_moments(model).mean, 0.01);
}

TEST(DeltaEstimate, TooFewSamples) {
  try {
    delta_upper_estimate(build_model(5, UniformUrns{5}), 99, 1);
    FAIL();
  } catch (const InsufficientSamples& e) {
    EXPECT_EQ(e.required_samples(), 100u);
  }
}

}  // namespace
}  // namespace urn
