#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "urn/error.hpp"
#include "urn/pi_table.hpp"

namespace urn {
namespace {

TEST(PiTable, SingleTrial) {
  const PiTable t = pi_table(1, 0.5);
  ASSERT_EQ(t.values().size(), 2u);
  EXPECT_DOUBLE_EQ(t(0), 1.0);
  EXPECT_DOUBLE_EQ(t(1), 0.0);
  EXPECT_EQ(t(7), 0.0);
}

TEST(PiTable, RejectsDegenerateInput) {
  EXPECT_THROW(pi_table(0, 0.5), DomainError);
  EXPECT_THROW(pi_table(5, 0.0), DomainError);
  EXPECT_THROW(pi_table(5, 1.0), DomainError);
  EXPECT_THROW(pi_table_direct(5, -0.1), DomainError);
}

TEST(PiTable, GridInvariants) {
  for (std::uint32_t nu = 1; nu <= 500; ++nu) {
    for (const double p : {1e-4, 1e-3, 1e-2, 0.1, 0.5}) {
      const PiTable t = pi_table(nu, p);
      ASSERT_EQ(t.values().size(), nu + 1u);
      EXPECT_EQ(t(0), 1.0) << nu << ' ' << p;
      EXPECT_EQ(t(nu), 0.0);
      for (const double v : t.values()) {
        ASSERT_GE(v, 0.0);
        ASSERT_LE(v, 1.0);
      }
      EXPECT_LE(t.max_clamp_excess(), kPiClampTolerance);
    }
  }
}

TEST(PiTable, MatchesFiftyDigitDefinition) {
  for (const std::uint32_t nu : {1u, 2u, 5u, 19u, 60u, 200u}) {
    for (const double p : {1e-3, 0.05, 0.3, 0.5, 0.8}) {
      const PiTable t = pi_table(nu, p);
      const auto ref = oracle::pi_reference(nu, p);
      for (std::uint32_t k = 0; k < nu; ++k) {
        const double r = static_cast<double>(ref[k]);
        // Entries below 1e-300 are underflow territory for the reference
        // conversion; the table must then be at most that small too.
        EXPECT_NEAR(t(k), r, 1e-12 * std::max(1.0, r)) << nu << ' ' << p << ' ' << k;
      }
    }
  }
}

TEST(PiTable, DirectFormAgreesWhereItIsStable) {
  for (const std::uint32_t nu : {3u, 10u, 30u}) {
    const PiTable stable = pi_table(nu, 0.2);
    const PiTable direct = pi_table_direct(nu, 0.2);
    for (std::uint32_t k = 0; k < nu; ++k) EXPECT_NEAR(stable(k), direct(k), 1e-9);
  }
}

// Rearranged definition:
//   P[N > k | N > 0] = P[N > k] + P[N = k] (1 - k/nu) pi_k.
TEST(PiTable, DefiningIdentity) {
  const std::uint32_t nu = 40;
  const double p = 0.07;
  const PiTable t = pi_table(nu, p);
  std::vector<double> pmf(nu + 1);
  for (std::uint32_t k = 0; k <= nu; ++k) {
    pmf[k] = std::exp(std::lgamma(nu + 1.0) - std::lgamma(k + 1.0) - std::lgamma(nu - k + 1.0) +
                      k * std::log(p) + (nu - k) * std::log1p(-p));
  }
  for (std::uint32_t k = 0; k < nu; ++k) {
    double above = 0.0;
    for (std::uint32_t j = k + 1; j <= nu; ++j) above += pmf[j];
    const double lhs = above / (1.0 - pmf[0]);
    const double rhs = above + pmf[k] * (1.0 - static_cast<double>(k) / nu) * t(k);
    EXPECT_NEAR(lhs, rhs, 1e-12);
  }
}

}  // namespace
}  // namespace urn
