#pragma once

#include <cstdint>

#include "urn/model.hpp"
#include "urn/pmf.hpp"

namespace urn {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  double stddev() const noexcept;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// m^n, saturating at UINT64_MAX.
std::uint64_t outcome_count(const UrnModel& model) noexcept;

/// Exact pmf of Y by visiting all m^n ball assignments. Per-outcome weights
/// are accumulated with compensated summation in fixed blocks that are
/// reduced pairwise, so the result does not depend on `threads`.
/// Throws CapacityError when m^n exceeds `cap`.
IntegerPmf enumerate_pmf(const UrnModel& model, std::uint64_t cap = kDefaultEnumerationCap,
                         unsigned threads = 1);

/// Closed-form mean and variance of Y:
///   E Y   = n A,  A = sum_x p_x (1 - (1 - p_x)^(n-1)),
///   Var Y = n A + n (n-1) B - (n A)^2,
/// with B = P[M_1 > 0, M_2 > 0] = 1 - 2 P[M_1 = 0] + sum_{x != y} p_x p_y (1 - p_x - p_y)^(n-2).
/// O(m^2) for explicit models, O(1) for uniform ones.
Moments exact_moments(const UrnModel& model);

struct FellerOptions {
  std::uint32_t max_explicit_urns = 12;
  std::uint32_t max_uniform_urns = 512;
  /// Largest working precision the evaluator may escalate to.
  std::uint64_t precision_budget_bits = 1u << 18;
};

bool feller_supported(const UrnModel& model, const FellerOptions& options = {}) noexcept;

/// P[n - Y >= k] by inclusion-exclusion over the number of singleton urns,
///   sum_{j=k}^{m} (-1)^(j-k) C(j-1, k-1) S_j,
/// evaluated in MPFR arithmetic with at least n + 64 bits. The result carries
/// an absolute error below 2^-128; PrecisionError is thrown if that cannot be
/// certified within the budget. k = 0 gives 1.
double feller_cdf(const UrnModel& model, std::int64_t k, const FellerOptions& options = {});

/// Full pmf of Y from differences of feller_cdf tails.
IntegerPmf feller_pmf(const UrnModel& model, const FellerOptions& options = {});

/// Enumeration when m^n fits under the cap, Feller otherwise. Throws
/// CapacityError when neither applies.
IntegerPmf exact_pmf(const UrnModel& model, std::uint64_t cap = kDefaultEnumerationCap);

/// sup_t |P[(Y - mu)/sigma <= t] - Phi(t)| with mu, sigma taken from the pmf.
/// The supremum is attained at an atom, either at F(y) or at the left limit
/// F(y-). Throws DomainError for a zero-variance pmf.
double kolmogorov_distance(const IntegerPmf& pmf);

/// Same, standardizing with caller-provided moments.
double kolmogorov_distance(const IntegerPmf& pmf, double mean, double stddev);

}  // namespace urn
