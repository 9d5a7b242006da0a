#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "urn/model.hpp"

namespace urn {

enum class Verdict {
  kInformative,          // preconditions hold and the value is at most 1
  kVacuous,              // preconditions hold but the value exceeds 1
  kPreconditionFailed,   // some precondition flag is false
};

std::string to_string(Verdict verdict);

struct BoundTerm {
  std::string name;
  double value = 0.0;
};

struct PreconditionFlag {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct BoundValue {
  std::string name;
  double value = 0.0;
  /// Additive pieces summing to `value`.
  std::vector<BoundTerm> terms;
  /// Names of the flags this value depends on.
  std::vector<std::string> requires_flags;
  Verdict verdict = Verdict::kInformative;
};

struct BoundContext {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  bool uniform = false;
  double mu = 0.0;
  double sigma = 0.0;
  double gamma = 1.0;
  double max_p = 0.0;
  double sum_p_squared = 0.0;
  /// The urn-count assumption m >= 4 fails.
  bool few_urns = false;
};

struct BoundReport {
  BoundContext context;
  std::vector<PreconditionFlag> flags;
  /// Named components: eta, g, C(gamma), thresholds.
  std::map<std::string, double> components;
  std::vector<BoundValue> bounds;

  const PreconditionFlag* flag(const std::string& name) const noexcept;
  const BoundValue* bound(const std::string& name) const noexcept;
  void merge(const BoundReport& other);
};

/// 16/n + 4/(n(n-1)) + (24/m)(2 + n/(m-3) + n/m), the uniform bound on the
/// variance of the allocation-conditional increment. Throws DomainError
/// unless n >= 2 and m >= 4.
double uniform_increment_variance_bound(std::uint32_t n, std::uint32_t m);

/// sigma^{3/2} / sqrt(6 mu), the largest admissible increment bound.
double size_bias_increment_limit(double mu, double sigma);

/// Evaluates
///   0.4 B/sigma + (mu/sigma^2)(64 B^2/sigma + 4 B^3/sigma^2 + 23 Delta)
/// without checking B against size_bias_increment_limit.
BoundValue size_bias_terms(double mu, double sigma, double b, double delta);

/// Same value; throws DomainError naming the failed inequality when
/// B > sigma^{3/2}/sqrt(6 mu) or an input is not positive (Delta may be 0).
double size_bias_kolmogorov_bound(double mu, double sigma, double b, double delta);

/// Uniform Kolmogorov bound, the size-bias bound at B = 2 and
/// Delta = sqrt(uniform_increment_variance_bound(n, m)). The flag
/// sigma^3 >= 24 mu is reported, not enforced.
BoundReport uniform_kolmogorov_bound(std::uint32_t n, std::uint32_t m, double mu, double sigma);

/// g(alpha) = sqrt(e^-alpha - e^-2alpha (alpha^2 - alpha + 1)), the limit of
/// sigma / sqrt(n) when n/m -> alpha. Throws DomainError for alpha <= 0.
double limit_sd_scale(double alpha);

/// Limit of sqrt(n) times the uniform bound when n/m -> alpha.
BoundValue asymptotic_rate_terms(double alpha);
double asymptotic_rate_constant(double alpha);

/// min(1/6, (8 pi e)^{-1/2} / sigma). Throws DomainError for sigma <= 0.
double kolmogorov_lower_bound(double sigma);

/// 10 sqrt(82 g^7 + 82 g^6 + 80 g^5 + 47 g^4 + 12 g^3 + 12 g^2).
double general_delta_constant(double gamma);

/// 83 gamma^2 (1 + 3 gamma + 3 gamma^2) e^{1.05 gamma}.
double ball_count_threshold(double gamma);

/// The two regularity flags of the general results.
std::vector<PreconditionFlag> regularity_flags(const UrnModel& model);

/// Universal lower bound, and the general upper bound
///   8165 gamma^2 e^{2.1 gamma} (577 + 23 C(gamma)) / sigma
/// with its regularity flags.
BoundReport general_kolmogorov_report(const UrnModel& model, double sigma,
                                      std::optional<double> mu = std::nullopt);

/// Var Y <= 8 n^2 sum p^2 always; Var Y >= n^2 sum p^2 / (7776 gamma^2 e^{2.1 gamma})
/// under the regularity flags.
BoundReport variance_bounds(const UrnModel& model);

/// Every applicable report for the model with its exact moments.
BoundReport all_bounds(const UrnModel& model);

}  // namespace urn
