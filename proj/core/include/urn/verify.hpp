#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "urn/coupling.hpp"
#include "urn/model.hpp"

namespace urn {

/// One tested instance of an inequality or a goodness-of-fit comparison.
struct CheckInstance {
  std::string label;
  double estimate = 0.0;
  double bound = 0.0;
  double standard_error = 0.0;
  /// (bound - estimate) / stderr for inequalities; p-value minus threshold
  /// for goodness of fit.
  double margin = 0.0;
  bool passed = true;
  std::map<std::string, double> extra;
};

struct CheckReport {
  std::string name;
  std::uint64_t instances = 0;
  double worst_margin = 0.0;
  bool passed = true;
  std::uint64_t samples = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<CheckInstance> details;
  std::map<std::string, double> summary;
  std::vector<std::string> notes;

  void add(CheckInstance instance);
};

/// Allowance, in standard errors, on the one-sided inequality checks.
inline constexpr double kInequalitySlack = 4.0;
/// Goodness-of-fit threshold for the size-bias law.
inline constexpr double kLawPValue = 0.001;

/// Empirical law of Y'' from each applicable coupler against the exact
/// size-biased law k P[Y = k] / E Y. Throws CapacityError when no exact pmf
/// is available and DomainError for n < 2 or m < 2.
CheckReport sizebias_law_check(const UrnModel& model, std::uint64_t samples, std::uint64_t seed,
                               unsigned threads = 1);

enum class CovarianceFamily { kPair, kQuad };

/// Test functions psi(x, k) of an urn and a co-occupancy 0 <= k <= n - 1.
struct PsiFunction {
  std::string name;
  /// values[t][k] for urns of probability class t.
  std::vector<std::vector<double>> values;
  double sup_abs = 0.0;
  double range = 0.0;
};

struct PsiLibrary {
  /// Urn -> probability class.
  std::vector<std::uint32_t> urn_class;
  std::vector<double> class_probability;
  std::vector<PsiFunction> functions;
};

/// Centered indicators of {M = 0} and {M = 1}, the h family and its tilded
/// versions, each centered exactly so that E psi(X_1, M_1) = 0.
PsiLibrary psi_library(const UrnModel& model);

/// Estimates |E psi_1(X_1, M_1) psi_2(X_2, M_2)| (pair) or
/// |E psi_1 phi phi phi| over four distinct balls (quad) for every choice of
/// psi_1 and the second function from the library, by a U-statistic over
/// each allocation, and compares with the uniform-case bound (uniform
/// models) and the general bound (all models).
CheckReport covariance_bound_check(const UrnModel& model, CovarianceFamily family,
                                   std::uint64_t samples, std::uint64_t seed,
                                   unsigned threads = 1);

/// Bounds (not estimates) for the covariance inequalities.
double uniform_pair_bound(std::uint32_t n, std::uint32_t m, double range1, double sup2);
double uniform_quad_bound(std::uint32_t n, std::uint32_t m, double range1, double sup_rest);
double general_pair_bound(double gamma, double sum_p2, double range1, double sup2);
double general_quad_bound(double gamma, double sum_p2, double range1, double sup_rest);

/// Sample-count floor for the rate check: D >= 0.121/sigma must exceed
/// three DKW radii.
std::uint64_t rate_check_required_samples(double sigma);

inline constexpr std::uint64_t kRateCheckDefaultSamples = 1'000'000;

/// For uniform models with m = n over `n_list`, estimates D by simulation
/// with exact standardization and fits the slope of log D against log n.
/// Passes when the slope lies in [-0.70, -0.30], every D exceeds three DKW
/// radii, and D sigma changes by less than a factor 2 between consecutive n.
/// Throws DomainError for fewer than two sizes and InsufficientSamples when
/// the radius requirement is out of reach.
CheckReport rate_check(const std::vector<std::uint32_t>& n_list, std::uint64_t samples,
                       std::uint64_t seed, unsigned threads = 1);

/// Allocation-conditional surrogate for Delta^2 against the uniform
/// increment variance bound (uniform models) or C(gamma)^2 / Var Y (models
/// meeting the regularity flags). Inapplicable models are reported, not failed.
CheckReport delta_check(const UrnModel& model, std::uint64_t samples, std::uint64_t seed,
                        unsigned threads = 1);

}  // namespace urn
