#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "urn/coupling.hpp"
#include "urn/h_family.hpp"
#include "urn/model.hpp"
#include "urn/pi_table.hpp"

namespace urn {

/// Closed forms for E[Y'' - Y | allocation] under either coupler.
///
/// Uniform coupler, with V_i = pi_{M_i}, tau_i = 1{M_i = 0} + 1{M_i = 1}/(n-1)
/// and T_j = 1{M_j = 0} - 1{M_j = 1}:
///   (1/n) sum_i V_i tau_i + (1/(n(n-1))) sum_{i != j} V_i T_j.
/// General coupler:
///   2 + (sum_x p^_x h5(N_x, x)) (1/n) sum_i h6(M_i) + sum_x p^_x h7(N_x, x)
///     - (sum_x p^_x h4(N_x, x)) (1/n) sum_i h0(M_i) - (2/n) sum_i h0(M_i).
/// Both evaluate in O(n) per allocation.
class IncrementEvaluator {
 public:
  /// The uniform form requires a uniform model. Both require n >= 2, m >= 2.
  IncrementEvaluator(const UrnModel& model, CouplerKind kind);

  double operator()(const Allocation& alloc) const;

  CouplerKind kind() const noexcept { return kind_; }

 private:
  double uniform_form(const Allocation& alloc) const;
  double general_form(const Allocation& alloc) const;

  CouplerKind kind_;
  std::uint32_t n_;
  std::optional<PiTable> uniform_pi_;
  std::optional<HFamily> family_;
  std::vector<double> p_hat_;
};

/// Uniform form for uniform models, general form otherwise.
double conditional_increment(const UrnModel& model, const Allocation& alloc);
double conditional_increment(const UrnModel& model, const Allocation& alloc, CouplerKind kind);

struct DeltaEstimate {
  /// Square root of the sample variance of the conditional increment over
  /// independent allocations: an upper-bound surrogate for Delta.
  double delta_hat = 0.0;
  double delta_sq = 0.0;
  /// Jackknife standard errors.
  double delta_sq_stderr = 0.0;
  double delta_stderr = 0.0;
  double mean_increment = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  /// Experimental: between-bin variance after binning the conditional
  /// increment on Y. Biased upwards by within-bin noise.
  double delta_sq_binned = 0.0;
};

/// Throws InsufficientSamples for samples < 100.
DeltaEstimate delta_upper_estimate(const UrnModel& model, std::uint64_t samples,
                                   std::uint64_t seed, unsigned threads = 1,
                                   std::optional<CouplerKind> kind = std::nullopt);

}  // namespace urn
