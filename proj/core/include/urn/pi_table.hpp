#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace urn {

/// Import probabilities pi_0..pi_nu for N ~ Bin(nu, p):
///
///   pi_k = (P[N > k | N > 0] - P[N > k]) / (P[N = k] (1 - k/nu)),  k < nu,
///   pi_nu = 0.
///
/// Importing a ball with probability pi_N turns N into a draw from
/// Bin(nu, p) conditioned to be positive. Every pi_k lies in [0, 1].
class PiTable {
 public:
  std::uint32_t trials() const noexcept { return nu_; }
  double success_probability() const noexcept { return p_; }
  std::span<const double> values() const noexcept { return values_; }

  /// pi_k, extended by zero for k >= nu. The extension is only ever
  /// multiplied by zero in the increment formulas (an urn holding all n balls).
  double operator()(std::uint32_t k) const noexcept { return k < values_.size() ? values_[k] : 0.0; }

  /// Number of entries that rounded slightly outside [0, 1] and were clamped,
  /// and the largest such excursion.
  std::uint32_t clamped() const noexcept { return clamped_; }
  double max_clamp_excess() const noexcept { return max_clamp_excess_; }

 private:
  friend PiTable pi_table(std::uint32_t nu, double p);
  friend PiTable pi_table_direct(std::uint32_t nu, double p);

  std::uint32_t nu_ = 0;
  double p_ = 0.0;
  std::vector<double> values_;
  std::uint32_t clamped_ = 0;
  double max_clamp_excess_ = 0.0;
};

/// Entries within this distance outside [0, 1] are clamped; anything further
/// is a hard error.
inline constexpr double kPiClampTolerance = 1e-9;

/// Stable evaluation through
///   pi_k = P[N=0] P[N>k] / ((1 - P[N=0]) P[N=k] (1 - k/nu)),
/// with the ratio P[N>k]/P[N=k] obtained by a backward recursion in log space.
/// Throws DomainError unless nu >= 1 and 0 < p < 1.
PiTable pi_table(std::uint32_t nu, double p);

/// Direct evaluation of the defining ratio with double-precision binomial
/// tails. Cancels badly for large nu; kept for cross-checking.
PiTable pi_table_direct(std::uint32_t nu, double p);

}  // namespace urn
