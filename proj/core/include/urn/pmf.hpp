#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace urn {

enum class PmfProvenance { kEnumeration, kFeller, kEmpirical };

std::string_view to_string(PmfProvenance provenance) noexcept;

/// Distribution of an integer-valued statistic, stored as a sorted support
/// with matching masses. Empirical distributions also keep their raw counts,
/// so every mass is exactly count / sample_count.
class IntegerPmf {
 public:
  IntegerPmf(std::vector<std::int64_t> support, std::vector<double> mass,
             PmfProvenance provenance);

  /// Dense mass indexed by value 0..size-1; zero entries are dropped.
  static IntegerPmf from_dense(std::span<const double> mass_by_value,
                               PmfProvenance provenance);
  /// Empirical distribution from a histogram indexed by value.
  static IntegerPmf from_counts(std::span<const std::uint64_t> counts_by_value);

  std::span<const std::int64_t> support() const noexcept { return support_; }
  std::span<const double> mass() const noexcept { return mass_; }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  PmfProvenance provenance() const noexcept { return provenance_; }
  std::uint64_t sample_count() const noexcept { return sample_count_; }

  double probability(std::int64_t value) const noexcept;
  /// P[Y <= value].
  double cdf(std::int64_t value) const noexcept;
  double total_mass() const noexcept;
  double mean() const noexcept;
  double variance() const noexcept;
  double stddev() const noexcept;

  /// Size-biased law k P[Y = k] / E Y. Requires a positive mean.
  IntegerPmf size_biased() const;

 private:
  std::vector<std::int64_t> support_;
  std::vector<double> mass_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t sample_count_ = 0;
  PmfProvenance provenance_;
};

}  // namespace urn
