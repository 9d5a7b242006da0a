#include "urn/pmf.hpp"

#include <algorithm>
#include <cmath>

#include "urn/error.hpp"

namespace urn {

std::string_view to_string(PmfProvenance provenance) noexcept {
  switch (provenance) {
    case PmfProvenance::kEnumeration:
      return "exact-enumeration";
    case PmfProvenance::kFeller:
      return "exact-feller";
    case PmfProvenance::kEmpirical:
      return "empirical";
  }
  return "unknown";
}

IntegerPmf::IntegerPmf(std::vector<std::int64_t> support, std::vector<double> mass,
                       PmfProvenance provenance)
    : support_(std::move(support)), mass_(std::move(mass)), provenance_(provenance) {
  if (support_.size() != mass_.size()) throw DomainError("support and mass differ in length");
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (i > 0 && support_[i] <= support_[i - 1]) {
      throw DomainError("pmf support must be strictly increasing");
    }
    if (!(mass_[i] >= 0.0)) throw DomainError("pmf mass must be nonnegative");
    if (support_[i] == 1 && mass_[i] > 0.0) {
      throw DomainError("positive mass at Y = 1, which is impossible");
    }
  }
}

IntegerPmf IntegerPmf::from_dense(std::span<const double> mass_by_value,
                                  PmfProvenance provenance) {
  std::vector<std::int64_t> support;
  std::vector<double> mass;
  for (std::size_t v = 0; v < mass_by_value.size(); ++v) {
    if (mass_by_value[v] != 0.0) {
      support.push_back(static_cast<std::int64_t>(v));
      mass.push_back(mass_by_value[v]);
    }
  }
  return IntegerPmf(std::move(support), std::move(mass), provenance);
}

IntegerPmf IntegerPmf::from_counts(std::span<const std::uint64_t> counts_by_value) {
  std::uint64_t total = 0;
  for (auto c : counts_by_value) total += c;
  if (total == 0) throw DomainError("empirical pmf from an empty sample");
  std::vector<std::int64_t> support;
  std::vector<double> mass;
  std::vector<std::uint64_t> counts;
  for (std::size_t v = 0; v < counts_by_value.size(); ++v) {
    if (counts_by_value[v] == 0) continue;
    support.push_back(static_cast<std::int64_t>(v));
    counts.push_back(counts_by_value[v]);
    mass.push_back(static_cast<double>(counts_by_value[v]) / static_cast<double>(total));
  }
  IntegerPmf pmf(std::move(support), std::move(mass), PmfProvenance::kEmpirical);
  pmf.counts_ = std::move(counts);
  pmf.sample_count_ = total;
  return pmf;
}

double IntegerPmf::probability(std::int64_t value) const noexcept {
  const auto it = std::lower_bound(support_.begin(), support_.end(), value);
  if (it == support_.end() || *it != value) return 0.0;
  return mass_[static_cast<std::size_t>(it - support_.begin())];
}

double IntegerPmf::cdf(std::int64_t value) const noexcept {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < support_.size() && support_[i] <= value; ++i) acc += mass_[i];
  return static_cast<double>(acc);
}

double IntegerPmf::total_mass() const noexcept {
  long double acc = 0.0L;
  for (double q : mass_) acc += q;
  return static_cast<double>(acc);
}

double IntegerPmf::mean() const noexcept {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    acc += static_cast<long double>(support_[i]) * mass_[i];
  }
  return static_cast<double>(acc);
}

double IntegerPmf::variance() const noexcept {
  long double mu = 0.0L;
  long double total = 0.0L;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    mu += static_cast<long double>(support_[i]) * mass_[i];
    total += mass_[i];
  }
  mu /= total;
  long double acc = 0.0L;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    const long double d = static_cast<long double>(support_[i]) - mu;
    acc += d * d * mass_[i];
  }
  return static_cast<double>(acc / total);
}

double IntegerPmf::stddev() const noexcept { return std::sqrt(variance()); }

IntegerPmf IntegerPmf::size_biased() const {
  const double mu = mean();
  if (!(mu > 0.0)) throw DomainError("size-biasing requires a positive mean");
  std::vector<std::int64_t> support;
  std::vector<double> mass;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (support_[i] == 0) continue;
    if (support_[i] < 0) throw DomainError("size-biasing requires a nonnegative variable");
    support.push_back(support_[i]);
    mass.push_back(static_cast<double>(support_[i]) * mass_[i] / mu);
  }
  return IntegerPmf(std::move(support), std::move(mass), provenance_);
}

}  // namespace urn
