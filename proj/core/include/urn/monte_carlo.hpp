#pragma once

#include <cstdint>
#include <optional>

#include "urn/model.hpp"
#include "urn/pmf.hpp"

namespace urn {

/// Replicates per generator stream. Fixed, so the partition of work (and hence
/// every result) is independent of the number of threads.
inline constexpr std::uint64_t kReplicatesPerStream = 1u << 14;

struct McOptions {
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// Standardize the empirical Kolmogorov distance with these moments
  /// instead of the sample moments (for oracle comparisons).
  std::optional<double> exact_mean;
  std::optional<double> exact_stddev;
};

struct McSummary {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double mean = 0.0;
  double mean_stderr = 0.0;
  double variance = 0.0;
  double variance_stderr = 0.0;
  IntegerPmf pmf;
  /// Empirical Kolmogorov distance to the normal, and whether it was
  /// standardized with exact moments.
  double d_hat = 0.0;
  bool exact_standardization = false;
  /// 99% Dvoretzky-Kiefer-Wolfowitz radius for the empirical CDF.
  double d_radius = 0.0;
  double wall_seconds = 0.0;
  double replicates_per_second = 0.0;
};

/// Seeded Monte Carlo estimate of the law of Y. Stream i of the seed covers
/// replicates [i K, (i+1) K) with K = kReplicatesPerStream; stream results are
/// merged in index order. Throws DomainError for samples < 2 or threads < 1.
McSummary mc_run(const UrnModel& model, const McOptions& options);

}  // namespace urn
