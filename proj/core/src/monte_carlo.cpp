#include "urn/monte_carlo.hpp"

#include <chrono>
#include <cmath>
#include <vector>

#include "urn/error.hpp"
#include "urn/exact.hpp"
#include "urn/parallel.hpp"
#include "urn/stats.hpp"

namespace urn {
namespace {

struct StreamResult {
  std::vector<std::uint64_t> histogram;
  MomentAccumulator moments;
};

// Variance of the unbiased sample variance, from exact histogram moments.
double variance_stderr(const std::vector<std::uint64_t>& histogram, double mean,
                       double variance, std::uint64_t samples) {
  long double m4 = 0.0L;
  for (std::size_t v = 0; v < histogram.size(); ++v) {
    if (histogram[v] == 0) continue;
    const long double d = static_cast<long double>(v) - mean;
    m4 += d * d * d * d * static_cast<long double>(histogram[v]);
  }
  const auto n = static_cast<long double>(samples);
  m4 /= n;
  const long double s4 = static_cast<long double>(variance) * variance;
  const long double var_of_var = (m4 - s4 * (n - 3.0L) / (n - 1.0L)) / n;
  return var_of_var > 0.0L ? static_cast<double>(std::sqrt(var_of_var)) : 0.0;
}

}  // namespace

McSummary mc_run(const UrnModel& model, const McOptions& options) {
  if (options.samples < 2) throw DomainError("Monte Carlo needs at least two samples");
  if (options.threads < 1) throw DomainError("Monte Carlo needs at least one thread");
  if (options.exact_mean.has_value() != options.exact_stddev.has_value()) {
    throw DomainError("exact standardization needs both a mean and a standard deviation");
  }
  const auto started = std::chrono::steady_clock::now();
  const std::uint32_t n = model.n();
  const std::uint64_t streams =
      (options.samples + kReplicatesPerStream - 1) / kReplicatesPerStream;
  std::vector<StreamResult> results(streams);

  parallel_for(streams, options.threads, [&](std::size_t s) {
    const std::uint64_t begin = s * kReplicatesPerStream;
    const std::uint64_t end = std::min(options.samples, begin + kReplicatesPerStream);
    Rng rng(options.seed, StreamTag::kMonteCarlo, s);
    StreamResult& out = results[s];
    out.histogram.assign(n + 1, 0);
    std::vector<std::uint32_t> scratch(model.m(), 0);
    std::vector<std::uint32_t> touched;
    for (std::uint64_t r = begin; r < end; ++r) {
      const std::uint32_t y = sample_nonisolated(model, rng, scratch, touched);
      ++out.histogram[y];
      out.moments.add(static_cast<double>(y));
    }
  });

  std::vector<std::uint64_t> histogram(n + 1, 0);
  MomentAccumulator moments;
  for (const StreamResult& r : results) {
    for (std::uint32_t v = 0; v <= n; ++v) histogram[v] += r.histogram[v];
    moments.merge(r.moments);
  }

  McSummary summary{
      .samples = options.samples,
      .seed = options.seed,
      .threads = options.threads,
      .mean = moments.mean(),
      .mean_stderr = moments.stderr_of_mean(),
      .variance = moments.variance(),
      .variance_stderr = 0.0,
      .pmf = IntegerPmf::from_counts(histogram),
  };
  summary.variance_stderr =
      variance_stderr(histogram, summary.mean, summary.variance, options.samples);
  summary.d_radius = dkw_radius(options.samples, 0.01);
  if (options.exact_mean) {
    summary.exact_standardization = true;
    summary.d_hat = kolmogorov_distance(summary.pmf, *options.exact_mean, *options.exact_stddev);
  } else if (summary.variance > 0.0) {
    summary.d_hat = kolmogorov_distance(summary.pmf, summary.mean, std::sqrt(summary.variance));
  } else {
    summary.d_hat = std::nan("");
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
  summary.wall_seconds = elapsed.count();
  summary.replicates_per_second =
      summary.wall_seconds > 0.0 ? static_cast<double>(options.samples) / summary.wall_seconds : 0.0;
  return summary;
}

}  // namespace urn
