#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace urn {

/// Welford accumulator with Chan's pairwise merge.
class MomentAccumulator {
 public:
  void add(double value) noexcept {
    ++count_;
    const double delta = value - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (value - mean_);
  }

  void merge(const MomentAccumulator& other) noexcept;

  std::uint64_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  /// Unbiased sample variance (0 for fewer than two values).
  double variance() const noexcept {
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
  }
  double stderr_of_mean() const noexcept {
    return count_ > 1 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
  }

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double value) noexcept {
    const double t = sum_ + value;
    if (std::fabs(sum_) >= std::fabs(value)) {
      comp_ += (sum_ - t) + value;
    } else {
      comp_ += (value - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Dvoretzky-Kiefer-Wolfowitz radius: P[sup |F_N - F| > eps] <= alpha for
/// eps = sqrt(ln(2/alpha) / (2N)).
double dkw_radius(std::uint64_t samples, double alpha = 0.01);

struct ChiSquaredResult {
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
  /// Observations fell on a value with zero expected mass.
  bool impossible_observation = false;
};

/// Pearson goodness of fit of histogram `observed` (indexed by value) against
/// `expected` probabilities (same indexing). Adjacent cells are pooled until
/// each pooled cell expects at least `min_expected` observations.
ChiSquaredResult chi_squared_gof(std::span<const std::uint64_t> observed,
                                 std::span<const double> expected,
                                 double min_expected = 5.0);

/// Ordinary least squares slope of y on x.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

/// log P[Bin(trials, p) = k].
double log_binomial_pmf(std::uint64_t k, std::uint64_t trials, double p);

/// P[Bin(trials, p) = k] for k = 0..trials.
std::vector<double> binomial_pmf(std::uint64_t trials, double p);

}  // namespace urn
