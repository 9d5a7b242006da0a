#include "urn/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <numeric>

#include "urn/error.hpp"

namespace urn {

void MomentAccumulator::merge(const MomentAccumulator& other) noexcept {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const auto na = static_cast<double>(count_);
  const auto nb = static_cast<double>(other.count_);
  const double total = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ += delta * nb / total;
  m2_ += other.m2_ + delta * delta * na * nb / total;
  count_ += other.count_;
}

double dkw_radius(std::uint64_t samples, double alpha) {
  if (samples == 0) throw DomainError("DKW radius needs at least one sample");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("DKW level must lie in (0, 1)");
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(samples)));
}

ChiSquaredResult chi_squared_gof(std::span<const std::uint64_t> observed,
                                 std::span<const double> expected, double min_expected) {
  ChiSquaredResult result;
  const std::uint64_t total =
      std::accumulate(observed.begin(), observed.end(), std::uint64_t{0});
  if (total == 0) throw DomainError("chi-squared test on an empty sample");
  const auto n = static_cast<double>(total);

  struct Cell {
    double expected = 0.0;
    double observed = 0.0;
  };
  std::vector<Cell> cells;
  Cell pending;
  const std::size_t size = std::max(observed.size(), expected.size());
  for (std::size_t v = 0; v < size; ++v) {
    const double e = v < expected.size() ? expected[v] : 0.0;
    const double o = v < observed.size() ? static_cast<double>(observed[v]) : 0.0;
    if (e <= 0.0) {
      if (o > 0.0) result.impossible_observation = true;
      continue;
    }
    pending.expected += e * n;
    pending.observed += o;
    if (pending.expected >= min_expected) {
      cells.push_back(pending);
      pending = {};
    }
  }
  if (pending.expected > 0.0) {
    if (cells.empty()) {
      cells.push_back(pending);
    } else {
      cells.back().expected += pending.expected;
      cells.back().observed += pending.observed;
    }
  }

  for (const Cell& cell : cells) {
    const double diff = cell.observed - cell.expected;
    result.statistic += diff * diff / cell.expected;
  }
  result.degrees_of_freedom = static_cast<int>(cells.size()) - 1;
  if (result.impossible_observation) {
    result.p_value = 0.0;
  } else if (result.degrees_of_freedom <= 0) {
    result.p_value = 1.0;
  } else {
    result.p_value = boost::math::gamma_q(0.5 * result.degrees_of_freedom,
                                          0.5 * result.statistic);
  }
  return result;
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DomainError("least squares slope needs at least two paired points");
  }
  const auto count = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / count;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw DomainError("least squares slope with constant abscissa");
  return sxy / sxx;
}

double log_binomial_pmf(std::uint64_t k, std::uint64_t trials, double p) {
  if (k > trials) return -INFINITY;
  const auto kk = static_cast<double>(k);
  const auto nn = static_cast<double>(trials);
  double log_choose =
      std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(nn - kk + 1.0);
  double result = log_choose;
  if (k > 0) result += kk * std::log(p);
  if (k < trials) result += (nn - kk) * std::log1p(-p);
  return result;
}

std::vector<double> binomial_pmf(std::uint64_t trials, double p) {
  std::vector<double> pmf(trials + 1);
  for (std::uint64_t k = 0; k <= trials; ++k) pmf[k] = std::exp(log_binomial_pmf(k, trials, p));
  return pmf;
}

}  // namespace urn
