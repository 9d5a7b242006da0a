#include "urn/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "urn/error.hpp"
#include "urn/normal.hpp"
#include "urn/parallel.hpp"
#include "urn/stats.hpp"

namespace urn {

double Moments::stddev() const noexcept { return std::sqrt(variance); }

std::uint64_t outcome_count(const UrnModel& model) noexcept {
  const std::uint64_t m = model.m();
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < model.n(); ++i) {
    if (m != 0 && total > std::numeric_limits<std::uint64_t>::max() / m) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= m;
  }
  return total;
}

namespace {

constexpr std::uint64_t kEnumerationBlock = std::uint64_t{1} << 16;

// Mixed-radix odometer over ball assignments; ball n-1 is the fastest digit.
class Odometer {
 public:
  Odometer(const UrnModel& model, std::uint64_t start)
      : p_(model.p()), m_(model.m()), digits_(model.n()), counts_(model.m(), 0),
        prefix_(model.n() + 1, 1.0) {
    const std::uint32_t n = model.n();
    for (std::uint32_t pos = n; pos-- > 0;) {
      digits_[pos] = static_cast<std::uint32_t>(start % m_);
      start /= m_;
    }
    for (std::uint32_t d : digits_) ++counts_[d];
    for (std::uint32_t c : counts_) singletons_ += (c == 1);
    recompute_prefix(0);
  }

  double weight() const noexcept { return prefix_.back(); }
  std::uint32_t nonisolated() const noexcept {
    return static_cast<std::uint32_t>(digits_.size()) - singletons_;
  }

  void advance() noexcept {
    std::size_t pos = digits_.size();
    while (pos-- > 0) {
      const std::uint32_t from = digits_[pos];
      const std::uint32_t to = from + 1 == m_ ? 0 : from + 1;
      move(from, to);
      digits_[pos] = to;
      if (to != 0) break;
      if (pos == 0) break;
    }
    recompute_prefix(pos);
  }

 private:
  void move(std::uint32_t from, std::uint32_t to) noexcept {
    singletons_ -= (counts_[from] == 1);
    --counts_[from];
    singletons_ += (counts_[from] == 1);
    singletons_ -= (counts_[to] == 1);
    ++counts_[to];
    singletons_ += (counts_[to] == 1);
  }

  void recompute_prefix(std::size_t from) noexcept {
    for (std::size_t i = from; i < digits_.size(); ++i) prefix_[i + 1] = prefix_[i] * p_[digits_[i]];
  }

  std::span<const double> p_;
  std::uint32_t m_;
  std::vector<std::uint32_t> digits_;
  std::vector<std::uint32_t> counts_;
  std::vector<double> prefix_;
  std::uint32_t singletons_ = 0;
};

// Fixed-shape pairwise reduction over block results.
std::vector<double> reduce_blocks(const std::vector<std::vector<double>>& blocks,
                                  std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return blocks[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  std::vector<double> left = reduce_blocks(blocks, lo, mid);
  const std::vector<double> right = reduce_blocks(blocks, mid, hi);
  for (std::size_t v = 0; v < left.size(); ++v) left[v] += right[v];
  return left;
}

}  // namespace

IntegerPmf enumerate_pmf(const UrnModel& model, std::uint64_t cap, unsigned threads) {
  const std::uint64_t total = outcome_count(model);
  if (total > cap) {
    throw CapacityError("enumeration needs m^n = " +
                        (total == std::numeric_limits<std::uint64_t>::max()
                             ? std::string("> 2^64")
                             : std::to_string(total)) +
                        " outcomes, above the cap of " + std::to_string(cap));
  }
  const std::uint32_t n = model.n();
  const std::uint64_t block_count = (total + kEnumerationBlock - 1) / kEnumerationBlock;
  std::vector<std::vector<double>> blocks(block_count);
  parallel_for(block_count, threads, [&](std::size_t b) {
    const std::uint64_t start = b * kEnumerationBlock;
    const std::uint64_t stop = std::min(total, start + kEnumerationBlock);
    std::vector<CompensatedSum> sums(n + 1);
    Odometer odometer(model, start);
    for (std::uint64_t outcome = start; outcome < stop; ++outcome) {
      sums[odometer.nonisolated()].add(odometer.weight());
      if (outcome + 1 < stop) odometer.advance();
    }
    std::vector<double> result(n + 1);
    for (std::uint32_t v = 0; v <= n; ++v) result[v] = sums[v].value();
    blocks[b] = std::move(result);
  });
  const std::vector<double> dense = reduce_blocks(blocks, 0, blocks.size());
  return IntegerPmf::from_dense(dense, PmfProvenance::kEnumeration);
}

Moments exact_moments(const UrnModel& model) {
  const std::uint32_t n = model.n();
  if (n == 1) return {0.0, 0.0};
  const auto nn = static_cast<long double>(n);
  const auto p = model.p();

  // P[M_1 = 0] and A = P[M_1 > 0].
  long double isolated = 0.0L;
  for (double px : p) isolated += px * std::exp((nn - 1.0L) * std::log1p(-static_cast<long double>(px)));
  const long double nonisolated = 1.0L - isolated;

  // P[M_1 = 0, M_2 = 0] = sum_{x != y} p_x p_y (1 - p_x - p_y)^(n-2).
  long double both_isolated = 0.0L;
  if (model.is_uniform()) {
    const long double m = model.m();
    if (model.m() >= 2) {
      const long double base = 1.0L - 2.0L / m;
      const long double power = n == 2 ? 1.0L : std::pow(base, nn - 2.0L);
      both_isolated = (m - 1.0L) / m * power;
    }
  } else {
    for (std::size_t x = 0; x < p.size(); ++x) {
      long double row = 0.0L;
      for (std::size_t y = 0; y < p.size(); ++y) {
        if (x == y) continue;
        const long double base =
            std::max(0.0L, 1.0L - static_cast<long double>(p[x]) - static_cast<long double>(p[y]));
        row += p[y] * (n == 2 ? 1.0L : std::pow(base, nn - 2.0L));
      }
      both_isolated += p[x] * row;
    }
  }
  const long double mean = nn * nonisolated;
  // Rearranged as n A (1 - A) + n (n-1) (B - A^2), where B - A^2 = P00 - P0^2
  // avoids subtracting two O(n^2) quantities.
  const long double covariance = both_isolated - isolated * isolated;
  long double variance = nn * nonisolated * (1.0L - nonisolated) + nn * (nn - 1.0L) * covariance;
  if (variance < 0.0L) variance = 0.0L;
  return {static_cast<double>(mean), static_cast<double>(variance)};
}

IntegerPmf exact_pmf(const UrnModel& model, std::uint64_t cap) {
  if (outcome_count(model) <= cap) return enumerate_pmf(model, cap);
  if (feller_supported(model)) return feller_pmf(model);
  throw CapacityError("model is too large for both enumeration and the Feller evaluator");
}

double kolmogorov_distance(const IntegerPmf& pmf) {
  return kolmogorov_distance(pmf, pmf.mean(), pmf.stddev());
}

double kolmogorov_distance(const IntegerPmf& pmf, double mean, double stddev) {
  if (!(stddev > 0.0) || !std::isfinite(stddev)) {
    throw DomainError("Kolmogorov distance is undefined for a zero-variance distribution");
  }
  const auto support = pmf.support();
  const auto mass = pmf.mass();
  long double cdf = 0.0L;
  double distance = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const double phi = normal_cdf((static_cast<double>(support[i]) - mean) / stddev);
    const auto before = static_cast<double>(cdf);
    cdf += mass[i];
    const auto after = static_cast<double>(cdf);
    distance = std::max({distance, std::fabs(after - phi), std::fabs(phi - before)});
  }
  return distance;
}

}  // namespace urn
