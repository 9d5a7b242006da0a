#include "urn/pi_table.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "urn/error.hpp"
#include "urn/stats.hpp"

namespace urn {
namespace {

void check_arguments(std::uint32_t nu, double p) {
  if (nu < 1) throw DomainError("pi table needs at least one trial");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("pi table needs 0 < p < 1");
}

// log(1 + e^x) without overflow.
double softplus(double x) noexcept {
  if (x == -std::numeric_limits<double>::infinity()) return 0.0;
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double clamp_entry(double value, std::uint32_t k, std::uint32_t& clamped, double& worst) {
  if (value >= 0.0 && value <= 1.0) return value;
  const double excess = value < 0.0 ? -value : value - 1.0;
  if (!(excess <= kPiClampTolerance)) {
    throw DomainError("pi_" + std::to_string(k) + " = " + std::to_string(value) +
                      " lies outside [0, 1] beyond the clamp tolerance");
  }
  ++clamped;
  worst = std::max(worst, excess);
  return value < 0.0 ? 0.0 : 1.0;
}

}  // namespace

PiTable pi_table(std::uint32_t nu, double p) {
  check_arguments(nu, p);
  PiTable table;
  table.nu_ = nu;
  table.p_ = p;
  table.values_.assign(nu + 1, 0.0);

  const double nn = nu;
  const double log_odds = std::log(p) - std::log1p(-p);
  // log P[N = 0] and log(1 - P[N = 0]).
  const double log_p0 = nn * std::log1p(-p);
  const double log_positive = std::log(-std::expm1(log_p0));
  const double log_prefactor = log_p0 - log_positive;

  // r_k = P[N > k] / P[N = k] satisfies r_nu = 0 and
  // r_k = q_k (1 + r_{k+1}), q_k = P[N = k+1] / P[N = k] = (nu-k)/(k+1) p/(1-p).
  double log_ratio = -std::numeric_limits<double>::infinity();
  for (std::uint32_t k = nu; k-- > 0;) {
    const double log_q = std::log(static_cast<double>(nu - k)) -
                         std::log(static_cast<double>(k + 1)) + log_odds;
    log_ratio = log_q + softplus(log_ratio);
    const double log_scale = std::log1p(-static_cast<double>(k) / nn);
    const double value = std::exp(log_prefactor + log_ratio - log_scale);
    table.values_[k] = clamp_entry(value, k, table.clamped_, table.max_clamp_excess_);
  }
  table.values_[nu] = 0.0;
  // pi_0 = P[N > 0] / P[N > 0]; pin it against rounding.
  if (nu > 0) table.values_[0] = 1.0;
  return table;
}

PiTable pi_table_direct(std::uint32_t nu, double p) {
  check_arguments(nu, p);
  PiTable table;
  table.nu_ = nu;
  table.p_ = p;
  table.values_.assign(nu + 1, 0.0);
  const std::vector<double> pmf = binomial_pmf(nu, p);
  std::vector<double> upper(nu + 1, 0.0);  // P[N > k]
  for (std::uint32_t k = nu; k-- > 0;) upper[k] = upper[k + 1] + pmf[k + 1];
  const double positive = 1.0 - pmf[0];
  for (std::uint32_t k = 0; k < nu; ++k) {
    const double numerator = upper[k] / positive - upper[k];
    const double denominator = pmf[k] * (1.0 - static_cast<double>(k) / nu);
    const double value = denominator > 0.0 ? numerator / denominator : 0.0;
    table.values_[k] = clamp_entry(value, k, table.clamped_, table.max_clamp_excess_);
  }
  return table;
}

}  // namespace urn
