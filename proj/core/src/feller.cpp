#include <mpfr.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "urn/error.hpp"
#include "urn/exact.hpp"

namespace urn {
namespace {

// Owning MPFR value with an explicit precision.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision) { mpfr_init2(value_, precision); mpfr_set_zero(value_, 1); }
  BigFloat(const BigFloat& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  BigFloat& operator=(const BigFloat& other) {
    if (this != &other) {
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
      mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
  }
  ~BigFloat() { mpfr_clear(value_); }

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }

 private:
  mpfr_t value_;
};

// Target absolute accuracy of every returned probability.
constexpr long kAccuracyExponent = -128;

struct FellerTerms {
  std::uint32_t n = 0;
  std::uint32_t terms = 0;  // J = min(n, m): S_j vanishes beyond it
  mpfr_prec_t precision = 0;
  std::vector<BigFloat> s;  // S_0..S_J
};

// n! / (n-j)! for j = 0..J.
std::vector<BigFloat> falling_factorials(std::uint32_t n, std::uint32_t J, mpfr_prec_t prec) {
  std::vector<BigFloat> ff(J + 1, BigFloat(prec));
  mpfr_set_ui(ff[0].get(), 1, MPFR_RNDN);
  for (std::uint32_t j = 1; j <= J; ++j) mpfr_mul_ui(ff[j].get(), ff[j - 1].get(), n - j + 1, MPFR_RNDN);
  return ff;
}

FellerTerms uniform_terms(const UrnModel& model, mpfr_prec_t prec) {
  const std::uint32_t n = model.n();
  const std::uint32_t m = model.m();
  FellerTerms out{n, std::min(n, m), prec, {}};
  const auto ff = falling_factorials(n, out.terms, prec);
  BigFloat choose(prec), base(prec), power(prec), term(prec);
  mpfr_set_ui(choose.get(), 1, MPFR_RNDN);
  out.s.assign(out.terms + 1, BigFloat(prec));
  for (std::uint32_t j = 0; j <= out.terms; ++j) {
    if (j > 0) {
      mpfr_mul_ui(choose.get(), choose.get(), m - j + 1, MPFR_RNDN);
      mpfr_div_ui(choose.get(), choose.get(), j, MPFR_RNDN);
    }
    // S_j = C(m, j) n!/(n-j)! m^-j ((m - j)/m)^(n-j)
    mpfr_set_ui(base.get(), m - j, MPFR_RNDN);
    mpfr_div_ui(base.get(), base.get(), m, MPFR_RNDN);
    mpfr_pow_ui(power.get(), base.get(), n - j, MPFR_RNDN);
    mpfr_mul(term.get(), choose.get(), ff[j].get(), MPFR_RNDN);
    mpfr_mul(term.get(), term.get(), power.get(), MPFR_RNDN);
    mpfr_set_ui(base.get(), m, MPFR_RNDN);
    mpfr_pow_ui(power.get(), base.get(), j, MPFR_RNDN);
    mpfr_div(out.s[j].get(), term.get(), power.get(), MPFR_RNDN);
  }
  return out;
}

FellerTerms explicit_terms(const UrnModel& model, mpfr_prec_t prec) {
  const std::uint32_t n = model.n();
  const std::uint32_t m = model.m();
  FellerTerms out{n, std::min(n, m), prec, {}};
  const auto ff = falling_factorials(n, out.terms, prec);

  // Renormalize in high precision so the probabilities sum to one exactly
  // up to rounding at this precision.
  std::vector<BigFloat> q(m, BigFloat(prec));
  BigFloat total(prec);
  for (std::uint32_t x = 0; x < m; ++x) mpfr_add_d(total.get(), total.get(), model.p(x), MPFR_RNDN);
  for (std::uint32_t x = 0; x < m; ++x) {
    mpfr_set_d(q[x].get(), model.p(x), MPFR_RNDN);
    mpfr_div(q[x].get(), q[x].get(), total.get(), MPFR_RNDN);
  }

  out.s.assign(out.terms + 1, BigFloat(prec));
  const std::uint32_t full = (m == 32) ? ~0u : ((1u << m) - 1u);
  BigFloat mass(prec), product(prec), base(prec), power(prec);
  mpfr_set_ui(out.s[0].get(), 1, MPFR_RNDN);
  for (std::uint32_t subset = 1; subset <= full; ++subset) {
    const auto j = static_cast<std::uint32_t>(std::popcount(subset));
    if (j > out.terms) continue;
    mpfr_set_zero(mass.get(), 1);
    mpfr_set_ui(product.get(), 1, MPFR_RNDN);
    for (std::uint32_t x = 0; x < m; ++x) {
      if (subset & (1u << x)) {
        mpfr_add(mass.get(), mass.get(), q[x].get(), MPFR_RNDN);
        mpfr_mul(product.get(), product.get(), q[x].get(), MPFR_RNDN);
      }
    }
    if (subset == full) {
      mpfr_set_zero(base.get(), 1);
    } else {
      mpfr_ui_sub(base.get(), 1, mass.get(), MPFR_RNDN);
    }
    mpfr_pow_ui(power.get(), base.get(), n - j, MPFR_RNDN);
    mpfr_mul(product.get(), product.get(), power.get(), MPFR_RNDN);
    mpfr_mul(product.get(), product.get(), ff[j].get(), MPFR_RNDN);
    mpfr_add(out.s[j].get(), out.s[j].get(), product.get(), MPFR_RNDN);
  }
  return out;
}

// tail(k) = sum_{j=k}^{J} (-1)^(j-k) C(j-1, k-1) S_j, and the sum of the
// absolute values of its terms, used to bound the rounding error.
void alternating_tail(const FellerTerms& t, std::uint32_t k, BigFloat& tail, BigFloat& magnitude) {
  mpfr_set_zero(tail.get(), 1);
  mpfr_set_zero(magnitude.get(), 1);
  BigFloat choose(t.precision), term(t.precision);
  mpfr_set_ui(choose.get(), 1, MPFR_RNDN);
  for (std::uint32_t j = k; j <= t.terms; ++j) {
    if (j > k) {
      mpfr_mul_ui(choose.get(), choose.get(), j - 1, MPFR_RNDN);
      mpfr_div_ui(choose.get(), choose.get(), j - k, MPFR_RNDN);
    }
    mpfr_mul(term.get(), choose.get(), t.s[j].get(), MPFR_RNDN);
    mpfr_add(magnitude.get(), magnitude.get(), term.get(), MPFR_RNDN);
    if ((j - k) % 2 == 0) {
      mpfr_add(tail.get(), tail.get(), term.get(), MPFR_RNDN);
    } else {
      mpfr_sub(tail.get(), tail.get(), term.get(), MPFR_RNDN);
    }
  }
}

// log2 of a conservative absolute rounding-error bound: each term carries at
// most O(n + m) roundings, amplified by the total magnitude of the sum.
long error_exponent(const UrnModel& model, const BigFloat& magnitude, mpfr_prec_t prec) {
  if (mpfr_zero_p(magnitude.get())) return kAccuracyExponent - 1;
  const double ops = 8.0 * (model.n() + model.m() + 16.0) * (model.m() + 1.0);
  return static_cast<long>(mpfr_get_exp(magnitude.get())) + static_cast<long>(std::ceil(std::log2(ops))) -
         static_cast<long>(prec);
}

mpfr_prec_t initial_precision(const UrnModel& model) {
  const std::uint32_t J = std::min(model.n(), model.m());
  // Terms are bounded by 4^J, so 2J + 160 bits leave the target accuracy
  // after cancellation; never go below n + 64.
  return static_cast<mpfr_prec_t>(std::max<std::uint64_t>(model.n() + 64ull, 2ull * J + 160ull));
}

FellerTerms build_terms(const UrnModel& model, mpfr_prec_t prec) {
  return model.is_uniform() ? uniform_terms(model, prec) : explicit_terms(model, prec);
}

void require_supported(const UrnModel& model, const FellerOptions& options) {
  if (!feller_supported(model, options)) {
    throw CapacityError("Feller evaluation supports up to " +
                        std::to_string(options.max_explicit_urns) + " explicit or " +
                        std::to_string(options.max_uniform_urns) + " uniform urns; model has " +
                        std::to_string(model.m()));
  }
}

// Runs `attempt` at increasing precision until it reports success.
template <typename Attempt>
void with_escalating_precision(const UrnModel& model, const FellerOptions& options, Attempt attempt) {
  for (auto prec = initial_precision(model);; prec *= 2) {
    if (static_cast<std::uint64_t>(prec) > options.precision_budget_bits) {
      throw PrecisionError("Feller evaluation could not certify 2^-128 accuracy within " +
                           std::to_string(options.precision_budget_bits) + " bits");
    }
    if (attempt(prec)) return;
  }
}

}  // namespace

bool feller_supported(const UrnModel& model, const FellerOptions& options) noexcept {
  return model.is_uniform() ? model.m() <= options.max_uniform_urns
                            : model.m() <= std::min<std::uint32_t>(options.max_explicit_urns, 31);
}

double feller_cdf(const UrnModel& model, std::int64_t k, const FellerOptions& options) {
  if (k < 0) throw DomainError("Feller tail index must be nonnegative");
  if (k == 0) return 1.0;
  require_supported(model, options);
  if (static_cast<std::uint64_t>(k) > std::min(model.n(), model.m())) return 0.0;
  double result = 0.0;
  with_escalating_precision(model, options, [&](mpfr_prec_t prec) {
    const FellerTerms terms = build_terms(model, prec);
    BigFloat tail(prec), magnitude(prec);
    alternating_tail(terms, static_cast<std::uint32_t>(k), tail, magnitude);
    if (error_exponent(model, magnitude, prec) > kAccuracyExponent) return false;
    if (mpfr_cmp_d(tail.get(), 0.0) < 0 && mpfr_get_exp(tail.get()) > kAccuracyExponent) {
      throw PrecisionError("Feller tail evaluated to a certified negative value");
    }
    result = std::clamp(mpfr_get_d(tail.get(), MPFR_RNDN), 0.0, 1.0);
    return true;
  });
  return result;
}

IntegerPmf feller_pmf(const UrnModel& model, const FellerOptions& options) {
  require_supported(model, options);
  const std::uint32_t n = model.n();
  std::vector<double> dense(n + 1, 0.0);
  with_escalating_precision(model, options, [&](mpfr_prec_t prec) {
    const FellerTerms terms = build_terms(model, prec);
    const std::uint32_t J = terms.terms;
    std::vector<BigFloat> tails(J + 2, BigFloat(prec));
    mpfr_set_ui(tails[0].get(), 1, MPFR_RNDN);
    BigFloat magnitude(prec);
    long worst = kAccuracyExponent - 1;
    for (std::uint32_t k = 1; k <= J; ++k) {
      alternating_tail(terms, k, tails[k], magnitude);
      worst = std::max(worst, error_exponent(model, magnitude, prec));
    }
    // Differences of two tails double the bound.
    if (worst + 1 > kAccuracyExponent) return false;
    BigFloat diff(prec);
    for (std::uint32_t k = 0; k <= J; ++k) {
      mpfr_sub(diff.get(), tails[k].get(), tails[k + 1].get(), MPFR_RNDN);
      const bool negligible = mpfr_zero_p(diff.get()) || mpfr_get_exp(diff.get()) <= kAccuracyExponent;
      if (negligible) continue;
      if (mpfr_sgn(diff.get()) < 0) {
        throw PrecisionError("Feller pmf produced a certified negative mass");
      }
      dense[n - k] = mpfr_get_d(diff.get(), MPFR_RNDN);
    }
    return true;
  });
  return IntegerPmf::from_dense(dense, PmfProvenance::kFeller);
}

}  // namespace urn
