#include "urn/bounds.hpp"

#include <cmath>
#include <numbers>

#include "urn/constants.hpp"
#include "urn/error.hpp"
#include "urn/exact.hpp"

namespace urn {

namespace c = constants;

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kInformative: return "informative";
    case Verdict::kVacuous: return "vacuous";
    case Verdict::kPreconditionFailed: return "precondition-failed";
  }
  return "unknown";
}

const PreconditionFlag* BoundReport::flag(const std::string& name) const noexcept {
  for (const auto& f : flags) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

const BoundValue* BoundReport::bound(const std::string& name) const noexcept {
  for (const auto& b : bounds) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

void BoundReport::merge(const BoundReport& other) {
  for (const auto& f : other.flags) {
    if (flag(f.name) == nullptr) flags.push_back(f);
  }
  components.insert(other.components.begin(), other.components.end());
  bounds.insert(bounds.end(), other.bounds.begin(), other.bounds.end());
}

namespace {

void finish(BoundValue& value, const std::vector<PreconditionFlag>& flags) {
  double total = 0.0;
  for (const auto& t : value.terms) total += t.value;
  value.value = total;
  bool ok = true;
  for (const auto& name : value.requires_flags) {
    for (const auto& f : flags) {
      if (f.name == name) ok = ok && f.holds;
    }
  }
  value.verdict = !ok ? Verdict::kPreconditionFailed
                      : (total > 1.0 ? Verdict::kVacuous : Verdict::kInformative);
}

BoundContext context_of(const UrnModel& model) {
  BoundContext ctx;
  ctx.n = model.n();
  ctx.m = model.m();
  ctx.uniform = model.is_uniform();
  ctx.gamma = model.gamma();
  ctx.max_p = model.max_p();
  ctx.sum_p_squared = model.sum_p_squared();
  ctx.few_urns = model.few_urns();
  return ctx;
}

}  // namespace

double uniform_increment_variance_bound(std::uint32_t n, std::uint32_t m) {
  if (n < 2) throw DomainError("the increment variance bound needs n >= 2");
  if (m < 4) throw DomainError("the increment variance bound needs m >= 4 (it divides by m - 3)");
  const double nn = n;
  const double mm = m;
  return c::kEtaInverseN / nn + c::kEtaInversePairs / (nn * (nn - 1.0)) +
         c::kEtaInverseM / mm * (2.0 + nn / (mm - c::kEtaShift) + nn / mm);
}

double size_bias_increment_limit(double mu, double sigma) {
  return std::pow(sigma, 1.5) / std::sqrt(c::kSizeBiasPrecondition * mu);
}

BoundValue size_bias_terms(double mu, double sigma, double b, double delta) {
  const double scale = mu / (sigma * sigma);
  BoundValue out;
  out.name = "size_bias";
  out.terms = {
      {"linear", c::kSizeBiasLinear * b / sigma},
      {"quadratic", scale * c::kSizeBiasQuadratic * b * b / sigma},
      {"cubic", scale * c::kSizeBiasCubic * b * b * b / (sigma * sigma)},
      {"delta", scale * c::kSizeBiasDelta * delta},
  };
  finish(out, {});
  return out;
}

double size_bias_kolmogorov_bound(double mu, double sigma, double b, double delta) {
  if (!(mu > 0.0) || !(sigma > 0.0) || !(b > 0.0) || !(delta >= 0.0)) {
    throw DomainError("size-bias bound needs mu, sigma, B > 0 and Delta >= 0");
  }
  const double limit = size_bias_increment_limit(mu, sigma);
  if (b > limit) {
    throw DomainError("size-bias bound precondition B <= sigma^{3/2}/sqrt(6 mu) fails: B = " +
                      std::to_string(b) + " > " + std::to_string(limit));
  }
  return size_bias_terms(mu, sigma, b, delta).value;
}

BoundReport uniform_kolmogorov_bound(std::uint32_t n, std::uint32_t m, double mu, double sigma) {
  const double eta = uniform_increment_variance_bound(n, m);
  BoundReport report;
  report.context.n = n;
  report.context.m = m;
  report.context.uniform = true;
  report.context.mu = mu;
  report.context.sigma = sigma;
  report.context.max_p = 1.0 / m;
  report.context.gamma = std::max(static_cast<double>(n) / m, 1.0);
  report.context.sum_p_squared = 1.0 / m;
  report.components["eta"] = eta;
  report.components["increment_bound"] = c::kUniformIncrementBound;
  report.components["increment_limit"] = size_bias_increment_limit(mu, sigma);
  const double cube = sigma * sigma * sigma;
  report.flags.push_back({"sigma_cubed_ge_24_mu", cube, c::kUniformPreconditionRatio * mu,
                          cube >= c::kUniformPreconditionRatio * mu});
  BoundValue value = size_bias_terms(mu, sigma, c::kUniformIncrementBound, std::sqrt(eta));
  value.name = "uniform_upper";
  value.requires_flags = {"sigma_cubed_ge_24_mu"};
  finish(value, report.flags);
  report.bounds.push_back(std::move(value));
  return report;
}

double limit_sd_scale(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
  // e^-a - e^-2a (a^2 - a + 1) = e^-2a (expm1(a) + a - a^2).
  const double squared = std::exp(-2.0 * alpha) * (std::expm1(alpha) + alpha - alpha * alpha);
  if (!(squared > 0.0)) throw DomainError("g(alpha) underflows at this alpha");
  return std::sqrt(squared);
}

BoundValue asymptotic_rate_terms(double alpha) {
  const double g = limit_sd_scale(alpha);
  const double occupied = -std::expm1(-alpha);
  BoundValue out;
  out.name = "asymptotic_rate";
  out.terms = {
      {"linear", c::kRateLinear / g},
      {"cubic", c::kRateCubic * occupied / (g * g * g)},
      {"delta", c::kRateDelta * occupied / (g * g) * std::sqrt(1.0 + 3.0 * alpha * (1.0 + alpha))},
  };
  finish(out, {});
  // A constant multiplying n^{-1/2}, not itself a distance.
  out.verdict = Verdict::kInformative;
  return out;
}

double asymptotic_rate_constant(double alpha) { return asymptotic_rate_terms(alpha).value; }

double kolmogorov_lower_bound(double sigma) {
  if (!(sigma > 0.0)) throw DomainError("the Kolmogorov lower bound needs sigma > 0");
  const double scale = 1.0 / std::sqrt(c::kLowerBoundScale * std::numbers::pi * std::numbers::e);
  return std::min(c::kLowerBoundCap, scale / sigma);
}

double general_delta_constant(double gamma) {
  double poly = 0.0;
  // Horner over gamma^7..gamma^2, then the common gamma^2 factor.
  for (int i = 5; i >= 0; --i) poly = poly * gamma + c::kDeltaConstantCoefficients[i];
  return c::kDeltaConstantScale * std::sqrt(poly * gamma * gamma);
}

double ball_count_threshold(double gamma) {
  return c::kBallThresholdScale * gamma * gamma * (1.0 + 3.0 * gamma + 3.0 * gamma * gamma) *
         std::exp(c::kBallThresholdExponent * gamma);
}

std::vector<PreconditionFlag> regularity_flags(const UrnModel& model) {
  const double threshold = ball_count_threshold(model.gamma());
  return {
      {"max_p_le_1_over_11", model.max_p(), c::kMaxProbability, model.max_p() <= c::kMaxProbability},
      {"n_ge_threshold", static_cast<double>(model.n()), threshold, model.n() >= threshold},
  };
}

BoundReport general_kolmogorov_report(const UrnModel& model, double sigma, std::optional<double> mu) {
  if (!(sigma > 0.0)) throw DomainError("the general bounds need sigma > 0");
  BoundReport report;
  report.context = context_of(model);
  report.context.sigma = sigma;
  report.context.mu = mu.value_or(exact_moments(model).mean);
  report.flags = regularity_flags(model);

  const double gamma = model.gamma();
  const double cg = general_delta_constant(gamma);
  const double threshold = ball_count_threshold(gamma);
  report.components["C_gamma"] = cg;
  report.components["n_threshold"] = threshold;
  report.components["n_threshold_ceil"] = std::ceil(threshold);
  report.components["lower_bound_scale"] =
      1.0 / std::sqrt(c::kLowerBoundScale * std::numbers::pi * std::numbers::e);

  BoundValue lower;
  lower.name = "kolmogorov_lower";
  lower.terms = {{"lower", kolmogorov_lower_bound(sigma)}};
  finish(lower, report.flags);
  report.bounds.push_back(std::move(lower));

  const double prefactor = c::kGeneralScale * gamma * gamma * std::exp(c::kGeneralExponent * gamma);
  report.components["prefactor"] = prefactor;
  BoundValue upper;
  upper.name = "general_upper";
  upper.terms = {
      {"offset", prefactor * c::kGeneralOffset / sigma},
      {"delta", prefactor * c::kGeneralDelta * cg / sigma},
  };
  upper.requires_flags = {"max_p_le_1_over_11", "n_ge_threshold"};
  finish(upper, report.flags);
  report.bounds.push_back(std::move(upper));
  return report;
}

BoundReport variance_bounds(const UrnModel& model) {
  BoundReport report;
  report.context = context_of(model);
  const Moments moments = exact_moments(model);
  report.context.mu = moments.mean;
  report.context.sigma = moments.stddev();
  report.flags = regularity_flags(model);

  const double n = model.n();
  const double scale = n * n * model.sum_p_squared();
  const double gamma = model.gamma();
  report.components["n2_sum_p2"] = scale;
  report.components["variance"] = moments.variance;

  BoundValue upper;
  upper.name = "variance_upper";
  upper.terms = {{"upper", c::kVarianceUpper * scale}};
  finish(upper, report.flags);
  upper.verdict = Verdict::kInformative;
  report.bounds.push_back(std::move(upper));

  BoundValue lower;
  lower.name = "variance_lower";
  lower.terms = {{"lower", scale / (c::kVarianceLowerDivisor * gamma * gamma *
                                    std::exp(c::kVarianceLowerExponent * gamma))}};
  lower.requires_flags = {"max_p_le_1_over_11", "n_ge_threshold"};
  finish(lower, report.flags);
  // Variance bounds are not distances; only the flags decide.
  if (lower.verdict == Verdict::kVacuous) lower.verdict = Verdict::kInformative;
  report.bounds.push_back(std::move(lower));
  return report;
}

BoundReport all_bounds(const UrnModel& model) {
  BoundReport report = variance_bounds(model);
  const double sigma = report.context.sigma;
  if (sigma > 0.0) {
    report.merge(general_kolmogorov_report(model, sigma, report.context.mu));
    if (model.is_uniform() && model.n() >= 2 && model.m() >= 4) {
      report.merge(uniform_kolmogorov_bound(model.n(), model.m(), report.context.mu, sigma));
    }
  }
  return report;
}

}  // namespace urn
