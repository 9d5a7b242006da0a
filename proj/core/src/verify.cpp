#include "urn/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "urn/bounds.hpp"
#include "urn/constants.hpp"
#include "urn/error.hpp"
#include "urn/exact.hpp"
#include "urn/h_family.hpp"
#include "urn/increment.hpp"
#include "urn/monte_carlo.hpp"
#include "urn/parallel.hpp"
#include "urn/stats.hpp"

namespace urn {

namespace {

constexpr double kMarginCap = 1e6;

double margin_of(double bound, double estimate, double standard_error) {
  const double gap = bound - estimate;
  if (standard_error > 0.0) return std::clamp(gap / standard_error, -kMarginCap, kMarginCap);
  return gap >= 0.0 ? kMarginCap : -kMarginCap;
}

CheckInstance inequality(std::string label, double estimate, double bound, double standard_error) {
  CheckInstance out;
  out.label = std::move(label);
  out.estimate = estimate;
  out.bound = bound;
  out.standard_error = standard_error;
  out.margin = margin_of(bound, estimate, standard_error);
  out.passed = estimate <= bound + kInequalitySlack * standard_error;
  return out;
}

std::vector<double> dense_mass(const IntegerPmf& pmf, std::size_t size) {
  std::vector<double> out(size, 0.0);
  for (std::size_t i = 0; i < pmf.support().size(); ++i) {
    const auto v = static_cast<std::size_t>(pmf.support()[i]);
    if (v < size) out[v] = pmf.mass()[i];
  }
  return out;
}

}  // namespace

void CheckReport::add(CheckInstance instance) {
  worst_margin = instances == 0 ? instance.margin : std::min(worst_margin, instance.margin);
  ++instances;
  passed = passed && instance.passed;
  details.push_back(std::move(instance));
}

CheckReport sizebias_law_check(const UrnModel& model, std::uint64_t samples, std::uint64_t seed,
                               unsigned threads) {
  if (model.n() < 2 || model.m() < 2) {
    throw DomainError("the size-bias law check needs n >= 2 and m >= 2");
  }
  const IntegerPmf exact = exact_pmf(model);
  const std::vector<double> target = dense_mass(exact.size_biased(), model.n() + 1);
  const std::vector<double> law = dense_mass(exact, model.n() + 1);

  CheckReport report;
  report.name = "sizebias_law";
  report.samples = samples;
  report.seeds = {seed};
  report.summary["mean"] = exact.mean();
  report.summary["p_value_threshold"] = kLawPValue;

  std::vector<CouplerKind> kinds;
  if (model.is_uniform()) kinds.push_back(CouplerKind::kUniform);
  kinds.push_back(CouplerKind::kGeneral);
  for (const CouplerKind kind : kinds) {
    CouplingBatchOptions options;
    options.kind = kind;
    options.samples = samples;
    options.seed = seed;
    options.threads = threads;
    const CouplingBatch batch = couple_batch(model, options);
    const ChiSquaredResult fit = chi_squared_gof(batch.y_sb_histogram, target);
    const ChiSquaredResult base = chi_squared_gof(batch.y_histogram, law);

    double tv = 0.0;
    for (std::size_t v = 0; v < target.size(); ++v) {
      tv += std::fabs(static_cast<double>(batch.y_sb_histogram[v]) / samples - target[v]);
    }
    CheckInstance inst;
    inst.label = kind == CouplerKind::kUniform ? "uniform_coupler" : "general_coupler";
    inst.estimate = fit.p_value;
    inst.bound = kLawPValue;
    inst.margin = fit.p_value - kLawPValue;
    inst.passed = fit.p_value > kLawPValue && batch.bound_violations == 0;
    inst.extra["chi_squared"] = fit.statistic;
    inst.extra["degrees_of_freedom"] = fit.degrees_of_freedom;
    inst.extra["total_variation"] = 0.5 * tv;
    inst.extra["y_law_p_value"] = base.p_value;
    inst.extra["bound_violations"] = static_cast<double>(batch.bound_violations);
    inst.extra["max_abs_increment"] = batch.max_abs_increment;
    inst.extra["mean_increment"] = batch.increment.mean();
    inst.extra["mean_increment_stderr"] = batch.increment.stderr_of_mean();
    report.add(std::move(inst));
  }
  return report;
}

PsiLibrary psi_library(const UrnModel& model) {
  const std::uint32_t n = model.n();
  if (n < 2 || model.m() < 2) throw DomainError("the test-function library needs n >= 2 and m >= 2");
  PsiLibrary lib;
  lib.urn_class.resize(model.m());
  std::vector<std::uint32_t> representative;
  std::vector<double> class_weight;
  for (std::uint32_t x = 0; x < model.m(); ++x) {
    const double px = model.p(x);
    const auto it = std::find(lib.class_probability.begin(), lib.class_probability.end(), px);
    if (it == lib.class_probability.end()) {
      lib.urn_class[x] = static_cast<std::uint32_t>(lib.class_probability.size());
      lib.class_probability.push_back(px);
      representative.push_back(x);
      class_weight.push_back(px);
    } else {
      const auto t = static_cast<std::size_t>(it - lib.class_probability.begin());
      lib.urn_class[x] = static_cast<std::uint32_t>(t);
      class_weight[t] += px;
    }
  }
  const std::size_t classes = lib.class_probability.size();
  std::vector<std::vector<double>> occupancy_law(classes);
  for (std::size_t t = 0; t < classes; ++t) {
    occupancy_law[t] = binomial_pmf(n - 1, lib.class_probability[t]);
  }

  const HFamily family(model);
  auto add = [&](std::string name, auto&& raw) {
    PsiFunction f;
    f.name = std::move(name);
    f.values.assign(classes, std::vector<double>(n));
    // E psi(X_1, M_1) = sum_x p_x sum_k P[Bin(n-1, p_x) = k] psi(x, k).
    double mean = 0.0;
    for (std::size_t t = 0; t < classes; ++t) {
      double inner = 0.0;
      for (std::uint32_t k = 0; k < n; ++k) {
        f.values[t][k] = raw(representative[t], k);
        inner += occupancy_law[t][k] * f.values[t][k];
      }
      mean += class_weight[t] * inner;
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (auto& row : f.values) {
      for (double& v : row) {
        v -= mean;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        f.sup_abs = std::max(f.sup_abs, std::fabs(v));
      }
    }
    f.range = hi - lo;
    lib.functions.push_back(std::move(f));
  };

  add("ind_m0", [](std::uint32_t, std::uint32_t k) { return k == 0 ? 1.0 : 0.0; });
  add("ind_m1", [](std::uint32_t, std::uint32_t k) { return k == 1 ? 1.0 : 0.0; });
  for (const int i : {0, 2, 3, 4, 5, 6, 7}) {
    add("h" + std::to_string(i),
        [&family, i](std::uint32_t x, std::uint32_t k) { return family.h(i, k, x); });
  }
  for (const int i : {0, 2, 4, 5, 6, 7}) {
    add("h" + std::to_string(i) + "_tilde",
        [&family, i](std::uint32_t x, std::uint32_t k) { return family.h_tilde(i, k, x); });
  }
  return lib;
}

double uniform_pair_bound(std::uint32_t n, std::uint32_t m, double range1, double sup2) {
  const double nn = n;
  const double mm = m;
  return constants::kUniformPairScale / mm * range1 * sup2 * (2.0 + nn / (mm - 1.0) + nn / mm);
}

double uniform_quad_bound(std::uint32_t n, std::uint32_t m, double range1, double sup_rest) {
  const double nn = n;
  const double mm = m;
  return constants::kUniformQuadScale / mm * range1 * sup_rest * (2.0 + nn / (mm - 3.0) + nn / mm);
}

double general_pair_bound(double gamma, double sum_p2, double range1, double sup2) {
  return constants::kGeneralPairScale * (1.0 + gamma) * range1 * sup2 * sum_p2;
}

double general_quad_bound(double gamma, double sum_p2, double range1, double sup_rest) {
  return constants::kGeneralQuadScale * (1.0 + gamma) * range1 * sup_rest * sum_p2;
}

CheckReport covariance_bound_check(const UrnModel& model, CovarianceFamily family,
                                   std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  const bool quad = family == CovarianceFamily::kQuad;
  const std::uint32_t n = model.n();
  if (n < (quad ? 4u : 2u)) throw DomainError("covariance check needs n >= 2 (pair) or n >= 4 (quad)");
  if (samples < 2) throw InsufficientSamples("covariance check needs at least two allocations", 2);
  const PsiLibrary lib = psi_library(model);
  const std::size_t fns = lib.functions.size();
  const std::size_t combos = fns * fns;
  const std::size_t classes = lib.class_probability.size();

  const std::uint64_t streams = (samples + kReplicatesPerStream - 1) / kReplicatesPerStream;
  std::vector<std::vector<MomentAccumulator>> parts(streams, std::vector<MomentAccumulator>(combos));
  const double nn = n;
  const double tuples = quad ? nn * (nn - 1.0) * (nn - 2.0) * (nn - 3.0) : nn * (nn - 1.0);

  parallel_for(streams, threads, [&](std::size_t s) {
    Rng rng(seed, StreamTag::kCovariance, s);
    std::vector<std::uint32_t> group_of(classes * n, 0);
    std::vector<std::uint32_t> keys;
    std::vector<double> weight;
    std::vector<double> values;  // values[g * fns + f]
    std::vector<double> p1(fns), p2(fns), p3(fns);
    const std::uint64_t end = std::min(samples, (s + 1) * kReplicatesPerStream);
    for (std::uint64_t r = s * kReplicatesPerStream; r < end; ++r) {
      const Allocation alloc = sample_allocation(model, rng);
      keys.clear();
      weight.clear();
      for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint32_t key = lib.urn_class[alloc.x[i]] * n + alloc.m_of[i];
        if (group_of[key] == 0) {
          keys.push_back(key);
          weight.push_back(0.0);
          group_of[key] = static_cast<std::uint32_t>(keys.size());
        }
        weight[group_of[key] - 1] += 1.0;
      }
      const std::size_t groups = keys.size();
      values.resize(groups * fns);
      for (std::size_t g = 0; g < groups; ++g) {
        const std::uint32_t t = keys[g] / n;
        const std::uint32_t k = keys[g] % n;
        for (std::size_t f = 0; f < fns; ++f) values[g * fns + f] = lib.functions[f].values[t][k];
        group_of[keys[g]] = 0;
      }
      for (std::size_t f = 0; f < fns; ++f) {
        double s1 = 0.0, s2 = 0.0, s3 = 0.0;
        for (std::size_t g = 0; g < groups; ++g) {
          const double v = values[g * fns + f];
          s1 += weight[g] * v;
          s2 += weight[g] * v * v;
          s3 += weight[g] * v * v * v;
        }
        p1[f] = s1;
        p2[f] = s2;
        p3[f] = s3;
      }
      for (std::size_t a = 0; a < fns; ++a) {
        for (std::size_t b = 0; b < fns; ++b) {
          double total = 0.0;
          if (!quad) {
            double cross = 0.0;
            for (std::size_t g = 0; g < groups; ++g) {
              cross += weight[g] * values[g * fns + a] * values[g * fns + b];
            }
            total = p1[a] * p1[b] - cross;
          } else {
            // Ordered distinct (i, j, k, l): sum_i a_i 3! e3(b without i), with
            // elementary symmetric sums from power sums.
            const double e1 = p1[b];
            const double e2 = 0.5 * (e1 * e1 - p2[b]);
            const double e3 = (e1 * e1 * e1 - 3.0 * e1 * p2[b] + 2.0 * p3[b]) / 6.0;
            for (std::size_t g = 0; g < groups; ++g) {
              const double beta = values[g * fns + b];
              const double f1 = e1 - beta;
              const double f2 = e2 - beta * f1;
              const double f3 = e3 - beta * f2;
              total += weight[g] * values[g * fns + a] * 6.0 * f3;
            }
          }
          parts[s][a * fns + b].add(total / tuples);
        }
      }
    }
  });

  std::vector<MomentAccumulator> merged(combos);
  for (const auto& part : parts) {
    for (std::size_t c = 0; c < combos; ++c) merged[c].merge(part[c]);
  }

  CheckReport report;
  report.name = quad ? "covariance_quad" : "covariance_pair";
  report.samples = samples;
  report.seeds = {seed};
  report.summary["functions"] = static_cast<double>(fns);
  report.summary["slack_stderr"] = kInequalitySlack;
  const bool uniform_applies = model.is_uniform() && model.m() >= (quad ? 4u : 2u);
  for (std::size_t a = 0; a < fns; ++a) {
    for (std::size_t b = 0; b < fns; ++b) {
      const PsiFunction& f1 = lib.functions[a];
      const PsiFunction& f2 = lib.functions[b];
      const MomentAccumulator& acc = merged[a * fns + b];
      const double estimate = std::fabs(acc.mean());
      const double se = acc.stderr_of_mean();
      const double rest = quad ? f2.sup_abs * f2.sup_abs * f2.sup_abs : f2.sup_abs;
      const std::string pair = f1.name + "*" + f2.name;
      if (uniform_applies) {
        const double bound = quad ? uniform_quad_bound(n, model.m(), f1.range, rest)
                                  : uniform_pair_bound(n, model.m(), f1.range, rest);
        report.add(inequality("uniform:" + pair, estimate, bound, se));
      }
      const double bound =
          quad ? general_quad_bound(model.gamma(), model.sum_p_squared(), f1.range, rest)
               : general_pair_bound(model.gamma(), model.sum_p_squared(), f1.range, rest);
      report.add(inequality("general:" + pair, estimate, bound, se));
    }
  }
  return report;
}

std::uint64_t rate_check_required_samples(double sigma) {
  // 3 sqrt(ln(2/alpha) / (2N)) <= L  <=>  N >= 9 ln(2/alpha) / (2 L^2).
  const double floor = kolmogorov_lower_bound(sigma);
  const double radius_at_one = dkw_radius(1);
  const double ratio = 3.0 * radius_at_one / floor;
  return static_cast<std::uint64_t>(std::ceil(ratio * ratio));
}

CheckReport rate_check(const std::vector<std::uint32_t>& n_list, std::uint64_t samples,
                       std::uint64_t seed, unsigned threads) {
  if (n_list.size() < 2) throw DomainError("rate check needs at least two sizes to fit a slope");
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) throw DomainError("rate check sizes must be strictly increasing");
  }
  std::vector<Moments> moments;
  std::uint64_t required = 0;
  for (const std::uint32_t n : n_list) {
    if (n < 2) throw DomainError("rate check sizes must be at least 2");
    moments.push_back(exact_moments(build_model(n, UniformUrns{n})));
    required = std::max(required, rate_check_required_samples(moments.back().stddev()));
  }
  if (samples < required) {
    throw InsufficientSamples("rate check needs " + std::to_string(required) +
                                  " samples per size for D to clear three DKW radii",
                              required);
  }

  CheckReport report;
  report.name = "rate";
  report.samples = samples;
  report.seeds = {seed};
  report.summary["required_samples"] = static_cast<double>(required);
  std::vector<double> log_n;
  std::vector<double> log_d;
  std::vector<double> scaled;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const std::uint32_t n = n_list[i];
    McOptions options;
    options.samples = samples;
    options.seed = seed;
    options.threads = threads;
    options.exact_mean = moments[i].mean;
    options.exact_stddev = moments[i].stddev();
    const McSummary mc = mc_run(build_model(n, UniformUrns{n}), options);
    CheckInstance inst;
    inst.label = "n=" + std::to_string(n);
    inst.estimate = mc.d_hat;
    inst.bound = 3.0 * mc.d_radius;
    inst.standard_error = mc.d_radius;
    inst.margin = mc.d_hat / mc.d_radius - 3.0;
    inst.passed = mc.d_hat >= 3.0 * mc.d_radius;
    inst.extra["sigma"] = options.exact_stddev.value();
    inst.extra["mu"] = options.exact_mean.value();
    inst.extra["d_times_sigma"] = mc.d_hat * options.exact_stddev.value();
    inst.extra["lower_bound"] = kolmogorov_lower_bound(options.exact_stddev.value());
    scaled.push_back(mc.d_hat * options.exact_stddev.value());
    log_n.push_back(std::log(static_cast<double>(n)));
    log_d.push_back(std::log(std::max(mc.d_hat, std::numeric_limits<double>::min())));
    report.add(std::move(inst));
  }

  const double slope = least_squares_slope(log_n, log_d);
  CheckInstance fit;
  fit.label = "slope";
  fit.estimate = slope;
  fit.bound = -0.5;
  fit.margin = std::min(slope + 0.70, -0.30 - slope);
  fit.passed = slope >= -0.70 && slope <= -0.30;
  fit.extra["lower_limit"] = -0.70;
  fit.extra["upper_limit"] = -0.30;
  report.add(std::move(fit));
  report.summary["slope"] = slope;

  for (std::size_t i = 1; i < scaled.size(); ++i) {
    CheckInstance ratio;
    ratio.label = "d_sigma_ratio:" + std::to_string(n_list[i - 1]) + "->" + std::to_string(n_list[i]);
    ratio.estimate = scaled[i] / scaled[i - 1];
    ratio.bound = 2.0;
    const double spread = std::max(ratio.estimate, 1.0 / ratio.estimate);
    ratio.margin = 2.0 - spread;
    ratio.passed = spread < 2.0;
    report.add(std::move(ratio));
  }
  return report;
}

CheckReport delta_check(const UrnModel& model, std::uint64_t samples, std::uint64_t seed,
                        unsigned threads) {
  CheckReport report;
  report.name = "delta_surrogate";
  report.samples = samples;
  report.seeds = {seed};

  if (model.is_uniform() && model.n() >= 2 && model.m() >= 4) {
    const DeltaEstimate est = delta_upper_estimate(model, samples, seed, threads, CouplerKind::kUniform);
    const double eta = uniform_increment_variance_bound(model.n(), model.m());
    CheckInstance inst = inequality("uniform", est.delta_sq, eta, est.delta_sq_stderr);
    inst.extra["delta_hat"] = est.delta_hat;
    inst.extra["delta_stderr"] = est.delta_stderr;
    inst.extra["mean_increment"] = est.mean_increment;
    inst.extra["delta_sq_binned"] = est.delta_sq_binned;
    report.add(std::move(inst));
  }

  const std::vector<PreconditionFlag> flags = regularity_flags(model);
  const bool applicable = std::all_of(flags.begin(), flags.end(), [](const auto& f) { return f.holds; });
  if (!applicable) {
    report.notes.push_back("general increment bound not applicable: regularity flags fail");
  } else {
    const DeltaEstimate est = delta_upper_estimate(model, samples, seed, threads, CouplerKind::kGeneral);
    const double cg = general_delta_constant(model.gamma());
    const double variance = exact_moments(model).variance;
    CheckInstance inst = inequality("general", est.delta_sq, cg * cg / variance, est.delta_sq_stderr);
    inst.extra["delta_hat"] = est.delta_hat;
    inst.extra["delta_stderr"] = est.delta_stderr;
    inst.extra["mean_increment"] = est.mean_increment;
    inst.extra["delta_sq_binned"] = est.delta_sq_binned;
    inst.extra["C_gamma"] = cg;
    inst.extra["variance"] = variance;
    report.add(std::move(inst));
  }
  if (report.instances == 0) report.notes.push_back("no applicable Delta bound for this model");
  return report;
}

}  // namespace urn
