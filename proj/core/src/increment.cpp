#include "urn/increment.hpp"

#include <algorithm>
#include <cmath>

#include "urn/error.hpp"
#include "urn/monte_carlo.hpp"
#include "urn/parallel.hpp"
#include "urn/stats.hpp"

namespace urn {

IncrementEvaluator::IncrementEvaluator(const UrnModel& model, CouplerKind kind)
    : kind_(kind), n_(model.n()) {
  if (model.n() < 2 || model.m() < 2) {
    throw DomainError("the conditional increment needs n >= 2 and m >= 2");
  }
  if (kind == CouplerKind::kUniform) {
    if (!model.is_uniform()) throw DomainError("the uniform increment form needs a uniform model");
    uniform_pi_ = pi_table(model.n() - 1, 1.0 / model.m());
  } else {
    family_.emplace(model);
    p_hat_ = hat_p(model).p_hat;
  }
}

double IncrementEvaluator::operator()(const Allocation& alloc) const {
  if (alloc.n() != n_) throw DomainError("allocation does not match the model");
  return kind_ == CouplerKind::kUniform ? uniform_form(alloc) : general_form(alloc);
}

double IncrementEvaluator::uniform_form(const Allocation& alloc) const {
  const PiTable& pi = *uniform_pi_;
  const double n = n_;
  double sum_v_tau = 0.0;
  double sum_v = 0.0;
  double sum_t = 0.0;
  double sum_vt = 0.0;
  for (const std::uint32_t k : alloc.m_of) {
    const double v = pi(k);
    const double tau = (k == 0) + (k == 1) / (n - 1.0);
    const double t = static_cast<double>(k == 0) - static_cast<double>(k == 1);
    sum_v_tau += v * tau;
    sum_v += v;
    sum_t += t;
    sum_vt += v * t;
  }
  return sum_v_tau / n + (sum_v * sum_t - sum_vt) / (n * (n - 1.0));
}

double IncrementEvaluator::general_form(const Allocation& alloc) const {
  const HFamily& h = *family_;
  const double n = n_;
  double sum_h0 = 0.0;
  double sum_h6 = 0.0;
  // Urn sums run over occupied urns as ball sums weighted by 1/N_x; h4 and h7
  // vanish at N_x = 0 while h5(0, x) = 1/(n-1).
  double hat_h4 = 0.0;
  double hat_h7 = 0.0;
  double hat_h5 = 0.0;
  double hat_occupied = 0.0;
  for (std::uint32_t i = 0; i < n_; ++i) {
    const std::uint32_t k = alloc.m_of[i];
    const std::uint32_t x = alloc.x[i];
    sum_h0 += HFamily::h0(k);
    sum_h6 += HFamily::h6(k);
    const double share = p_hat_[x] / (k + 1.0);
    hat_h4 += share * h.h4(k + 1, x);
    hat_h5 += share * h.h5(k + 1, x);
    hat_h7 += share * h.h7(k + 1, x);
    hat_occupied += share;
  }
  hat_h5 += std::max(0.0, 1.0 - hat_occupied) / (n - 1.0);
  return 2.0 + hat_h5 * sum_h6 / n + hat_h7 - hat_h4 * sum_h0 / n - 2.0 * sum_h0 / n;
}

double conditional_increment(const UrnModel& model, const Allocation& alloc, CouplerKind kind) {
  return IncrementEvaluator(model, kind)(alloc);
}

double conditional_increment(const UrnModel& model, const Allocation& alloc) {
  return conditional_increment(
      model, alloc, model.is_uniform() ? CouplerKind::kUniform : CouplerKind::kGeneral);
}

DeltaEstimate delta_upper_estimate(const UrnModel& model, std::uint64_t samples,
                                   std::uint64_t seed, unsigned threads,
                                   std::optional<CouplerKind> kind) {
  if (samples < 100) {
    throw InsufficientSamples("the Delta estimate needs at least 100 allocations", 100);
  }
  if (threads < 1) throw DomainError("the Delta estimate needs at least one thread");
  const IncrementEvaluator evaluate(
      model, kind.value_or(model.is_uniform() ? CouplerKind::kUniform : CouplerKind::kGeneral));

  std::vector<double> values(samples);
  std::vector<std::uint32_t> ys(samples);
  const std::uint64_t streams = (samples + kReplicatesPerStream - 1) / kReplicatesPerStream;
  parallel_for(streams, threads, [&](std::size_t s) {
    Rng rng(seed, StreamTag::kDelta, s);
    const std::uint64_t end = std::min(samples, (s + 1) * kReplicatesPerStream);
    for (std::uint64_t r = s * kReplicatesPerStream; r < end; ++r) {
      const Allocation alloc = sample_allocation(model, rng);
      values[r] = evaluate(alloc);
      ys[r] = nonisolated_count(alloc);
    }
  });

  MomentAccumulator acc;
  for (const double v : values) acc.add(v);
  const double count = static_cast<double>(samples);
  const double mean = acc.mean();
  const double ss = acc.variance() * (count - 1.0);

  // Leave-one-out variances: s2_(i) = (SS - N d_i / (N - 1)) / (N - 2), d_i = (v_i - mean)^2.
  MomentAccumulator jack_sq;
  MomentAccumulator jack_root;
  for (const double v : values) {
    const double d = (v - mean) * (v - mean);
    const double s2 = std::max(0.0, (ss - count * d / (count - 1.0)) / (count - 2.0));
    jack_sq.add(s2);
    jack_root.add(std::sqrt(s2));
  }
  const double inflation = (count - 1.0) * (count - 1.0) / count;

  std::vector<MomentAccumulator> bins(model.n() + 1);
  for (std::uint64_t r = 0; r < samples; ++r) bins[ys[r]].add(values[r]);
  double between = 0.0;
  for (const MomentAccumulator& bin : bins) {
    if (bin.count() == 0) continue;
    between += static_cast<double>(bin.count()) * (bin.mean() - mean) * (bin.mean() - mean);
  }

  DeltaEstimate out;
  out.delta_sq = acc.variance();
  out.delta_hat = std::sqrt(out.delta_sq);
  out.delta_sq_stderr = std::sqrt(inflation * jack_sq.variance());
  out.delta_stderr = std::sqrt(inflation * jack_root.variance());
  out.mean_increment = mean;
  out.samples = samples;
  out.seed = seed;
  out.delta_sq_binned = between / (count - 1.0);
  return out;
}

}  // namespace urn
