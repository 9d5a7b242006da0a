#include "urn/coupling.hpp"

#include <algorithm>
#include <cstdlib>

#include "urn/error.hpp"
#include "urn/monte_carlo.hpp"
#include "urn/parallel.hpp"

namespace urn {

void Occupancy::reset(std::uint32_t n, std::uint32_t m) {
  x_.assign(n, 0);
  counts_.assign(m, 0);
  singletons_ = 0;
  undo_.clear();
}

void Occupancy::place(std::uint32_t ball, std::uint32_t urn) noexcept {
  x_[ball] = urn;
  const std::uint32_t c = ++counts_[urn];
  if (c == 1) ++singletons_;
  if (c == 2) --singletons_;
}

void Occupancy::load(const Allocation& alloc) {
  reset(alloc.n(), alloc.m());
  for (std::uint32_t i = 0; i < alloc.n(); ++i) place(i, alloc.x[i]);
}

void Occupancy::shift(std::uint32_t ball, std::uint32_t urn) noexcept {
  const std::uint32_t from = x_[ball];
  singletons_ -= (counts_[from] == 1);
  --counts_[from];
  singletons_ += (counts_[from] == 1);
  singletons_ -= (counts_[urn] == 1);
  ++counts_[urn];
  singletons_ += (counts_[urn] == 1);
  x_[ball] = urn;
}

void Occupancy::move(std::uint32_t ball, std::uint32_t urn) {
  if (x_[ball] == urn) return;
  undo_.emplace_back(ball, x_[ball]);
  shift(ball, urn);
}

void Occupancy::revert() noexcept {
  while (!undo_.empty()) {
    const auto [ball, urn] = undo_.back();
    undo_.pop_back();
    shift(ball, urn);
  }
}

namespace {

std::uint32_t other_ball(Rng& rng, std::uint32_t n, std::uint32_t excluded) noexcept {
  auto j = static_cast<std::uint32_t>(rng.below(n - 1));
  return j >= excluded ? j + 1 : j;
}

void fill(Occupancy& state, const UrnModel& model, Rng& rng) {
  state.reset(model.n(), model.m());
  for (std::uint32_t i = 0; i < model.n(); ++i) state.place(i, model.sample_urn(rng));
  state.commit();
}

}  // namespace

UniformCoupler::UniformCoupler(const UrnModel& model) : model_(model), pi_{} {
  if (!model.is_uniform()) {
    throw DomainError("the uniform coupler needs a uniform model; use the general coupler");
  }
  if (model.n() < 2 || model.m() < 2) throw DomainError("the uniform coupler needs n >= 2 and m >= 2");
  pi_ = pi_table(model.n() - 1, 1.0 / model.m());
}

CouplingDraw UniformCoupler::draw_given(Occupancy& state, Rng& rng) const {
  const std::uint32_t n = state.n();
  CouplingDraw out;
  out.y = state.nonisolated();
  out.ball = static_cast<std::uint32_t>(rng.below(n));
  const std::uint32_t home = state.urn_of(out.ball);
  out.co_occupancy = state.count(home) - 1;
  out.imported = rng.bernoulli(pi_(out.co_occupancy));
  const std::uint32_t j = other_ball(rng, n, out.ball);
  if (out.imported) {
    out.imported_ball = j;
    state.move(j, home);
  }
  out.y_sb = state.nonisolated();
  state.revert();
  return out;
}

CouplingDraw UniformCoupler::draw(Rng& rng, Occupancy& state) const {
  fill(state, model_, rng);
  return draw_given(state, rng);
}

GeneralCoupler::GeneralCoupler(const UrnModel& model)
    : model_(model), hat_(hat_p(model)), pi_(model) {
  if (model.m() < 2) throw DomainError("the general coupler needs m >= 2");
}

CouplingDraw GeneralCoupler::draw_given(Occupancy& state, Rng& rng) const {
  const std::uint32_t n = state.n();
  CouplingDraw out;
  out.y = state.nonisolated();
  out.ball = static_cast<std::uint32_t>(rng.below(n));
  const std::uint32_t target = hat_.sampler.sample(rng);
  out.relocated_urn = target;
  state.move(out.ball, target);
  out.co_occupancy = state.count(target) - 1;
  out.imported = rng.bernoulli(pi_[target](out.co_occupancy));
  if (out.imported) {
    // J may already sit at X_0; the move is then a no-op.
    const std::uint32_t j = other_ball(rng, n, out.ball);
    out.imported_ball = j;
    state.move(j, target);
  }
  out.y_sb = state.nonisolated();
  state.revert();
  return out;
}

CouplingDraw GeneralCoupler::draw(Rng& rng, Occupancy& state) const {
  fill(state, model_, rng);
  return draw_given(state, rng);
}

CouplingDraw couple_uniform(const UrnModel& model, Rng& rng) {
  const UniformCoupler coupler(model);
  Occupancy state;
  return coupler.draw(rng, state);
}

CouplingDraw couple_general(const UrnModel& model, Rng& rng) {
  const GeneralCoupler coupler(model);
  Occupancy state;
  return coupler.draw(rng, state);
}

namespace {

template <typename Coupler>
CouplingBatch run_batch(const Coupler& coupler, const UrnModel& model,
                        const CouplingBatchOptions& options) {
  const std::uint32_t n = model.n();
  const std::uint64_t streams =
      (options.samples + kReplicatesPerStream - 1) / kReplicatesPerStream;
  const int bound = increment_bound(options.kind);
  std::vector<CouplingBatch> parts(streams);
  parallel_for(streams, options.threads, [&](std::size_t s) {
    const std::uint64_t begin = s * kReplicatesPerStream;
    const std::uint64_t end = std::min(options.samples, begin + kReplicatesPerStream);
    Rng rng(options.seed, StreamTag::kCoupling, s);
    CouplingBatch& part = parts[s];
    part.y_histogram.assign(n + 1, 0);
    part.y_sb_histogram.assign(n + 1, 0);
    Occupancy state;
    for (std::uint64_t r = begin; r < end; ++r) {
      const CouplingDraw d = coupler.draw(rng, state);
      ++part.y_histogram[d.y];
      ++part.y_sb_histogram[d.y_sb];
      const int inc = d.increment();
      part.increment.add(inc);
      part.max_abs_increment = std::max(part.max_abs_increment, std::abs(inc));
      part.bound_violations += std::abs(inc) > bound;
      part.imports += d.imported;
      if (r < options.keep_draws) part.draws.push_back(d);
    }
  });

  CouplingBatch batch;
  batch.kind = options.kind;
  batch.samples = options.samples;
  batch.seed = options.seed;
  batch.y_histogram.assign(n + 1, 0);
  batch.y_sb_histogram.assign(n + 1, 0);
  for (CouplingBatch& part : parts) {
    for (std::uint32_t v = 0; v <= n; ++v) {
      batch.y_histogram[v] += part.y_histogram[v];
      batch.y_sb_histogram[v] += part.y_sb_histogram[v];
    }
    batch.increment.merge(part.increment);
    batch.max_abs_increment = std::max(batch.max_abs_increment, part.max_abs_increment);
    batch.bound_violations += part.bound_violations;
    batch.imports += part.imports;
    batch.draws.insert(batch.draws.end(), part.draws.begin(), part.draws.end());
  }
  return batch;
}

}  // namespace

CouplingBatch couple_batch(const UrnModel& model, const CouplingBatchOptions& options) {
  if (options.samples < 1) throw DomainError("coupling batch needs at least one draw");
  if (options.threads < 1) throw DomainError("coupling batch needs at least one thread");
  if (options.kind == CouplerKind::kUniform) {
    return run_batch(UniformCoupler(model), model, options);
  }
  return run_batch(GeneralCoupler(model), model, options);
}

MomentAccumulator fixed_allocation_increments(const UrnModel& model, CouplerKind kind,
                                              const Allocation& alloc, std::uint64_t draws,
                                              std::uint64_t seed, std::uint64_t stream) {
  if (alloc.n() != model.n() || alloc.m() != model.m()) {
    throw DomainError("allocation does not match the model");
  }
  Occupancy state;
  state.load(alloc);
  state.commit();
  Rng rng(seed, StreamTag::kFixedAllocation, stream);
  MomentAccumulator acc;
  auto run = [&](const auto& coupler) {
    for (std::uint64_t d = 0; d < draws; ++d) acc.add(coupler.draw_given(state, rng).increment());
  };
  if (kind == CouplerKind::kUniform) {
    run(UniformCoupler(model));
  } else {
    run(GeneralCoupler(model));
  }
  return acc;
}

}  // namespace urn
