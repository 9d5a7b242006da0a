#include "urn/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "urn/error.hpp"

namespace urn {

AliasTable::AliasTable(std::span<const double> weights)
    : prob_(weights.size()), alias_(weights.size()) {
  const std::size_t size = weights.size();
  if (size == 0) throw DomainError("alias table over an empty set");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<double> scaled(size);
  std::vector<std::uint32_t> small;
  std::vector<std::uint32_t> large;
  for (std::size_t i = 0; i < size; ++i) {
    scaled[i] = weights[i] * static_cast<double>(size) / total;
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    small.pop_back();
    const std::uint32_t l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (std::uint32_t l : large) {
    prob_[l] = 1.0;
    alias_[l] = l;
  }
  for (std::uint32_t s : small) {
    prob_[s] = 1.0;
    alias_[s] = s;
  }
}

double UrnModel::gamma() const noexcept {
  return std::max(static_cast<double>(n_) * max_p_, 1.0);
}

UrnModel build_model(std::uint32_t n, const UrnSpec& spec) {
  if (n < 1) throw DomainError("model needs at least one ball");
  UrnModel model;
  model.n_ = n;
  if (const auto* uniform = std::get_if<UniformUrns>(&spec)) {
    if (uniform->m < 1) throw DomainError("model needs at least one urn");
    model.kind_ = UrnKind::kUniform;
    model.p_.assign(uniform->m, 1.0 / static_cast<double>(uniform->m));
  } else {
    const auto& raw = std::get<ExplicitUrns>(spec).probabilities;
    if (raw.empty()) throw DomainError("empty probability vector");
    long double sum = 0.0L;
    for (std::size_t x = 0; x < raw.size(); ++x) {
      if (!std::isfinite(raw[x]) || raw[x] <= 0.0) {
        throw DomainError("probability p[" + std::to_string(x) +
                          "] must be finite and strictly positive");
      }
      sum += raw[x];
    }
    if (std::fabs(static_cast<double>(sum - 1.0L)) > kNormalizationTolerance) {
      throw DomainError("probabilities sum to " + std::to_string(static_cast<double>(sum)) +
                        ", which is not within 1e-9 of 1");
    }
    model.kind_ = UrnKind::kExplicit;
    model.p_.resize(raw.size());
    for (std::size_t x = 0; x < raw.size(); ++x) {
      model.p_[x] = static_cast<double>(raw[x] / sum);
    }
    model.alias_ = std::make_shared<const AliasTable>(model.p_);
  }
  model.max_p_ = *std::max_element(model.p_.begin(), model.p_.end());
  long double sum_sq = 0.0L;
  for (double px : model.p_) sum_sq += static_cast<long double>(px) * px;
  model.sum_p2_ = static_cast<double>(sum_sq);
  return model;
}

Allocation Allocation::from_assignment(std::uint32_t m, std::vector<std::uint32_t> x) {
  Allocation alloc;
  alloc.counts.assign(m, 0);
  for (std::uint32_t urn : x) {
    if (urn >= m) throw DomainError("urn index out of range");
    ++alloc.counts[urn];
  }
  alloc.m_of.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) alloc.m_of[i] = alloc.counts[x[i]] - 1;
  alloc.x = std::move(x);
  return alloc;
}

Allocation sample_allocation(const UrnModel& model, Rng& rng) {
  std::vector<std::uint32_t> x(model.n());
  for (auto& urn : x) urn = model.sample_urn(rng);
  return Allocation::from_assignment(model.m(), std::move(x));
}

std::uint32_t nonisolated_count(const Allocation& alloc) noexcept {
  std::uint32_t y = 0;
  for (std::uint32_t k : alloc.m_of) y += (k > 0);
  return y;
}

std::uint32_t sample_nonisolated(const UrnModel& model, Rng& rng,
                                 std::vector<std::uint32_t>& scratch,
                                 std::vector<std::uint32_t>& touched) {
  const std::uint32_t n = model.n();
  touched.resize(n);
  std::int64_t singletons = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t urn = model.sample_urn(rng);
    touched[i] = urn;
    const std::uint32_t c = ++scratch[urn];
    singletons += (c == 1) - (c == 2);
  }
  for (std::uint32_t urn : touched) scratch[urn] = 0;
  return n - static_cast<std::uint32_t>(singletons);
}

}  // namespace urn
