#include "urn/h_family.hpp"

#include <cmath>
#include <map>

#include "urn/error.hpp"

namespace urn {

SizeBiasDistribution hat_p(const UrnModel& model) {
  if (model.n() < 2) throw DomainError("p-hat is undefined for a single ball (Y is always 0)");
  const double trials = model.n() - 1.0;
  std::vector<double> weights(model.m());
  long double total = 0.0L;
  for (std::uint32_t x = 0; x < model.m(); ++x) {
    const double px = model.p(x);
    weights[x] = px * -std::expm1(trials * std::log1p(-px));
    total += weights[x];
  }
  SizeBiasDistribution out;
  out.p_hat.resize(model.m());
  for (std::uint32_t x = 0; x < model.m(); ++x) {
    out.p_hat[x] = static_cast<double>(weights[x] / total);
  }
  if (model.is_uniform()) {
    std::fill(out.p_hat.begin(), out.p_hat.end(), 1.0 / model.m());
  }
  out.sampler = AliasTable(out.p_hat);
  return out;
}

UrnPiTables::UrnPiTables(const UrnModel& model) : index_(model.m()) {
  if (model.n() < 2) throw DomainError("pi tables need n >= 2");
  std::map<double, std::uint32_t> seen;
  for (std::uint32_t x = 0; x < model.m(); ++x) {
    const double px = model.p(x);
    auto [it, inserted] = seen.try_emplace(px, static_cast<std::uint32_t>(tables_.size()));
    if (inserted) {
      if (px >= 1.0) {
        throw DomainError("pi tables need every p_x < 1 (a single urn makes the coupling trivial)");
      }
      tables_.push_back(pi_table(model.n() - 1, px));
    }
    index_[x] = it->second;
  }
}

HFamily::HFamily(const UrnModel& model) : n_(model.n()), m_(model.m()), pi_(model) {}

double HFamily::h4(std::uint32_t k, std::uint32_t x) const noexcept {
  const PiTable& pi = pi_[x];
  const double scale = n_ - 1.0;
  const double previous = k == 0 ? 0.0 : k * pi(k - 1) / scale;
  return previous + (static_cast<double>(n_) - k - 1.0) * pi(k) / scale - 1.0;
}

double HFamily::h5(std::uint32_t k, std::uint32_t x) const noexcept {
  return pi_[x](k) / (n_ - 1.0);
}

double HFamily::h7(std::uint32_t k, std::uint32_t x) const noexcept {
  const double four = h4(k, x);
  double value = h3(k) + four;
  if (k > 0) {
    value -= k * (2.0 + four) * h1(k - 1) / n_;
    value -= k * h5(k, x) * (k - 1.0) * h2(k - 1) / n_;
  }
  return value;
}

double HFamily::h(int i, std::uint32_t k, std::uint32_t x) const {
  if (k > n_) throw DomainError("h_i evaluated beyond occupancy n");
  if (x >= m_) throw DomainError("h_i evaluated at an urn out of range");
  switch (i) {
    case 0: return h0(k);
    case 1: return h1(k);
    case 2: return h2(k);
    case 3: return h3(k);
    case 4: return h4(k, x);
    case 5: return h5(k, x);
    case 6: return h6(k);
    case 7: return h7(k, x);
    default: throw DomainError("h index must lie in 0..7");
  }
}

double HFamily::h_tilde(int i, std::uint32_t k, std::uint32_t x) const {
  if (k + 1 > n_) throw DomainError("h~_i evaluated beyond occupancy n - 1");
  return h(i, k + 1, x) / (k + 1.0);
}

double HFamily::sup_abs(bool tilde, int i) const {
  double best = 0.0;
  // Urns sharing a pi table share every h value, so one per table suffices.
  std::vector<bool> visited(pi_.distinct(), false);
  for (std::uint32_t x = 0; x < m_; ++x) {
    const auto* table = &pi_[x];
    const auto slot = static_cast<std::size_t>(table - pi_.tables().data());
    if (visited[slot]) continue;
    visited[slot] = true;
    for (std::uint32_t k = 0; k < n_; ++k) {
      best = std::max(best, std::fabs(tilde ? h_tilde(i, k, x) : h(i, k, x)));
    }
  }
  return best;
}

double HFamily::norm(int i) const { return sup_abs(false, i); }
double HFamily::norm_tilde(int i) const { return sup_abs(true, i); }

}  // namespace urn
