#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "urn/rng.hpp"

namespace urn {

/// Walker/Vose alias table over a finite index set. Immutable once built.
class AliasTable {
 public:
  AliasTable() = default;
  explicit AliasTable(std::span<const double> weights);

  std::size_t size() const noexcept { return prob_.size(); }
  std::uint32_t sample(Rng& rng) const noexcept {
    const auto column = static_cast<std::uint32_t>(rng.below(prob_.size()));
    return rng.uniform01() < prob_[column] ? column : alias_[column];
  }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

struct UniformUrns {
  std::uint32_t m = 0;
};

struct ExplicitUrns {
  std::vector<double> probabilities;
};

using UrnSpec = std::variant<UniformUrns, ExplicitUrns>;

enum class UrnKind { kUniform, kExplicit };

/// n balls thrown independently into m urns with mass function p.
///
/// Construction goes through build_model(), which validates and normalizes the
/// probabilities. The object is immutable afterwards; concurrent reads and
/// concurrent sampling with distinct generators are safe.
class UrnModel {
 public:
  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t m() const noexcept { return static_cast<std::uint32_t>(p_.size()); }
  UrnKind kind() const noexcept { return kind_; }
  bool is_uniform() const noexcept { return kind_ == UrnKind::kUniform; }
  std::span<const double> p() const noexcept { return p_; }
  double p(std::uint32_t x) const noexcept { return p_[x]; }

  /// ||p|| = max_x p_x.
  double max_p() const noexcept { return max_p_; }
  /// gamma = max(n ||p||, 1).
  double gamma() const noexcept;
  double sum_p_squared() const noexcept { return sum_p2_; }
  /// The increment and covariance bounds assume at least four urns; smaller models are
  /// accepted and flagged.
  bool few_urns() const noexcept { return m() < 4; }

  std::uint32_t sample_urn(Rng& rng) const noexcept {
    if (kind_ == UrnKind::kUniform) return static_cast<std::uint32_t>(rng.below(p_.size()));
    return alias_->sample(rng);
  }

 private:
  friend UrnModel build_model(std::uint32_t n, const UrnSpec& spec);
  UrnModel() = default;

  std::uint32_t n_ = 0;
  UrnKind kind_ = UrnKind::kUniform;
  std::vector<double> p_;
  double max_p_ = 0.0;
  double sum_p2_ = 0.0;
  std::shared_ptr<const AliasTable> alias_;
};

/// Raw probabilities whose sum deviates from one by more than this are rejected.
inline constexpr double kNormalizationTolerance = 1e-9;

/// Validates and normalizes a model. Throws DomainError on n = 0, m = 0, an
/// empty or non-positive probability vector, or a raw sum off by more than
/// kNormalizationTolerance.
UrnModel build_model(std::uint32_t n, const UrnSpec& spec);

/// One realization X_1..X_n with urn counts N_x and co-occupancy counts
/// M_i = N_{X_i} - 1. Urn indices are zero-based.
struct Allocation {
  std::vector<std::uint32_t> x;
  std::vector<std::uint32_t> counts;
  std::vector<std::uint32_t> m_of;

  /// Builds counts and m_of from explicit urn assignments in [0, m).
  static Allocation from_assignment(std::uint32_t m, std::vector<std::uint32_t> x);

  std::uint32_t n() const noexcept { return static_cast<std::uint32_t>(x.size()); }
  std::uint32_t m() const noexcept { return static_cast<std::uint32_t>(counts.size()); }
};

Allocation sample_allocation(const UrnModel& model, Rng& rng);

/// Y = sum_i 1{M_i > 0}.
std::uint32_t nonisolated_count(const Allocation& alloc) noexcept;

/// Draws Y directly without materializing an Allocation. `scratch` must hold
/// m zeros on entry and is left zeroed; `touched` is reused storage.
std::uint32_t sample_nonisolated(const UrnModel& model, Rng& rng,
                                 std::vector<std::uint32_t>& scratch,
                                 std::vector<std::uint32_t>& touched);

}  // namespace urn
