#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "urn/h_family.hpp"
#include "urn/model.hpp"
#include "urn/pi_table.hpp"
#include "urn/stats.hpp"

namespace urn {

enum class CouplerKind { kUniform, kGeneral };

/// One paired realization (Y, Y'') and the auxiliary randomness behind it.
struct CouplingDraw {
  std::uint32_t y = 0;
  std::uint32_t y_sb = 0;
  std::uint32_t ball = 0;                       // I
  std::optional<std::uint32_t> relocated_urn;   // X_0, general coupler only
  std::uint32_t co_occupancy = 0;               // N, the index into pi
  bool imported = false;                        // B
  std::optional<std::uint32_t> imported_ball;   // J, when B = 1

  int increment() const noexcept { return static_cast<int>(y_sb) - static_cast<int>(y); }
};

/// Mutable ball positions and urn counts with O(1) moves, an undo log and a
/// running non-isolated count.
class Occupancy {
 public:
  void load(const Allocation& alloc);
  /// Resizes for (n, m) and zeroes the counts.
  void reset(std::uint32_t n, std::uint32_t m);
  void place(std::uint32_t ball, std::uint32_t urn) noexcept;

  void move(std::uint32_t ball, std::uint32_t urn);
  /// Restores the state saved at the last load() / commit().
  void revert() noexcept;
  void commit() noexcept { undo_.clear(); }

  std::uint32_t n() const noexcept { return static_cast<std::uint32_t>(x_.size()); }
  std::uint32_t urn_of(std::uint32_t ball) const noexcept { return x_[ball]; }
  std::uint32_t count(std::uint32_t urn) const noexcept { return counts_[urn]; }
  std::uint32_t nonisolated() const noexcept { return n() - singletons_; }

 private:
  void shift(std::uint32_t ball, std::uint32_t urn) noexcept;

  std::vector<std::uint32_t> x_;
  std::vector<std::uint32_t> counts_;
  std::uint32_t singletons_ = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> undo_;  // (ball, previous urn)
};

/// Uniform-case coupling: pick I uniformly; with probability pi_{M_I}
/// (nu = n-1, p = 1/m) move a uniformly chosen other ball J into I's urn.
/// |Y'' - Y| <= 2.
class UniformCoupler {
 public:
  /// Throws DomainError unless the model is uniform with n >= 2 and m >= 2.
  explicit UniformCoupler(const UrnModel& model);

  CouplingDraw draw(Rng& rng, Occupancy& state) const;
  /// Redraws only the auxiliary randomness on a loaded allocation; `state`
  /// is reverted before returning.
  CouplingDraw draw_given(Occupancy& state, Rng& rng) const;

  const UrnModel& model() const noexcept { return model_; }

 private:
  UrnModel model_;
  PiTable pi_;
};

/// General coupling: pick I uniformly, move it to X_0 ~ p-hat, then with
/// probability pi_N(X_0) (N = other balls at X_0) move a uniformly chosen
/// other ball J to X_0 as well. |Y'' - Y| <= 3.
class GeneralCoupler {
 public:
  /// Throws DomainError for n < 2 or m < 2.
  explicit GeneralCoupler(const UrnModel& model);

  CouplingDraw draw(Rng& rng, Occupancy& state) const;
  CouplingDraw draw_given(Occupancy& state, Rng& rng) const;

  const UrnModel& model() const noexcept { return model_; }
  const SizeBiasDistribution& size_bias() const noexcept { return hat_; }

 private:
  UrnModel model_;
  SizeBiasDistribution hat_;
  UrnPiTables pi_;
};

/// Single draws that build the coupler on the fly.
CouplingDraw couple_uniform(const UrnModel& model, Rng& rng);
CouplingDraw couple_general(const UrnModel& model, Rng& rng);

struct CouplingBatchOptions {
  CouplerKind kind = CouplerKind::kGeneral;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// Keep the first `keep_draws` draws (in stream order) for CSV output.
  std::uint64_t keep_draws = 0;
};

struct CouplingBatch {
  CouplerKind kind = CouplerKind::kGeneral;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> y_histogram;
  std::vector<std::uint64_t> y_sb_histogram;
  MomentAccumulator increment;
  int max_abs_increment = 0;
  /// Draws whose |Y'' - Y| exceeded the coupler's hard bound.
  std::uint64_t bound_violations = 0;
  std::uint64_t imports = 0;
  std::vector<CouplingDraw> draws;
};

/// Hard bound on |Y'' - Y| for a coupler.
constexpr int increment_bound(CouplerKind kind) noexcept {
  return kind == CouplerKind::kUniform ? 2 : 3;
}

/// Independent coupling draws, each on a fresh allocation. Deterministic in
/// (model, options) and independent of the thread count.
CouplingBatch couple_batch(const UrnModel& model, const CouplingBatchOptions& options);

/// Mean increment over `draws` redraws of the auxiliary randomness with the
/// allocation held fixed.
MomentAccumulator fixed_allocation_increments(const UrnModel& model, CouplerKind kind,
                                              const Allocation& alloc, std::uint64_t draws,
                                              std::uint64_t seed, std::uint64_t stream = 0);

}  // namespace urn
