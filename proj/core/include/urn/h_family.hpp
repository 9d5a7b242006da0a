#pragma once

#include <cstdint>
#include <vector>

#include "urn/model.hpp"
#include "urn/pi_table.hpp"

namespace urn {

/// p-hat: the law of the urn of a ball conditioned to be non-isolated,
///   p-hat_x proportional to p_x (1 - (1 - p_x)^(n-1)).
struct SizeBiasDistribution {
  std::vector<double> p_hat;
  AliasTable sampler;
};

/// Throws DomainError for n = 1 (Y is identically zero and cannot be size-biased).
SizeBiasDistribution hat_p(const UrnModel& model);

/// pi tables with nu = n - 1 and p = p_x for every urn, shared between urns
/// with the same probability.
class UrnPiTables {
 public:
  explicit UrnPiTables(const UrnModel& model);

  const PiTable& operator[](std::uint32_t urn) const noexcept { return tables_[index_[urn]]; }
  std::size_t distinct() const noexcept { return tables_.size(); }
  const std::vector<PiTable>& tables() const noexcept { return tables_; }

 private:
  std::vector<PiTable> tables_;
  std::vector<std::uint32_t> index_;
};

/// The functions h_0..h_7 of the non-uniform increment formula and their
/// tilded versions h~_i(k, x) = h_i(k+1, x) / (k+1).
///
/// h_0..h_3 and h_6 depend on the occupancy k only; h_4, h_5 and h_7 also
/// depend on the urn through pi_k(x). The usual convention 0 * h(-1) = 0
/// applies at k = 0.
class HFamily {
 public:
  static constexpr int kCount = 8;

  explicit HFamily(const UrnModel& model);

  static constexpr double h0(std::uint32_t k) noexcept { return (k >= 1) + (k == 1); }
  static constexpr double h1(std::uint32_t k) noexcept { return 1.0 - h0(k); }
  static constexpr double h2(std::uint32_t k) noexcept { return 2.0 * (k == 1) - (k == 2); }
  static constexpr double h3(std::uint32_t k) noexcept { return k == 1; }
  static constexpr double h6(std::uint32_t k) noexcept { return k * h2(k); }

  double h4(std::uint32_t k, std::uint32_t x) const noexcept;
  double h5(std::uint32_t k, std::uint32_t x) const noexcept;
  double h7(std::uint32_t k, std::uint32_t x) const noexcept;

  /// h_i(k, x) for 0 <= k <= n. Throws DomainError for i outside 0..7 or k > n.
  double h(int i, std::uint32_t k, std::uint32_t x) const;
  /// h~_i(k, x) for 0 <= k <= n - 1.
  double h_tilde(int i, std::uint32_t k, std::uint32_t x) const;

  /// sup over x and 0 <= k <= n-1 of |h_i| (or |h~_i|).
  double norm(int i) const;
  double norm_tilde(int i) const;

  std::uint32_t n() const noexcept { return n_; }
  const UrnPiTables& pi() const noexcept { return pi_; }

 private:
  double sup_abs(bool tilde, int i) const;

  std::uint32_t n_;
  std::uint32_t m_;
  UrnPiTables pi_;
};

}  // namespace urn
