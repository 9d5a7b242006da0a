#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <limits>

namespace urn {

/// SplitMix64 finalizer; used to derive independent stream states.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stream tags keep the operations that share a user seed on disjoint streams.
enum class StreamTag : std::uint64_t {
  kMonteCarlo = 1,
  kCoupling = 2,
  kDelta = 3,
  kCovariance = 4,
  kFixedAllocation = 5,
  kUser = 6,
};

/// xoshiro256** generator. A stream is addressed by (seed, tag, index); the
/// state is obtained by hashing that triple through SplitMix64, so streams can
/// be created in any order on any thread.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept : Rng(seed, StreamTag::kUser, 0) {}

  Rng(std::uint64_t seed, StreamTag tag, std::uint64_t index) noexcept {
    std::uint64_t sm = seed;
    std::uint64_t key = splitmix64(sm);
    sm = key ^ (static_cast<std::uint64_t>(tag) * 0xd1b54a32d192ed03ULL);
    key = splitmix64(sm);
    sm = key ^ (index * 0x8cb92ba72f3d8dd7ULL + 0x632be59bd9b4e019ULL);
    for (auto& word : s_) word = splitmix64(sm);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound), bound > 0 (Lemire's multiply-shift with
  /// rejection, so the result is exactly uniform).
  std::uint64_t below(std::uint64_t bound) noexcept {
    std::uint64_t x = (*this)();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = (*this)();
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool bernoulli(double p) noexcept { return uniform01() < p; }

 private:
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace urn
