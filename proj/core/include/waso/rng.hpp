#pragma once

#include <cstdint>
#include <limits>

namespace waso {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// xoshiro256** stream keyed by (master seed, start node, stage, sample
/// index). Every sample owns its stream, so results do not depend on how
/// samples are spread over worker threads.
__extension__ using uint128_t = unsigned __int128;

class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed) noexcept { reseed(seed); }
  RngStream(std::uint64_t seed, std::uint64_t start, std::uint64_t stage,
            std::uint64_t index) noexcept
      : RngStream(derive(seed, start, stage, index)) {}

  static constexpr std::uint64_t derive(std::uint64_t seed,
                                        std::uint64_t start,
                                        std::uint64_t stage,
                                        std::uint64_t index) noexcept {
    std::uint64_t k = splitmix64(seed);
    k = splitmix64(k ^ splitmix64(start + 0x51ed270b27f3a1c5ULL));
    k = splitmix64(k ^ splitmix64(stage + 0x2545f4914f6cdd1dULL));
    k = splitmix64(k ^ splitmix64(index + 0x9fb21c651e98df25ULL));
    return k;
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform integer in [0, bound), bound > 0 (Lemire's method).
  std::uint64_t below(std::uint64_t bound) noexcept {
    uint128_t m = static_cast<uint128_t>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<uint128_t>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1).
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  void reseed(std::uint64_t seed) noexcept {
    std::uint64_t x = seed;
    for (auto& s : s_) {
      x += 0x9e3779b97f4a7c15ULL;
      s = splitmix64(x);
    }
  }

  std::uint64_t s_[4]{};
};

}  // namespace waso
