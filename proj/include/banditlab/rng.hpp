#pragma once

#include <cstdint>

namespace banditlab {

// xoshiro256++ generator seeded through splitmix64. All randomness in the
// library flows through this type so that runs are reproducible bit-for-bit
// and portable across platforms: no std::*_distribution is used anywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  /// Uniform integer in [0, n). Debiased via Lemire's multiply-shift method.
  std::uint64_t below(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // splitmix64 step; also the building block of the seed-derivation scheme.
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t mix(std::uint64_t value) {
    std::uint64_t x = value;
    return splitmix64(x);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t state_[4];
};

// Role tags for the three independent per-trial random streams.
enum class StreamRole : std::uint64_t {
  kEnvironment = 0x1,
  kAgent = 0x2,
  kAdversary = 0x3,
  kSweepCell = 0x4,
};

// Published seed-derivation scheme: every per-trial stream seed is
//   mix(mix(master ^ mix(trial_index + 1)) ^ role_tag)
// where mix is one splitmix64 step. Results are therefore reproducible from
// (master_seed, trial_index, role) alone, independent of execution order.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t trial_index,
                                 StreamRole role) {
  const std::uint64_t trial_mixed = Rng::mix(trial_index + 1);
  return Rng::mix(Rng::mix(master_seed ^ trial_mixed) ^ static_cast<std::uint64_t>(role));
}

}  // namespace banditlab
