#pragma once

#include <cstdint>

namespace tricount {

// Deterministic counter-based generator (splitmix64 finalizer over a keyed
// counter). Seedable and splittable so that every run is bit-reproducible and
// sub-streams can be derived without sharing state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(mix(mix(seed) ^ kKeyTweak)), ctr_(0) {}

  std::uint64_t next_u64() {
    ctr_ += kGolden;
    return mix(mix(ctr_) + key_);
  }

  // Unbiased uniform draw in [0, n). n must be >= 1.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t x, r;
    do {
      x = next_u64();
      r = x % n;
    } while (x - r > std::uint64_t(0) - n);  // reject the partial top cycle
    return r;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return u01() < p; }

  // Derives an independent child generator; consumes one draw from the parent
  // so successive splits (and splits after other use) differ.
  Rng split() { return Rng(FromKey{}, mix(next_u64() ^ kSplitTweak)); }

 private:
  struct FromKey {};
  Rng(FromKey, std::uint64_t key) : key_(key), ctr_(0) {}

  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kKeyTweak = 0xA02B2C6D46A0F1B5ull;
  static constexpr std::uint64_t kSplitTweak = 0x717EAD94D903C1E0ull;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t ctr_;
};

}  // namespace tricount
