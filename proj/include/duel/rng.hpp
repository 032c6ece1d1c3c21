#pragma once

#include <cstdint>

namespace duel {

// splitmix64 (Steele/Lea/Flood constants). 64-bit state, one output per step.
// Cheap, counter-like (state advances by a fixed gamma), and good enough for
// Monte Carlo work. Never touches global state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53 random bits
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Key of substream `index` under a master seed: the index-th output of the
// splitmix64 stream seeded with `seed`, computed in O(1). Seeding a fresh
// SplitMix64 with this key yields a stream that is independent of scheduling,
// which is what makes parallel simulation reproducible.
inline std::uint64_t substream_key(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(seed + index * 0x9e3779b97f4a7c15ull).next();
}

}  // namespace duel
