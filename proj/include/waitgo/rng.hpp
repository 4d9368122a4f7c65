#pragma once

#include <cstdint>

namespace waitgo::rng {

// SplitMix64 finalizer. Used as the mixing core of the counter-based
// generators below; all stochastic draws in the project go through it so
// results are identical across platforms and independent of call order.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based hash of a (seed, key) pair.
constexpr std::uint64_t mix(std::uint64_t seed, std::uint64_t key) {
  return splitmix64(seed ^ splitmix64(key));
}

constexpr std::uint64_t mix3(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix(mix(seed, a), b);
}

// Uniform double in [0, 1) from 64 random bits (53-bit mantissa fill).
constexpr double uniform01(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Small sequential stream for consumers that draw an unbounded number of
// values (e.g. the coin-flip policy, isolation-forest construction).
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() { return state_ = splitmix64(state_); }
  double next_uniform01() { return uniform01(next()); }
  int next_bit() { return static_cast<int>(next() & 1u); }

  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

}  // namespace waitgo::rng
