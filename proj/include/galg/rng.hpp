#pragma once

// Seeded randomness with platform-stable output. std::uniform_int_distribution
// is implementation-defined, so bounded draws are done here by rejection.

#include <cstdint>
#include <random>

namespace galg {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-mode sub-seed: independent streams for trial i of master seed s.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x5851f42d4c957f2dULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) {
    if ((n & (n - 1)) == 0) return engine_() & (n - 1);
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  Rng split(std::uint64_t index) { return Rng(derive_seed(engine_(), index)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace galg
