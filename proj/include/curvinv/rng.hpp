// Deterministic PRNG (splitmix64). Used for the trig_poly catalog family,
// randomized Mobius maps and seeded test configurations. std::mt19937 with the
// standard distributions is not bit-reproducible across library
// implementations, and identical seeds must give byte-identical CLI output.
#pragma once

#include <cstdint>

namespace curvinv {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
  }

  // Uniform in [-1, 1).
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

  // Uniform in [lo, hi).
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

 private:
  std::uint64_t state_;
};

}  // namespace curvinv
