#pragma once

#include <cstdint>
#include <random>

namespace semtrade {

// Seed derivation for replica/block streams. Uses splitmix64 over the
// master seed and index so streams are independent of scheduling order.
uint64_t mix_seed(uint64_t master, uint64_t index);

// Deterministic PRNG. State is mt19937_64 but all sampling is done with
// explicit arithmetic instead of std::*_distribution, so sequences are
// stable across standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next() { return gen_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi], both inclusive. Unbiased via rejection.
  int uniform_int(int lo, int hi);

  // Fair coin.
  bool coin() { return (next() & 1u) != 0; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace semtrade
