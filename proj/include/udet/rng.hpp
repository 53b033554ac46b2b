// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace udet {

// Deterministic random source. Wraps mt19937_64 but derives all values from
// raw bits instead of the standard distributions, whose output is
// implementation-defined; the same seed yields the same stream on every
// platform and compiler.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_bits() { return engine_(); }

  // Uniform double in [0, 1) with 53 bits of entropy.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n), n > 0. Rejection-free modulo is fine here:
  // n is always tiny relative to 2^64 so the bias is unobservable.
  uint64_t uniform_int(uint64_t n) { return engine_() % n; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace udet
