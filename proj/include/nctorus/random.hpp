#pragma once

#include <cstdint>
#include <memory>
#include <random>

#include "nctorus/torus_element.hpp"

namespace nct {

// Seeded generator with platform-independent draws (the std distributions are
// implementation-defined, which would break byte-identical reports).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  double normal();
  Complex complex_normal() { return {normal(), normal()}; }

 private:
  std::mt19937_64 engine_;
};

// Random element with `terms` modes of degree ≤ degree (terms == 0 fills the whole
// box [-degree, degree]ⁿ) and standard complex-normal coefficients.
TorusElement random_element(const std::shared_ptr<const ThetaMatrix>& theta, int cap, int degree,
                            int terms, Rng& rng);

}  // namespace nct
