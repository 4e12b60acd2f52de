#pragma once

#include <cstdint>
#include <utility>

namespace llab {

// Low-discrepancy 2D sampler (Halton, bases 2 and 3); the seed offsets the
// index, so runs with the same seed are reproducible.
class HaltonSampler {
 public:
  explicit HaltonSampler(std::uint64_t seed = 0) : index_(seed + 1) {}

  std::pair<double, double> next();

 private:
  static double radical_inverse(std::uint64_t i, unsigned base);
  std::uint64_t index_;
};

}  // namespace llab
