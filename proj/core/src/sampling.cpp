#include "llab/sampling.hpp"

namespace llab {

double HaltonSampler::radical_inverse(std::uint64_t i, unsigned base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

std::pair<double, double> HaltonSampler::next() {
  std::uint64_t i = index_++;
  return {radical_inverse(i, 2), radical_inverse(i, 3)};
}

}  // namespace llab
