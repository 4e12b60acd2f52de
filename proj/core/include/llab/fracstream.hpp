#pragma once

#include <cstdint>

#include "llab/realnum.hpp"

namespace llab {

// Streams frac(n*alpha) as 96-bit fixed point: one 128-bit add per step.
// |state/2^96 - frac(n*alpha)| <= error_bound(), which grows by 2^-96 per
// step and resets on reseed (direct multiprecision evaluation).
class FracStream {
 public:
  static constexpr int kFracBits = 96;

  FracStream(const RealSpec& base, std::uint64_t start_n = 1);

  std::uint64_t index() const { return n_; }

  void advance() {
    state_ = (state_ + step_) & kMask;
    ++n_;
    ++steps_;
  }

  double frac() const { return to_double(state_); }

  double dist() const {  // <n*alpha>, approximately
    double f = frac();
    return f <= 0.5 ? f : 1.0 - f;
  }

  double error_bound() const;

  void reseed(std::uint64_t n);

 private:
  static double to_double(unsigned __int128 v);
  static constexpr unsigned __int128 kMask =
      ((static_cast<unsigned __int128>(1) << kFracBits) - 1);

  RealSpec base_;
  unsigned __int128 state_ = 0, step_ = 0;
  std::uint64_t n_ = 0, steps_ = 0;
  double seed_err_ = 0;
};

}  // namespace llab
