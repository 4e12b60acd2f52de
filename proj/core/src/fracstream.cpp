#include "llab/fracstream.hpp"

#include <cmath>

namespace llab {

namespace {

// lower 96-bit fixed point of an interval's lo endpoint, in [0, 2^96)
unsigned __int128 fixed96(const Interval& frac_iv) {
  mpfr_t t;
  mpfr_init2(t, 160);
  mpfr_mul_2ui(t, frac_iv.lo_ptr(), FracStream::kFracBits, MPFR_RNDD);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDD);
  mpfr_clear(t);
  if (z < 0) z = 0;
  unsigned __int128 out = 0;
  // export 96 bits via two 64-bit limbs
  mpz_class hi = z >> 64;
  mpz_class lo = z & mpz_class((mpz_class(1) << 64) - 1);
  out = (static_cast<unsigned __int128>(hi.get_ui()) << 64) | lo.get_ui();
  return out;
}

}  // namespace

FracStream::FracStream(const RealSpec& base, std::uint64_t start_n)
    : base_(base) {
  // step = frac(alpha) rounded down to 96 bits
  RealSpec a = base_;
  mpz_class fl = a.floor();
  Interval frac_a = a.eval(160) - Interval::exact_int(fl, 200);
  step_ = fixed96(frac_a) & kMask;
  reseed(start_n);
}

void FracStream::reseed(std::uint64_t n) {
  RealSpec scaled = base_.times_int(mpz_class(static_cast<unsigned long>(n)));
  bool amb = false;
  mpz_class fl = scaled.floor(&amb);
  Interval frac_iv = scaled.eval(160) - Interval::exact_int(fl, 200);
  state_ = fixed96(frac_iv) & kMask;
  n_ = n;
  steps_ = 0;
  seed_err_ = frac_iv.width() + std::ldexp(1.0, -kFracBits);
  if (amb) seed_err_ += 1.0;  // degenerate; callers reseed with exact kinds
}

double FracStream::error_bound() const {
  return seed_err_ + static_cast<double>(steps_ + 1) * std::ldexp(1.0, -kFracBits);
}

double FracStream::to_double(unsigned __int128 v) {
  return std::ldexp(static_cast<double>(static_cast<std::uint64_t>(v >> 32)),
                    -64) +
         std::ldexp(static_cast<double>(static_cast<std::uint64_t>(
                        v & 0xffffffffull)),
                    -96);
}

}  // namespace llab
