#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace llab {

// Working precision in bits, read once from LLAB_PRECISION_BITS (default 128).
long default_precision();

// Closed interval [lo, hi] with mpfr endpoints. All arithmetic rounds lo
// down and hi up, so the true value of any expression stays inside.
class Interval {
 public:
  Interval();
  explicit Interval(long prec);
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(const Interval& o);
  Interval& operator=(Interval&& o) noexcept;
  ~Interval();

  static Interval exact(double v, long prec = 0);
  static Interval exact_int(long v, long prec = 0);
  static Interval exact_int(const mpz_class& v, long prec = 0);
  static Interval from_rational(const mpq_class& q, long prec = 0);
  // Decimal literal, both endpoints from directed parsing.
  static Interval from_decimal(const std::string& s, long prec = 0);
  static Interval from_bounds(double lo, double hi, long prec = 0);
  static Interval hull(const Interval& a, const Interval& b);

  long precision() const { return prec_; }
  // Endpoints as doubles, rounded outward.
  double lo() const;
  double hi() const;
  double mid() const;
  double width() const;
  bool contains_zero() const;
  bool is_point() const;

  std::string str(int digits = 20) const;

  Interval operator-() const;
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);

  static Interval abs(const Interval& a);
  static Interval exp(const Interval& a);
  static Interval log(const Interval& a);  // requires lo > 0
  static Interval sqrt(const Interval& a); // requires lo >= 0
  static Interval min(const Interval& a, const Interval& b);
  static Interval max(const Interval& a, const Interval& b);

  Interval rounded(long prec) const;  // re-round to a (lower) precision

  bool certainly_lt(const Interval& o) const;   // hi <  o.lo
  bool certainly_leq(const Interval& o) const;  // hi <= o.lo
  bool subset_of(const Interval& o) const;
  bool overlaps(const Interval& o) const;

  // Position relative to a rational: -1 entirely below, +1 entirely above,
  // 0 if q is inside (or touches) the interval.
  int cmp(const mpq_class& q) const;
  int cmp(double v) const;

  // raw access for the implementation
  mpfr_srcptr lo_ptr() const { return lo_; }
  mpfr_srcptr hi_ptr() const { return hi_; }
  mpfr_ptr lo_ptr() { return lo_; }
  mpfr_ptr hi_ptr() { return hi_; }

 private:
  mpfr_t lo_, hi_;
  long prec_;
};

}  // namespace llab
