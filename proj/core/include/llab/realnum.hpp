#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "llab/interval.hpp"

namespace llab {

// Quadratic surd (a + b*sqrt(d))/c in normal form: c > 0, gcd(a,b,c) = 1,
// d squarefree and > 1, b != 0.
struct Surd {
  mpz_class a, b, c, d;

  int sign() const;                       // sign of the value
  int cmp(const mpq_class& q) const;      // exact three-way compare
  mpz_class floor() const;
  Surd plus(const mpq_class& q) const;
  Surd times(const mpq_class& q) const;   // q != 0
  Surd negated() const { return Surd{-a, -b, c, d}; }
  // Moebius image (p*x + q)/(r*x + s), ps - qr != 0; stays in Q(sqrt d).
  Surd moebius(const mpz_class& p, const mpz_class& q, const mpz_class& r,
               const mpz_class& s) const;
  Interval eval(long prec_bits) const;
  bool operator==(const Surd& o) const;
};

// A real number given exactly (rational or quadratic surd) or as a
// high-precision enclosure (decimal input, cubic irrationals, ...).
// Continued-fraction inputs are normalized at construction: a finite CF is
// a rational, a CF with periodic tail is a quadratic surd.
class RealSpec {
 public:
  enum class Kind { Rational, Surd, Enclosure };

  static RealSpec rational(const mpq_class& q);
  static RealSpec integer(long v) { return rational(mpq_class(v)); }
  static RealSpec surd(const mpz_class& a, const mpz_class& b,
                       const mpz_class& c, const mpz_class& d);
  static RealSpec sqrt_of(unsigned long d) { return surd(0, 1, 1, d); }
  static RealSpec decimal(const std::string& digits, long prec_bits = 0);
  static RealSpec cf(const std::vector<mpz_class>& terms,
                     const std::vector<mpz_class>& periodic = {});
  // grammar: dec:<d>, rat:<p>/<q>, surd:(<a>+<b>*sqrt(<d>))/<c>,
  //          cf:[a0;a1,...] with optional |periodic:[...]
  static RealSpec parse(const std::string& text);

  Kind kind() const { return kind_; }
  bool exact() const { return kind_ != Kind::Enclosure; }
  bool is_rational_value() const { return kind_ == Kind::Rational; }
  const mpq_class& rational_value() const { return rat_; }
  const Surd& surd_value() const { return surd_; }

  // Certified enclosure of the value with width <= 2^-prec_bits for exact
  // kinds; an Enclosure cannot be refined past its stored precision.
  Interval eval(long prec_bits) const;
  long max_precision() const;

  RealSpec times_int(const mpz_class& n) const;
  RealSpec plus_int(const mpz_class& n) const;
  RealSpec negated() const;

  mpz_class floor(bool* ambiguous = nullptr) const;
  // Nearest integer(s): two candidates exactly at a half-integer tie.
  std::vector<mpz_class> nearest_ints(bool* ambiguous = nullptr) const;
  // <x> = distance to nearest integer, certified.
  Interval nearest_distance(long prec_bits) const;
  // exact three-way compare to a rational; 0 means equal for exact kinds,
  // undecided for enclosures (*decided reports which)
  int cmp(const mpq_class& q, bool* decided = nullptr) const;

  std::string describe() const;

 private:
  RealSpec() = default;
  Kind kind_ = Kind::Rational;
  mpq_class rat_;
  Surd surd_{};
  Interval enc_;       // Enclosure payload
  long enc_prec_ = 0;  // usable precision of the enclosure
  std::string text_;
};

// n<na><nb> as a certified interval.
Interval littlewood_value(const mpz_class& n, const RealSpec& alpha,
                          const RealSpec& beta, long prec_bits);

enum class Decision { Below, Above, Boundary };

// Decide n<na><nb> vs a rational threshold (strict '<' or closed '<=').
// Refines precision up to max_prec_bits, then falls back to exact
// arithmetic when the operands allow it; otherwise Boundary.
Decision compare_littlewood(const mpz_class& n, const RealSpec& alpha,
                            const RealSpec& beta, const mpq_class& threshold,
                            bool closed, long max_prec_bits = 4096);

struct ConvergentList {
  std::vector<std::pair<mpz_class, mpz_class>> pq;  // (p_i, q_i), lowest terms
  bool exhausted = false;   // rational input ran out of partial quotients
  bool truncated = false;   // enclosure precision ran out
};

ConvergentList convergents(const RealSpec& x, int count);

// Partial quotients of the continued fraction of x (a0; a1, a2, ...).
std::vector<mpz_class> cf_terms(const RealSpec& x, int count,
                                bool* exhausted = nullptr);

}  // namespace llab
