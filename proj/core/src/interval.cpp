#include "llab/interval.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace llab {

long default_precision() {
  static long prec = [] {
    const char* env = std::getenv("LLAB_PRECISION_BITS");
    if (env) {
      long p = std::atol(env);
      if (p >= 16 && p <= 1 << 20) return p;
    }
    return 128L;
  }();
  return prec;
}

static long pick(long prec) { return prec > 0 ? prec : default_precision(); }

Interval::Interval() : Interval(default_precision()) {}

Interval::Interval(long prec) : prec_(pick(prec)) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
  if (this != &o) {
    if (prec_ != o.prec_) {
      mpfr_set_prec(lo_, o.prec_);
      mpfr_set_prec(hi_, o.prec_);
      prec_ = o.prec_;
    }
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
  if (this != &o) {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    std::swap(prec_, o.prec_);
  }
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::exact(double v, long prec) {
  Interval r(pick(prec));
  mpfr_set_d(r.lo_, v, MPFR_RNDD);
  mpfr_set_d(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval Interval::exact_int(long v, long prec) {
  Interval r(pick(prec));
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval Interval::exact_int(const mpz_class& v, long prec) {
  Interval r(pick(prec));
  mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_rational(const mpq_class& q, long prec) {
  Interval r(pick(prec));
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_decimal(const std::string& s, long prec) {
  Interval r(pick(prec));
  if (mpfr_set_str(r.lo_, s.c_str(), 10, MPFR_RNDD) != 0 &&
      mpfr_nan_p(r.lo_))
    throw std::invalid_argument("bad decimal literal: " + s);
  mpfr_set_str(r.hi_, s.c_str(), 10, MPFR_RNDU);
  return r;
}

Interval Interval::from_bounds(double lo, double hi, long prec) {
  Interval r(pick(prec));
  mpfr_set_d(r.lo_, lo, MPFR_RNDD);
  mpfr_set_d(r.hi_, hi, MPFR_RNDU);
  return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

double Interval::lo() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid() const {
  mpfr_t m;
  mpfr_init2(m, prec_);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  double r = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return r;
}

double Interval::width() const {
  mpfr_t w;
  mpfr_init2(w, prec_);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double r = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return r;
}

bool Interval::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool Interval::is_point() const { return mpfr_equal_p(lo_, hi_); }

std::string Interval::str(int digits) const {
  char* s1 = nullptr;
  char* s2 = nullptr;
  mpfr_asprintf(&s1, "%.*Rg", digits, lo_);
  mpfr_asprintf(&s2, "%.*Rg", digits, hi_);
  std::string r = std::string("[") + s1 + ", " + s2 + "]";
  mpfr_free_str(s1);
  mpfr_free_str(s2);
  return r;
}

Interval Interval::operator-() const {
  Interval r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_t t, best;
  mpfr_init2(t, r.prec_);
  mpfr_init2(best, r.prec_);
  // lower endpoint: min over the four corner products, rounded down
  mpfr_mul(best, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_min(best, best, t, MPFR_RNDD);
  mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
  mpfr_min(best, best, t, MPFR_RNDD);
  mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDD);
  mpfr_min(best, best, t, MPFR_RNDD);
  mpfr_set(r.lo_, best, MPFR_RNDD);
  // upper endpoint: max over the four, rounded up
  mpfr_mul(best, a.lo_, b.lo_, MPFR_RNDU);
  mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDU);
  mpfr_max(best, best, t, MPFR_RNDU);
  mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDU);
  mpfr_max(best, best, t, MPFR_RNDU);
  mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
  mpfr_max(best, best, t, MPFR_RNDU);
  mpfr_set(r.hi_, best, MPFR_RNDU);
  mpfr_clear(t);
  mpfr_clear(best);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero())
    throw std::domain_error("interval division by interval containing 0");
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_t t, best;
  mpfr_init2(t, r.prec_);
  mpfr_init2(best, r.prec_);
  mpfr_div(best, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_div(t, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_min(best, best, t, MPFR_RNDD);
  mpfr_div(t, a.hi_, b.lo_, MPFR_RNDD);
  mpfr_min(best, best, t, MPFR_RNDD);
  mpfr_div(t, a.hi_, b.hi_, MPFR_RNDD);
  mpfr_min(best, best, t, MPFR_RNDD);
  mpfr_set(r.lo_, best, MPFR_RNDD);
  mpfr_div(best, a.lo_, b.lo_, MPFR_RNDU);
  mpfr_div(t, a.lo_, b.hi_, MPFR_RNDU);
  mpfr_max(best, best, t, MPFR_RNDU);
  mpfr_div(t, a.hi_, b.lo_, MPFR_RNDU);
  mpfr_max(best, best, t, MPFR_RNDU);
  mpfr_div(t, a.hi_, b.hi_, MPFR_RNDU);
  mpfr_max(best, best, t, MPFR_RNDU);
  mpfr_set(r.hi_, best, MPFR_RNDU);
  mpfr_clear(t);
  mpfr_clear(best);
  return r;
}

Interval Interval::abs(const Interval& a) {
  Interval r(a.prec_);
  if (mpfr_sgn(a.lo_) >= 0) return a;
  if (mpfr_sgn(a.hi_) <= 0) return -a;
  // straddles zero
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::exp(const Interval& a) {
  Interval r(a.prec_);
  mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::log(const Interval& a) {
  if (mpfr_sgn(a.lo_) <= 0) throw std::domain_error("log of nonpositive interval");
  Interval r(a.prec_);
  mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::sqrt(const Interval& a) {
  if (mpfr_sgn(a.lo_) < 0) throw std::domain_error("sqrt of negative interval");
  Interval r(a.prec_);
  mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::min(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::max(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::rounded(long prec) const {
  Interval r(pick(prec));
  mpfr_set(r.lo_, lo_, MPFR_RNDD);
  mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

bool Interval::certainly_lt(const Interval& o) const {
  return mpfr_less_p(hi_, o.lo_);
}

bool Interval::certainly_leq(const Interval& o) const {
  return mpfr_lessequal_p(hi_, o.lo_);
}

bool Interval::subset_of(const Interval& o) const {
  return mpfr_greaterequal_p(lo_, o.lo_) && mpfr_lessequal_p(hi_, o.hi_);
}

bool Interval::overlaps(const Interval& o) const {
  return !certainly_lt(o) && !o.certainly_lt(*this);
}

int Interval::cmp(const mpq_class& q) const {
  if (mpfr_cmp_q(hi_, q.get_mpq_t()) < 0) return -1;
  if (mpfr_cmp_q(lo_, q.get_mpq_t()) > 0) return 1;
  return 0;
}

int Interval::cmp(double v) const {
  if (mpfr_cmp_d(hi_, v) < 0) return -1;
  if (mpfr_cmp_d(lo_, v) > 0) return 1;
  return 0;
}

}  // namespace llab
