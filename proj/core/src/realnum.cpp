#include "llab/realnum.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace llab {

namespace {

// sign of A + B*sqrt(d), d squarefree > 1
int sign_lin(const mpz_class& A, const mpz_class& B, const mpz_class& d) {
  int sa = sgn(A), sb = sgn(B);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare A^2 vs B^2 d (equality impossible, d non-square)
  mpz_class lhs = A * A, rhs = B * B * d;
  int c = cmp(lhs, rhs);
  return sa > 0 ? (c > 0 ? 1 : -1) : (c > 0 ? -1 : 1);
}

bool width_leq_pow2(const Interval& iv, long e) {
  mpfr_t w;
  mpfr_init2(w, 64);
  mpfr_sub(w, iv.hi_ptr(), iv.lo_ptr(), MPFR_RNDU);
  int ok;
  if (mpfr_zero_p(w)) {
    ok = 1;
  } else {
    mpfr_t bound;
    mpfr_init2(bound, 64);
    mpfr_set_ui_2exp(bound, 1, -e, MPFR_RNDN);
    ok = mpfr_lessequal_p(w, bound);
    mpfr_clear(bound);
  }
  mpfr_clear(w);
  return ok;
}

// reduce d to squarefree form, pulling square factors into mult
void squarefree_reduce(mpz_class& d, mpz_class& mult) {
  mult = 1;
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
    mpz_class p2 = mpz_class(p) * p;
    while (d % p2 == 0) {
      d /= p2;
      mult *= p;
    }
  }
  for (unsigned long p = 11; p * p <= 1000000ul && mpz_class(p) * p * p * p <= d;
       p += 2) {
    mpz_class p2 = mpz_class(p) * p;
    while (d % p2 == 0) {
      d /= p2;
      mult *= p;
    }
  }
  if (mpz_perfect_square_p(d.get_mpz_t())) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), d.get_mpz_t());
    mult *= r;
    d = 1;
  }
}

long bitlen(const mpz_class& n) {
  return n == 0 ? 1 : static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
}

}  // namespace

// ---------------------------------------------------------------- Surd

int Surd::sign() const { return sign_lin(a, b, d); }

int Surd::cmp(const mpq_class& q) const {
  // (a + b sqrt d)/c vs p/qq  <=>  sign((a qq - p c) + b qq sqrt d)
  const mpz_class& p = q.get_num();
  const mpz_class& qq = q.get_den();
  return sign_lin(a * qq - p * c, b * qq, d);
}

mpz_class Surd::floor() const {
  Interval iv = eval(80);
  mpz_class k;
  mpfr_get_z(k.get_mpz_t(), iv.lo_ptr(), MPFR_RNDD);
  // fix up against exact comparisons (interval is tiny, so at most a step)
  while (cmp(mpq_class(k + 1)) >= 0) k += 1;
  while (cmp(mpq_class(k)) < 0) k -= 1;
  return k;
}

static Surd make_surd_raw(mpz_class a, mpz_class b, mpz_class c, mpz_class d) {
  if (c == 0) throw std::invalid_argument("surd with zero denominator");
  if (d <= 0) throw std::invalid_argument("surd with nonpositive radicand");
  mpz_class mult;
  squarefree_reduce(d, mult);
  b *= mult;
  if (c < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
  mpz_class g = gcd(gcd(a, b), c);
  if (g > 1) {
    a /= g;
    b /= g;
    c /= g;
  }
  return Surd{a, b, c, d};
}

Surd Surd::plus(const mpq_class& q) const {
  return make_surd_raw(a * q.get_den() + q.get_num() * c, b * q.get_den(),
                       c * q.get_den(), d);
}

Surd Surd::times(const mpq_class& q) const {
  if (q == 0) throw std::invalid_argument("surd times zero");
  return make_surd_raw(a * q.get_num(), b * q.get_num(), c * q.get_den(), d);
}

Surd Surd::moebius(const mpz_class& p, const mpz_class& q, const mpz_class& r,
                   const mpz_class& s) const {
  // x = (a + b sqrt d)/c;  (p x + q)/(r x + s)
  mpz_class A1 = p * a + q * c, B1 = p * b;
  mpz_class A2 = r * a + s * c, B2 = r * b;
  mpz_class den = A2 * A2 - B2 * B2 * d;
  if (den == 0) throw std::domain_error("moebius denominator vanishes");
  return make_surd_raw(A1 * A2 - B1 * B2 * d, B1 * A2 - A1 * B2, den, d);
}

Interval Surd::eval(long prec_bits) const {
  long p = prec_bits + 16 + bitlen(a) + bitlen(b) + bitlen(d) / 2;
  for (;;) {
    Interval sd = Interval::sqrt(Interval::exact_int(d, p));
    Interval v = (Interval::exact_int(a, p) + Interval::exact_int(b, p) * sd) /
                 Interval::exact_int(c, p);
    if (width_leq_pow2(v, prec_bits)) return v;
    p *= 2;
  }
}

bool Surd::operator==(const Surd& o) const {
  return a == o.a && b == o.b && c == o.c && d == o.d;
}

// ---------------------------------------------------------------- RealSpec

RealSpec RealSpec::rational(const mpq_class& q) {
  if (q.get_den() == 0) throw std::invalid_argument("rational with q = 0");
  RealSpec r;
  r.kind_ = Kind::Rational;
  r.rat_ = q;
  r.rat_.canonicalize();
  return r;
}

RealSpec RealSpec::surd(const mpz_class& a, const mpz_class& b,
                        const mpz_class& c, const mpz_class& d) {
  Surd s = make_surd_raw(a, b, c, d);
  if (s.b == 0 || s.d == 1)
    return rational(mpq_class(s.a + s.b, s.c));  // collapsed to a rational
  RealSpec r;
  r.kind_ = Kind::Surd;
  r.surd_ = s;
  return r;
}

RealSpec RealSpec::decimal(const std::string& digits, long prec_bits) {
  long sig = 0;
  for (char ch : digits)
    if (std::isdigit(static_cast<unsigned char>(ch))) ++sig;
  long prec = prec_bits > 0 ? prec_bits
                            : std::max(64L, static_cast<long>(sig * 3.33) + 16);
  RealSpec r;
  r.kind_ = Kind::Enclosure;
  r.enc_ = Interval::from_decimal(digits, prec + 8);
  r.enc_prec_ = prec;
  r.text_ = "dec:" + digits;
  return r;
}

RealSpec RealSpec::cf(const std::vector<mpz_class>& terms,
                      const std::vector<mpz_class>& periodic) {
  if (terms.empty() && periodic.empty())
    throw std::invalid_argument("empty continued fraction");
  for (size_t i = 1; i < terms.size(); ++i)
    if (terms[i] < 1) throw std::invalid_argument("cf partial quotient < 1");
  for (const auto& t : periodic)
    if (t < 1) throw std::invalid_argument("cf periodic quotient < 1");

  // convergent recurrence over the leading terms
  mpz_class p0 = 1, q0 = 0, p1, q1;  // p1/q1 = value of terms so far
  bool have = false;
  for (const auto& t : terms) {
    if (!have) {
      p1 = t;
      q1 = 1;
      have = true;
    } else {
      mpz_class p2 = t * p1 + p0, q2 = t * q1 + q0;
      p0 = p1;
      q0 = q1;
      p1 = p2;
      q1 = q2;
    }
  }
  if (periodic.empty()) return rational(mpq_class(p1, q1));

  // periodic tail y = [b1; b2, ..., bk, y]
  mpz_class rp0 = 1, rq0 = 0, rp1, rq1;
  bool rhave = false;
  for (const auto& t : periodic) {
    if (!rhave) {
      rp1 = t;
      rq1 = 1;
      rhave = true;
    } else {
      mpz_class p2 = t * rp1 + rp0, q2 = t * rq1 + rq0;
      rp0 = rp1;
      rq0 = rq1;
      rp1 = p2;
      rq1 = q2;
    }
  }
  // y = (rp1 y + rp0)/(rq1 y + rq0)  =>  rq1 y^2 + (rq0 - rp1) y - rp0 = 0
  mpz_class disc = (rq0 - rp1) * (rq0 - rp1) + 4 * rq1 * rp0;
  Surd y = make_surd_raw(rp1 - rq0, 1, 2 * rq1, disc);
  Surd x = terms.empty() ? y : y.moebius(p1, p0, q1, q0);
  RealSpec r = surd(x.a, x.b, x.c, x.d);
  return r;
}

Interval RealSpec::eval(long prec_bits) const {
  switch (kind_) {
    case Kind::Rational: {
      long p = prec_bits + 8 + bitlen(rat_.get_num()) + bitlen(rat_.get_den());
      return Interval::from_rational(rat_, p);
    }
    case Kind::Surd:
      return surd_.eval(prec_bits);
    case Kind::Enclosure:
      return enc_;
  }
  throw std::logic_error("unreachable");
}

long RealSpec::max_precision() const {
  return kind_ == Kind::Enclosure ? enc_prec_ : (1L << 30);
}

RealSpec RealSpec::times_int(const mpz_class& n) const {
  if (n == 0) return rational(0);
  switch (kind_) {
    case Kind::Rational:
      return rational(rat_ * mpq_class(n));
    case Kind::Surd: {
      Surd s = surd_.times(mpq_class(n));
      RealSpec r;
      r.kind_ = Kind::Surd;
      r.surd_ = s;
      return r;
    }
    case Kind::Enclosure: {
      RealSpec r;
      r.kind_ = Kind::Enclosure;
      r.enc_ = enc_ * Interval::exact_int(n, enc_.precision());
      r.enc_prec_ = enc_prec_ - bitlen(n);
      r.text_ = text_;
      return r;
    }
  }
  throw std::logic_error("unreachable");
}

RealSpec RealSpec::plus_int(const mpz_class& n) const {
  switch (kind_) {
    case Kind::Rational:
      return rational(rat_ + mpq_class(n));
    case Kind::Surd: {
      Surd s = surd_.plus(mpq_class(n));
      RealSpec r;
      r.kind_ = Kind::Surd;
      r.surd_ = s;
      return r;
    }
    case Kind::Enclosure: {
      RealSpec r = *this;
      r.enc_ = enc_ + Interval::exact_int(n, enc_.precision());
      return r;
    }
  }
  throw std::logic_error("unreachable");
}

RealSpec RealSpec::negated() const { return times_int(-1); }

mpz_class RealSpec::floor(bool* ambiguous) const {
  if (ambiguous) *ambiguous = false;
  switch (kind_) {
    case Kind::Rational: {
      mpz_class f;
      mpz_fdiv_q(f.get_mpz_t(), rat_.get_num().get_mpz_t(),
                 rat_.get_den().get_mpz_t());
      return f;
    }
    case Kind::Surd:
      return surd_.floor();
    case Kind::Enclosure: {
      mpz_class flo, fhi;
      mpfr_get_z(flo.get_mpz_t(), enc_.lo_ptr(), MPFR_RNDD);
      mpfr_get_z(fhi.get_mpz_t(), enc_.hi_ptr(), MPFR_RNDD);
      if (flo != fhi && ambiguous) *ambiguous = true;
      return flo;
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<mpz_class> RealSpec::nearest_ints(bool* ambiguous) const {
  if (ambiguous) *ambiguous = false;
  const mpq_class half(1, 2);
  switch (kind_) {
    case Kind::Rational: {
      mpz_class f = floor();
      mpq_class frac = rat_ - mpq_class(f);
      int c = ::cmp(frac, half);
      if (c < 0) return {f};
      if (c > 0) return {f + 1};
      return {f, f + 1};  // exact tie
    }
    case Kind::Surd: {
      mpz_class f = surd_.floor();
      int c = surd_.cmp(mpq_class(2 * f + 1, 2));
      return c < 0 ? std::vector<mpz_class>{f}
                   : std::vector<mpz_class>{f + 1};
    }
    case Kind::Enclosure: {
      Interval y = enc_ + Interval::from_rational(half, enc_.precision());
      mpz_class mlo, mhi;
      mpfr_get_z(mlo.get_mpz_t(), y.lo_ptr(), MPFR_RNDD);
      mpfr_get_z(mhi.get_mpz_t(), y.hi_ptr(), MPFR_RNDD);
      if (mlo == mhi) return {mlo};
      if (ambiguous) *ambiguous = true;
      std::vector<mpz_class> out;
      for (mpz_class m = mlo; m <= mhi; ++m) out.push_back(m);
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

Interval RealSpec::nearest_distance(long prec_bits) const {
  bool amb = false;
  std::vector<mpz_class> ms = nearest_ints(&amb);
  Interval best = Interval::abs(eval(prec_bits + bitlen(ms.front()) + 4) -
                                Interval::exact_int(ms.front()));
  for (size_t i = 1; i < ms.size(); ++i) {
    Interval cand = Interval::abs(eval(prec_bits + bitlen(ms[i]) + 4) -
                                  Interval::exact_int(ms[i]));
    best = Interval::min(best, cand);
  }
  return best;
}

int RealSpec::cmp(const mpq_class& q, bool* decided) const {
  if (decided) *decided = true;
  switch (kind_) {
    case Kind::Rational:
      return ::cmp(rat_, q);
    case Kind::Surd:
      return surd_.cmp(q);
    case Kind::Enclosure: {
      int c = enc_.cmp(q);
      if (c == 0 && decided) *decided = false;
      return c;
    }
  }
  throw std::logic_error("unreachable");
}

std::string RealSpec::describe() const {
  if (!text_.empty()) return text_;
  switch (kind_) {
    case Kind::Rational:
      return "rat:" + rat_.get_str();
    case Kind::Surd:
      return "surd:(" + surd_.a.get_str() + "+" + surd_.b.get_str() +
             "*sqrt(" + surd_.d.get_str() + "))/" + surd_.c.get_str();
    case Kind::Enclosure:
      return "dec:?";
  }
  return "?";
}

// ---------------------------------------------------------------- parsing

namespace {

mpz_class parse_int(const std::string& s, size_t& i) {
  size_t start = i;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
    throw std::invalid_argument("expected integer in number spec: " + s);
  return mpz_class(s.substr(start, i - start));
}

void expect(const std::string& s, size_t& i, char ch) {
  if (i >= s.size() || s[i] != ch)
    throw std::invalid_argument(std::string("expected '") + ch +
                                "' in number spec: " + s);
  ++i;
}

std::vector<mpz_class> parse_int_list(const std::string& body, char first_sep) {
  std::vector<mpz_class> out;
  size_t i = 0;
  bool first = true;
  while (i < body.size()) {
    out.push_back(parse_int(body, i));
    if (i < body.size()) {
      char sep = first ? first_sep : ',';
      expect(body, i, sep);
    }
    first = false;
  }
  return out;
}

}  // namespace

RealSpec RealSpec::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("number spec needs a tag prefix: " + text);
  std::string tag = text.substr(0, colon);
  std::string body = text.substr(colon + 1);
  if (tag == "dec") {
    RealSpec r = decimal(body);
    r.text_ = text;
    return r;
  }
  if (tag == "rat") {
    auto slash = body.find('/');
    mpq_class q;
    if (slash == std::string::npos)
      q = mpq_class(mpz_class(body));
    else
      q = mpq_class(mpz_class(body.substr(0, slash)),
                    mpz_class(body.substr(slash + 1)));
    RealSpec r = rational(q);
    r.text_ = text;
    return r;
  }
  if (tag == "surd") {
    // (<a>+<b>*sqrt(<d>))/<c>
    size_t i = 0;
    expect(body, i, '(');
    mpz_class a = parse_int(body, i);
    mpz_class b;
    if (body[i] == '+') {
      ++i;
      b = parse_int(body, i);
    } else if (body[i] == '-') {
      ++i;
      b = -parse_int(body, i);
    } else {
      throw std::invalid_argument("bad surd spec: " + text);
    }
    expect(body, i, '*');
    if (body.compare(i, 5, "sqrt(") != 0)
      throw std::invalid_argument("bad surd spec: " + text);
    i += 5;
    mpz_class d = parse_int(body, i);
    expect(body, i, ')');
    expect(body, i, ')');
    expect(body, i, '/');
    mpz_class c = parse_int(body, i);
    RealSpec r = surd(a, b, c, d);
    r.text_ = text;
    return r;
  }
  if (tag == "cf") {
    std::string main = body, tail;
    auto bar = body.find("|periodic:");
    if (bar != std::string::npos) {
      main = body.substr(0, bar);
      tail = body.substr(bar + 10);
    }
    auto strip = [](std::string s) {
      if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw std::invalid_argument("cf spec needs [...] lists");
      return s.substr(1, s.size() - 2);
    };
    std::vector<mpz_class> terms = parse_int_list(strip(main), ';');
    std::vector<mpz_class> periodic;
    if (!tail.empty()) periodic = parse_int_list(strip(tail), ',');
    RealSpec r = cf(terms, periodic);
    r.text_ = text;
    return r;
  }
  throw std::invalid_argument("unknown number spec tag: " + text);
}

// ------------------------------------------------------- littlewood values

Interval littlewood_value(const mpz_class& n, const RealSpec& alpha,
                          const RealSpec& beta, long prec_bits) {
  if (n < 1) throw std::invalid_argument("littlewood_value needs n >= 1");
  long p = prec_bits + 2 * bitlen(n) + 16;
  Interval d1 = alpha.times_int(n).nearest_distance(p);
  Interval d2 = beta.times_int(n).nearest_distance(p);
  return Interval::exact_int(n, p) * d1 * d2;
}

namespace {

// exact value of <n x> when x is Rational or Surd; nullopt on tie (then the
// distance is exactly 1/2, returned as rational by the caller)
struct ExactDist {
  bool is_rational;
  mpq_class q;
  Surd s;
};

std::optional<ExactDist> exact_dist(const RealSpec& x) {
  if (!x.exact()) return std::nullopt;
  std::vector<mpz_class> ms = x.nearest_ints();
  const mpz_class& m = ms.front();
  if (x.is_rational_value()) {
    mpq_class v = x.rational_value() - mpq_class(m);
    if (v < 0) v = -v;
    return ExactDist{true, v, Surd{}};
  }
  Surd s = x.surd_value().plus(mpq_class(-m));
  if (s.sign() < 0) s = s.negated();
  return ExactDist{false, mpq_class(), s};
}

}  // namespace

Decision compare_littlewood(const mpz_class& n, const RealSpec& alpha,
                            const RealSpec& beta, const mpq_class& threshold,
                            bool closed, long max_prec_bits) {
  for (long p = 96; p <= max_prec_bits; p *= 2) {
    Interval v = littlewood_value(n, alpha, beta, p);
    int c = v.cmp(threshold);
    if (c < 0) return Decision::Below;
    if (c > 0) return Decision::Above;
    if (!alpha.exact() || !beta.exact()) break;  // cannot refine further
  }
  // exact fallback for decidable operand combinations
  auto da = exact_dist(alpha.times_int(n));
  auto db = exact_dist(beta.times_int(n));
  if (da && db) {
    int c = 2;  // sentinel
    if (da->is_rational && db->is_rational) {
      mpq_class v = mpq_class(n) * da->q * db->q;
      c = ::cmp(v, threshold);
    } else if (da->is_rational != db->is_rational) {
      const mpq_class& r = da->is_rational ? da->q : db->q;
      const Surd& s = da->is_rational ? db->s : da->s;
      if (r == 0) c = ::cmp(mpq_class(0), threshold);
      else c = s.times(mpq_class(n) * r).cmp(threshold);
    } else if (da->s.d == db->s.d) {
      const Surd &s1 = da->s, &s2 = db->s;
      mpz_class A = s1.a * s2.a + s1.b * s2.b * s1.d;
      mpz_class B = s1.a * s2.b + s1.b * s2.a;
      mpz_class C = s1.c * s2.c;
      if (B == 0)
        c = ::cmp(mpq_class(A * n, C), threshold);
      else
        c = make_surd_raw(A * n, B * n, C, s1.d).cmp(threshold);
    }
    if (c != 2) {
      if (c < 0) return Decision::Below;
      if (c > 0) return Decision::Above;
      return closed ? Decision::Below : Decision::Above;  // exact equality
    }
  }
  return Decision::Boundary;
}

// ------------------------------------------------------------ convergents

std::vector<mpz_class> cf_terms(const RealSpec& x, int count, bool* exhausted) {
  if (exhausted) *exhausted = false;
  std::vector<mpz_class> out;
  if (count <= 0) return out;
  switch (x.kind()) {
    case RealSpec::Kind::Rational: {
      mpz_class p = x.rational_value().get_num(), q = x.rational_value().get_den();
      while (static_cast<int>(out.size()) < count) {
        mpz_class a, r;
        mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
        out.push_back(a);
        if (r == 0) {
          if (exhausted && static_cast<int>(out.size()) < count)
            *exhausted = true;
          break;
        }
        p = q;
        q = r;
      }
      return out;
    }
    case RealSpec::Kind::Surd: {
      const Surd& s = x.surd_value();
      // put into (P + sqrt(D))/Q form with Q | D - P^2
      mpz_class P, D, Q;
      if (s.b > 0) {
        P = s.a;
        D = s.b * s.b * s.d;
        Q = s.c;
      } else {
        P = -s.a;
        D = s.b * s.b * s.d;
        Q = -s.c;
      }
      if ((D - P * P) % Q != 0) {
        mpz_class aq = abs(Q);
        P *= aq;
        D *= Q * Q;
        Q *= aq;
      }
      mpz_class sq;
      mpz_sqrt(sq.get_mpz_t(), D.get_mpz_t());
      while (static_cast<int>(out.size()) < count) {
        mpz_class a;
        if (Q > 0) {
          mpz_class num = P + sq;
          mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
        } else {
          mpz_class num = P + sq, aq = -Q, f;
          mpz_fdiv_q(f.get_mpz_t(), num.get_mpz_t(), aq.get_mpz_t());
          a = -f - 1;
        }
        out.push_back(a);
        mpz_class P2 = a * Q - P;
        mpz_class Q2 = (D - P2 * P2) / Q;
        P = P2;
        Q = Q2;
      }
      return out;
    }
    case RealSpec::Kind::Enclosure: {
      Interval cur = x.eval(x.max_precision());
      while (static_cast<int>(out.size()) < count) {
        mpz_class flo, fhi;
        mpfr_get_z(flo.get_mpz_t(), cur.lo_ptr(), MPFR_RNDD);
        mpfr_get_z(fhi.get_mpz_t(), cur.hi_ptr(), MPFR_RNDD);
        if (flo != fhi) {
          if (exhausted) *exhausted = true;  // precision ran out
          break;
        }
        out.push_back(flo);
        Interval frac = cur - Interval::exact_int(flo, cur.precision());
        if (frac.cmp(mpq_class(0)) <= 0) break;  // cannot certify positivity
        cur = Interval::exact_int(1, cur.precision()) / frac;
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

ConvergentList convergents(const RealSpec& x, int count) {
  ConvergentList out;
  bool ex = false;
  std::vector<mpz_class> terms = cf_terms(x, count, &ex);
  if (x.kind() == RealSpec::Kind::Enclosure)
    out.truncated = ex;
  else
    out.exhausted = ex || (x.is_rational_value() &&
                           static_cast<int>(terms.size()) < count);
  mpz_class p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // p_{-1}/q_{-1}, p_{-2}/q_{-2}
  for (const auto& a : terms) {
    mpz_class p2 = a * p0 + p1, q2 = a * q0 + q1;
    p1 = p0;
    q1 = q0;
    p0 = p2;
    q0 = q2;
    out.pq.emplace_back(p0, q0);
  }
  return out;
}

}  // namespace llab
