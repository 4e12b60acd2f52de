#include "llab/excursions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "llab/counting.hpp"

namespace llab {

namespace {

constexpr double kUnionTol = 1e-12;

void require_irrational(const RealSpec& x, const char* who) {
  if (x.is_rational_value())
    throw std::invalid_argument(std::string(who) +
                                ": rational inputs are rejected");
}

long prec_cap(const RealSpec& a, const RealSpec& b) {
  return std::max(192L, std::min({4096L, a.max_precision(), b.max_precision()}));
}

enum class Meets { Yes, No, Ambiguous };

// Does {s <= S1, t <= S2, s+t >= L} meet [0,T]^2 (closed)?
Meets meets_square(const Interval& S1, const Interval& S2, const Interval& L,
                   double T) {
  Interval tt = Interval::exact(T, S1.precision());
  Interval reach = Interval::min(S1, tt) + Interval::min(S2, tt) - L;
  if (S1.hi() < 0 || S2.hi() < 0 || reach.hi() < 0) return Meets::No;
  if (S1.lo() >= 0 && S2.lo() >= 0 && reach.lo() >= 0) return Meets::Yes;
  return Meets::Ambiguous;
}

struct BuildResult {
  Excursion e;
  Meets meets;
  bool usable = false;  // r enclosures separated from zero
};

BuildResult build(std::uint64_t n, const mpz_class& m1, const mpz_class& m2,
                  const RealSpec& alpha, const RealSpec& beta,
                  const mpq_class& eps, double T, long prec) {
  BuildResult out;
  mpz_class nz(static_cast<unsigned long>(n));
  Interval r1 =
      Interval::abs(alpha.times_int(nz).plus_int(m1).eval(prec));
  Interval r2 = Interval::abs(beta.times_int(nz).plus_int(m2).eval(prec));
  if (r1.lo() <= 0 || r2.lo() <= 0) return out;
  Interval ie = Interval::from_rational(eps, prec);
  Interval in = Interval::exact_int(nz, prec);
  Excursion& e = out.e;
  e.n = n;
  e.m1 = m1;
  e.m2 = m2;
  e.r1 = r1;
  e.r2 = r2;
  e.S1 = Interval::log(ie / r1);
  e.S2 = Interval::log(ie / r2);
  e.L = Interval::log(in / ie);
  e.leg = e.S1 + e.S2 - e.L;
  out.meets = meets_square(e.S1, e.S2, e.L, T);
  out.usable = true;
  return out;
}

std::vector<mpz_class> companion_candidates(const RealSpec& x,
                                            const mpz_class& n) {
  std::vector<mpz_class> out;
  for (const mpz_class& k : x.times_int(n).nearest_ints()) out.push_back(-k);
  return out;
}

}  // namespace

std::optional<Excursion> excursion_for(std::uint64_t n, const RealSpec& alpha,
                                       const RealSpec& beta,
                                       const mpq_class& eps, double T) {
  require_irrational(alpha, "excursion_for");
  require_irrational(beta, "excursion_for");
  if (eps <= 0 || eps > mpq_class(1, 2) || !(T > 0))
    throw std::invalid_argument("excursion_for: need 0<eps<=1/2 and T>0");
  if (n == 0) throw std::invalid_argument("excursion_for: n must be positive");
  mpz_class nz(static_cast<unsigned long>(n));
  auto c1 = companion_candidates(alpha, nz);
  auto c2 = companion_candidates(beta, nz);
  long cap = prec_cap(alpha, beta);
  for (long prec = 192;; prec = std::min(cap, prec * 2)) {
    bool ambiguous = false;
    std::vector<Excursion> qualifying;
    for (const auto& m1 : c1)
      for (const auto& m2 : c2) {
        BuildResult b = build(n, m1, m2, alpha, beta, eps, T, prec);
        if (!b.usable) {
          ambiguous = true;
          continue;
        }
        if (b.meets == Meets::Yes) {
          qualifying.push_back(std::move(b.e));
        } else if (b.meets == Meets::Ambiguous) {
          ambiguous = true;
          b.e.boundary = true;
          qualifying.push_back(std::move(b.e));
        }
      }
    if (ambiguous && prec < cap) continue;
    if (qualifying.empty()) return std::nullopt;
    return qualifying.front();
  }
}

int uniqueness_check(std::uint64_t n, const RealSpec& alpha,
                     const RealSpec& beta, const mpq_class& eps, double T) {
  require_irrational(alpha, "uniqueness_check");
  require_irrational(beta, "uniqueness_check");
  mpz_class nz(static_cast<unsigned long>(n));
  // cheap rejections: a triangle meeting [0,T]^2 needs L <= 2T and both
  // r_i <= eps (otherwise S_i < 0), so a certified distance above eps at
  // low precision rules the whole 5x5 companion window out at once
  Interval l_bound = Interval::exact_int(nz, 96) /
                     Interval::from_rational(eps, 96);
  if (Interval::log(l_bound).lo() > 2 * T) return 0;
  if (alpha.times_int(nz).nearest_distance(96).cmp(eps) > 0) return 0;
  if (beta.times_int(nz).nearest_distance(96).cmp(eps) > 0) return 0;
  mpz_class f1 = alpha.times_int(nz).floor();
  mpz_class f2 = beta.times_int(nz).floor();
  long cap = prec_cap(alpha, beta);
  for (long prec = 192;; prec = std::min(cap, prec * 2)) {
    int count = 0;
    bool ambiguous = false;
    // exhaustive over every companion that can reach |n*x + m| <= eps < 1/2
    for (int d1 = -2; d1 <= 2; ++d1)
      for (int d2 = -2; d2 <= 2; ++d2) {
        mpz_class m1 = -(f1 + d1), m2 = -(f2 + d2);
        BuildResult b = build(n, m1, m2, alpha, beta, eps, T, prec);
        if (!b.usable) continue;  // r far from 0 is impossible here
        if (b.meets == Meets::Yes) ++count;
        if (b.meets == Meets::Ambiguous) {
          ambiguous = true;
          ++count;
        }
      }
    if (ambiguous && prec < cap) continue;
    return count;
  }
}

std::vector<Excursion> all_excursions(const RealSpec& alpha,
                                      const RealSpec& beta,
                                      const mpq_class& eps, double T,
                                      int threads) {
  require_irrational(alpha, "all_excursions");
  require_irrational(beta, "all_excursions");
  if (eps <= 0 || eps > mpq_class(1, 2) || !(T > 0))
    throw std::invalid_argument("all_excursions: need 0<eps<=1/2 and T>0");
  // any triangle meeting the square has log(n/eps) <= 2T
  Interval bound = Interval::from_rational(eps, 96) *
                   Interval::exp(Interval::exact(2 * T, 96));
  double nmax_d = std::floor(bound.hi());
  if (nmax_d < 1) return {};
  if (nmax_d > static_cast<double>(kMaxCountN))
    throw std::range_error("all_excursions: eps*e^{2T} beyond 2^40");
  std::uint64_t nmax = static_cast<std::uint64_t>(nmax_d);

  mpq_class thr = eps * eps * eps;  // leg >= 0 iff value <= eps^3
  CountReport rep =
      count_below(alpha, beta, thr, nmax, threads, /*store_hits=*/true,
                  /*hits_cap=*/5000000);
  if (rep.hits_truncated)
    throw std::range_error("all_excursions: candidate stream overflow");
  std::vector<std::uint64_t> cand;
  for (const auto& h : rep.hits) cand.push_back(h.n);
  cand.insert(cand.end(), rep.boundary_cases.begin(),
              rep.boundary_cases.end());
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  std::vector<Excursion> out;
  for (std::uint64_t n : cand) {
    auto e = excursion_for(n, alpha, beta, eps, T);
    if (e) out.push_back(std::move(*e));
  }
  return out;
}

std::vector<std::pair<double, double>> clip_triangle(double S1, double S2,
                                                     double L, double T) {
  using Pt = std::pair<double, double>;
  // half-plane a*x + b*y <= c
  struct Half {
    double a, b, c;
  };
  std::vector<Pt> poly = {{S1, S2}, {S1, L - S1}, {L - S2, S2}};
  if (S1 + S2 < L) return {};
  const Half cuts[] = {{-1, 0, 0}, {1, 0, T}, {0, -1, 0}, {0, 1, T}};
  for (const Half& h : cuts) {
    std::vector<Pt> next;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      Pt p = poly[i], q = poly[(i + 1) % poly.size()];
      double fp = h.a * p.first + h.b * p.second - h.c;
      double fq = h.a * q.first + h.b * q.second - h.c;
      if (fp <= 0) next.push_back(p);
      if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) {
        double u = fp / (fp - fq);
        next.push_back({p.first + u * (q.first - p.first),
                        p.second + u * (q.second - p.second)});
      }
    }
    poly = std::move(next);
    if (poly.empty()) return {};
  }
  return poly;
}

std::pair<Interval, Interval> project(const Excursion& e, double T) {
  Interval tt = Interval::exact(T, e.S1.precision());
  Interval hi = Interval::min(e.S1, tt) + Interval::min(e.S2, tt);
  if ((hi - e.L).hi() < 0 || e.S1.hi() < 0 || e.S2.hi() < 0)
    throw std::invalid_argument("project: triangle misses the square");
  return {e.L, hi};
}

IntervalSet interval_union(const std::vector<std::pair<double, double>>& iv) {
  IntervalSet out;
  std::vector<std::pair<double, double>> v = iv;
  std::sort(v.begin(), v.end());
  for (const auto& [a, b] : v) {
    if (b < a) continue;
    if (!out.parts.empty() && a <= out.parts.back().second) {
      out.parts.back().second = std::max(out.parts.back().second, b);
    } else {
      out.parts.push_back({a, b});
    }
  }
  for (const auto& [a, b] : out.parts) out.length += b - a;
  return out;
}

XiSelection maximal_intervals(
    const std::vector<std::pair<double, double>>& iv) {
  XiSelection out;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < iv.size(); ++i)
    if (iv[i].second > iv[i].first) order.push_back(i);
  // lo ascending; ties: hi descending, then original index
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (iv[a].first != iv[b].first) return iv[a].first < iv[b].first;
    if (iv[a].second != iv[b].second) return iv[a].second > iv[b].second;
    return a < b;
  });
  double max_hi = -1e300;
  double kept_lo = 0, kept_hi = 0;
  for (std::size_t idx : order) {
    auto [a, b] = iv[idx];
    if (b > max_hi) {
      out.kept.push_back(idx);
      max_hi = b;
      kept_lo = a;
      kept_hi = b;
    } else if (a == kept_lo && b == kept_hi) {
      out.duplicates.push_back(idx);
    }
  }
  std::sort(out.kept.begin(), out.kept.end());

  std::vector<std::pair<double, double>> all_pos, kept_iv;
  for (std::size_t i = 0; i < iv.size(); ++i)
    if (iv[i].second > iv[i].first) all_pos.push_back(iv[i]);
  for (std::size_t i : out.kept) kept_iv.push_back(iv[i]);
  out.all_union = interval_union(all_pos);
  out.kept_union = interval_union(kept_iv);
  if (std::abs(out.all_union.length - out.kept_union.length) > kUnionTol)
    throw Falsification("maximal_intervals: union length not preserved");
  return out;
}

std::vector<std::uint64_t> lambda_set(std::uint64_t n, double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("lambda_set: lambda > 0");
  int pmax = static_cast<int>(std::floor(lambda / (3 * std::log(2.0))));
  std::vector<std::uint64_t> out;
  for (int p = 0; p <= pmax; ++p) {
    if (p >= 63 || (n >> (63 - p)) != 0)
      throw std::range_error("lambda_set: 2^p n overflows");
    out.push_back(n << p);
  }
  return out;
}

std::vector<ExcursionClass> equivalence_classes(
    const std::vector<std::uint64_t>& xi_n,
    const std::vector<std::pair<double, double>>& pi_intervals) {
  if (xi_n.size() != pi_intervals.size())
    throw std::invalid_argument("equivalence_classes: size mismatch");
  std::size_t k = xi_n.size();
  std::vector<std::vector<std::uint64_t>> lam(k);
  for (std::size_t i = 0; i < k; ++i)
    lam[i] =
        lambda_set(xi_n[i], pi_intervals[i].second - pi_intervals[i].first);

  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      bool meet = false;
      for (auto v : lam[i])
        if (std::binary_search(lam[j].begin(), lam[j].end(), v)) {
          meet = true;
          break;
        }
      if (meet) parent[find(i)] = find(j);
    }

  std::vector<ExcursionClass> out;
  std::vector<long> slot(k, -1);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(out.size());
      out.emplace_back();
    }
    out[slot[r]].members.push_back(i);
  }
  for (auto& cls : out) {
    std::sort(cls.members.begin(), cls.members.end(),
              [&](std::size_t a, std::size_t b) { return xi_n[a] < xi_n[b]; });
    cls.base_n = xi_n[cls.members.front()];
    std::set<std::uint64_t> merged;
    std::vector<std::pair<double, double>> pis;
    for (std::size_t m : cls.members) {
      std::uint64_t ni = xi_n[m];
      if (ni % cls.base_n != 0)
        throw Falsification("equivalence_classes: member not a multiple");
      std::uint64_t q = ni / cls.base_n;
      if ((q & (q - 1)) != 0)
        throw Falsification(
            "equivalence_classes: members do not differ by powers of 2");
      unsigned e = 0;
      while ((1ull << e) < q) ++e;
      cls.exponents.push_back(e);
      merged.insert(lam[m].begin(), lam[m].end());
      pis.push_back(pi_intervals[m]);
    }
    cls.merged_lambda.assign(merged.begin(), merged.end());
    cls.pi_length = interval_union(pis).length;
  }
  return out;
}

}  // namespace llab
