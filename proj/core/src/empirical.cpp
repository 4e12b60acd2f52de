#include "llab/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "llab/counting.hpp"
#include "llab/sampling.hpp"

namespace llab {

namespace {

struct QuadAcc {
  double inside = 0, unresolved = 0;
};

void subdivide(const CellClassifier& cls, double T, long ix, long iy,
               int level, int depth, QuadAcc& acc) {
  double scale = T / static_cast<double>(1L << level);
  double x0 = ix * scale, x1 = (ix + 1) * scale;
  double y0 = iy * scale, y1 = (iy + 1) * scale;
  int c = cls(x0, x1, y0, y1);
  if (c > 0) {
    acc.inside += scale * scale;
    return;
  }
  if (c < 0) return;
  if (level == depth) {
    acc.unresolved += scale * scale;
    return;
  }
  subdivide(cls, T, 2 * ix, 2 * iy, level + 1, depth, acc);
  subdivide(cls, T, 2 * ix + 1, 2 * iy, level + 1, depth, acc);
  subdivide(cls, T, 2 * ix, 2 * iy + 1, level + 1, depth, acc);
  subdivide(cls, T, 2 * ix + 1, 2 * iy + 1, level + 1, depth, acc);
}

}  // namespace

AreaBound quadtree_area(const CellClassifier& cls, double T, int depth) {
  if (!(T > 0) || depth < 0 || depth > 24)
    throw std::invalid_argument("quadtree_area: need T > 0, depth in [0,24]");
  QuadAcc acc;
  subdivide(cls, T, 0, 0, 0, depth, acc);
  AreaBound out;
  out.depth = depth;
  out.unresolved = acc.unresolved;
  out.lower = acc.inside / (T * T);
  out.upper = (acc.inside + acc.unresolved) / (T * T);
  out.lower = std::clamp(out.lower, 0.0, 1.0);
  out.upper = std::clamp(out.upper, 0.0, 1.0);
  return out;
}

AreaBound triangle_area_bound(const std::vector<Excursion>& tris, double T,
                              int depth) {
  struct Tri {
    double s1_lo, s1_hi, s2_lo, s2_hi, l_lo, l_hi;
  };
  std::vector<Tri> ts;
  for (const auto& e : tris)
    ts.push_back(Tri{e.S1.lo(), e.S1.hi(), e.S2.lo(), e.S2.hi(), e.L.lo(),
                     e.L.hi()});
  CellClassifier cls = [ts](double x0, double x1, double y0, double y1) {
    bool all_out = true;
    for (const auto& t : ts) {
      if (x1 <= t.s1_lo && y1 <= t.s2_lo && x0 + y0 >= t.l_hi) return 1;
      bool out = x0 > t.s1_hi || y0 > t.s2_hi || x1 + y1 < t.l_lo;
      if (!out) all_out = false;
    }
    return all_out ? -1 : 0;
  };
  return quadtree_area(cls, T, depth);
}

AreaBound escape_fraction(const RealSpec& alpha, const RealSpec& beta,
                          const mpq_class& eps, double T, int depth) {
  return triangle_area_bound(all_excursions(alpha, beta, eps, T), T, depth);
}

ObsAverage observable_average(
    const LatticeState& base, double T, double h,
    const std::function<double(const LatticeState&)>& obs) {
  if (!(h > 0) || !(T > 0))
    throw std::invalid_argument("observable_average: need h, T > 0");
  std::size_t n = static_cast<std::size_t>(T / h + 1e-9);
  if (n == 0) n = 1;
  if (n * n > kMaxOrbitPoints)
    throw std::range_error("observable_average: grid exceeds point budget");
  // Kahan-compensated accumulation: order-independent up to rounding
  double sum = 0, comp = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = (i + 0.5) * h, t = (j + 0.5) * h;
      double y = obs(base.flowed(s, t)) - comp;
      double acc = sum + y;
      comp = (acc - sum) - y;
      sum = acc;
    }
  return ObsAverage{sum / static_cast<double>(n * n), n * n};
}

std::function<double(const LatticeState&)> indicator_x_eps(
    const mpq_class& eps) {
  return [eps](const LatticeState& x) {
    return x.in_x_eps(eps).member ? 1.0 : 0.0;
  };
}

int systole_bin(const LatticeState& x, const std::vector<double>& thresholds) {
  double norm = x.systole().norm.mid();
  int sym = 1;
  for (double t : thresholds)
    if (norm > t) ++sym;
  return sym;
}

GridEmpirical discrete_empirical(const LatticeState& x0, int N,
                                 const std::vector<double>& thresholds) {
  if (N < 1 || N > 10000)
    throw std::invalid_argument("discrete_empirical: need 1 <= N <= 10^4");
  if (2.0 * (N - 1) > kMaxFlowMagnitude)
    throw std::range_error("discrete_empirical: m+n beyond precision budget");
  std::vector<double> th = thresholds;
  std::sort(th.begin(), th.end());
  GridEmpirical g;
  g.N = N;
  g.k = static_cast<int>(th.size()) + 1;
  g.symbols.resize(static_cast<std::size_t>(N) * N);
  g.full.assign(g.k, mpq_class(0));
  g.rows.assign(N, std::vector<mpq_class>(g.k, mpq_class(0)));
  mpq_class cell(1, static_cast<unsigned long>(N) * N);
  mpq_class row_cell(1, static_cast<unsigned long>(N));
  for (int n = 0; n < N; ++n)
    for (int m = 0; m < N; ++m) {
      int sym = systole_bin(x0.flowed(m, n), th);
      g.symbols[m + static_cast<std::size_t>(N) * n] = sym;
      g.full[sym - 1] += cell;
      g.rows[n][sym - 1] += row_cell;
    }
  return g;
}

CoverCheck cover_check(const RealSpec& alpha, const RealSpec& beta,
                       const mpq_class& eps, double T, std::size_t samples,
                       std::uint64_t seed) {
  constexpr double kMargin = 1e-9;
  std::vector<Excursion> tris = all_excursions(alpha, beta, eps, T);
  LatticeState base = tau_lattice(alpha, beta);
  HaltonSampler smp(seed);
  CoverCheck out;
  for (std::size_t i = 0; i < samples; ++i) {
    auto [u, v] = smp.next();
    double s = u * T, t = v * T;
    bool near_boundary = false;
    bool in_cover = false;
    for (const auto& e : tris) {
      double s1 = e.S1.mid(), s2 = e.S2.mid(), l = e.L.mid();
      double d = std::min({std::abs(s - s1), std::abs(t - s2),
                           std::abs(s + t - l) / std::sqrt(2.0)});
      if (d < kMargin) near_boundary = true;
      if (s <= s1 && t <= s2 && s + t >= l) in_cover = true;
    }
    if (near_boundary) {
      ++out.skipped;
      continue;
    }
    XepsResult svp = base.flowed(s, t).in_x_eps(eps);
    if (svp.boundary) {
      ++out.skipped;
      continue;
    }
    ++out.samples;
    if (svp.member == in_cover)
      ++out.agreements;
    else
      out.disagreements.push_back({s, t});
  }
  return out;
}

// ---------------------------------------------------------------------------
// full chain verifier (declared in excursions.hpp)

CuspReport verify_cusp_proposition(const RealSpec& alpha, const RealSpec& beta,
                                   const mpq_class& eps, double T,
                                   double gamma) {
  if (!(gamma > 0) || !(gamma < 1))
    throw std::invalid_argument("verify_cusp_proposition: gamma in (0,1)");
  CuspReport rep;
  rep.T = T;
  rep.gamma = gamma;
  rep.bound = gamma / (3 * std::log(2.0));

  std::vector<Excursion> tris = all_excursions(alpha, beta, eps, T);
  AreaBound ab = triangle_area_bound(tris, T, 12);
  rep.escape_lo = ab.lower;
  rep.escape_hi = ab.upper;

  rep.big_n = big_n_for_T(T);
  mpq_class thr = eps * eps * eps;
  CountReport cnt = count_below(alpha, beta, thr, rep.big_n);
  rep.count_closed = cnt.count_closed;
  rep.boundary_count = cnt.boundary_cases.size();
  rep.count_over_T = static_cast<double>(rep.count_closed) / T;

  // Xi and the doubling bookkeeping (interval widths are far below double
  // resolution at working precision, so midpoints are used)
  std::vector<std::pair<double, double>> pis;
  std::vector<std::uint64_t> ns;
  for (const auto& e : tris) {
    auto [lo, hi] = project(e, T);
    pis.push_back({lo.mid(), hi.mid()});
    ns.push_back(e.n);
  }
  XiSelection xi = maximal_intervals(pis);
  rep.xi_union_length = xi.kept_union.length;
  std::vector<std::uint64_t> xi_n;
  std::vector<std::pair<double, double>> xi_pi;
  for (std::size_t i : xi.kept) {
    xi_n.push_back(ns[i]);
    xi_pi.push_back(pis[i]);
  }
  std::vector<ExcursionClass> classes = equivalence_classes(xi_n, xi_pi);
  bool classes_ok = true;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    ClassCheck chk;
    chk.class_index = c;
    chk.lhs = classes[c].merged_lambda.size();
    chk.rhs = classes[c].pi_length / (3 * std::log(2.0));
    chk.ok = static_cast<double>(chk.lhs) >= chk.rhs * (1 - 1e-9) - 1e-9;
    if (!chk.ok) classes_ok = false;
    rep.class_checks.push_back(chk);
  }

  if (rep.escape_hi < gamma) {
    rep.status = CuspStatus::HypothesisNotMet;
    return rep;
  }
  if (rep.escape_lo < gamma) {
    rep.status = CuspStatus::Inconclusive;
    return rep;
  }
  // hypothesis certified: the chain must deliver
  rep.xi_vs_gammaT_ok = rep.xi_union_length >= gamma * T - 1e-9;
  double have = rep.count_over_T;
  double have_max =
      static_cast<double>(rep.count_closed + rep.boundary_count) / T;
  if (!rep.xi_vs_gammaT_ok || !classes_ok || have_max < rep.bound) {
    rep.status = CuspStatus::Falsified;
  } else if (have >= rep.bound) {
    rep.status = CuspStatus::Holds;
  } else {
    rep.status = CuspStatus::Inconclusive;  // boundary cases straddle the bar
  }
  return rep;
}

}  // namespace llab
