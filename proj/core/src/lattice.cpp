#include "llab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace llab {

namespace {

long working_prec() { return default_precision() + 64; }

}  // namespace

Mat3 identity_mat(long prec) {
  if (prec == 0) prec = working_prec();
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m[i * 3 + j] = Interval::exact_int(i == j ? 1 : 0, prec);
  return m;
}

Mat3 mat_mul(const Mat3& a, const Mat3& b) {
  Mat3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Interval acc = a[i * 3] * b[j];
      acc = acc + a[i * 3 + 1] * b[3 + j];
      acc = acc + a[i * 3 + 2] * b[6 + j];
      out[i * 3 + j] = acc;
    }
  return out;
}

Mat3 tau_matrix(const RealSpec& alpha, const RealSpec& beta, long prec) {
  Mat3 m = identity_mat(prec);
  m[3] = alpha.eval(prec);  // row 1, col 0
  m[6] = beta.eval(prec);   // row 2, col 0
  return m;
}

Mat3 flow_matrix(double s, double t, long prec) {
  Mat3 m = identity_mat(prec);
  Interval is = Interval::exact(s, prec), it = Interval::exact(t, prec);
  m[0] = Interval::exp(-(is + it));
  m[4] = Interval::exp(is);
  m[8] = Interval::exp(it);
  return m;
}

Interval mat_det(const Mat3& m) {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) -
         m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

LatticeState LatticeState::from_basis(const Mat3& basis) {
  LatticeState x;
  x.basis_ = basis;
  Interval dev = Interval::abs(mat_det(basis) - Interval::exact_int(1));
  if (dev.lo() > 1e-12)
    throw std::invalid_argument("LatticeState: basis is not unimodular");
  return x;
}

LatticeState tau_lattice(const RealSpec& alpha, const RealSpec& beta) {
  LatticeState x;
  x.basis_ = tau_matrix(alpha, beta, working_prec());
  x.has_prov_ = true;
  x.alpha_ = alpha;
  x.beta_ = beta;
  return x;
}

Mat3 LatticeState::basis_at(long prec_bits) const {
  if (!has_prov_) return basis_;
  return mat_mul(flow_matrix(s_, t_, prec_bits),
                 tau_matrix(alpha_, beta_, prec_bits));
}

LatticeState LatticeState::flowed(double s, double t) const {
  if (!std::isfinite(s) || !std::isfinite(t))
    throw std::invalid_argument("flow: non-finite parameters");
  double ns = s_ + s, nt = t_ + t;
  if (std::abs(ns) + std::abs(nt) > kMaxFlowMagnitude)
    throw std::range_error("flow: e^{s+t} beyond the precision budget");
  LatticeState out;
  out.has_prov_ = has_prov_;
  out.alpha_ = alpha_;
  out.beta_ = beta_;
  if (has_prov_) {
    out.s_ = ns;
    out.t_ = nt;
    out.basis_ = out.basis_at(working_prec());
  } else {
    out.basis_ = mat_mul(flow_matrix(s, t, working_prec()), basis_);
  }
  return out;
}

LatticeState apply_flow(const LatticeState& x, const FlowParams& p) {
  return x.flowed(p.s, p.t);
}

namespace {

using Vec3d = std::array<double, 3>;
using Coeffs = std::array<std::int64_t, 3>;

double dot(const Vec3d& a, const Vec3d& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// Lattice reduction of three column vectors; U tracks the integer
// transform so that reduced column k equals B * U[:,k].
struct Reduced {
  std::array<Vec3d, 3> b;                      // reduced columns
  std::array<std::array<std::int64_t, 3>, 3> u;  // u[i][k]: row i, col k
};

Reduced lll_reduce(const Mat3& basis) {
  Reduced r;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i) {
      r.b[k][i] = basis[i * 3 + k].mid();
      r.u[i][k] = (i == k) ? 1 : 0;
    }
  auto sub_mult = [&](int k, int j, std::int64_t q) {  // b_k -= q b_j
    for (int i = 0; i < 3; ++i) {
      r.b[k][i] -= q * r.b[j][i];
      r.u[i][k] -= q * r.u[i][j];
    }
  };
  std::array<Vec3d, 3> gs;
  std::array<std::array<double, 3>, 3> mu{};
  auto update_gs = [&] {
    for (int k = 0; k < 3; ++k) {
      gs[k] = r.b[k];
      for (int j = 0; j < k; ++j) {
        double nj = dot(gs[j], gs[j]);
        mu[k][j] = nj > 0 ? dot(r.b[k], gs[j]) / nj : 0;
        for (int i = 0; i < 3; ++i) gs[k][i] -= mu[k][j] * gs[j][i];
      }
    }
  };
  update_gs();
  int k = 1, guard = 0;
  while (k < 3 && guard++ < 10000) {
    for (int j = k - 1; j >= 0; --j) {
      std::int64_t q = std::llround(mu[k][j]);
      if (q != 0) {
        sub_mult(k, j, q);
        update_gs();
      }
    }
    double lhs = dot(gs[k], gs[k]);
    double rhs = (0.99 - mu[k][k - 1] * mu[k][k - 1]) *
                 dot(gs[k - 1], gs[k - 1]);
    if (lhs >= rhs) {
      ++k;
    } else {
      std::swap(r.b[k], r.b[k - 1]);
      for (int i = 0; i < 3; ++i) std::swap(r.u[i][k], r.u[i][k - 1]);
      update_gs();
      k = std::max(1, k - 1);
    }
  }
  return r;
}

Interval norm_of(const Mat3& m, const Coeffs& g, long prec) {
  Interval out = Interval::exact_int(0, prec);
  for (int i = 0; i < 3; ++i) {
    Interval vi = m[i * 3] * Interval::exact_int(static_cast<long>(g[0]), prec);
    vi = vi + m[i * 3 + 1] * Interval::exact_int(static_cast<long>(g[1]), prec);
    vi = vi + m[i * 3 + 2] * Interval::exact_int(static_cast<long>(g[2]), prec);
    out = Interval::max(out, Interval::abs(vi));
  }
  return out;
}

SystoleResult systole_pass(const LatticeState& x, long prec) {
  Mat3 m = x.basis_at(prec);
  Reduced red = lll_reduce(m);

  // candidate radius: best sup-norm among reduced columns, with slack
  double r = 1e300;
  for (int k = 0; k < 3; ++k)
    r = std::min(r, std::max({std::abs(red.b[k][0]), std::abs(red.b[k][1]),
                              std::abs(red.b[k][2])}));
  r *= 1.02;

  // inverse of the reduced matrix (columns red.b) via adjugate
  const auto& b = red.b;
  double det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
               b[1][0] * (b[0][1] * b[2][2] - b[0][2] * b[2][1]) +
               b[2][0] * (b[0][1] * b[1][2] - b[0][2] * b[1][1]);
  if (det == 0) throw std::runtime_error("systole: degenerate basis");
  double inv[3][3];
  inv[0][0] = (b[1][1] * b[2][2] - b[1][2] * b[2][1]) / det;
  inv[0][1] = (b[1][2] * b[2][0] - b[1][0] * b[2][2]) / det;
  inv[0][2] = (b[1][0] * b[2][1] - b[1][1] * b[2][0]) / det;
  inv[1][0] = (b[0][2] * b[2][1] - b[0][1] * b[2][2]) / det;
  inv[1][1] = (b[0][0] * b[2][2] - b[0][2] * b[2][0]) / det;
  inv[1][2] = (b[0][1] * b[2][0] - b[0][0] * b[2][1]) / det;
  inv[2][0] = (b[0][1] * b[1][2] - b[0][2] * b[1][1]) / det;
  inv[2][1] = (b[0][2] * b[1][0] - b[0][0] * b[1][2]) / det;
  inv[2][2] = (b[0][0] * b[1][1] - b[0][1] * b[1][0]) / det;
  // caution: inv[i][j] here is row i of (reduced)^-1 applied to coord j of v,
  // where coords of v are |v_j| <= r
  std::int64_t K[3];
  for (int i = 0; i < 3; ++i) {
    double s = std::abs(inv[i][0]) + std::abs(inv[i][1]) + std::abs(inv[i][2]);
    double bound = r * s * 1.02 + 1;
    K[i] = bound > 128 ? 128 : static_cast<std::int64_t>(bound);
  }

  struct Cand {
    Coeffs g;
    Interval norm;
  };
  std::vector<Cand> cands;
  Interval best_hi_iv(prec);
  double best_hi = 1e300;
  for (std::int64_t c0 = 0; c0 <= K[0]; ++c0)
    for (std::int64_t c1 = (c0 == 0 ? 0 : -K[1]); c1 <= K[1]; ++c1)
      for (std::int64_t c2 = (c0 == 0 && c1 == 0 ? 1 : -K[2]); c2 <= K[2];
           ++c2) {
        // quick double rejection
        double w = 0;
        for (int i = 0; i < 3; ++i)
          w = std::max(w, std::abs(c0 * b[0][i] + c1 * b[1][i] + c2 * b[2][i]));
        if (w > std::min(r, best_hi * 1.02) * 1.05) continue;
        Coeffs g;
        for (int i = 0; i < 3; ++i)
          g[i] = c0 * red.u[i][0] + c1 * red.u[i][1] + c2 * red.u[i][2];
        Interval nv = norm_of(m, g, prec);
        if (nv.hi() < best_hi) best_hi = nv.hi();
        cands.push_back(Cand{g, nv});
      }
  if (cands.empty()) throw std::runtime_error("systole: empty candidate set");

  // keep only candidates whose interval can still be the minimum
  std::vector<Cand> live;
  for (auto& c : cands)
    if (c.norm.lo() <= best_hi) live.push_back(std::move(c));

  SystoleResult out;
  std::size_t arg = 0;
  for (std::size_t i = 1; i < live.size(); ++i)
    if (live[i].norm.hi() < live[arg].norm.hi()) arg = i;
  out.norm = live[arg].norm;
  for (const auto& c : live) out.norm = Interval::min(out.norm, c.norm);
  out.coeffs = live[arg].g;
  for (std::size_t i = 0; i < live.size(); ++i) {
    if (i == arg) continue;
    bool opposite = live[i].g[0] == -out.coeffs[0] &&
                    live[i].g[1] == -out.coeffs[1] &&
                    live[i].g[2] == -out.coeffs[2];
    if (!opposite && live[i].norm.lo() < live[arg].norm.hi())
      out.ambiguous = true;
  }
  // sign convention: first nonzero coefficient positive
  for (int i = 0; i < 3; ++i) {
    if (out.coeffs[i] == 0) continue;
    if (out.coeffs[i] < 0)
      for (int j = 0; j < 3; ++j) out.coeffs[j] = -out.coeffs[j];
    break;
  }
  return out;
}

long max_refine_prec(const LatticeState& x) {
  long cap = 2048;
  if (x.has_provenance()) {
    cap = std::min(cap, x.alpha().max_precision());
    cap = std::min(cap, x.beta().max_precision());
  }
  return std::max(cap, working_prec());
}

}  // namespace

SystoleResult systole_at(const LatticeState& x, long prec_bits) {
  return systole_pass(x, prec_bits);
}

const SystoleResult& LatticeState::systole() const {
  if (!systole_) {
    long prec = working_prec();
    long cap = max_refine_prec(*this);
    SystoleResult r = systole_pass(*this, prec);
    while (r.ambiguous && prec < cap) {
      prec = std::min(cap, prec * 2);
      r = systole_pass(*this, prec);
    }
    systole_ = std::move(r);
  }
  return *systole_;
}

XepsResult LatticeState::in_x_eps(const mpq_class& eps) const {
  if (eps <= 0 || eps >= mpq_class(1, 2))
    throw std::invalid_argument("in_x_eps: eps must be in (0, 1/2)");
  XepsResult out;
  const SystoleResult& s0 = systole();
  int c = s0.norm.cmp(eps);
  if (c != 0) {
    out.member = c < 0;
    return out;
  }
  // straddling eps: refine until decided or the budget runs out
  long cap = max_refine_prec(*this);
  long prec = working_prec();
  while (prec < cap) {
    prec = std::min(cap, prec * 2);
    SystoleResult r = systole_pass(*this, prec);
    c = r.norm.cmp(eps);
    if (c != 0) {
      out.member = c < 0;
      return out;
    }
  }
  out.member = true;  // closed comparison: treat as on the boundary
  out.boundary = true;
  return out;
}

OrbitTrace orbit_trace(const LatticeState& base, double T, double h) {
  if (!(h > 0) || !std::isfinite(T))
    throw std::invalid_argument("orbit_trace: need h > 0, finite T");
  std::size_t n = T < h ? 1 : static_cast<std::size_t>(T / h + 1e-9) + 1;
  if (n * n > kMaxOrbitPoints)
    throw std::range_error("orbit_trace: grid exceeds the point budget");
  OrbitTrace out;
  out.points.reserve(n * n);
  out.min_lo = out.min_hi = 1e300;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = i * h, t = j * h;
      LatticeState y = base.flowed(s, t);
      OrbitPoint p{s, t, y.systole()};
      if (p.sys.norm.hi() < out.min_hi) {
        out.min_hi = p.sys.norm.hi();
        out.argmin_index = out.points.size();
      }
      out.min_lo = std::min(out.min_lo, p.sys.norm.lo());
      out.points.push_back(std::move(p));
    }
  return out;
}

OrbitTrace orbit_trace(const RealSpec& alpha, const RealSpec& beta, double T,
                       double h) {
  return orbit_trace(tau_lattice(alpha, beta), T, h);
}

}  // namespace llab
