#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "llab/realnum.hpp"

namespace llab {

// 3x3 matrix of intervals, row-major; columns are lattice generators.
using Mat3 = std::array<Interval, 9>;

Mat3 mat_mul(const Mat3& a, const Mat3& b);
Mat3 identity_mat(long prec = 0);
// columns (1, alpha, beta), e2, e3
Mat3 tau_matrix(const RealSpec& alpha, const RealSpec& beta, long prec);
// diag(e^{-s-t}, e^s, e^t)
Mat3 flow_matrix(double s, double t, long prec);
Interval mat_det(const Mat3& m);

struct FlowParams {
  double s = 0, t = 0;
};

struct SystoleResult {
  std::array<std::int64_t, 3> coeffs{};  // (n, m1, m2) in generator coords
  Interval norm;                         // certified sup-norm of the minimum
  bool ambiguous = false;  // a second, non-opposite vector overlaps the min
};

struct XepsResult {
  bool member = false;
  bool boundary = false;  // norm interval straddles eps after max refinement
};

// Unimodular lattice in R^3. Immutable; the systole cache is write-once.
class LatticeState {
 public:
  static LatticeState from_basis(const Mat3& basis);

  const Mat3& basis() const { return basis_; }
  const Interval& entry(int row, int col) const {
    return basis_[row * 3 + col];
  }
  Interval det() const { return mat_det(basis_); }

  bool has_provenance() const { return has_prov_; }
  const RealSpec& alpha() const { return alpha_; }
  const RealSpec& beta() const { return beta_; }
  double s() const { return s_; }
  double t() const { return t_; }

  // a_{s,t} applied on the left; provenance accumulates additively.
  LatticeState flowed(double s, double t) const;

  // Basis re-evaluated at the requested precision (provenance states only;
  // otherwise returns the stored enclosures).
  Mat3 basis_at(long prec_bits) const;

  const SystoleResult& systole() const;
  XepsResult in_x_eps(const mpq_class& eps) const;

 private:
  LatticeState() = default;
  friend LatticeState tau_lattice(const RealSpec&, const RealSpec&);
  Mat3 basis_;
  bool has_prov_ = false;
  RealSpec alpha_ = RealSpec::integer(0), beta_ = RealSpec::integer(0);
  double s_ = 0, t_ = 0;
  mutable std::optional<SystoleResult> systole_;
};

LatticeState tau_lattice(const RealSpec& alpha, const RealSpec& beta);
LatticeState apply_flow(const LatticeState& x, const FlowParams& p);

// Systole at a chosen working precision (refines until candidates separate
// or the cap is hit).
SystoleResult systole_at(const LatticeState& x, long prec_bits);

struct OrbitPoint {
  double s, t;
  SystoleResult sys;
};

struct OrbitTrace {
  std::vector<OrbitPoint> points;  // row-major over the (s,t) grid
  double min_lo = 0, min_hi = 0;   // certified min systole over the trace
  std::size_t argmin_index = 0;
};

inline constexpr std::size_t kMaxOrbitPoints = 100000000;
inline constexpr double kMaxFlowMagnitude = 64.0;  // |s|+|t| budget

OrbitTrace orbit_trace(const RealSpec& alpha, const RealSpec& beta, double T,
                       double h);
OrbitTrace orbit_trace(const LatticeState& base, double T, double h);

}  // namespace llab
