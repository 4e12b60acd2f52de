#pragma once

#include <functional>
#include <vector>

#include "llab/excursions.hpp"
#include "llab/lattice.hpp"

namespace llab {

struct AreaBound {
  double lower = 0, upper = 0;  // certified bounds on area / T^2
  int depth = 0;
  double unresolved = 0;        // raw unresolved area (not normalized)
};

// Cell classifier over [x0,x1]x[y0,y1]: +1 certainly inside the region,
// -1 certainly outside, 0 undecided.
using CellClassifier = std::function<int(double, double, double, double)>;

// Adaptive quadtree bounds on (area of region in [0,T]^2) / T^2.
AreaBound quadtree_area(const CellClassifier& cls, double T, int depth);

// Region = union of the excursion triangles.
AreaBound triangle_area_bound(const std::vector<Excursion>& tris, double T,
                              int depth);

// Fraction of [0,T]^2 spent in X_eps, via the triangle cover (no SVP calls).
AreaBound escape_fraction(const RealSpec& alpha, const RealSpec& beta,
                          const mpq_class& eps, double T, int depth = 12);

struct ObsAverage {
  double average = 0;
  std::size_t points = 0;
};

// Midpoint-rule average of an observable over the (s,t) grid of step h.
ObsAverage observable_average(
    const LatticeState& base, double T, double h,
    const std::function<double(const LatticeState&)>& obs);

std::function<double(const LatticeState&)> indicator_x_eps(
    const mpq_class& eps);

// Symbol in {1,...,k} from ascending thresholds (k-1 of them); symbol 1 is
// the cusp bin (systole at or below every threshold).
int systole_bin(const LatticeState& x, const std::vector<double>& thresholds);

struct GridEmpirical {
  int N = 0, k = 0;
  std::vector<int> symbols;                   // index m + N*n
  std::vector<mpq_class> full;                // length k, sums to 1
  std::vector<std::vector<mpq_class>> rows;   // per fixed n, over m
};

// Observable distribution of {a1^m a2^n x0 : 0 <= m,n < N} with exact
// rational weights, plus the per-row decomposition.
GridEmpirical discrete_empirical(const LatticeState& x0, int N,
                                 const std::vector<double>& thresholds);

struct CoverCheck {
  std::size_t samples = 0;           // points actually adjudicated
  std::size_t skipped = 0;           // within the boundary margin
  std::size_t agreements = 0;
  std::vector<std::pair<double, double>> disagreements;
};

// Quasi-random spot check of the cover identity: triangle membership vs
// shortest-vector membership of X_eps agree away from a 1e-9 boundary
// margin.
CoverCheck cover_check(const RealSpec& alpha, const RealSpec& beta,
                       const mpq_class& eps, double T, std::size_t samples,
                       std::uint64_t seed = 0);

}  // namespace llab
