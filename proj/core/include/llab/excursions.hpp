#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "llab/realnum.hpp"

namespace llab {

// A verified structural claim failed to hold on concrete data.
struct Falsification : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cusp-visit triangle for index n: {(s,t) : s <= S1, t <= S2, s+t >= L}
// with S1 = log(eps/r1), S2 = log(eps/r2), L = log(n/eps), an isosceles
// right triangle of leg length log(eps^3/(n r1 r2)).
struct Excursion {
  std::uint64_t n = 0;
  mpz_class m1, m2;    // minimizing companions: r1 = |n*alpha + m1| etc.
  Interval r1, r2;
  Interval S1, S2, L;
  Interval leg;        // = S1 + S2 - L
  bool boundary = false;  // membership of the square decided only closed
};

struct IntervalSet {
  std::vector<std::pair<double, double>> parts;  // disjoint, sorted
  double length = 0;
};

IntervalSet interval_union(const std::vector<std::pair<double, double>>& iv);

struct ExcursionClass {
  std::vector<std::size_t> members;      // indices into the Xi list, ascending n
  std::uint64_t base_n = 0;              // n1
  std::vector<unsigned> exponents;       // q_i with n_i = 2^{q_i} n1
  std::vector<std::uint64_t> merged_lambda;  // union of the Lambda(n_i)
  double pi_length = 0;                  // union length of member pi-intervals
};

// The triangle for n, when it is nonempty and meets [0,T]^2. Rational
// alpha or beta is an input error. At a half-integer tie both companion
// choices are tried; at most one can meet the square.
std::optional<Excursion> excursion_for(std::uint64_t n, const RealSpec& alpha,
                                       const RealSpec& beta,
                                       const mpq_class& eps, double T);

// Exhaustive count of companion pairs (m1, m2) whose triangle meets
// [0,T]^2. A result >= 2 contradicts the uniqueness claim.
int uniqueness_check(std::uint64_t n, const RealSpec& alpha,
                     const RealSpec& beta, const mpq_class& eps, double T);

// All excursions meeting [0,T]^2, ascending n; complete since any such n
// satisfies n <= eps * e^{2T}. Refuses ranges past 2^40.
std::vector<Excursion> all_excursions(const RealSpec& alpha,
                                      const RealSpec& beta,
                                      const mpq_class& eps, double T,
                                      int threads = 1);

// Vertices of {s <= S1, t <= S2, s+t >= L} clipped to [0,T]^2, in a
// deterministic order; empty when the intersection is empty.
std::vector<std::pair<double, double>> clip_triangle(double S1, double S2,
                                                     double L, double T);

// pi-image [L, min(S1,T) + min(S2,T)] of the clipped triangle,
// pi(s,t) = s + t. Requires the triangle to meet the square.
std::pair<Interval, Interval> project(const Excursion& e, double T);

struct XiSelection {
  std::vector<std::size_t> kept;     // indices of maximal intervals
  IntervalSet all_union, kept_union; // lengths must agree
  std::vector<std::size_t> duplicates;  // dropped exact duplicates
};

// Keep positive-length intervals maximal under inclusion; the union is
// unchanged (asserted to 1e-12).
XiSelection maximal_intervals(const std::vector<std::pair<double, double>>& iv);

// {n * 2^p : 0 <= p log2 <= lambda/3}
std::vector<std::uint64_t> lambda_set(std::uint64_t n, double lambda);

// Partition of Xi under the Lambda-overlap relation; verifies the
// power-of-two structure of each class. pi_intervals[i] is the pi-image
// of member i (its length is lambda_i).
std::vector<ExcursionClass> equivalence_classes(
    const std::vector<std::uint64_t>& xi_n,
    const std::vector<std::pair<double, double>>& pi_intervals);

enum class CuspStatus { HypothesisNotMet, Inconclusive, Holds, Falsified };

struct ClassCheck {
  std::size_t class_index;
  std::uint64_t lhs;        // |merged Lambda|
  double rhs;               // pi-length / (3 log 2)
  bool ok;
};

struct CuspReport {
  double T = 0, gamma = 0;
  double escape_lo = 0, escape_hi = 0;   // certified escape-fraction bounds
  std::uint64_t big_n = 0;
  std::uint64_t count_closed = 0;        // |{n < e^{2T} : value <= eps^3}|
  std::uint64_t boundary_count = 0;
  double xi_union_length = 0;            // total pi-union length
  bool xi_vs_gammaT_ok = true;           // union length >= gamma*T
  std::vector<ClassCheck> class_checks;
  double count_over_T = 0;
  double bound = 0;                      // gamma / (3 log 2)
  CuspStatus status = CuspStatus::Inconclusive;
};

// Full chain: escape fraction bounds, exact near-solution count, the
// interval/doubling bookkeeping, and the final implication
// escape >= gamma  =>  count/T >= gamma/(3 log 2).
CuspReport verify_cusp_proposition(const RealSpec& alpha, const RealSpec& beta,
                                   const mpq_class& eps, double T,
                                   double gamma);

}  // namespace llab
