#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "llab/realnum.hpp"

namespace llab {

// Empirical frequency vector of a symbol sequence over {1,...,k}.
std::vector<mpq_class> dist_exact(const std::vector<int>& c, int k);
std::vector<double> dist(const std::vector<int>& c, int k);

// Shannon entropy -sum q_i log q_i (natural log, 0 log 0 = 0).
double entropy(const std::vector<double>& q);
double entropy(const std::vector<mpq_class>& q);

// |R(k,N,t)| = #{c in {1..k}^N : H(dist(c)) <= t}, exact.
mpz_class bowen_count(int k, int N, double t);
mpz_class bowen_count_exhaustive(int k, int N, double t);  // k^N <= 10^8
mpz_class bowen_count_typeclass(int k, int N, double t);

struct BowenRow {
  int N;
  mpz_class count;
  double rate;      // (1/N) log |R|
  double envelope;  // t + k log(N+1)/N
  bool ok;          // rate <= envelope
};

// Table for N = 1..N_max; an envelope violation throws Falsification.
std::vector<BowenRow> bowen_bound_check(int k, int n_max, double t);

struct OrbitCoding {
  int N = 0, M = 0, k = 0;
  std::vector<std::vector<int>> rows;  // rows[n][m]: symbol of a1^m a2^n x0
  std::vector<double> row_rates;       // (1/M) H of the M-block distribution
  std::vector<bool> flagged;           // rate below the supplied threshold
  double cusp_fraction = 0;            // fraction of symbols in bin 1 (cusp)
};

// Systole-threshold coding of the a1,a2-grid orbit of tau_{alpha,beta}Z^3.
// The partition is a computable proxy: compact shells between thresholds
// plus the cusp bin below the lowest one.
OrbitCoding orbit_coding(const RealSpec& alpha, const RealSpec& beta, int N,
                         int M, const std::vector<double>& thresholds,
                         std::optional<double> flag_threshold = std::nullopt);

}  // namespace llab
