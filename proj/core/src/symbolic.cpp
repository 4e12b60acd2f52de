#include "llab/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "llab/empirical.hpp"
#include "llab/excursions.hpp"
#include "llab/lattice.hpp"

namespace llab {

namespace {

constexpr double kEntropyTol = 1e-9;

// H of a count vector summing to N: log N - (1/N) sum c_i log c_i.
// Shared by both Bowen modes so they classify types identically.
double entropy_of_counts(const std::vector<long>& counts, long N) {
  double s = 0;
  for (long c : counts)
    if (c > 0) s += c * std::log(static_cast<double>(c));
  return std::log(static_cast<double>(N)) - s / N;
}

bool type_in(const std::vector<long>& counts, long N, double t) {
  return entropy_of_counts(counts, N) <= t + kEntropyTol;
}

double log_mpz(const mpz_class& z) {
  signed long exp;
  double d = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(d) + exp * std::log(2.0);
}

}  // namespace

std::vector<mpq_class> dist_exact(const std::vector<int>& c, int k) {
  if (c.empty()) throw std::invalid_argument("dist: empty sequence");
  if (k < 1) throw std::invalid_argument("dist: k >= 1");
  std::vector<mpq_class> q(k, mpq_class(0));
  mpq_class w(1, static_cast<unsigned long>(c.size()));
  for (int s : c) {
    if (s < 1 || s > k) throw std::invalid_argument("dist: symbol out of range");
    q[s - 1] += w;
  }
  return q;
}

std::vector<double> dist(const std::vector<int>& c, int k) {
  std::vector<double> out;
  for (const auto& q : dist_exact(c, k)) out.push_back(q.get_d());
  return out;
}

double entropy(const std::vector<double>& q) {
  double sum = 0, h = 0;
  for (double v : q) {
    if (v < -1e-12) throw std::invalid_argument("entropy: negative weight");
    sum += v;
    if (v > 0) h -= v * std::log(v);
  }
  if (std::abs(sum - 1) > 1e-12)
    throw std::invalid_argument("entropy: weights do not sum to 1");
  return std::max(0.0, h);
}

double entropy(const std::vector<mpq_class>& q) {
  std::vector<double> d;
  for (const auto& v : q) d.push_back(v.get_d());
  return entropy(d);
}

mpz_class bowen_count_exhaustive(int k, int N, double t) {
  if (k < 1 || N < 1) throw std::invalid_argument("bowen_count: k,N >= 1");
  double total = std::pow(static_cast<double>(k), N);
  if (total > 1e8) throw std::range_error("bowen_count_exhaustive: k^N > 10^8");
  std::vector<int> c(N, 1);
  std::vector<long> counts(k, 0);
  counts[0] = N;
  mpz_class out = 0;
  while (true) {
    if (type_in(counts, N, t)) ++out;
    int i = N - 1;
    while (i >= 0 && c[i] == k) {
      --counts[k - 1];
      c[i] = 1;
      ++counts[0];
      --i;
    }
    if (i < 0) break;
    --counts[c[i] - 1];
    ++c[i];
    ++counts[c[i] - 1];
  }
  return out;
}

namespace {

void typeclass_rec(int k, long N, long remaining, int slot,
                   std::vector<long>& counts, double t, const mpz_class& mult,
                   mpz_class& acc) {
  if (slot == k - 1) {
    counts[slot] = remaining;
    if (type_in(counts, N, t)) acc += mult;
    counts[slot] = 0;
    return;
  }
  // multinomial coefficient built incrementally as a product of binomials
  for (long c = 0; c <= remaining; ++c) {
    counts[slot] = c;
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(remaining),
                 static_cast<unsigned long>(c));
    typeclass_rec(k, N, remaining - c, slot + 1, counts, t, mult * binom, acc);
  }
  counts[slot] = 0;
}

}  // namespace

mpz_class bowen_count_typeclass(int k, int N, double t) {
  if (k < 1 || N < 1) throw std::invalid_argument("bowen_count: k,N >= 1");
  std::vector<long> counts(k, 0);
  mpz_class acc = 0;
  typeclass_rec(k, N, N, 0, counts, t, mpz_class(1), acc);
  return acc;
}

mpz_class bowen_count(int k, int N, double t) {
  return bowen_count_typeclass(k, N, t);
}

std::vector<BowenRow> bowen_bound_check(int k, int n_max, double t) {
  std::vector<BowenRow> out;
  for (int N = 1; N <= n_max; ++N) {
    BowenRow row;
    row.N = N;
    row.count = bowen_count(k, N, t);
    row.rate = row.count == 0 ? 0 : log_mpz(row.count) / N;
    row.envelope = t + k * std::log(static_cast<double>(N) + 1) / N;
    row.ok = row.rate <= row.envelope + 1e-12;
    if (!row.ok)
      throw Falsification("bowen_bound_check: envelope violated at N=" +
                          std::to_string(N));
    out.push_back(std::move(row));
  }
  return out;
}

OrbitCoding orbit_coding(const RealSpec& alpha, const RealSpec& beta, int N,
                         int M, const std::vector<double>& thresholds,
                         std::optional<double> flag_threshold) {
  if (N < 1 || M < 1 || M > N)
    throw std::invalid_argument("orbit_coding: need 1 <= M <= N");
  if (2.0 * (N - 1) > kMaxFlowMagnitude)
    throw std::range_error("orbit_coding: N beyond the precision budget");
  std::vector<double> th = thresholds;
  std::sort(th.begin(), th.end());
  OrbitCoding out;
  out.N = N;
  out.M = M;
  out.k = static_cast<int>(th.size()) + 1;
  double words = std::pow(static_cast<double>(out.k), M);
  if (words > 1e7) throw std::range_error("orbit_coding: k^M too large");
  LatticeState x0 = tau_lattice(alpha, beta);
  std::size_t cusp = 0;
  for (int n = 0; n < N; ++n) {
    std::vector<int> row;
    for (int m = 0; m < N; ++m) {
      int sym = systole_bin(x0.flowed(m, n), th);
      if (sym == 1) ++cusp;
      row.push_back(sym);
    }
    // sliding M-block word distribution
    std::vector<long> counts(static_cast<std::size_t>(words), 0);
    long blocks = N - M + 1;
    for (long b = 0; b < blocks; ++b) {
      std::size_t w = 0;
      for (int j = 0; j < M; ++j) w = w * out.k + (row[b + j] - 1);
      ++counts[w];
    }
    double h = 0;
    for (long cnt : counts)
      if (cnt > 0) {
        double p = static_cast<double>(cnt) / blocks;
        h -= p * std::log(p);
      }
    double rate = h / M;
    out.row_rates.push_back(rate);
    out.flagged.push_back(flag_threshold && rate < *flag_threshold);
    out.rows.push_back(std::move(row));
  }
  out.cusp_fraction =
      static_cast<double>(cusp) / (static_cast<double>(N) * N);
  return out;
}

}  // namespace llab
