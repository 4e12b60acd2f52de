#include "llab/counting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "llab/fracstream.hpp"

namespace llab {

namespace {

constexpr std::uint64_t kReseedEvery = 1ull << 24;  // cap drift per stream
constexpr double kThresholdMargin = 0x1p-40;

struct ChunkResult {
  std::uint64_t count_strict = 0, count_closed = 0;
  std::vector<std::uint64_t> boundary;
  std::vector<Hit> hits;
  std::uint64_t min_n = 0;
  double min_lo = 1e300, min_hi = 1e300;
};

// one pass over n in [lo, hi]
ChunkResult scan_chunk(const RealSpec& alpha, const RealSpec& beta,
                       const mpq_class& thr, double thr_d, std::uint64_t lo,
                       std::uint64_t hi, bool store_hits,
                       std::size_t hits_cap) {
  ChunkResult out;
  FracStream sa(alpha, lo), sb(beta, lo);
  for (std::uint64_t n = lo; n <= hi; ++n) {
    if (sa.index() != n) {
      sa.reseed(n);
      sb.reseed(n);
    }
    double d1 = sa.dist(), d2 = sb.dist();
    double nn = static_cast<double>(n);
    double v = nn * d1 * d2;
    double e = sa.error_bound() + sb.error_bound();
    double margin = nn * e * (d1 + d2 + e) + v * 0x1p-48;
    double gap = v - thr_d;
    bool strict_in, closed_in, boundary = false;
    if (gap < -(margin + kThresholdMargin)) {
      strict_in = closed_in = true;
    } else if (gap > margin + kThresholdMargin) {
      strict_in = closed_in = false;
    } else {
      mpz_class nz(static_cast<unsigned long>(n));
      Decision ds = compare_littlewood(nz, alpha, beta, thr, false);
      Decision dc = compare_littlewood(nz, alpha, beta, thr, true);
      if (ds == Decision::Boundary || dc == Decision::Boundary) {
        boundary = true;
        strict_in = closed_in = false;
        out.boundary.push_back(n);
      } else {
        strict_in = ds == Decision::Below;
        closed_in = dc == Decision::Below;
      }
    }
    if (strict_in) ++out.count_strict;
    if (closed_in) {
      ++out.count_closed;
      if (store_hits) {
        if (out.hits.size() < hits_cap)
          out.hits.push_back(
              Hit{n, std::max(0.0, v - margin), v + margin});
      }
    }
    if (!boundary && v + margin < out.min_hi) {
      out.min_hi = v + margin;
      out.min_lo = std::max(0.0, v - margin);
      out.min_n = n;
    }
    if ((n - lo + 1) % kReseedEvery == 0 && n < hi) {
      sa.reseed(n + 1);
      sb.reseed(n + 1);
      continue;
    }
    sa.advance();
    sb.advance();
  }
  return out;
}

}  // namespace

CountReport count_below(const RealSpec& alpha, const RealSpec& beta,
                        const mpq_class& threshold, std::uint64_t big_n,
                        int threads, bool store_hits, std::size_t hits_cap) {
  if (big_n < 1) throw std::invalid_argument("count_below: N >= 1 required");
  if (big_n > kMaxCountN)
    throw std::range_error("count_below: N beyond the 2^40 error budget");
  if (threshold <= 0 || threshold >= mpq_class(1, 2))
    throw std::invalid_argument("count_below: threshold must be in (0, 1/2)");
  auto t0 = std::chrono::steady_clock::now();

  CountReport rep;
  rep.alpha = alpha.describe();
  rep.beta = beta.describe();
  rep.threshold = threshold;
  rep.big_n = big_n;
  double thr_d = threshold.get_d();

  int k = std::max(1, threads);
  std::uint64_t chunk = (big_n + k - 1) / k;
  std::vector<ChunkResult> parts(k);
  std::vector<std::thread> pool;
  for (int i = 0; i < k; ++i) {
    std::uint64_t lo = 1 + static_cast<std::uint64_t>(i) * chunk;
    if (lo > big_n) break;
    std::uint64_t hi = std::min(big_n, lo + chunk - 1);
    if (k == 1) {
      parts[i] = scan_chunk(alpha, beta, threshold, thr_d, lo, hi, store_hits,
                            hits_cap);
    } else {
      pool.emplace_back([&, i, lo, hi] {
        parts[i] = scan_chunk(alpha, beta, threshold, thr_d, lo, hi,
                              store_hits, hits_cap);
      });
    }
  }
  for (auto& th : pool) th.join();

  rep.min_lo = rep.min_hi = 1e300;
  for (const auto& p : parts) {
    rep.count_strict += p.count_strict;
    rep.count_closed += p.count_closed;
    rep.boundary_cases.insert(rep.boundary_cases.end(), p.boundary.begin(),
                              p.boundary.end());
    for (const auto& h : p.hits) {
      if (rep.hits.size() < hits_cap)
        rep.hits.push_back(h);
      else
        rep.hits_truncated = true;
    }
    if (p.min_hi < rep.min_hi) {
      rep.min_hi = p.min_hi;
      rep.min_lo = p.min_lo;
      rep.min_n = p.min_n;
    }
  }

  auto t1 = std::chrono::steady_clock::now();
  rep.elapsed_sec = std::chrono::duration<double>(t1 - t0).count();
  rep.throughput = rep.elapsed_sec > 0 ? big_n / rep.elapsed_sec : 0;
  return rep;
}

std::uint64_t big_n_for_T(double T) {
  mpfr_t t;
  mpfr_init2(t, 96);
  mpfr_set_d(t, 2 * T, MPFR_RNDN);
  mpfr_exp(t, t, MPFR_RNDU);
  mpfr_ceil(t, t);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
  mpfr_clear(t);
  z -= 1;
  if (z < 1) return 0;
  if (z > mpz_class(kMaxCountN))
    throw std::range_error("T beyond the 2^40 error budget");
  return z.get_ui();
}

NormalizedCount normalized_count(const RealSpec& alpha, const RealSpec& beta,
                                 const mpq_class& threshold, double T,
                                 std::optional<double> gamma, int threads) {
  NormalizedCount out;
  out.T = T;
  out.big_n = big_n_for_T(T);
  if (out.big_n == 0) throw std::range_error("normalized_count: e^{2T} < 2");
  out.report = count_below(alpha, beta, threshold, out.big_n, threads);
  out.normalized_strict = out.report.count_strict / T;
  out.normalized_closed = out.report.count_closed / T;
  if (gamma) out.gamma_bound = *gamma / (3 * std::log(2.0));
  return out;
}

MinTrace running_min_trace(const RealSpec& alpha, const RealSpec& beta,
                           std::uint64_t big_n,
                           const std::vector<std::uint64_t>& checkpoints) {
  if (big_n > kMaxCountN) throw std::range_error("running_min_trace: N > 2^40");
  MinTrace out;
  std::vector<std::uint64_t> cps = checkpoints;
  std::sort(cps.begin(), cps.end());
  std::size_t ci = 0;
  double best_lo = 1e300, best_hi = 1e300;
  std::uint64_t best_n = 0;
  FracStream sa(alpha, 1), sb(beta, 1);
  for (std::uint64_t n = 1; n <= big_n; ++n) {
    double d1 = sa.dist(), d2 = sb.dist();
    double nn = static_cast<double>(n);
    double v = nn * d1 * d2;
    double e = sa.error_bound() + sb.error_bound();
    double margin = nn * e * (d1 + d2 + e) + v * 0x1p-48;
    if (v + margin < best_hi) {
      best_hi = v + margin;
      best_lo = std::min(best_lo, std::max(0.0, v - margin));
      best_n = n;
      out.last_improvement_n = n;
    }
    while (ci < cps.size() && cps[ci] == n) {
      out.points.push_back(TracePoint{n, best_n, best_lo, best_hi});
      ++ci;
    }
    if (n % kReseedEvery == 0) {
      sa.reseed(n + 1);
      sb.reseed(n + 1);
    } else {
      sa.advance();
      sb.advance();
    }
  }
  out.argmin_n = best_n;
  out.min_lo = best_lo;
  out.min_hi = best_hi;
  return out;
}

}  // namespace llab
