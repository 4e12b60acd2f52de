#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "llab/realnum.hpp"

namespace llab {

struct Hit {
  std::uint64_t n;
  double value_lo, value_hi;
};

struct CountReport {
  std::string alpha, beta;
  mpq_class threshold;
  std::uint64_t big_n = 0;  // counts n in [1, big_n]
  std::uint64_t count_strict = 0, count_closed = 0;
  std::vector<std::uint64_t> boundary_cases;
  std::vector<Hit> hits;  // closed-mode hits, capped
  bool hits_truncated = false;
  std::uint64_t min_n = 0;
  double min_lo = 0, min_hi = 0;
  double elapsed_sec = 0, throughput = 0;  // n per second
};

inline constexpr std::uint64_t kMaxCountN = 1ull << 40;

// Exact count of n <= N with n<na><nb> below threshold; fixed-point fast
// path, exact-arithmetic recheck of everything within the near-threshold
// margin. Both strict and closed counts are produced in one pass.
CountReport count_below(const RealSpec& alpha, const RealSpec& beta,
                        const mpq_class& threshold, std::uint64_t big_n,
                        int threads = 1, bool store_hits = false,
                        std::size_t hits_cap = 1000000);

struct NormalizedCount {
  CountReport report;
  double T = 0;
  std::uint64_t big_n = 0;
  double normalized_strict = 0, normalized_closed = 0;
  std::optional<double> gamma_bound;  // gamma/(3 log 2) when gamma given
};

NormalizedCount normalized_count(const RealSpec& alpha, const RealSpec& beta,
                                 const mpq_class& threshold, double T,
                                 std::optional<double> gamma = std::nullopt,
                                 int threads = 1);

std::uint64_t big_n_for_T(double T);  // ceil(e^{2T}) - 1

struct TracePoint {
  std::uint64_t checkpoint;
  std::uint64_t argmin_n;
  double min_lo, min_hi;
};

struct MinTrace {
  std::vector<TracePoint> points;
  std::uint64_t last_improvement_n = 0;
  std::uint64_t argmin_n = 0;
  double min_lo = 0, min_hi = 0;
};

// Running minimum of n<na><nb>; an improvement is a certified drop of the
// minimum's upper bound.
MinTrace running_min_trace(const RealSpec& alpha, const RealSpec& beta,
                           std::uint64_t big_n,
                           const std::vector<std::uint64_t>& checkpoints);

}  // namespace llab
