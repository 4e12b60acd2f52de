#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "llab/symbolic.hpp"

using namespace llab;

TEST_CASE("dist basics") {
  auto q = dist_exact({1, 2, 1, 1}, 2);
  CHECK(q[0] == mpq_class(3, 4));
  CHECK(q[1] == mpq_class(1, 4));
  auto point = dist_exact({2, 2, 2}, 3);
  CHECK(point[1] == 1);
  // concatenation invariance
  std::vector<int> c = {1, 3, 2, 3}, cc = c;
  cc.insert(cc.end(), c.begin(), c.end());
  CHECK(dist_exact(c, 3) == dist_exact(cc, 3));
  CHECK_THROWS(dist_exact({}, 2));
  CHECK_THROWS(dist_exact({5}, 2));
}

TEST_CASE("entropy values") {
  CHECK(entropy(std::vector<double>{0.5, 0.5}) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(entropy(std::vector<double>{1.0, 0.0}) == 0);
  CHECK(entropy(std::vector<double>{0.75, 0.25}) ==
        doctest::Approx(0.5623351446188083).epsilon(1e-12));
  CHECK_THROWS(entropy(std::vector<double>{0.7, 0.7}));
}

TEST_CASE("entropy bounds and permutation invariance") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 200; ++i) {
    int k = 2 + static_cast<int>(rng() % 5);
    std::vector<double> q(k);
    double s = 0;
    for (auto& v : q) s += v = u(rng) + 1e-12;
    for (auto& v : q) v /= s;
    double h = entropy(q);
    CHECK(h >= 0);
    CHECK(h <= std::log(static_cast<double>(k)) + 1e-12);
    std::vector<double> p = q;
    std::shuffle(p.begin(), p.end(), rng);
    CHECK(entropy(p) == doctest::Approx(h).epsilon(1e-12));
  }
}

TEST_CASE("entropy concavity") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    int k = 2 + static_cast<int>(rng() % 4);
    std::vector<double> q(k), p(k);
    double sq = 0, sp = 0;
    for (int j = 0; j < k; ++j) {
      sq += q[j] = u(rng) + 1e-12;
      sp += p[j] = u(rng) + 1e-12;
    }
    for (int j = 0; j < k; ++j) {
      q[j] /= sq;
      p[j] /= sp;
    }
    for (double lam : {0.25, 0.5, 0.75}) {
      std::vector<double> mix(k);
      for (int j = 0; j < k; ++j) mix[j] = lam * q[j] + (1 - lam) * p[j];
      CHECK(entropy(mix) >=
            lam * entropy(q) + (1 - lam) * entropy(p) - 1e-10);
    }
  }
}

TEST_CASE("bowen count oracles") {
  CHECK(bowen_count(2, 3, 0) == 2);  // constants only
  CHECK(bowen_count(3, 4, 0) == 3);
  for (int N : {1, 4, 9})  // H <= log 2 always, so everything counts
    CHECK(bowen_count(2, N, std::log(2.0)) == mpz_class(1) << N);
  CHECK(bowen_count_exhaustive(2, 3, 0) == 2);
  CHECK(bowen_count_exhaustive(3, 4, 0) == 3);
}

TEST_CASE("exhaustive equals type-class where both run") {
  for (double t : {0.0, 0.2, 0.5, 1.0})
    for (int N = 1; N <= 12; ++N) {
      CHECK(bowen_count_exhaustive(2, N, t) == bowen_count_typeclass(2, N, t));
      if (std::pow(3.0, N) <= 1e6)
        CHECK(bowen_count_exhaustive(3, N, t) ==
              bowen_count_typeclass(3, N, t));
    }
}

TEST_CASE("bowen envelope holds and approaches t") {
  auto table = bowen_bound_check(2, 18, 0.5);
  REQUIRE(table.size() == 18);
  for (const auto& r : table) {
    CHECK(r.ok);
    CHECK(r.rate <= r.envelope + 1e-12);
  }
  CHECK(std::abs(table.back().rate - 0.5) < 0.15);
  // t >= log k: everything counts and the rate equals log k <= t
  auto full = bowen_bound_check(2, 10, std::log(2.0) + 0.1);
  CHECK(full.back().count == mpz_class(1) << 10);
}

TEST_CASE("orbit coding basics") {
  RealSpec a = RealSpec::sqrt_of(2), b = RealSpec::sqrt_of(3);
  // thresholds below every systole: single top bin, zero entropy
  OrbitCoding flat = orbit_coding(a, b, 6, 2, {1e-9});
  for (double r : flat.row_rates) CHECK(r == 0);
  CHECK(flat.cusp_fraction == 0);
  // M = 1 gives H of the plain symbol distribution
  OrbitCoding m1 = orbit_coding(a, b, 8, 1, {0.1, 0.3});
  for (int n = 0; n < 8; ++n) {
    double h = entropy(dist(m1.rows[n], m1.k));
    CHECK(m1.row_rates[n] == doctest::Approx(h).epsilon(1e-12));
  }
  // determinism, bit-exact
  OrbitCoding r1 = orbit_coding(a, b, 10, 3, {0.1, 0.3});
  OrbitCoding r2 = orbit_coding(a, b, 10, 3, {0.1, 0.3});
  CHECK(r1.rows == r2.rows);
  CHECK(r1.row_rates == r2.row_rates);
  CHECK(r1.cusp_fraction == r2.cusp_fraction);
  // flagging against a supplied threshold
  OrbitCoding fl = orbit_coding(a, b, 8, 2, {0.1, 0.3}, 1e9);
  for (bool f : fl.flagged) CHECK(f);
}

TEST_CASE("row decomposition identity for codings") {
  RealSpec a = RealSpec::sqrt_of(2), b = RealSpec::sqrt_of(3);
  OrbitCoding oc = orbit_coding(a, b, 8, 1, {0.15, 0.4});
  std::vector<int> all;
  std::vector<mpq_class> mean(oc.k, mpq_class(0));
  for (const auto& row : oc.rows) {
    all.insert(all.end(), row.begin(), row.end());
    auto q = dist_exact(row, oc.k);
    for (int i = 0; i < oc.k; ++i) mean[i] += q[i];
  }
  for (auto& v : mean) v /= static_cast<unsigned long>(oc.rows.size());
  CHECK(dist_exact(all, oc.k) == mean);
}

TEST_CASE("range guards") {
  CHECK_THROWS_AS(bowen_count_exhaustive(2, 40, 0.5), std::range_error);
  CHECK_THROWS_AS(orbit_coding(RealSpec::sqrt_of(2), RealSpec::sqrt_of(3),
                               100, 2, {0.1}),
                  std::range_error);
}
