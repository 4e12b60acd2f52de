#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "llab/fracstream.hpp"

using namespace llab;

TEST_CASE("stream tracks frac(n*alpha) for rationals exactly") {
  RealSpec x = RealSpec::rational(mpq_class(3, 7));
  FracStream s(x, 1);
  for (int n = 1; n <= 100; ++n) {
    double want = (3.0 * n) / 7.0 - std::floor((3.0 * n) / 7.0);
    // circular distance: the fixed point can sit at 1 - tiny when want = 0
    double diff = std::abs(s.frac() - want);
    diff = std::min(diff, 1.0 - diff);
    CHECK(diff <= s.error_bound() + 1e-12);
    s.advance();
  }
}

TEST_CASE("stream vs direct evaluation at random checkpoints") {
  RealSpec a = RealSpec::sqrt_of(2);
  std::mt19937_64 rng(11);
  std::vector<std::uint64_t> checkpoints;
  for (int i = 0; i < 25; ++i)
    checkpoints.push_back(rng() % 100000000 + 1);
  std::sort(checkpoints.begin(), checkpoints.end());
  FracStream s(a, 1);
  for (std::uint64_t cp : checkpoints) {
    while (s.index() < cp) s.advance();
    Interval d = a.times_int(mpz_class(static_cast<unsigned long>(cp)))
                     .nearest_distance(160);
    CHECK(std::abs(s.dist() - d.mid()) <= s.error_bound() + 1e-12);
  }
}

TEST_CASE("reseed resets the drift") {
  RealSpec a = RealSpec::sqrt_of(3);
  FracStream s(a, 1);
  for (int i = 0; i < 100000; ++i) s.advance();
  double before = s.error_bound();
  s.reseed(s.index());
  CHECK(s.error_bound() < before);
  CHECK(s.error_bound() < 1e-25);
}

TEST_CASE("error bound grows linearly with steps") {
  RealSpec a = RealSpec::sqrt_of(5);
  FracStream s(a, 1);
  double e0 = s.error_bound();
  for (int i = 0; i < 1000; ++i) s.advance();
  double e1 = s.error_bound();
  CHECK(e1 > e0);
  CHECK(e1 - e0 == doctest::Approx(1000 * std::ldexp(1.0, -96)).epsilon(1e-6));
}

TEST_CASE("dist is the fold of frac onto [0, 1/2]") {
  RealSpec a = RealSpec::rational(mpq_class(9, 10));
  FracStream s(a, 1);  // frac = 0.9 -> dist = 0.1
  CHECK(s.dist() == doctest::Approx(0.1).epsilon(1e-9));
}
