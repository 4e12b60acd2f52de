#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "llab/lattice.hpp"

using namespace llab;

static RealSpec sqrt2() { return RealSpec::sqrt_of(2); }
static RealSpec sqrt3() { return RealSpec::sqrt_of(3); }

TEST_CASE("tau lattice of (0,0) is the identity basis") {
  LatticeState x = tau_lattice(RealSpec::integer(0), RealSpec::integer(0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(x.entry(i, j).cmp(mpq_class(i == j ? 1 : 0)) == 0);
}

TEST_CASE("tau lattice is unimodular and records provenance") {
  LatticeState x = tau_lattice(RealSpec::rational(mpq_class(1, 2)),
                               RealSpec::rational(mpq_class(1, 3)));
  CHECK(x.det().cmp(mpq_class(1)) == 0);  // unit lower triangular
  CHECK(x.has_provenance());
  LatticeState y = tau_lattice(sqrt2(), sqrt3());
  CHECK(std::abs(y.entry(1, 0).mid() - std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(y.entry(2, 0).mid() - std::sqrt(3.0)) < 1e-15);
  CHECK(y.entry(1, 0).width() < std::ldexp(1.0, -64));
}

TEST_CASE("apply_flow basics and group law") {
  LatticeState x = tau_lattice(RealSpec::integer(0), RealSpec::integer(0));
  LatticeState id = apply_flow(x, {0, 0});
  CHECK(id.entry(0, 0).cmp(mpq_class(1)) == 0);
  LatticeState d = apply_flow(x, {1, 1});
  CHECK(std::abs(d.entry(0, 0).mid() - std::exp(-2.0)) < 1e-12);
  CHECK(std::abs(d.entry(1, 1).mid() - std::exp(1.0)) < 1e-12);
  CHECK(std::abs(d.entry(2, 2).mid() - std::exp(1.0)) < 1e-12);
  LatticeState twice = apply_flow(apply_flow(x, {1, 0}), {0, 1});
  for (int i = 0; i < 9; ++i)
    CHECK(std::abs(twice.basis()[i].mid() - d.basis()[i].mid()) < 1e-12);
}

TEST_CASE("determinant invariance along flows") {
  LatticeState x = tau_lattice(sqrt2(), sqrt3());
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0, 5);
  double total = 0;
  while (total < 45) {
    double s = u(rng), t = u(rng);
    if (total + s + t > 50) break;
    x = x.flowed(s, t);
    total += s + t;
    CHECK(std::abs(x.det().mid() - 1.0) < 1e-12);
  }
}

TEST_CASE("flow range guard") {
  LatticeState x = tau_lattice(sqrt2(), sqrt3());
  CHECK_THROWS_AS(x.flowed(100, 100), std::range_error);
}

TEST_CASE("systole of Z^3 and of a diagonal push") {
  LatticeState z3 = tau_lattice(RealSpec::integer(0), RealSpec::integer(0));
  SystoleResult s = z3.systole();
  CHECK(s.norm.cmp(mpq_class(1)) == 0);
  LatticeState d = apply_flow(z3, {1, 1});  // diag(e^-2, e, e)
  SystoleResult sd = d.systole();
  CHECK(std::abs(sd.norm.mid() - std::exp(-2.0)) < 1e-12);
  CHECK(sd.coeffs[0] == 1);
  CHECK(sd.coeffs[1] == 0);
  CHECK(sd.coeffs[2] == 0);
}

TEST_CASE("in_X_eps decisions") {
  LatticeState z3 = tau_lattice(RealSpec::integer(0), RealSpec::integer(0));
  CHECK(!z3.in_x_eps(mpq_class(4, 10)).member);  // systole 1
  LatticeState d = apply_flow(z3, {1, 1});       // systole e^-2 = 0.1353
  CHECK(d.in_x_eps(mpq_class(2, 10)).member);
  CHECK(!d.in_x_eps(mpq_class(1, 10)).member);
  CHECK_THROWS_AS(z3.in_x_eps(mpq_class(3, 4)), std::invalid_argument);
}

TEST_CASE("systole cross-oracle against direct enumeration") {
  LatticeState x = tau_lattice(sqrt2(), sqrt3()).flowed(2, 2);
  SystoleResult s = x.systole();
  // brute force over |n| <= e^{s+t}, companions near n*alpha, n*beta
  double es = std::exp(2.0), et = std::exp(2.0), emst = std::exp(-4.0);
  double a = std::sqrt(2.0), b = std::sqrt(3.0);
  double best = 1e300;
  long lim = static_cast<long>(std::exp(4.0)) + 1;
  for (long n = -lim; n <= lim; ++n)
    for (long dm1 = -1; dm1 <= 1; ++dm1)
      for (long dm2 = -1; dm2 <= 1; ++dm2) {
        double m1 = -std::round(n * a) + dm1, m2 = -std::round(n * b) + dm2;
        if (n == 0 && m1 == 0 && m2 == 0) continue;
        double norm = std::max({std::abs(emst * n),
                                std::abs(es * (n * a + m1)),
                                std::abs(et * (n * b + m2))});
        best = std::min(best, norm);
      }
  CHECK(std::abs(s.norm.mid() - best) < 1e-9);
}

TEST_CASE("Minkowski bound on random unimodular lattices") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> shear(-5, 5);
  std::uniform_real_distribution<double> diag(-1.0, 1.0);
  for (int iter = 0; iter < 300; ++iter) {
    // random integer unimodular via shear products, then balanced diagonal
    double m[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int k = 0; k < 6; ++k) {
      int i = rng() % 3, j = rng() % 3;
      if (i == j) continue;
      double c = shear(rng);
      for (int r = 0; r < 3; ++r) m[r][j] += c * m[r][i];
    }
    double a = diag(rng), b = diag(rng);
    double d0 = std::exp(a), d1 = std::exp(b), d2 = std::exp(-a - b);
    Mat3 basis;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        double dr = r == 0 ? d0 : (r == 1 ? d1 : d2);
        basis[r * 3 + c] = Interval::exact(dr) * Interval::exact(m[r][c]);
      }
    LatticeState x = LatticeState::from_basis(basis);
    CHECK(x.systole().norm.lo() <= 1 + 1e-9);
  }
}

TEST_CASE("systole symmetry under swapping alpha and beta") {
  LatticeState x = tau_lattice(sqrt2(), sqrt3()).flowed(1.3, 0.4);
  LatticeState y = tau_lattice(sqrt3(), sqrt2()).flowed(0.4, 1.3);
  CHECK(std::abs(x.systole().norm.mid() - y.systole().norm.mid()) < 1e-12);
  CHECK(x.systole().coeffs[0] == y.systole().coeffs[0]);
  CHECK(x.systole().coeffs[1] == y.systole().coeffs[2]);
  CHECK(x.systole().coeffs[2] == y.systole().coeffs[1]);
}

TEST_CASE("conjugation expansion rates") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-2, 2);
  long prec = 192;
  for (int i = 0; i < 100; ++i) {
    double u1 = u(rng), u2 = u(rng);
    Mat3 tu = tau_matrix(RealSpec::integer(0), RealSpec::integer(0), prec);
    tu[3] = Interval::exact(u1, prec);
    tu[6] = Interval::exact(u2, prec);
    // a1 = a_{1,0}, a2 = a_{0,1}
    Mat3 a1 = flow_matrix(1, 0, prec), a1inv = flow_matrix(-1, 0, prec);
    Mat3 a2 = flow_matrix(0, 1, prec), a2inv = flow_matrix(0, -1, prec);
    Mat3 c1 = mat_mul(mat_mul(a1, tu), a1inv);
    Mat3 c2 = mat_mul(mat_mul(a2, tu), a2inv);
    double e = std::exp(1.0), e2 = std::exp(2.0);
    CHECK(std::abs(c1[3].mid() - e2 * u1) < 1e-12);
    CHECK(std::abs(c1[6].mid() - e * u2) < 1e-12);
    CHECK(std::abs(c2[3].mid() - e * u1) < 1e-12);
    CHECK(std::abs(c2[6].mid() - e2 * u2) < 1e-12);
    // off-unipotent entries stay put
    for (int idx : {1, 2, 5, 7})
      CHECK(std::abs(c1[idx].mid()) < 1e-12);
  }
}

TEST_CASE("orbit trace closed form for the zero point") {
  OrbitTrace tr =
      orbit_trace(RealSpec::integer(0), RealSpec::integer(0), 2, 1);
  REQUIRE(tr.points.size() == 9);
  for (const auto& p : tr.points)
    CHECK(std::abs(p.sys.norm.mid() - std::exp(-p.s - p.t)) < 1e-12);
  OrbitTrace single =
      orbit_trace(RealSpec::integer(0), RealSpec::integer(0), 0.5, 1);
  REQUIRE(single.points.size() == 1);
  CHECK(single.points[0].sys.norm.cmp(mpq_class(1)) == 0);
}

TEST_CASE("non-unimodular basis rejected") {
  Mat3 m = identity_mat();
  m[0] = Interval::exact(2.0);
  CHECK_THROWS_AS(LatticeState::from_basis(m), std::invalid_argument);
}
