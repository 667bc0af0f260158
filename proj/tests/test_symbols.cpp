#include <doctest.h>

#include <cmath>
#include <random>

#include "angb/symbols.hpp"

using namespace angb;

namespace {

PolySymbol cubic() {  // xi^3 - 2 xi
  return PolySymbol(1, {{{3}, 1.0}, {{1}, -2.0}});
}

}  // namespace

TEST_CASE("evaluation and principal part") {
  PolySymbol p = cubic();
  CHECK(p.order == 3);
  CHECK(eval_symbol(p, {2.0}) == doctest::Approx(4.0));
  PolySymbol top = principal_part(p);
  CHECK(top.order == 3);
  CHECK(eval_symbol(top, {2.0}) == doctest::Approx(8.0));
  CHECK(grad_principal(p, {2.0})[0] == doctest::Approx(12.0));

  PolySymbol q(2, {{{2, 0}, 1.0}, {{1, 1}, 1.0}});
  CHECK(eval_symbol(q, {2.0, 3.0}) == doctest::Approx(10.0));
  auto g = grad_principal(q, {2.0, 3.0});
  CHECK(g[0] == doctest::Approx(7.0));
  CHECK(g[1] == doctest::Approx(2.0));
}

TEST_CASE("construction guards") {
  CHECK_THROWS(PolySymbol(1, {{{13}, 1.0}}));            // order cap
  CHECK_THROWS(PolySymbol(1, {{{-1}, 1.0}}));            // negative exponent
  CHECK_THROWS(PolySymbol(1, {{{1, 1}, 1.0}}));          // arity mismatch
  CHECK_THROWS(eval_symbol(cubic(), {1.0, 2.0}));        // dimension mismatch
}

TEST_CASE("gradient of the principal part vanishes at the origin") {
  for (int m = 2; m <= 6; ++m) {
    PolySymbol p(1, {{{m}, 3.0}, {{0}, 1.0}});
    CHECK(grad_principal(p, {0.0})[0] == 0.0);
  }
}

TEST_CASE("gradient matches central differences") {
  PolySymbol p = cubic();
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    double xi = u(rng);
    double hstep = 1e-5 * std::max(1.0, std::abs(xi));
    PolySymbol top = principal_part(p);
    double fd = (eval_symbol(top, {xi + hstep}) - eval_symbol(top, {xi - hstep})) / (2 * hstep);
    CHECK(grad_principal(p, {xi})[0] == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("bicharacteristic flow: inverse and group law") {
  PolySymbol p = cubic();
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    PhasePoint z({u(rng)}, {u(rng)});
    double t1 = u(rng), t2 = u(rng);
    PhasePoint a = flow({p, t2}, flow({p, t1}, z));
    PhasePoint b = flow({p, t1 + t2}, z);
    CHECK(a.x[0] == doctest::Approx(b.x[0]).epsilon(1e-12));
    CHECK(a.xi[0] == doctest::Approx(b.xi[0]).epsilon(1e-12));
    PhasePoint back = flow({p, -t1}, flow({p, t1}, z));
    CHECK(back.x[0] == doctest::Approx(z.x[0]).epsilon(1e-12));
    CHECK(back.xi[0] == doctest::Approx(z.xi[0]).epsilon(1e-12));
  }
}

TEST_CASE("elliptic symbol: cutoff and anisotropic homogeneity") {
  EllipticSymbol a{0.5, 3.0};
  CHECK(elliptic_symbol_eval(a, PhasePoint({0.1}, {0.2})) == 0.0);
  CHECK(elliptic_symbol_eval(a, PhasePoint({0.3}, {0.3})) == 0.0);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> th(0.0, 6.283185307179586);
  std::uniform_real_distribution<double> mu_dist(1.0, 50.0);
  for (int i = 0; i < 200; ++i) {
    double ang = th(rng);
    // Base point at |z| >= 2 so both it and its dilate are past the cutoff.
    PhasePoint z({2.0 * std::cos(ang)}, {2.0 * std::sin(ang)});
    double mu = mu_dist(rng);
    PhasePoint zs({mu * z.x[0]}, {std::pow(mu, a.s) * z.xi[0]});
    double lhs = elliptic_symbol_eval(a, zs);
    double rhs = std::pow(mu, a.m) * elliptic_symbol_eval(a, z);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("ellipticity against the anisotropic weight") {
  for (double s : {0.5, 1.0, 2.0}) {
    EllipticSymbol a{s, 2.0};
    EllipticityReport r1 = ellipticity_check(a, 20000, 101);
    EllipticityReport r2 = ellipticity_check(a, 20000, 202);
    CHECK(r1.ok);
    CHECK(r1.c_lower > 1e-3);
    CHECK(r1.c_upper < 1e3);
    // Constants are seed-stable.
    CHECK(std::abs(r1.c_lower - r2.c_lower) < 0.5 * r1.c_lower + 0.01);
    CHECK(std::abs(r1.c_upper - r2.c_upper) < 0.5 * r1.c_upper + 0.01);
  }
}
