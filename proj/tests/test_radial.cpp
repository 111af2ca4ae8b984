#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hydra/radial.hpp"

using namespace hydra::radial;

namespace {

// residual of the radial equation, relative to the size of its terms
double ode_residual(const RadialSolution& s, double r) {
  auto j = s.jet(r, 2);
  cplx terms[5] = {r * r * j[2], 2.0 * r * j[1], -double(s.ell() * (s.ell() + 1)) * j[0],
                   2.0 * s.gamma() * r * j[0], s.lambda() * r * r * j[0]};
  cplx res = 0.0;
  double scale = 1e-300;
  for (cplx t : terms) {
    res += t;
    scale = std::max(scale, std::abs(t));
  }
  return std::abs(res) / scale;
}

}  // namespace

TEST_CASE("regular series coefficients at lambda=0 match the Bessel expansion") {
  // J_1(sqrt(8r))/sqrt(2r) = 1 - r + r^2/3 - ...
  RadialSolution f = RadialSolution::regular(0, 0.0, 1.0);
  double r = 1e-3;
  cplx v = f.value(r);
  CHECK(std::abs(v - (1.0 - r + r * r / 3.0)) < 1e-10);
  // and against the closed form on a few radii
  for (double rr : {0.1, 0.5, 2.0})
    CHECK(std::abs(f.value(rr) - bessel_closed_form(0, 1.0, rr)) < 1e-12 * std::abs(f.value(rr)) + 1e-14);
}

TEST_CASE("F at lambda = -gamma^2 is exp(-gamma r)") {
  for (double gamma : {1.0, 1.5}) {
    RadialSolution f = RadialSolution::regular(0, -gamma * gamma, gamma);
    for (double r : {0.1, 0.7, 1.0, 2.5, 5.0})
      CHECK(std::abs(f.value(r) - std::exp(-gamma * r)) < 1e-12);
  }
}

TEST_CASE("normalization: F / r^ell tends to 1 at the origin") {
  for (int ell : {0, 1, 3, 5}) {
    RadialSolution f = RadialSolution::regular(ell, cplx(0.3, -0.2), 1.0);
    CHECK(std::abs(f.reduced_jet(1e-8, 0)[0] - 1.0) < 1e-7);
  }
}

TEST_CASE("ODE residual is tiny for both kinds at random radii") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> radius(0.05, 4.0);
  for (int ell : {0, 1, 2, 4}) {
    for (cplx lambda : {cplx(0.0), cplx(-1.0), cplx(1.0), cplx(2.0, 1.0), cplx(-0.25)}) {
      RadialSolution f = RadialSolution::regular(ell, lambda, 1.0);
      RadialSolution g = RadialSolution::singular(ell, lambda, 1.0);
      for (int trial = 0; trial < 10; ++trial) {
        double r = radius(rng);
        CHECK(ode_residual(f, r) < 1e-11);
        CHECK(ode_residual(g, r) < 1e-11);
      }
    }
  }
}

TEST_CASE("singular solution shape: pole of order ell+1, unit leading coefficient") {
  RadialSolution g = RadialSolution::singular(0, 0.7, 1.0);
  double r = 1e-7;
  CHECK(std::abs(g.value(r) * r - 1.0) < 1e-5);  // G ~ 1/r near 0

  RadialSolution g2 = RadialSolution::singular(2, 0.7, 1.0);
  CHECK(std::abs(g2.value(r) * std::pow(r, 3) - 1.0) < 1e-5);
}

TEST_CASE("log term is genuinely present: C_{0,lambda} = -2 gamma") {
  for (double gamma : {1.0, 0.5}) {
    for (cplx lambda : {cplx(0.0), cplx(1.0), cplx(-0.3, 0.1)}) {
      RadialSolution g = RadialSolution::singular(0, lambda, gamma);
      CHECK(std::abs(g.log_coefficient() - cplx(-2.0 * gamma)) < 1e-14);
    }
  }
}

TEST_CASE("wronskian of F against G is the constant 2 ell + 1") {
  std::vector<double> radii{0.5, 1.0, 2.0};
  for (int ell : {0, 1, 2, 3}) {
    for (cplx lambda : {cplx(0.0), cplx(-1.0), cplx(1.0), cplx(2.0, 1.0)}) {
      RadialSolution f = RadialSolution::regular(ell, lambda, 1.0);
      RadialSolution g = RadialSolution::singular(ell, lambda, 1.0);
      cplx w = wronskian(f, g, radii, 1e-10);
      CHECK(std::abs(w - cplx(double(2 * ell + 1))) < 1e-9);
    }
  }
}

TEST_CASE("wronskian bilinearity and antisymmetry") {
  RadialSolution f = RadialSolution::regular(1, 0.5, 1.0);
  RadialSolution g = RadialSolution::singular(1, 0.5, 1.0);
  std::vector<double> radii{0.5, 1.0, 2.0};
  CHECK(std::abs(wronskian(f, f, radii)) < 1e-14);
  cplx wfg = wronskian(f, g, radii);
  cplx wgf = wronskian(g, f, radii);
  CHECK(std::abs(wfg + wgf) < 1e-9);
  // wr(a phi, b psi) = a b wr(phi, psi) on the pointwise form
  double r = 1.2;
  auto jf = f.jet(r, 1);
  auto jg = g.jet(r, 1);
  cplx a(2.0, -1.0), b(0.5, 3.0);
  cplx plain = r * r * (jf[1] * jg[0] - jf[0] * jg[1]);
  cplx scaled = r * r * ((a * jf[1]) * (b * jg[0]) - (a * jf[0]) * (b * jg[1]));
  CHECK(std::abs(scaled - a * b * plain) < 1e-12 * std::abs(scaled));
}

TEST_CASE("series agrees with the Kummer closed form on the stated grid") {
  for (int ell = 0; ell <= 4; ++ell) {
    for (cplx lambda : {cplx(-1.0), cplx(-0.25), cplx(1.0), cplx(2.0, 1.0)}) {
      RadialSolution f = RadialSolution::regular(ell, lambda, 1.0);
      for (double r : {0.1, 1.0, 5.0}) {
        cplx a = f.value(r);
        cplx b = kummer_closed_form(ell, lambda, 1.0, r);
        CHECK(std::abs(a - b) <= 1e-10 * std::max(std::abs(a), std::abs(b)));
      }
    }
    // lambda = 0 against the Bessel form
    RadialSolution f0 = RadialSolution::regular(ell, 0.0, 1.0);
    for (double r : {0.1, 1.0, 5.0}) {
      double b = bessel_closed_form(ell, 1.0, r);
      CHECK(std::abs(f0.value(r) - b) <= 1e-10 * std::abs(b));
    }
  }
}

TEST_CASE("closed form is independent of the square-root branch") {
  for (int ell : {0, 2}) {
    for (double r : {0.3, 1.7}) {
      cplx a = kummer_closed_form(ell, cplx(2.0, 1.0), 1.0, r, false);
      cplx b = kummer_closed_form(ell, cplx(2.0, 1.0), 1.0, r, true);
      CHECK(std::abs(a - b) < 1e-12 * std::abs(a));
    }
  }
}

TEST_CASE("kummer a=0 degenerates to the exponential: closed form equals exp(-r)") {
  // ell=0, gamma=1, lambda=-1: a = 1 - 1/1 = 0, M(0,2,z) = 1
  for (double r : {0.2, 1.0, 3.0})
    CHECK(std::abs(kummer_closed_form(0, -1.0, 1.0, r) - std::exp(-r)) < 1e-13);
}

TEST_CASE("F is entire in lambda: difference quotients are stencil-consistent") {
  double r = 1.3, h = 1e-3;
  int ell = 1;
  auto F = [&](cplx lam) { return RadialSolution::regular(ell, lam, 1.0).value(r); };
  cplx lam0(0.4, 0.0);
  cplx two_point = (F(lam0 + h) - F(lam0 - h)) / (2.0 * h);
  cplx four_point =
      (-F(lam0 + 2.0 * h) + 8.0 * F(lam0 + h) - 8.0 * F(lam0 - h) + F(lam0 - 2.0 * h)) /
      (12.0 * h);
  // both approximate dF/dlambda; they differ by O(h^2)
  CHECK(std::abs(two_point - four_point) < 10.0 * h * h * std::max(1.0, std::abs(two_point)));
}

TEST_CASE("the resonant free coefficient only shifts G by a multiple of F") {
  int ell = 1;
  cplx lambda(0.6, 0.0);
  RadialSolution g0 = RadialSolution::singular(ell, lambda, 1.0, 1e-12, 0.0);
  RadialSolution g1 = RadialSolution::singular(ell, lambda, 1.0, 1e-12, 1.0);
  RadialSolution f = RadialSolution::regular(ell, lambda, 1.0);
  CHECK(std::abs(g0.log_coefficient() - g1.log_coefficient()) < 1e-14);
  // (g1 - g0)/F constant across radii
  std::vector<cplx> ratio;
  for (double r : {0.4, 0.9, 1.7}) ratio.push_back((g1.value(r) - g0.value(r)) / f.value(r));
  CHECK(std::abs(ratio[0] - ratio[1]) < 1e-9);
  CHECK(std::abs(ratio[1] - ratio[2]) < 1e-9);
  // and Wronskian-based quantities are unchanged
  std::vector<double> radii{0.5, 1.0, 2.0};
  CHECK(std::abs(wronskian(f, g0, radii) - wronskian(f, g1, radii)) < 1e-9);
}

TEST_CASE("cancellation guard reports a safe radius") {
  RadialSolution f = RadialSolution::regular(0, -1.0, 1.0);
  bool threw = false;
  try {
    (void)f.value(60.0);  // exp(-60) from an alternating series: hopeless in doubles
  } catch (const unsafe_radius_error& e) {
    threw = true;
    CHECK(e.safe_radius > 0.0);
    CHECK(e.safe_radius < 60.0);
  }
  CHECK(threw);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(RadialSolution::regular(-1, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(RadialSolution::regular(0, 0.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(RadialSolution::regular(0, 0.0, 1.0, -1e-9), std::invalid_argument);
  CHECK_THROWS_AS(kummer_closed_form(0, 0.0, 1.0, 1.0), std::invalid_argument);
}
