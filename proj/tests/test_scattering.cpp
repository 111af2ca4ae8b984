#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hydra/greens.hpp"
#include "hydra/kodaira.hpp"

using namespace hydra;
using namespace hydra::scattering;
using radial::RadialSolution;

namespace {

double bump(double r, double lo, double hi) {
  if (r <= lo || r >= hi) return 0.0;
  double t = (2.0 * r - lo - hi) / (hi - lo);
  return std::exp(-1.0 / (1.0 - t * t));
}

}  // namespace

TEST_CASE("outgoing solutions pair to Wr(U_k, U_-k) = 2ik") {
  for (double k : {0.5, 1.0, 2.0}) {
    KodairaSolution up(k, 1.0), um(cplx(-k, 0.0), 1.0);
    double r = 1.3;
    cplx wr = up.du(r) * um.u(r) - up.u(r) * um.du(r);
    CHECK(std::abs(wr - cplx(0.0, 2.0 * k)) < 1e-6);
  }
}

TEST_CASE("reflection: U_{-k} is the pointwise conjugate of U_k for k > 0") {
  KodairaSolution up(1.0, 1.0), um(cplx(-1.0, 0.0), 1.0);
  for (double r : {0.7, 1.0, 1.8, 3.0, 12.0})
    CHECK(std::abs(um.u(r) - std::conj(up.u(r))) < 1e-8);
}

TEST_CASE("decay in the upper half plane: |r U_k| falls off") {
  KodairaSolution u(cplx(0.4, 0.8), 1.0);
  double r0 = u.r0();
  CHECK(std::abs(u.u(2.0 * r0)) < std::abs(u.u(r0)));
}

TEST_CASE("jost function: reality symmetry a(-k) = conj a(k)") {
  for (double k : {0.5, 1.0, 2.0}) {
    cplx ap = jost_a(k, 1.0), am = jost_a(cplx(-k, 0.0), 1.0);
    CHECK(std::abs(am - std::conj(ap)) < 1e-8 * std::abs(ap));
    CHECK(std::abs(ap) > 1e-3);
  }
}

TEST_CASE("matching-radius independence of the jost function") {
  JostOptions o1, o2;
  o2.r_match = 1.5;
  cplx a1 = jost_a(1.0, 1.0, o1), a2 = jost_a(1.0, 1.0, o2);
  CHECK(std::abs(a1 - a2) < 1e-8 * std::abs(a1));
}

TEST_CASE("bound states are zeros of a on the positive imaginary axis") {
  for (int n : {1, 2}) {
    cplx k(0.0, 1.0 / n);
    KodairaSolution u(k, 1.0);
    RadialSolution f = RadialSolution::regular(0, k * k, 1.0);
    // proportionality fit r F ~ c r U
    std::vector<double> radii{0.6, 0.9, 1.3, 1.8, 2.5};
    cplx num = 0.0;
    double den = 0.0, fnorm = 0.0;
    for (double r : radii) {
      cplx uf = r * f.value(r), uu = u.u(r);
      num += std::conj(uu) * uf;
      den += std::norm(uu);
      fnorm += std::norm(uf);
    }
    cplx c = num / den;
    double res = 0.0;
    for (double r : radii) res += std::norm(r * f.value(r) - c * u.u(r));
    CHECK(std::sqrt(res / fnorm) < 1e-6);
  }
}

TEST_CASE("regular solution reconstructs from the outgoing pair") {
  double k = 1.0;
  KodairaSolution up(k, 1.0), um(cplx(-k, 0.0), 1.0);
  cplx ap = jost_a(k, 1.0), am = jost_a(cplx(-k, 0.0), 1.0);
  RadialSolution f = RadialSolution::regular(0, k * k, 1.0);
  for (double r : {0.7, 1.1, 1.6, 2.2}) {
    cplx recon = (am * up.value(r) - ap * um.value(r)) / (cplx(0.0, 2.0) * k);
    CHECK(std::abs(recon - f.value(r)) < 1e-6);
  }
}

TEST_CASE("k too close to the origin is rejected with a clear error") {
  CHECK_THROWS_AS(KodairaSolution(cplx(0.01, 0.0), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(KodairaSolution(cplx(0.0, 0.0), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(KodairaSolution(cplx(1.0, -0.5), 1.0), std::invalid_argument);
}

TEST_CASE("limiting absorption recovers the spectral density") {
  for (double lam : {0.25, 1.0, 4.0}) {
    auto la = limiting_absorption(lam, 1.0);
    cplx w = spectral_density(lam, 1.0);
    CHECK(std::abs(la.w_fit - w) < 1e-4 * std::abs(w));
    CHECK(la.regular_residual < 1e-6);
    CHECK(w.imag() > 0.0);
    // boundary values from above and below are conjugate
    for (size_t i = 0; i < la.r_samples.size(); ++i)
      CHECK(std::abs(la.v_plus[i] - std::conj(la.v_minus[i])) < 1e-6);
  }
}

TEST_CASE("density flattens exponentially toward the spectral edge") {
  // w(lambda) = 4 pi gamma i (1 - e^{-2 pi gamma/sqrt(lambda)})^{-1}: the
  // deviation from the edge value 4 pi gamma i decays like
  // e^{-2 pi gamma/sqrt(lambda)}, far below the numerical floor already at
  // lambda = 0.04 (ratio test: the deviation cannot grow toward 0)
  cplx w1 = spectral_density(0.04, 1.0);
  cplx w2 = spectral_density(0.01, 1.0);
  double d1 = std::abs(w1 - cplx(0.0, 4.0 * M_PI)) / std::abs(w1);
  double d2 = std::abs(w2 - cplx(0.0, 4.0 * M_PI)) / std::abs(w2);
  CHECK(d1 < 1e-6);
  CHECK(d2 < 2e-6);
  // at moderate lambda the full closed form is resolvable and matches
  for (double lam : {0.5, 1.0, 4.0}) {
    cplx w = spectral_density(lam, 1.0);
    cplx closed = cplx(0.0, 4.0 * M_PI) / (1.0 - std::exp(-2.0 * M_PI / std::sqrt(lam)));
    CHECK(std::abs(w - closed) < 1e-7 * std::abs(closed));
  }
}

TEST_CASE("greens function: (T - lambda) inverse followed by (T - lambda) is the identity") {
  cplx lam(1.0, 1.0);
  GreensOptions go;
  go.quad_tol = 1e-13;
  GreensApplier g(lam, 1.0, go);
  auto f = [&](double r) { return cplx(bump(r, 1.0, 2.0)); };
  double h = 0.0075, worst = 0.0;
  for (double r : {0.6, 0.9, 1.2, 1.5, 1.8, 2.1, 2.5}) {
    cplx psi[5];
    for (int j = -2; j <= 2; ++j) psi[j + 2] = g.apply(f, r + j * h, 1.0, 2.0);
    cplx d2 = (-psi[0] + 16.0 * psi[1] - 30.0 * psi[2] + 16.0 * psi[3] - psi[4]) / (12.0 * h * h);
    cplx d1 = (psi[0] - 8.0 * psi[1] + 8.0 * psi[3] - psi[4]) / (12.0 * h);
    cplx res = -d2 - 2.0 * d1 / r - 2.0 / r * psi[2] - lam * psi[2] - f(r);
    worst = std::max(worst, std::abs(res));
  }
  double fsup = bump(1.5, 1.0, 2.0);
  CHECK(worst / fsup < 1e-6);
}

TEST_CASE("greens function is linear") {
  cplx lam(1.0, 1.0);
  GreensApplier g(lam, 1.0);
  auto f1 = [&](double r) { return cplx(bump(r, 1.0, 2.0)); };
  auto f2 = [&](double r) { return cplx(bump(r, 1.2, 1.9)); };
  auto fs = [&](double r) { return f1(r) + f2(r); };
  cplx both = g.apply(fs, 1.4, 1.0, 2.0);
  cplx parts = g.apply(f1, 1.4, 1.0, 2.0) + g.apply(f2, 1.4, 1.0, 2.0);
  CHECK(std::abs(both - parts) < 1e-10);
}

TEST_CASE("first resolvent identity") {
  cplx l1(1.0, 1.0), l2(2.0, 1.0);
  GreensOptions go;
  go.quad_tol = 1e-13;
  GreensApplier g1(l1, 1.0, go), g2(l2, 1.0, go);
  auto f = [&](double r) { return cplx(bump(r, 1.0, 2.0)); };
  auto g2f = [&](double r) { return g2.apply(f, r, 1.0, 2.0); };
  double rcut = std::min({g1.suggested_cutoff(), g2.suggested_cutoff(), 120.0});
  double worst = 0.0, scale = 0.0;
  for (double r : {0.8, 1.3, 1.9, 2.6}) {
    cplx lhs = g1.apply(f, r, 1.0, 2.0) - g2.apply(f, r, 1.0, 2.0);
    cplx rhs = (l1 - l2) * g1.apply(g2f, r, 0.0, rcut);
    worst = std::max(worst, std::abs(lhs - rhs));
    scale = std::max(scale, std::abs(lhs));
  }
  CHECK(worst < 1e-5 * scale);
}

TEST_CASE("greens rejects lambda on or near the spectrum") {
  CHECK_THROWS_AS(GreensApplier(cplx(1.0, 0.0), 1.0), std::invalid_argument);
}
