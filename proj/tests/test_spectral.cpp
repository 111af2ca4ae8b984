#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hydra/spectral_measure.hpp"

using namespace hydra;
using namespace hydra::spectral;

namespace {

double bump(double r, double lo, double hi) {
  if (r <= lo || r >= hi) return 0.0;
  double t = (2.0 * r - lo - hi) / (hi - lo);
  return std::exp(-1.0 / (1.0 - t * t));
}

struct Grid {
  std::vector<double> r;
  double dr;
  Grid(double lo, double hi, double step) : dr(step) {
    for (double x = lo; x <= hi; x += step) r.push_back(x);
  }
  double norm2(const std::vector<double>& v) const {
    double s = 0.0;
    for (size_t i = 0; i < v.size(); ++i) s += v[i] * v[i] * r[i] * r[i] * dr;
    return s;
  }
};

}  // namespace

TEST_CASE("bound-state radial functions: hydrogenic values and orthogonality") {
  // n=1 is exp(-gamma r)
  for (double r : {0.3, 1.0, 2.7}) CHECK(bound_state_radial(1, 1.0, r) == doctest::Approx(std::exp(-r)));
  // n=2: e^{-r/2}(1 - r/2)
  for (double r : {0.5, 2.0, 5.0})
    CHECK(bound_state_radial(2, 1.0, r) == doctest::Approx(std::exp(-r / 2) * (1.0 - r / 2)));
  // norm of n=1: Int e^{-2r} r^2 dr = 1/4
  CHECK(bound_state_norm2(1, 1.0) == doctest::Approx(0.25).epsilon(1e-10));
  // orthogonality of n=1 and n=2 radial states
  double ov = quad::integrate(
                  [&](double s) {
                    return cplx(bound_state_radial(1, 1.0, s) * bound_state_radial(2, 1.0, s) * s * s);
                  },
                  0.0, 60.0, 1e-13)
                  .real();
  CHECK(std::abs(ov) < 1e-10);
}

TEST_CASE("long-range regular evaluator is continuous across its switch") {
  RegularEvaluator F(2.0, 1.0, 30.0);
  // compare against an independent construction with a different switch by
  // checking smoothness of values on a fine grid spanning the switch region
  double prev = F.value(2.0);
  for (double r = 2.01; r < 6.0; r += 0.01) {
    double cur = F.value(r);
    CHECK(std::abs(cur - prev) < 0.1);  // no jumps
    prev = cur;
  }
  // and against the plain series inside the safe region
  radial::RadialSolution s = radial::RadialSolution::regular(0, 2.0, 1.0);
  for (double r : {0.5, 1.5, 3.0}) CHECK(F.value(r) == doctest::Approx(s.value(r).real()).epsilon(1e-9));
}

TEST_CASE("far field reproduces r F at large radii") {
  for (double lam : {0.3, 1.0, 4.0}) {
    double k = std::sqrt(lam);
    cplx a = scattering::jost_a(k, 1.0);
    RegularEvaluator F(lam, 1.0, 60.0);
    for (double R : {30.0, 50.0}) {
      FarField ff = far_field(k, a, 1.0, R);
      CHECK(std::abs(ff.u - R * F.value(R)) < 1e-8);
    }
  }
}

TEST_CASE("density shape: the closed form with the resolved exponent wins decisively") {
  DensityShapeFit fit = fit_density_shape({0.25, 0.5, 1.0, 2.0, 4.0, 8.0}, 1.0);
  CHECK(fit.exponent_sign == -1);  // (1 - e^{-2 pi gamma/sqrt(lambda)})^{-1}
  CHECK(fit.residual < 1e-4);
  CHECK(fit.constant == doctest::Approx(4.0 * M_PI).epsilon(1e-6));
  CHECK(fit.losing_residual > 1e-1);
}

TEST_CASE("spectral projector: window projection behaves like a projection") {
  auto f = [](double r) { return bump(r, 1.0, 2.0); };
  SpectralProjector P(0.2, 5.0, 1.0, f, 1.0, 2.0);
  Grid grid(0.05, 20.0, 0.05);

  auto Pf = P.apply(grid.r);
  double fn2 = 0.0;
  for (size_t i = 0; i < grid.r.size(); ++i)
    fn2 += f(grid.r[i]) * f(grid.r[i]) * grid.r[i] * grid.r[i] * grid.dr;

  SUBCASE("node-doubling convergence") {
    auto Pf2 = P.apply_doubled(grid.r);
    std::vector<double> d(grid.r.size());
    for (size_t i = 0; i < d.size(); ++i) d[i] = Pf2[i] - Pf[i];
    CHECK(std::sqrt(grid.norm2(d) / fn2) < 1e-8);
    CHECK(P.doubling_defect({0.5, 1.0, 2.0, 4.0}) < 1e-8);
  }

  SUBCASE("idempotence") {
    auto PPf = P.apply_twice(grid.r);
    std::vector<double> d(grid.r.size());
    for (size_t i = 0; i < d.size(); ++i) d[i] = PPf[i] - Pf[i];
    CHECK(std::sqrt(grid.norm2(d) / fn2) < 5e-3);
  }

  SUBCASE("orthogonality to the ground state") {
    double ov = 0.0, bn = 0.0;
    for (size_t i = 0; i < grid.r.size(); ++i) {
      double b = bound_state_radial(1, 1.0, grid.r[i]);
      ov += Pf[i] * b * grid.r[i] * grid.r[i] * grid.dr;
      bn += b * b * grid.r[i] * grid.r[i] * grid.dr;
    }
    CHECK(std::abs(ov) / std::sqrt(grid.norm2(Pf) * bn) < 5e-3);
  }
}

TEST_CASE("parseval bookkeeping: bound + continuum recovers the norm within 5%") {
  auto f = [](double r) { return bump(r, 1.0, 2.0); };
  CompletenessReport rep = completeness(1.0, f, 1.0, 2.0, 6, 50.0);
  CHECK(rep.ratio > 0.95);
  CHECK(rep.ratio < 1.02);
}

TEST_CASE("projector input validation") {
  auto f = [](double r) { return bump(r, 1.0, 2.0); };
  CHECK_THROWS_AS(SpectralProjector(-1.0, 5.0, 1.0, f, 1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(SpectralProjector(2.0, 1.0, 1.0, f, 1.0, 2.0), std::invalid_argument);
}
