#pragma once

// Numerical action of the symmetry operators on product eigenfunctions
// f(r) Y^{l,m}: isotypical projection by sphere quadrature, coupling
// coefficients of the lowering combination R- = -i R1 - R2, and the
// sphere-averaged Wronskian form.

#include <complex>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "hydra/generators.hpp"
#include "hydra/harmonics.hpp"
#include "hydra/polar_apply.hpp"
#include "hydra/radial.hpp"

namespace hydra::angular {

using radial::Kind;
using radial::RadialSolution;

inline DiffOp lowering_runge_lenz(const Generators& g) {
  return (-GaussRational::i()) * g.R[0] + GaussRational(make_rational(-1)) * g.R[1];
}

// A psi for psi = f(r) Y^{l,m}; evaluates the function and its radial
// derivative pointwise
class AppliedState {
 public:
  AppliedState(const DiffOp& A, RadialSolution rad, const HarmonicBasis& basis, int m)
      : rad_(std::move(rad)),
        val_(A, basis.solid(rad_.ell(), m)),
        dr_(radial_derivative_op() * A, basis.solid(rad_.ell(), m)) {}

  int max_order() const { return std::max(val_.max_order(), dr_.max_order()); }

  // value and radial derivative of (A psi) at r * n
  std::pair<cplx, cplx> eval(double r, const std::array<double, 3>& n) const {
    int dmax = max_order();
    if (dmax < 0) return {0.0, 0.0};  // the operator annihilates this state
    std::vector<cplx> jet = rad_.reduced_jet(r, dmax);
    std::array<double, 3> x{r * n[0], r * n[1], r * n[2]};
    return {val_.eval(jet, x, r), dr_.eval(jet, x, r)};
  }

  const RadialSolution& radial() const { return rad_; }

 private:
  RadialSolution rad_;
  JetExpansion val_, dr_;
};

// sphere-averaged Wronskian form between two applied states at radius r:
//   (1/4pi) Int r^2 (d_r Phi * Psi - Phi * d_r Psi) dOmega
inline cplx wronskian_form(const AppliedState& a, const AppliedState& b, double r,
                           const SphereQuadrature& quad) {
  cplx acc = 0.0;
  for (const auto& node : quad.nodes) {
    auto [av, ad] = a.eval(r, node.n);
    auto [bv, bd] = b.eval(r, node.n);
    acc += node.w * (ad * bv - av * bd);
  }
  return r * r * acc / (4.0 * M_PI);
}

struct ProjectionResult {
  std::vector<double> r_samples;
  // (l', m') -> profile over r_samples
  std::map<std::pair<int, int>, std::vector<cplx>> profiles;
  double offband_residual = 0.0;  // fraction of mass outside l' = l +- 1
};

// Applies op to psi = f(r) Y^{l,m} and projects onto every Y^{l',m'} with
// l' <= lproj.  Off-band mass above tol reports a too-coarse grid.
inline ProjectionResult project_applied(const DiffOp& op, Kind kind, int ell, int m, cplx lambda,
                                        double gamma, const std::vector<double>& r_samples,
                                        int lproj, double tol = 1e-9) {
  RadialSolution rad = (kind == Kind::regular) ? RadialSolution::regular(ell, lambda, gamma)
                                               : RadialSolution::singular(ell, lambda, gamma);
  HarmonicBasis basis(std::max(ell, lproj));
  AppliedState state(op, std::move(rad), basis, m);
  SphereQuadrature quad(std::max(ell, lproj) + 4);

  ProjectionResult out;
  out.r_samples = r_samples;
  double mass_total = 0.0, mass_off = 0.0;
  std::vector<cplx> values(quad.nodes.size());
  for (double r : r_samples) {
    for (size_t q = 0; q < quad.nodes.size(); ++q) values[q] = state.eval(r, quad.nodes[q].n).first;
    for (int lp = 0; lp <= lproj; ++lp) {
      for (int mp = -lp; mp <= lp; ++mp) {
        cplx c = 0.0;
        for (size_t q = 0; q < quad.nodes.size(); ++q)
          c += quad.nodes[q].w * std::conj(basis.eval(lp, mp, quad.nodes[q].n)) * values[q];
        out.profiles[{lp, mp}].push_back(c);
        double mag = std::norm(c);
        mass_total += mag;
        if (lp != ell - 1 && lp != ell + 1) mass_off += mag;
      }
    }
  }
  out.offband_residual = mass_total > 0 ? std::sqrt(mass_off / mass_total) : 0.0;
  if (out.offband_residual > tol)
    throw std::runtime_error(
        "projection grid too coarse: off-band residual " + std::to_string(out.offband_residual) +
        "; refine the quadrature degree");
  return out;
}

struct CouplingFit {
  cplx up;        // coefficient on the l+1 radial basis solution
  cplx down;      // coefficient on the l-1 radial basis solution
  double up_residual = 0.0;
  double down_residual = 0.0;
  double condition = 1.0;  // of the two-basis fit, singular family only
};

namespace detail_fit {

// least squares c ~ alpha * base over sample values
inline std::pair<cplx, double> fit_one(const std::vector<cplx>& base,
                                       const std::vector<cplx>& c) {
  cplx num = 0.0;
  double den = 0.0, norm_c = 0.0;
  for (size_t i = 0; i < base.size(); ++i) {
    num += std::conj(base[i]) * c[i];
    den += std::norm(base[i]);
    norm_c += std::norm(c[i]);
  }
  cplx alpha = num / den;
  double res2 = 0.0;
  for (size_t i = 0; i < base.size(); ++i) res2 += std::norm(c[i] - alpha * base[i]);
  return {alpha, std::sqrt(res2 / std::max(norm_c, 1e-300))};
}

// least squares c ~ alpha * u + beta * v; returns (alpha, beta, residual, cond)
inline std::tuple<cplx, cplx, double, double> fit_two(const std::vector<cplx>& u,
                                                      const std::vector<cplx>& v,
                                                      const std::vector<cplx>& c) {
  cplx a11 = 0.0, a12 = 0.0, a22 = 0.0, b1 = 0.0, b2 = 0.0;
  double norm_c = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    a11 += std::conj(u[i]) * u[i];
    a12 += std::conj(u[i]) * v[i];
    a22 += std::conj(v[i]) * v[i];
    b1 += std::conj(u[i]) * c[i];
    b2 += std::conj(v[i]) * c[i];
    norm_c += std::norm(c[i]);
  }
  cplx det = a11 * a22 - a12 * std::conj(a12);
  cplx alpha = (a22 * b1 - a12 * b2) / det;
  cplx beta = (a11 * b2 - std::conj(a12) * b1) / det;
  double res2 = 0.0;
  for (size_t i = 0; i < u.size(); ++i) res2 += std::norm(c[i] - alpha * u[i] - beta * v[i]);
  // 2x2 Gram condition estimate
  double tr = std::abs(a11) + std::abs(a22);
  double dd = std::abs(det);
  double cond = tr * tr / std::max(dd, 1e-300);
  return {alpha, beta, std::sqrt(res2 / std::max(norm_c, 1e-300)), cond};
}

}  // namespace detail_fit

// Coupling scalars of R- on the top state psi^{l,l}: the projections onto
// the l+1 and l-1 isotypes are multiples of the corresponding radial basis
// solutions (modulo a regular admixture on the singular side).  gamma is
// exact; the numeric layer uses its double value.
inline CouplingFit coupling_coefficients(Kind kind, int ell, cplx lambda,
                                         const GaussRational& gamma_exact,
                                         std::vector<double> r_samples = {}, double tol = 1e-7) {
  if (ell < 0) throw std::invalid_argument("coupling fit needs ell >= 0");
  double gamma = gamma_exact.to_complex().real();
  // reducibility guard: lambda n^2 + gamma^2 bounded away from zero, n <= ell+1
  for (int n = 1; n <= ell + 1; ++n)
    if (std::abs(lambda * double(n * n) + gamma * gamma) < 1e-8)
      throw std::invalid_argument("lambda too close to the reducibility set");
  if (r_samples.empty()) r_samples = {0.3, 0.5, 0.8, 1.1, 1.4, 1.8, 2.2, 2.6};

  Generators gen = build_generators(gamma_exact);
  DiffOp rminus = lowering_runge_lenz(gen);
  ProjectionResult proj =
      project_applied(rminus, kind, ell, ell, lambda, gamma, r_samples, ell + 1);
  const auto& cup = proj.profiles.at({ell + 1, ell - 1});

  auto sample = [&](const RadialSolution& s) {
    std::vector<cplx> v;
    for (double r : r_samples) v.push_back(s.value(r));
    return v;
  };

  CouplingFit fit;
  if (kind == Kind::regular) {
    auto fu = sample(RadialSolution::regular(ell + 1, lambda, gamma));
    std::tie(fit.up, fit.up_residual) = detail_fit::fit_one(fu, cup);
    if (ell >= 1) {
      auto fd = sample(RadialSolution::regular(ell - 1, lambda, gamma));
      std::tie(fit.down, fit.down_residual) =
          detail_fit::fit_one(fd, proj.profiles.at({ell - 1, ell - 1}));
    }
  } else {
    auto gu = sample(RadialSolution::singular(ell + 1, lambda, gamma));
    auto fu = sample(RadialSolution::regular(ell + 1, lambda, gamma));
    double cond_up = 1.0, cond_down = 1.0;
    cplx spill;
    std::tie(fit.up, spill, fit.up_residual, cond_up) = detail_fit::fit_two(gu, fu, cup);
    if (ell >= 1) {
      auto gd = sample(RadialSolution::singular(ell - 1, lambda, gamma));
      auto fd = sample(RadialSolution::regular(ell - 1, lambda, gamma));
      std::tie(fit.down, spill, fit.down_residual, cond_down) =
          detail_fit::fit_two(gd, fd, proj.profiles.at({ell - 1, ell - 1}));
    }
    fit.condition = std::max(cond_up, cond_down);
  }
  if (fit.up_residual > tol || fit.down_residual > tol)
    throw std::runtime_error("coupling fit residual above tolerance; use >= " +
                             std::to_string(r_samples.size() + 4) + " radii in the safe range");
  return fit;
}

}  // namespace hydra::angular
