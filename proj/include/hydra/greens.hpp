#pragma once

// Resolvent applied to spherical functions through the radial Green kernel:
//
//   a(k) ((T - lambda)^{-1} f)(r)
//     = F(r) Int_r^inf U_k F-side...  in u-form:
//     = [ F(r) Int_r^R u_k(s) f(s) s ds + U_k(r) Int_0^r u_F(s) f(s) s ds ] / 1
//
// with u = r U, u_F = r F and the radial measure s^2 ds folded into the
// u-forms.  Valid off the spectrum, with Im k > 0.

#include <functional>
#include <optional>
#include <stdexcept>

#include "hydra/kodaira.hpp"
#include "hydra/quadrature.hpp"
#include "hydra/radial.hpp"

namespace hydra::scattering {

struct GreensOptions {
  double quad_tol = 1e-12;
  double a_threshold = 1e-6;  // reject lambda with |a(k)| below this (near spectrum)
  KodairaOptions kodaira = {};
};

class GreensApplier {
 public:
  GreensApplier(cplx lambda, double gamma, GreensOptions opt = {})
      : lambda_(lambda), gamma_(gamma), opt_(opt) {
    k_ = upper_half_sqrt(lambda);
    if (k_.imag() <= 1e-12)
      throw std::invalid_argument("greens_apply needs lambda off the nonnegative axis");
    KodairaOptions ko = opt.kodaira;
    ko.r_min = 0.05;
    U_.emplace(k_, gamma, ko);
    F_.emplace(radial::RadialSolution::regular(0, lambda, gamma));
    JostOptions jo;
    jo.kodaira = ko;
    a_ = jost_a(k_, gamma, jo);
    if (std::abs(a_) < opt.a_threshold)
      throw std::invalid_argument("lambda too close to the spectrum: |a(k)| = " +
                                  std::to_string(std::abs(a_)));
  }

  cplx k() const { return k_; }
  cplx a() const { return a_; }

  // decay radius where |u_k| has fallen below eps relative to its r0 size
  double suggested_cutoff(double eps = 1e-14) const {
    return U_->r0() + std::log(1.0 / eps) / std::max(k_.imag(), 1e-3);
  }

  // f is a spherical profile supported (or numerically negligible) outside
  // [f_lo, f_hi].  With u = sU and u_F = sF the radial measure s^2 ds
  // contracts to a single factor of s.
  cplx apply(const std::function<cplx(double)>& f, double r, double f_lo, double f_hi) const {
    auto inner = [&](double s) { return s * F_->value(s) * f(s) * s; };
    auto outer = [&](double s) { return U_->u(s) * f(s) * s; };
    cplx I2 = 0.0;
    double lo2 = f_lo, hi2 = std::min(r, f_hi);
    if (hi2 > lo2) I2 = quad::integrate(inner, lo2, hi2, opt_.quad_tol);
    cplx I1 = 0.0;
    double lo1 = std::max(r, f_lo), hi1 = f_hi;
    if (hi1 > lo1) I1 = quad::integrate(outer, lo1, hi1, opt_.quad_tol);
    cplx acc = 0.0;
    if (I1 != 0.0) acc += F_->value(r) * I1;
    if (I2 != 0.0) acc += U_->value(r) * I2;
    return acc / a_;
  }

 private:
  cplx lambda_, k_, a_;
  double gamma_;
  GreensOptions opt_;
  std::optional<KodairaSolution> U_;
  std::optional<radial::RadialSolution> F_;
};

}  // namespace hydra::scattering
