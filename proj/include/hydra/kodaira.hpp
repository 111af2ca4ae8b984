#pragma once

// Outgoing eigenfunctions with Coulomb-modified asymptotics
//
//   U_k(r) ~ (1/r) exp(i k r + i (gamma/k) log r),     Im k >= 0, k != 0,
//
// built by seeding an asymptotic correction series at a large matching
// radius and integrating the l = 0 radial equation inward.  On top of them:
// the Jost-type function a(k) = Wr(F, U_k), the spectral density
// w(lambda) = 2 i sqrt(lambda) / |a|^2, and the limiting absorption data.

#include <complex>
#include <stdexcept>
#include <vector>

#include "hydra/ode_rk.hpp"
#include "hydra/radial.hpp"

namespace hydra::scattering {

using cplx = std::complex<double>;

struct KodairaOptions {
  double tol = 1e-12;       // relative size of the last asymptotic term at r0
  double r_min = 0.5;       // inner end of the dense cache
  int max_correction = 12;  // J cap for the asymptotic series
  double rtol = 1e-10;
  double atol = 1e-13;
  double k_min_factor = 0.05;  // reject |k| < factor * gamma
};

class KodairaSolution {
 public:
  KodairaSolution(cplx k, double gamma, KodairaOptions opt = {})
      : k_(k), gamma_(gamma), opt_(opt) {
    if (k == 0.0 || k.imag() < -1e-14)
      throw std::invalid_argument("kodaira solution needs Im k >= 0, k != 0");
    if (std::abs(k) < opt.k_min_factor * gamma)
      throw std::invalid_argument(
          "k too close to the essential singularity at 0; increase |k| above " +
          std::to_string(opt.k_min_factor * gamma) + " (phase matching unreliable below)");
    beta_ = gamma_ / k_;
    choose_seed();
    integrate_inward();
  }

  cplx k() const { return k_; }
  double r0() const { return r0_; }
  int correction_order() const { return corr_; }
  double r_min() const { return opt_.r_min; }

  // u = r U and its derivative
  cplx u(double r) const {
    if (r >= r0_) return asymptotic(r, 0);
    return cache_.eval(r, 0);
  }
  cplx du(double r) const {
    if (r >= r0_) return asymptotic(r, 1);
    return cache_.eval(r, 1);
  }

  cplx value(double r) const { return u(r) / r; }
  cplx derivative(double r) const { return du(r) / r - u(r) / (r * r); }

 private:
  // correction coefficients: u = e^{i(kr + beta log r)} sum_j b_j r^{-j},
  // with b_m = [(m-1)m - i beta (2m-1) - beta^2] b_{m-1} / (2 i k m)
  static cplx next_coeff(cplx b_prev, int m, cplx beta, cplx k) {
    cplx num = cplx(double(m - 1) * double(m)) - cplx(0.0, 1.0) * beta * double(2 * m - 1) -
               beta * beta;
    return num * b_prev / (cplx(0.0, 2.0) * k * double(m));
  }

  void choose_seed() {
    double r0 = std::max({12.0 / std::abs(k_), 1.5 * std::norm(beta_) / std::abs(k_), 20.0});
    for (int attempt = 0; attempt < 60; ++attempt) {
      std::vector<cplx> b{1.0};
      double best = 1.0;
      int best_j = 0;
      for (int m = 1; m <= opt_.max_correction; ++m) {
        b.push_back(next_coeff(b.back(), m, beta_, k_));
        double mag = std::abs(b.back()) * std::pow(r0, -m);
        if (mag < best) {
          best = mag;
          best_j = m;
        }
      }
      if (best < opt_.tol) {
        r0_ = r0;
        corr_ = best_j;
        b.resize(best_j + 1);
        b_ = std::move(b);
        return;
      }
      r0 *= 1.4;
    }
    throw std::runtime_error("no matching radius gives the requested asymptotic accuracy");
  }

  cplx asymptotic(double r, int deriv) const {
    cplx phase = cplx(0.0, 1.0) * (k_ * r + beta_ * std::log(r));
    cplx S = 0.0, dS = 0.0;
    for (size_t j = 0; j < b_.size(); ++j) {
      cplx t = b_[j] * std::pow(r, -double(j));
      S += t;
      dS += -double(j) * t / r;
    }
    cplx e = std::exp(phase);
    if (deriv == 0) return e * S;
    cplx dphase = cplx(0.0, 1.0) * (k_ + beta_ / r);
    return e * (dphase * S + dS);
  }

  void integrate_inward() {
    double lam_re = (k_ * k_).real(), lam_im = (k_ * k_).imag();
    cplx lambda(lam_re, lam_im);
    auto rhs = [this, lambda](double r, const ode::State& y, ode::State& dy) {
      dy[0] = y[1];
      dy[1] = -(lambda + 2.0 * gamma_ / r) * y[0];
    };
    ode::State y0{asymptotic(r0_, 0), asymptotic(r0_, 1)};
    ode::IntegrateOptions io;
    io.rtol = opt_.rtol;
    io.atol = opt_.atol;
    io.max_step = std::min(0.05 / std::abs(k_), 0.2);
    ode::integrate(rhs, r0_, opt_.r_min, y0, io,
                   [this](double r, const ode::State& y, const ode::State& dy) {
                     cache_.add(r, y, dy);
                   });
  }

  cplx k_, beta_;
  double gamma_;
  KodairaOptions opt_;
  double r0_ = 0.0;
  int corr_ = 0;
  std::vector<cplx> b_;
  ode::DenseCache cache_;
};

struct JostOptions {
  double r_match = 1.0;
  double check_factor = 1.5;
  double check_tol = 1e-8;  // matching-radius independence
  KodairaOptions kodaira = {};
};

// a(k) = Wr(F_{0,k^2}, U_k), evaluated through u-forms:
// Wr = (rF)'(rU) - (rF)(rU)' at the matching radius.
inline cplx jost_a(cplx k, double gamma, const JostOptions& opt = {}) {
  KodairaOptions ko = opt.kodaira;
  ko.r_min = std::min(ko.r_min, 0.8 * opt.r_match);
  KodairaSolution U(k, gamma, ko);
  radial::RadialSolution F = radial::RadialSolution::regular(0, k * k, gamma);
  auto wr_at = [&](double r) {
    auto fj = F.jet(r, 1);
    cplx uf = r * fj[0], duf = fj[0] + r * fj[1];
    return duf * U.u(r) - uf * U.du(r);
  };
  cplx a1 = wr_at(opt.r_match);
  cplx a2 = wr_at(opt.r_match * opt.check_factor);
  if (std::abs(a1 - a2) > opt.check_tol * std::max(1.0, std::abs(a1)))
    throw std::runtime_error("jost function depends on the matching radius; tighten tolerances");
  return a1;
}

// w(lambda) = 2 i sqrt(lambda) / |a(sqrt(lambda))|^2 for lambda > 0
inline cplx spectral_density(double lambda, double gamma, const JostOptions& opt = {}) {
  if (!(lambda > 0)) throw std::invalid_argument("spectral density needs lambda > 0");
  double k = std::sqrt(lambda);
  cplx a = jost_a(k, gamma, opt);
  return cplx(0.0, 2.0) * k / std::norm(a);
}

// square root of lambda +- i eps with positive imaginary part
inline cplx upper_half_sqrt(cplx lambda) {
  cplx s = std::sqrt(lambda);
  return (s.imag() >= 0.0) ? s : -s;
}

struct LimitingAbsorption {
  std::vector<double> r_samples;
  std::vector<cplx> v_plus, v_minus;  // extrapolated boundary values
  cplx w_fit;                         // coefficient of F in V+ - V-
  double regular_residual;            // relative size of (V+ - V-) - w_fit F
  double extrapolation_error;         // Neville tail estimate
};

// Boundary values of the normalized family V = U_k / a(k) from above and
// below the positive axis, Richardson-extrapolated in eps, and the fit of
// the difference against the regular solution.
inline LimitingAbsorption limiting_absorption(double lambda, double gamma,
                                              std::vector<double> eps = {1e-2, 1e-3, 1e-4},
                                              std::vector<double> r_samples = {0.6, 0.9, 1.2, 1.5,
                                                                               1.9, 2.4},
                                              const JostOptions& opt = {}) {
  if (!(lambda > 0)) throw std::invalid_argument("limiting absorption needs lambda > 0");
  if (eps.size() < 2) throw std::invalid_argument("need at least two eps values");

  KodairaOptions ko = opt.kodaira;
  double rmin = r_samples.front();
  for (double r : r_samples) rmin = std::min(rmin, r);
  ko.r_min = std::min(ko.r_min, 0.8 * rmin);

  auto v_samples = [&](cplx lam_c) {
    cplx k = upper_half_sqrt(lam_c);
    KodairaSolution U(k, gamma, ko);
    JostOptions jo = opt;
    jo.kodaira = ko;
    cplx a = jost_a(k, gamma, jo);
    std::vector<cplx> v;
    for (double r : r_samples) v.push_back(U.value(r) / a);
    return v;
  };

  // Neville extrapolation to eps = 0, per sample point and sign
  auto extrapolate = [&](const std::vector<std::vector<cplx>>& rows, double& err_out) {
    size_t n = eps.size(), m = r_samples.size();
    std::vector<std::vector<cplx>> T(n, std::vector<cplx>(m));
    for (size_t i = 0; i < n; ++i) T[i] = rows[i];
    err_out = 0.0;
    for (size_t level = 1; level < n; ++level)
      for (size_t i = n - 1; i >= level; --i) {
        for (size_t j = 0; j < m; ++j) {
          cplx hi = T[i][j], lo = T[i - 1][j];
          T[i][j] = hi + (hi - lo) * eps[i] / (eps[i - level] - eps[i]);
        }
        if (i == level) break;
      }
    for (size_t j = 0; j < m; ++j)
      err_out = std::max(err_out, std::abs(T[n - 1][j] - T[n - 2][j]));
    return T[n - 1];
  };

  std::vector<std::vector<cplx>> plus_rows, minus_rows;
  for (double e : eps) {
    plus_rows.push_back(v_samples(cplx(lambda, e)));
    minus_rows.push_back(v_samples(cplx(lambda, -e)));
  }

  LimitingAbsorption out;
  out.r_samples = r_samples;
  double err_p = 0.0, err_m = 0.0;
  out.v_plus = extrapolate(plus_rows, err_p);
  out.v_minus = extrapolate(minus_rows, err_m);
  out.extrapolation_error = std::max(err_p, err_m);
  double scale = 0.0;
  for (const cplx& v : out.v_plus) scale = std::max(scale, std::abs(v));
  if (out.extrapolation_error > 1e-5 * scale)
    throw std::runtime_error("limiting absorption extrapolation did not converge");

  radial::RadialSolution F = radial::RadialSolution::regular(0, lambda, gamma);
  cplx num = 0.0;
  double den = 0.0, dnorm = 0.0;
  std::vector<cplx> diff(r_samples.size());
  for (size_t i = 0; i < r_samples.size(); ++i) {
    cplx fv = F.value(r_samples[i]);
    diff[i] = out.v_plus[i] - out.v_minus[i];
    num += std::conj(fv) * diff[i];
    den += std::norm(fv);
    dnorm += std::norm(diff[i]);
  }
  out.w_fit = num / den;
  double res2 = 0.0;
  for (size_t i = 0; i < r_samples.size(); ++i)
    res2 += std::norm(diff[i] - out.w_fit * F.value(r_samples[i]));
  out.regular_residual = std::sqrt(res2 / std::max(dnorm, 1e-300));
  return out;
}

}  // namespace hydra::scattering
