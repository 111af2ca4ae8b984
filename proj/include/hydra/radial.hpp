#pragma once

// Radial eigenfunctions of T at angular momentum ell: the regular Frobenius
// solution F (leading term r^ell), the singular second solution
// G = H + C log(r) F (leading term r^-(ell+1)), and closed-form cross
// checks through Kummer and Bessel functions.  The radial equation is
//
//   r^2 psi'' + 2 r psi' - ell(ell+1) psi + 2 gamma r psi + lambda r^2 psi = 0,
//
// regular-singular at r = 0 with indicial roots ell and -(ell+1).

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace hydra::radial {

using cplx = std::complex<double>;

struct unsafe_radius_error : std::runtime_error {
  double safe_radius;
  unsafe_radius_error(const std::string& what, double safe)
      : std::runtime_error(what), safe_radius(safe) {}
};

struct no_convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// falling factorial s(s-1)...(s-d+1)
inline double falling(double s, int d) {
  double f = 1.0;
  for (int t = 0; t < d; ++t) f *= s - t;
  return f;
}

// Evaluates derivatives 0..dmax of sum_m coeff[m] r^{off+m} in one pass.
// Truncation rule: stop once three consecutive indices m produce terms below
// tol * (running max of partial sums) at every derivative order.  The
// cancellation guard flags radii where doubles have lost too many digits;
// the comparison scale uses the whole jet, so isolated zeros of the function
// itself do not trigger it.
inline std::vector<cplx> series_jet(const std::vector<cplx>& coeff, int off, double r, int dmax,
                                    double tol, double cancel_guard = 1e6) {
  std::vector<cplx> sums(dmax + 1, cplx(0.0));
  std::vector<double> running_max(dmax + 1, 0.0);
  int small_streak = 0;
  for (size_t m = 0; m < coeff.size(); ++m) {
    double s = double(off) + double(m);
    bool all_small = true;
    for (int d = 0; d <= dmax; ++d) {
      cplx term = coeff[m] * falling(s, d) * std::pow(r, s - d);
      sums[d] += term;
      running_max[d] = std::max(running_max[d], std::abs(sums[d]));
      if (std::abs(term) >= tol * std::max(running_max[d], 1e-300)) all_small = false;
    }
    if (all_small) {
      if (++small_streak >= 3) {
        double amp = 0.0;
        for (int d = 0; d <= dmax; ++d) amp = std::max(amp, std::abs(sums[d]) * std::pow(r, d));
        double ratio = running_max[0] / std::max(amp, 1e-300);
        if (ratio > cancel_guard) {
          // digits lost grow roughly linearly in r, so scale back accordingly
          double safe = r * std::log(cancel_guard) / std::log(ratio);
          throw unsafe_radius_error(
              "series evaluation lost too many digits at r = " + std::to_string(r) +
                  "; largest safe radius is near " + std::to_string(safe),
              safe);
        }
        return sums;
      }
    } else {
      small_streak = 0;
    }
  }
  throw no_convergence_error("series did not converge at r = " + std::to_string(r) +
                             " within " + std::to_string(coeff.size()) + " terms");
}

}  // namespace detail

enum class Kind { regular, singular };

// Immutable after construction apart from an internal coefficient cache that
// grows on demand; concurrent evaluation should use one instance per thread
// (grid sweeps over distinct solutions are safe to parallelize).
class RadialSolution {
 public:
  static RadialSolution regular(int ell, cplx lambda, double gamma, double tol = 1e-12) {
    return RadialSolution(Kind::regular, ell, lambda, gamma, tol, 0.0);
  }

  static RadialSolution singular(int ell, cplx lambda, double gamma, double tol = 1e-12,
                                 cplx resonant_coefficient = 0.0) {
    return RadialSolution(Kind::singular, ell, lambda, gamma, tol, resonant_coefficient);
  }

  Kind kind() const { return kind_; }
  int ell() const { return ell_; }
  cplx lambda() const { return lambda_; }
  double gamma() const { return gamma_; }
  double tol() const { return tol_; }
  // truncation metadata: series terms computed so far
  size_t terms_computed() const { return kind_ == Kind::regular ? freg_.size() : sing_.size(); }

  // coefficient of log(r) F in G; zero for the regular solution
  cplx log_coefficient() const { return clog_; }

  // value requests the first derivative as well: the cancellation guard then
  // measures against the local envelope, not a possibly vanishing |F(r)|
  cplx value(double r) const { return jet(r, 1)[0]; }
  cplx derivative(double r) const { return jet(r, 1)[1]; }

  // derivatives 0..dmax of F (or G) at r
  std::vector<cplx> jet(double r, int dmax) const {
    return jet_impl(r, dmax, /*reduced=*/false);
  }

  // derivatives 0..dmax of F / r^ell (or G / r^ell); this is the radial
  // profile paired with a degree-ell solid harmonic
  std::vector<cplx> reduced_jet(double r, int dmax) const {
    return jet_impl(r, dmax, /*reduced=*/true);
  }

 private:
  std::vector<cplx> jet_impl(double r, int dmax, bool reduced) const {
    if (!(r > 0)) throw std::invalid_argument("radial evaluation requires r > 0");
    ensure_terms(r);
    int shift = reduced ? ell_ : 0;
    int off = (kind_ == Kind::regular ? ell_ : -(ell_ + 1)) - shift;
    const std::vector<cplx>& main = (kind_ == Kind::regular) ? freg_ : sing_;
    std::vector<cplx> out = detail::series_jet(main, off, r, dmax, tol_);
    if (kind_ == Kind::singular && clog_ != 0.0) {
      // Leibniz expansion of log(r) * F with (log r)^{(j)} = (-1)^{j-1}(j-1)! r^{-j}
      std::vector<cplx> fj = detail::series_jet(freg_, ell_ - shift, r, dmax, tol_);
      for (int d = 0; d <= dmax; ++d) {
        cplx acc = 0.0;
        double binom = 1.0;
        for (int j = 0; j <= d; ++j) {
          if (j > 0) binom = binom * double(d - j + 1) / double(j);
          cplx logd = (j == 0) ? cplx(std::log(r))
                               : cplx(((j - 1) % 2 == 0 ? 1.0 : -1.0) * std::tgamma(double(j)) *
                                      std::pow(r, -j));
          acc += binom * logd * fj[d - j];
        }
        out[d] += clog_ * acc;
      }
    }
    return out;
  }

  RadialSolution(Kind kind, int ell, cplx lambda, double gamma, double tol, cplx resonant)
      : kind_(kind), ell_(ell), lambda_(lambda), gamma_(gamma), tol_(tol) {
    if (ell < 0) throw std::invalid_argument("ell must be nonnegative");
    if (!(gamma > 0)) throw std::invalid_argument("gamma must be positive");
    if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
    build_regular_series(64);
    if (kind_ == Kind::singular) build_singular_series(64, resonant);
  }

  // c_m = -(2 gamma c_{m-1} + lambda c_{m-2}) / (m (m + 2 ell + 1)), c_0 = 1
  void build_regular_series(size_t n) const {
    size_t start = freg_.size();
    if (start >= n) return;
    freg_.resize(n);
    for (size_t m = start; m < n; ++m) {
      if (m == 0) {
        freg_[0] = 1.0;
        continue;
      }
      cplx prev1 = freg_[m - 1];
      cplx prev2 = m >= 2 ? freg_[m - 2] : 0.0;
      freg_[m] = -(2.0 * gamma_ * prev1 + lambda_ * prev2) /
                 (double(m) * double(m + 2 * ell_ + 1));
    }
  }

  // H-series d_m around the indicial root -(ell+1); the recurrence
  // multiplier m(m - 2 ell - 1) vanishes at the resonance m = 2 ell + 1,
  // where the log coefficient C is fixed by consistency and d_{2l+1} is the
  // free coefficient (taken 0 unless a test perturbs it).
  void build_singular_series(size_t n, cplx resonant) const {
    build_regular_series(n + 2 * ell_ + 2);
    size_t start = sing_.size();
    if (start >= n) return;
    sing_.resize(n);
    const int res = 2 * ell_ + 1;
    for (size_t m = start; m < n; ++m) {
      if (m == 0) {
        sing_[0] = 1.0;
        continue;
      }
      cplx prev1 = sing_[m - 1];
      cplx prev2 = m >= 2 ? sing_[m - 2] : 0.0;
      if (int(m) < res) {
        sing_[m] = -(2.0 * gamma_ * prev1 + lambda_ * prev2) /
                   (double(m) * (double(m) - double(res)));
      } else if (int(m) == res) {
        clog_ = -(2.0 * gamma_ * prev1 + lambda_ * prev2) / double(res);
        sing_[m] = resonant;
      } else {
        int j = int(m) - res;  // index into the regular series
        cplx source = -clog_ * freg_[j] * double(2 * (ell_ + j) + 1);
        sing_[m] = (source - 2.0 * gamma_ * prev1 - lambda_ * prev2) /
                   (double(m) * (double(m) - double(res)));
      }
    }
  }

  void ensure_terms(double r) const {
    // crude sufficiency estimate: the tail of an entire series of
    // exponential type max(2 gamma, sqrt|lambda|) * r
    double scale = std::max(2.0 * gamma_, std::sqrt(std::abs(lambda_))) * r;
    size_t need = static_cast<size_t>(3.0 * scale + 80.0);
    if (need > 4000) throw no_convergence_error("requested radius too large for series");
    if (freg_.size() < need) {
      cplx resonant = resonant_of();
      build_regular_series(need);
      if (kind_ == Kind::singular) build_singular_series(need, resonant);
    }
  }

  cplx resonant_of() const {
    const size_t res = 2 * ell_ + 1;
    return sing_.size() > res ? sing_[res] : cplx(0.0);
  }

  Kind kind_;
  int ell_;
  cplx lambda_;
  double gamma_;
  double tol_;
  mutable std::vector<cplx> freg_;  // regular-series coefficients c_m
  mutable std::vector<cplx> sing_;  // H-series coefficients d_m
  mutable cplx clog_ = 0.0;
};

// Kummer's confluent hypergeometric M(a, b, z) by direct summation.
inline cplx kummer_m(cplx a, cplx b, cplx z, double tol = 1e-15) {
  if (std::abs(z) > 600.0)
    throw unsafe_radius_error("kummer argument exceeds the overflow cap |z| = 600", 0.0);
  cplx term = 1.0, sum = 1.0;
  double running_max = 1.0;
  int small_streak = 0;
  for (int n = 0; n < 10000; ++n) {
    term *= (a + double(n)) / (b + double(n)) * z / double(n + 1);
    sum += term;
    running_max = std::max(running_max, std::abs(sum));
    if (std::abs(term) < tol * running_max) {
      if (++small_streak >= 3) return sum;
    } else {
      small_streak = 0;
    }
  }
  throw no_convergence_error("kummer series did not converge");
}

// F through Kummer's function for lambda != 0:
//   F(r) = r^ell e^{-s r} M(ell + 1 - gamma/s, 2 ell + 2, 2 s r),  s = sqrt(-lambda).
// The value does not depend on the branch of the square root; tests assert it.
inline cplx kummer_closed_form(int ell, cplx lambda, double gamma, double r,
                               bool other_branch = false) {
  if (lambda == 0.0) throw std::invalid_argument("kummer form needs lambda != 0");
  cplx s = std::sqrt(-lambda);
  if (other_branch) s = -s;
  cplx a = cplx(double(ell + 1)) - gamma / s;
  cplx b = cplx(double(2 * ell + 2));
  double r_cap = 600.0 / std::max(2.0 * std::abs(s), 1e-300);
  if (r > r_cap)
    throw unsafe_radius_error("kummer argument would overflow; keep r below " +
                                  std::to_string(r_cap),
                              r_cap);
  return std::pow(r, ell) * std::exp(-s * r) * kummer_m(a, b, 2.0 * s * r);
}

// Bessel function of the first kind, integer order, by series.
inline double bessel_j(int nu, double x) {
  double half = 0.5 * x;
  double term = 1.0;
  for (int i = 1; i <= nu; ++i) term *= half / double(i);
  double sum = term;
  for (int m = 1; m < 400; ++m) {
    term *= -half * half / (double(m) * double(m + nu));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && m > 4) break;
  }
  return sum;
}

// F at lambda = 0:  (2l+1)!/(2^l gamma^l) (2 gamma r)^{-1/2} J_{2l+1}(sqrt(8 gamma r))
inline double bessel_closed_form(int ell, double gamma, double r) {
  double pref = 1.0;
  for (int i = 1; i <= 2 * ell + 1; ++i) pref *= double(i);
  pref /= std::pow(2.0, ell) * std::pow(gamma, ell);
  return pref / std::sqrt(2.0 * gamma * r) * bessel_j(2 * ell + 1, std::sqrt(8.0 * gamma * r));
}

// Modified Wronskian r^2 (phi' psi - phi psi') averaged over sample radii;
// the spread check catches series truncation that is too short.
inline cplx wronskian(const RadialSolution& phi, const RadialSolution& psi,
                      const std::vector<double>& r_samples, double tol = 1e-10) {
  if (r_samples.empty()) throw std::invalid_argument("wronskian needs sample radii");
  std::vector<cplx> vals;
  for (double r : r_samples) {
    auto jp = phi.jet(r, 1);
    auto jq = psi.jet(r, 1);
    vals.push_back(r * r * (jp[1] * jq[0] - jp[0] * jq[1]));
  }
  cplx mean = 0.0;
  for (cplx v : vals) mean += v;
  mean /= double(vals.size());
  double scale = std::abs(mean);
  for (cplx v : vals) scale = std::max(scale, std::abs(v));
  scale = std::max(scale, 1e-30);
  double spread = 0.0;
  for (cplx v : vals) spread = std::max(spread, std::abs(v - mean));
  if (spread > 10.0 * tol * scale)
    throw no_convergence_error("wronskian not constant across radii (spread " +
                               std::to_string(spread) + "); series truncation too short");
  return mean;
}

}  // namespace hydra::radial
