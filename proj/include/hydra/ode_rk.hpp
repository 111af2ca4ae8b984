#pragma once

// Embedded Dormand-Prince 5(4) integrator for the complex-valued radial
// systems used by the scattering layer.  Accepted steps are handed to a
// callback so callers can build dense interpolation caches.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace hydra::ode {

using cplx = std::complex<double>;
using State = std::array<cplx, 2>;

namespace dp5 {
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace dp5

struct IntegrateOptions {
  double rtol = 1e-10;
  double atol = 1e-13;
  double max_step = 1e30;
  long max_steps = 2000000;
};

// integrates y' = rhs(r, y) from r0 to r1 (either direction); on_step is
// called after every accepted step with (r, y, y')
inline State integrate(const std::function<void(double, const State&, State&)>& rhs, double r0,
                       double r1, State y, const IntegrateOptions& opt,
                       const std::function<void(double, const State&, const State&)>& on_step = {}) {
  if (r0 == r1) return y;
  double dir = (r1 > r0) ? 1.0 : -1.0;
  double r = r0;
  double h = dir * std::min(opt.max_step, std::abs(r1 - r0) / 16.0);

  State k1, k2, k3, k4, k5, k6, k7, tmp, ynew;
  rhs(r, y, k1);
  if (on_step) on_step(r, y, k1);

  long steps = 0;
  while (dir * (r1 - r) > 0) {
    if (++steps > opt.max_steps) throw std::runtime_error("ode integration exceeded step budget");
    if (dir * (r + h - r1) > 0) h = r1 - r;
    using namespace dp5;
    auto axpy = [&](std::initializer_list<std::pair<double, const State*>> terms) {
      tmp = y;
      for (const auto& [c, s] : terms) {
        tmp[0] += h * c * (*s)[0];
        tmp[1] += h * c * (*s)[1];
      }
    };
    axpy({{a21, &k1}});
    rhs(r + c2 * h, tmp, k2);
    axpy({{a31, &k1}, {a32, &k2}});
    rhs(r + c3 * h, tmp, k3);
    axpy({{a41, &k1}, {a42, &k2}, {a43, &k3}});
    rhs(r + c4 * h, tmp, k4);
    axpy({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    rhs(r + c5 * h, tmp, k5);
    axpy({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    rhs(r + h, tmp, k6);
    axpy({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    ynew = tmp;
    rhs(r + h, ynew, k7);

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      cplx e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err = std::max(err, std::abs(e) / sc);
    }
    if (err <= 1.0) {
      r += h;
      y = ynew;
      k1 = k7;  // FSAL
      if (on_step) on_step(r, y, k1);
    }
    double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
    fac = std::clamp(fac, 0.2, 5.0);
    h *= fac;
    if (std::abs(h) > opt.max_step) h = dir * opt.max_step;
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(r)))
      throw std::runtime_error("ode step size underflow (stiffness?)");
  }
  return y;
}

// quintic Hermite interpolation from (f, f', f'') at both segment ends
struct HermiteSegment {
  double a, b;
  State ya, yb;     // (u, u') at the ends
  cplx sa, sb;      // u'' at the ends

  cplx eval(double r, int deriv) const {
    double h = b - a, t = (r - a) / h;
    cplx f0 = ya[0], d0 = ya[1] * h, s0 = sa * h * h;
    cplx f1 = yb[0], d1 = yb[1] * h, s1 = sb * h * h;
    cplx A = f1 - f0 - d0 - 0.5 * s0;
    cplx B = d1 - d0 - s0;
    cplx C = s1 - s0;
    cplx c0 = f0, c1 = d0, c2 = 0.5 * s0;
    cplx c3 = 10.0 * A - 4.0 * B + 0.5 * C;
    cplx c4 = -15.0 * A + 7.0 * B - C;
    cplx c5 = 6.0 * A - 3.0 * B + 0.5 * C;
    if (deriv == 0)
      return c0 + t * (c1 + t * (c2 + t * (c3 + t * (c4 + t * c5))));
    cplx d = c1 + t * (2.0 * c2 + t * (3.0 * c3 + t * (4.0 * c4 + t * 5.0 * c5)));
    return d / h;
  }
};

// dense solution cache over an interval, built from accepted steps
class DenseCache {
 public:
  void add(double r, const State& y, const State& dy) {
    rs_.push_back(r);
    ys_.push_back(y);
    ss_.push_back(dy[1]);  // u'' = (d/dr) u'
  }

  bool empty() const { return rs_.empty(); }
  double front() const { return rs_.front(); }
  double back() const { return rs_.back(); }

  cplx eval(double r, int deriv) const {
    if (rs_.size() < 2) throw std::runtime_error("dense cache too small");
    bool increasing = rs_.back() > rs_.front();
    double lo = increasing ? rs_.front() : rs_.back();
    double hi = increasing ? rs_.back() : rs_.front();
    if (r < lo - 1e-12 || r > hi + 1e-12)
      throw std::out_of_range("dense cache evaluated outside its range");
    size_t idx;
    if (increasing) {
      idx = std::upper_bound(rs_.begin(), rs_.end(), r) - rs_.begin();
    } else {
      idx = std::upper_bound(rs_.begin(), rs_.end(), r, std::greater<double>()) - rs_.begin();
    }
    if (idx == 0) idx = 1;
    if (idx >= rs_.size()) idx = rs_.size() - 1;
    HermiteSegment seg{rs_[idx - 1], rs_[idx], ys_[idx - 1], ys_[idx], ss_[idx - 1], ss_[idx]};
    return seg.eval(r, deriv);
  }

 private:
  std::vector<double> rs_;
  std::vector<State> ys_;
  std::vector<cplx> ss_;
};

}  // namespace hydra::ode
