#pragma once

// Complex orthonormal spherical harmonics with the Condon-Shortley phase,
// represented through their solid harmonic polynomials r^l Y^{l,m}(theta,phi)
// so that exact Cartesian derivatives are available.  Generation: expand
// (x1 + i x2)^l for m = l, then apply the lowering ladder.  Quadrature:
// Gauss-Legendre in cos(theta) crossed with a uniform trapezoid in phi,
// exact for polynomial integrands on the sphere of the stated degree.

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

namespace hydra::angular {

using cplx = std::complex<double>;

// polynomial in x1,x2,x3 with complex coefficients
using PolyC = std::map<std::array<int, 3>, cplx>;

inline void poly_add(PolyC& p, const std::array<int, 3>& m, cplx c) {
  if (c == 0.0) return;
  auto it = p.find(m);
  if (it == p.end()) {
    p[m] = c;
  } else {
    it->second += c;
    if (it->second == 0.0) p.erase(it);
  }
}

inline PolyC poly_scale(const PolyC& p, cplx s) {
  PolyC q;
  for (const auto& [m, c] : p) q[m] = s * c;
  return q;
}

inline PolyC poly_derivative(const PolyC& p, int i) {
  PolyC q;
  for (const auto& [m, c] : p) {
    if (m[i] == 0) continue;
    std::array<int, 3> mm = m;
    mm[i] -= 1;
    poly_add(q, mm, c * double(m[i]));
  }
  return q;
}

inline cplx poly_eval(const PolyC& p, const std::array<double, 3>& x) {
  cplx acc = 0.0;
  for (const auto& [m, c] : p) {
    double v = 1.0;
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < m[i]; ++k) v *= x[i];
    acc += c * v;
  }
  return acc;
}

// x_a d_b - x_b d_a applied to a polynomial (tangential field, preserves
// harmonic homogeneous polynomials)
inline PolyC rotation_apply(int a, int b, const PolyC& p) {
  PolyC q;
  PolyC db = poly_derivative(p, b), da = poly_derivative(p, a);
  for (const auto& [m, c] : db) {
    std::array<int, 3> mm = m;
    mm[a] += 1;
    poly_add(q, mm, c);
  }
  for (const auto& [m, c] : da) {
    std::array<int, 3> mm = m;
    mm[b] += 1;
    poly_add(q, mm, -c);
  }
  return q;
}

// quantum-mechanical lowering operator L- = -i L1 - L2 on polynomials,
// with L1 = x2 d3 - x3 d2 and L2 = x3 d1 - x1 d3
inline PolyC lowering_apply(const PolyC& p) {
  PolyC l1 = rotation_apply(1, 2, p);
  PolyC l2 = rotation_apply(2, 0, p);
  PolyC q;
  for (const auto& [m, c] : l1) poly_add(q, m, cplx(0.0, -1.0) * c);
  for (const auto& [m, c] : l2) poly_add(q, m, -c);
  return q;
}

// all solid harmonics r^l Y^{l,m} for l <= lmax
class HarmonicBasis {
 public:
  explicit HarmonicBasis(int lmax) : lmax_(lmax), table_(lmax + 1) {
    for (int l = 0; l <= lmax; ++l) {
      table_[l].resize(2 * l + 1);
      // top rung: (-1)^l sqrt((2l+1)!/(4 pi)) / (2^l l!) (x1 + i x2)^l
      double fact = 1.0;
      for (int i = 1; i <= 2 * l + 1; ++i) fact *= double(i);
      double lfact = 1.0;
      for (int i = 1; i <= l; ++i) lfact *= double(i);
      double norm = std::sqrt(fact / (4.0 * M_PI)) / (std::pow(2.0, l) * lfact);
      if (l % 2 == 1) norm = -norm;
      PolyC top;
      // binomial expansion of (x1 + i x2)^l
      double binom = 1.0;
      for (int k = 0; k <= l; ++k) {
        if (k > 0) binom = binom * double(l - k + 1) / double(k);
        cplx c = binom * std::pow(cplx(0.0, 1.0), k) * norm;
        poly_add(top, {l - k, k, 0}, c);
      }
      table_[l][index(l, l)] = top;
      for (int m = l; m > -l; --m) {
        double s = std::sqrt(double(l + m) * double(l - m + 1));
        table_[l][index(l, m - 1)] = poly_scale(lowering_apply(table_[l][index(l, m)]), 1.0 / s);
      }
    }
  }

  int lmax() const { return lmax_; }

  const PolyC& solid(int l, int m) const {
    if (l < 0 || l > lmax_ || std::abs(m) > l) throw std::out_of_range("harmonic index");
    return table_[l][index(l, m)];
  }

  // Y^{l,m} on the unit sphere
  cplx eval(int l, int m, const std::array<double, 3>& n) const {
    return poly_eval(solid(l, m), n);
  }

 private:
  static int index(int l, int m) { return m + l; }
  int lmax_;
  std::vector<std::vector<PolyC>> table_;
};

// Gauss-Legendre nodes and weights on [-1, 1]
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p0 = 0.0, p1 = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      p0 = 1.0;
      p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
      }
      double dp = n * (t * p0 - p1) / (t * t - 1.0);
      double t_old = t;
      t = t_old - p0 / dp;
      if (std::abs(t - t_old) < 1e-15) break;
    }
    p0 = 1.0;
    p1 = 0.0;
    for (int j = 0; j < n; ++j) {
      double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
    }
    double dp = n * (t * p0 - p1) / (t * t - 1.0);
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

// product quadrature on the unit sphere, exact for polynomial integrands of
// degree <= 2L+1
struct SphereQuadrature {
  struct Node {
    std::array<double, 3> n;
    double w;
  };
  std::vector<Node> nodes;

  explicit SphereQuadrature(int L) {
    int ntheta = L + 2, nphi = 2 * L + 3;
    std::vector<double> ct, wt;
    gauss_legendre(ntheta, ct, wt);
    for (int i = 0; i < ntheta; ++i) {
      double c = ct[i], s = std::sqrt(1.0 - c * c);
      for (int j = 0; j < nphi; ++j) {
        double phi = 2.0 * M_PI * j / nphi;
        nodes.push_back({{s * std::cos(phi), s * std::sin(phi), c},
                         wt[i] * 2.0 * M_PI / nphi});
      }
    }
  }
};

}  // namespace hydra::angular
