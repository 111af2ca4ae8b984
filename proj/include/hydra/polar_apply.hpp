#pragma once

// Pointwise application of an exact differential operator to a product state
// g(r) H(x), where H is a (solid harmonic) polynomial and g supplies exact
// series derivatives.  The operator is expanded once into the symbolic form
//
//     A (g H) = sum_d g^{(d)}(r) * Q_d(x, r)
//
// with Q_d polynomials in x1,x2,x3 and integer powers of r; evaluation at a
// point then only needs the radial jet of g.

#include <array>
#include <complex>
#include <map>
#include <vector>

#include "hydra/diff_op.hpp"
#include "hydra/harmonics.hpp"

namespace hydra::angular {

// polynomial in x1,x2,x3 and r^k (k any integer); evaluation-only form
using PolyR = std::map<std::pair<std::array<int, 3>, int>, cplx>;

inline void polyr_add(PolyR& p, const std::array<int, 3>& m, int k, cplx c) {
  if (c == 0.0) return;
  auto key = std::make_pair(m, k);
  auto it = p.find(key);
  if (it == p.end()) {
    p[key] = c;
  } else {
    it->second += c;
    if (it->second == 0.0) p.erase(it);
  }
}

inline PolyR polyr_derivative(const PolyR& p, int i) {
  PolyR q;
  for (const auto& [key, c] : p) {
    const auto& [m, k] = key;
    if (m[i] > 0) {
      std::array<int, 3> mm = m;
      mm[i] -= 1;
      polyr_add(q, mm, k, c * double(m[i]));
    }
    if (k != 0) {
      std::array<int, 3> mm = m;
      mm[i] += 1;
      polyr_add(q, mm, k - 2, c * double(k));
    }
  }
  return q;
}

inline PolyR polyr_mul(const PolyR& a, const PolyR& b) {
  PolyR q;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      std::array<int, 3> m;
      for (int i = 0; i < 3; ++i) m[i] = ka.first[i] + kb.first[i];
      polyr_add(q, m, ka.second + kb.second, ca * cb);
    }
  return q;
}

inline cplx polyr_eval(const PolyR& p, const std::array<double, 3>& x, double r) {
  cplx acc = 0.0;
  for (const auto& [key, c] : p) {
    double v = std::pow(r, key.second);
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < key.first[i]; ++k) v *= x[i];
    acc += c * v;
  }
  return acc;
}

inline PolyR polyr_from_coeff(const CoeffElem& f) {
  PolyR p;
  for (const auto& [key, c] : f.terms()) polyr_add(p, key.first.a, key.second, c.to_complex());
  return p;
}

inline PolyR polyr_from_poly(const PolyC& h) {
  PolyR p;
  for (const auto& [m, c] : h) polyr_add(p, m, 0, c);
  return p;
}

class JetExpansion {
 public:
  // expand A (g(r) H(x)) symbolically
  JetExpansion(const DiffOp& A, const PolyC& H) {
    for (const auto& [beta, f] : A.terms()) {
      // start from (d=0, H); push one derivative at a time:
      // d_i (g^{(d)} Q) = g^{(d+1)} (x_i/r) Q + g^{(d)} d_i(Q)
      std::map<int, PolyR> cur;
      cur[0] = polyr_from_poly(H);
      for (int i = 0; i < 3; ++i)
        for (int rep = 0; rep < beta.b[i]; ++rep) {
          std::map<int, PolyR> next;
          for (const auto& [d, Q] : cur) {
            PolyR up;
            for (const auto& [key, c] : Q) {
              std::array<int, 3> m = key.first;
              m[i] += 1;
              polyr_add(up, m, key.second - 1, c);
            }
            merge(next[d + 1], up);
            merge(next[d], polyr_derivative(Q, i));
          }
          cur = std::move(next);
        }
      PolyR coeff = polyr_from_coeff(f);
      for (const auto& [d, Q] : cur) merge(component(d), polyr_mul(coeff, Q));
    }
    while (!comps_.empty() && comps_.back().empty()) comps_.pop_back();
  }

  // highest radial derivative of g that evaluation will request
  int max_order() const { return static_cast<int>(comps_.size()) - 1; }

  cplx eval(const std::vector<cplx>& g_jet, const std::array<double, 3>& x, double r) const {
    cplx acc = 0.0;
    for (size_t d = 0; d < comps_.size(); ++d) {
      if (comps_[d].empty()) continue;
      acc += g_jet[d] * polyr_eval(comps_[d], x, r);
    }
    return acc;
  }

 private:
  PolyR& component(int d) {
    if (static_cast<int>(comps_.size()) <= d) comps_.resize(d + 1);
    return comps_[d];
  }
  static void merge(PolyR& into, const PolyR& from) {
    for (const auto& [key, c] : from) polyr_add(into, key.first, key.second, c);
  }
  std::vector<PolyR> comps_;
};

// d/dr as an operator on functions of x: sum_i (x_i / r) d_i
inline DiffOp radial_derivative_op() {
  DiffOp op = DiffOp::zero();
  for (int i = 0; i < 3; ++i) {
    CoeffElem c = CoeffElem::coordinate(i) * CoeffElem::r_power(-1);
    op += DiffOp::from_coeff(c) * DiffOp::partial(i);
  }
  return op;
}

}  // namespace hydra::angular
