#pragma once

// Univariate polynomials in the spectral coordinate over the Gaussian
// rationals.  Coefficients ascend in degree; the zero polynomial is the
// empty list, so degree(fg) = degree(f) + degree(g) holds exactly.

#include <stdexcept>
#include <string>
#include <vector>

#include "hydra/rational.hpp"

namespace hydra {

struct PolyLambda {
  std::vector<GaussRational> c;  // ascending, no trailing zeros

  PolyLambda() = default;
  explicit PolyLambda(std::vector<GaussRational> coeffs) : c(std::move(coeffs)) { trim(); }

  static PolyLambda zero() { return PolyLambda{}; }
  static PolyLambda constant(GaussRational a) { return PolyLambda({std::move(a)}); }
  static PolyLambda one() { return constant(GaussRational(1)); }
  // the coordinate polynomial itself
  static PolyLambda lambda() { return PolyLambda({GaussRational(0), GaussRational(1)}); }

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero

  GaussRational coeff(size_t k) const { return k < c.size() ? c[k] : GaussRational(); }

  GaussRational eval(const GaussRational& x) const {
    GaussRational acc;
    for (size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
    return acc;
  }

  PolyLambda conj() const {
    PolyLambda p = *this;
    for (auto& a : p.c) a = a.conj();
    return p;
  }

  PolyLambda operator-() const {
    PolyLambda p = *this;
    for (auto& a : p.c) a = -a;
    return p;
  }

  PolyLambda& operator+=(const PolyLambda& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size());
    for (size_t k = 0; k < o.c.size(); ++k) c[k] += o.c[k];
    trim();
    return *this;
  }
  PolyLambda& operator-=(const PolyLambda& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size());
    for (size_t k = 0; k < o.c.size(); ++k) c[k] -= o.c[k];
    trim();
    return *this;
  }

  friend PolyLambda operator+(PolyLambda a, const PolyLambda& b) { return a += b; }
  friend PolyLambda operator-(PolyLambda a, const PolyLambda& b) { return a -= b; }

  friend PolyLambda operator*(const PolyLambda& a, const PolyLambda& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    PolyLambda p;
    p.c.assign(a.c.size() + b.c.size() - 1, GaussRational());
    for (size_t i = 0; i < a.c.size(); ++i)
      for (size_t j = 0; j < b.c.size(); ++j) p.c[i + j] += a.c[i] * b.c[j];
    p.trim();
    return p;
  }

  friend PolyLambda operator*(const GaussRational& s, PolyLambda p) {
    for (auto& a : p.c) a = s * a;
    p.trim();
    return p;
  }

  friend bool operator==(const PolyLambda& a, const PolyLambda& b) { return a.c == b.c; }
  friend bool operator!=(const PolyLambda& a, const PolyLambda& b) { return !(a == b); }

  // Exact quotient by (lambda - x0); requires x0 to be a root.
  PolyLambda deflate(const GaussRational& x0) const {
    if (is_zero()) throw std::domain_error("deflate: zero polynomial");
    std::vector<GaussRational> q(c.size() - 1);
    GaussRational carry = c.back();
    for (size_t k = c.size() - 1; k-- > 0;) {
      q[k] = carry;
      carry = c[k] + x0 * carry;
    }
    if (!carry.is_zero()) throw std::domain_error("deflate: not a root");
    return PolyLambda(std::move(q));
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t k = c.size(); k-- > 0;) {
      if (c[k].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + c[k].str() + ")";
      if (k >= 1) s += "*L";
      if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
  }
};

// Largest m with (lambda - x0)^m dividing p, by exact synthetic division.
inline int vanishing_order(const PolyLambda& p, const GaussRational& x0) {
  if (p.is_zero()) throw std::domain_error("vanishing_order: undefined for the zero polynomial");
  int m = 0;
  PolyLambda q = p;
  while (!q.is_zero() && q.eval(x0).is_zero()) {
    q = q.deflate(x0);
    ++m;
  }
  return m;
}

inline GaussRational poly_eval(const PolyLambda& p, const GaussRational& x0) { return p.eval(x0); }

inline PolyLambda conj_poly(const PolyLambda& p) { return p.conj(); }

}  // namespace hydra
