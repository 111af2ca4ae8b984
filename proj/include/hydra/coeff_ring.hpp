#pragma once

// Coefficient ring for the operator algebra on punctured 3-space: Gaussian
// rational combinations of x1,x2,x3 and integer powers of r, subject to
// r^2 = x1^2 + x2^2 + x3^2.  Canonical form:
//   (i)  every r-exponent k satisfies k <= 1;
//   (ii) for k <= -1 the polynomial multiplying r^k is not divisible by
//        x1^2 + x2^2 + x3^2 (otherwise divide and raise k by 2).
// Canonical forms are unique, so equality is coefficient-wise.

#include <array>
#include <complex>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "hydra/rational.hpp"

namespace hydra {

struct XMonomial {
  std::array<int, 3> a{0, 0, 0};

  int degree() const { return a[0] + a[1] + a[2]; }
  friend bool operator==(const XMonomial&, const XMonomial&) = default;
  friend bool operator<(const XMonomial& l, const XMonomial& r) { return l.a < r.a; }
};

using XPoly = std::map<XMonomial, GaussRational>;

inline void xpoly_add(XPoly& p, const XMonomial& m, const GaussRational& c) {
  if (c.is_zero()) return;
  auto it = p.find(m);
  if (it == p.end()) {
    p.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

// Exact division by x1^2 + x2^2 + x3^2, treating x3 as the leading variable.
// Returns true and fills q when the division is exact.
inline bool xpoly_divide_by_r2(const XPoly& p, XPoly& q) {
  q.clear();
  XPoly rem = p;
  while (!rem.empty()) {
    // highest term in x3-major lex order
    auto it = rem.end();
    --it;
    XMonomial lead = it->first;
    // reorder comparison: the map is lex on (a1,a2,a3); find max a3 explicitly
    for (auto jt = rem.begin(); jt != rem.end(); ++jt)
      if (jt->first.a[2] > lead.a[2]) lead = jt->first;
    if (lead.a[2] < 2) return false;  // remainder not divisible by x3^2
    GaussRational c = rem.at(lead);
    XMonomial qm = lead;
    qm.a[2] -= 2;
    xpoly_add(q, qm, c);
    // rem -= c * qm * (x1^2 + x2^2 + x3^2)
    for (int i = 0; i < 3; ++i) {
      XMonomial t = qm;
      t.a[i] += 2;
      xpoly_add(rem, t, -c);
    }
  }
  return true;
}

class CoeffElem {
 public:
  // key: (x-monomial, r-exponent)
  using Key = std::pair<XMonomial, int>;
  using Map = std::map<Key, GaussRational>;

  CoeffElem() = default;

  static CoeffElem zero() { return CoeffElem(); }
  static CoeffElem scalar(GaussRational c) {
    CoeffElem e;
    e.add_term({}, 0, std::move(c));
    e.canonicalize();
    return e;
  }
  static CoeffElem one() { return scalar(GaussRational(1)); }
  static CoeffElem coordinate(int i, GaussRational c = GaussRational(1)) {
    CoeffElem e;
    XMonomial m;
    m.a[i] = 1;
    e.add_term(m, 0, std::move(c));
    e.canonicalize();
    return e;
  }
  static CoeffElem r_power(int k, GaussRational c = GaussRational(1)) {
    CoeffElem e;
    e.add_term({}, k, std::move(c));
    e.canonicalize();
    return e;
  }

  bool is_zero() const { return terms_.empty(); }
  const Map& terms() const { return terms_; }

  void add_term(const XMonomial& m, int k, const GaussRational& c) {
    if (c.is_zero()) return;
    Key key{m, k};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  CoeffElem operator-() const {
    CoeffElem e = *this;
    for (auto& [k, c] : e.terms_) c = -c;
    return e;
  }
  // sums of canonical elements need re-reduction (rule (ii) can become
  // applicable only after terms combine)
  CoeffElem& operator+=(const CoeffElem& o) {
    for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
    canonicalize();
    return *this;
  }
  CoeffElem& operator-=(const CoeffElem& o) {
    for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, -c);
    canonicalize();
    return *this;
  }
  friend CoeffElem operator+(CoeffElem a, const CoeffElem& b) { return a += b; }
  friend CoeffElem operator-(CoeffElem a, const CoeffElem& b) { return a -= b; }

  friend CoeffElem operator*(const CoeffElem& a, const CoeffElem& b) {
    CoeffElem p;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) {
        XMonomial m;
        for (int i = 0; i < 3; ++i) m.a[i] = ka.first.a[i] + kb.first.a[i];
        p.add_term(m, ka.second + kb.second, ca * cb);
      }
    p.canonicalize();
    return p;
  }

  friend CoeffElem operator*(const GaussRational& s, CoeffElem e) {
    if (s.is_zero()) return CoeffElem();
    for (auto& [k, c] : e.terms_) c = s * c;
    return e;
  }

  friend bool operator==(const CoeffElem& a, const CoeffElem& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const CoeffElem& a, const CoeffElem& b) { return !(a == b); }

  // d/dx_i with d(r^k)/dx_i = k x_i r^{k-2}
  CoeffElem derivative(int i) const {
    CoeffElem d;
    for (const auto& [key, c] : terms_) {
      const auto& [m, k] = key;
      if (m.a[i] > 0) {
        XMonomial mm = m;
        mm.a[i] -= 1;
        d.add_term(mm, k, make_rational(m.a[i]) * c);
      }
      if (k != 0) {
        XMonomial mm = m;
        mm.a[i] += 1;
        d.add_term(mm, k - 2, make_rational(k) * c);
      }
    }
    d.canonicalize();
    return d;
  }

  CoeffElem conj() const {
    CoeffElem e = *this;
    for (auto& [k, c] : e.terms_) c = c.conj();
    return e;
  }

  // numeric evaluation on a point of R^3 \ {0}
  std::complex<double> eval(const std::array<double, 3>& x) const {
    double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    std::complex<double> acc = 0.0;
    for (const auto& [key, c] : terms_) {
      double v = std::pow(r, key.second);
      for (int i = 0; i < 3; ++i)
        for (int p = 0; p < key.first.a[i]; ++p) v *= x[i];
      acc += c.to_complex() * v;
    }
    return acc;
  }

  // Unique normal form.  Exponents split into parity classes (r^2 = Q mixes
  // only within a class); each class is collected at a single exponent level
  // k, then Q is divided out while possible.  The result satisfies:
  // at most one even level k <= 0 and one odd level k <= 1, with the
  // coefficient polynomial not divisible by Q whenever k <= -1.
  void canonicalize() {
    if (terms_.empty()) return;
    std::array<int, 2> kmin{0, 1};
    std::array<bool, 2> present{false, false};
    for (const auto& [key, c] : terms_) {
      int par = ((key.second % 2) + 2) % 2;
      kmin[par] = present[par] ? std::min(kmin[par], key.second) : key.second;
      present[par] = true;
    }
    Map out;
    for (int par = 0; par < 2; ++par) {
      if (!present[par]) continue;
      int top = (par == 0) ? 0 : 1;
      int k = std::min(kmin[par], top);
      // p = sum over class of p_j * Q^{(j-k)/2}
      XPoly p;
      for (const auto& [key, c] : terms_) {
        if (((key.second % 2) + 2) % 2 != par) continue;
        XPoly term;
        xpoly_add(term, key.first, c);
        for (int step = 0; step < (key.second - k) / 2; ++step) {
          XPoly lifted;
          for (const auto& [m, cc] : term)
            for (int i = 0; i < 3; ++i) {
              XMonomial mm = m;
              mm.a[i] += 2;
              xpoly_add(lifted, mm, cc);
            }
          term = std::move(lifted);
        }
        for (const auto& [m, cc] : term) xpoly_add(p, m, cc);
      }
      // reduce: divide by Q while the level sits below the class top
      while (k < top && !p.empty()) {
        XPoly q;
        if (!xpoly_divide_by_r2(p, q)) break;
        p = std::move(q);
        k += 2;
      }
      for (const auto& [m, cc] : p) out[{m, k}] = cc;
    }
    terms_ = std::move(out);
  }

  // terms ordered by x-monomial lex, then r-exponent descending
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    std::map<std::pair<XMonomial, int>, GaussRational> ordered;
    for (const auto& [key, c] : terms_) ordered[{key.first, -key.second}] = c;
    for (const auto& [key, c] : ordered) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.str() << ")";
      static const char* names[3] = {"x1", "x2", "x3"};
      for (int i = 0; i < 3; ++i) {
        if (key.first.a[i] > 0) {
          os << "*" << names[i];
          if (key.first.a[i] > 1) os << "^" << key.first.a[i];
        }
      }
      int k = -key.second;
      if (k != 0) os << "*r^" << k;
    }
    return os.str();
  }

 private:
  Map terms_;
};

}  // namespace hydra
