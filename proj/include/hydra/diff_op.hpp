#pragma once

// Linear differential operators on punctured 3-space with CoeffElem
// coefficients, kept in normal order (all coefficients to the left of all
// derivatives).  Composition uses the Leibniz rule, so the normal form is
// computed exactly.

#include <array>
#include <map>
#include <sstream>
#include <string>

#include "hydra/coeff_ring.hpp"

namespace hydra {

struct DMonomial {
  std::array<int, 3> b{0, 0, 0};

  int order() const { return b[0] + b[1] + b[2]; }
  friend bool operator==(const DMonomial&, const DMonomial&) = default;
  // graded lex: by total order, then reverse lex so d1 sorts before d2
  friend bool operator<(const DMonomial& l, const DMonomial& r) {
    if (l.order() != r.order()) return l.order() < r.order();
    return l.b > r.b;
  }
};

class DiffOp {
 public:
  using Map = std::map<DMonomial, CoeffElem>;

  DiffOp() = default;

  static DiffOp zero() { return DiffOp(); }
  static DiffOp identity() { return from_coeff(CoeffElem::one()); }
  static DiffOp from_coeff(CoeffElem f) {
    DiffOp op;
    if (!f.is_zero()) op.terms_[{}] = std::move(f);
    return op;
  }
  static DiffOp scalar(GaussRational c) { return from_coeff(CoeffElem::scalar(std::move(c))); }
  static DiffOp coordinate(int i) { return from_coeff(CoeffElem::coordinate(i)); }
  static DiffOp r_power(int k) { return from_coeff(CoeffElem::r_power(k)); }
  static DiffOp partial(int i) {
    DiffOp op;
    DMonomial d;
    d.b[i] = 1;
    op.terms_[d] = CoeffElem::one();
    return op;
  }

  bool is_zero() const { return terms_.empty(); }
  const Map& terms() const { return terms_; }

  int order() const {
    int o = 0;
    for (const auto& [d, f] : terms_) o = std::max(o, d.order());
    return o;
  }

  // coefficients of the given total derivative order, as a normal-ordered DiffOp
  DiffOp order_part(int n) const {
    DiffOp p;
    for (const auto& [d, f] : terms_)
      if (d.order() == n) p.terms_[d] = f;
    return p;
  }

  void add_term(const DMonomial& d, const CoeffElem& f) {
    if (f.is_zero()) return;
    auto it = terms_.find(d);
    if (it == terms_.end()) {
      terms_.emplace(d, f);
    } else {
      it->second += f;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  DiffOp operator-() const {
    DiffOp op = *this;
    for (auto& [d, f] : op.terms_) f = -f;
    return op;
  }
  DiffOp& operator+=(const DiffOp& o) {
    for (const auto& [d, f] : o.terms_) add_term(d, f);
    return *this;
  }
  DiffOp& operator-=(const DiffOp& o) {
    for (const auto& [d, f] : o.terms_) add_term(d, -f);
    return *this;
  }
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }

  friend DiffOp operator*(const GaussRational& s, DiffOp op) {
    if (s.is_zero()) return DiffOp();
    for (auto& [d, f] : op.terms_) f = s * f;
    return op;
  }

  // operator composition with Leibniz normal ordering
  friend DiffOp operator*(const DiffOp& A, const DiffOp& B) {
    DiffOp out;
    for (const auto& [beta, f] : A.terms_) {
      for (const auto& [delta, g] : B.terms_) {
        // push the derivatives of A through g:
        // terms (d, h) meaning h * partial^{delta + d}
        std::map<DMonomial, CoeffElem> cur;
        cur[{}] = g;
        for (int i = 0; i < 3; ++i) {
          for (int rep = 0; rep < beta.b[i]; ++rep) {
            std::map<DMonomial, CoeffElem> next;
            for (const auto& [d, h] : cur) {
              DMonomial d1 = d;
              d1.b[i] += 1;
              // h * partial_i term
              auto it = next.find(d1);
              if (it == next.end())
                next[d1] = h;
              else
                it->second += h;
              // (partial_i h) term
              CoeffElem dh = h.derivative(i);
              if (!dh.is_zero()) {
                auto jt = next.find(d);
                if (jt == next.end())
                  next[d] = dh;
                else
                  jt->second += dh;
              }
            }
            for (auto it = next.begin(); it != next.end();)
              it = it->second.is_zero() ? next.erase(it) : std::next(it);
            cur = std::move(next);
          }
        }
        for (const auto& [d, h] : cur) {
          DMonomial sum = delta;
          for (int i = 0; i < 3; ++i) sum.b[i] += d.b[i];
          out.add_term(sum, f * h);
        }
      }
    }
    return out;
  }

  friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

  // apply to a coefficient-ring element (a function on punctured 3-space)
  CoeffElem apply(const CoeffElem& f) const {
    CoeffElem out;
    for (const auto& [d, coeff] : terms_) {
      CoeffElem g = f;
      for (int i = 0; i < 3; ++i)
        for (int rep = 0; rep < d.b[i]; ++rep) g = g.derivative(i);
      out += coeff * g;
    }
    out.canonicalize();
    return out;
  }

  // formal adjoint: (f d^beta)^* = (-d)^beta . conj(f), extended additively
  DiffOp adjoint() const {
    DiffOp out;
    for (const auto& [d, f] : terms_) {
      DiffOp deriv = identity();
      int parity = 0;
      for (int i = 0; i < 3; ++i)
        for (int rep = 0; rep < d.b[i]; ++rep) {
          deriv = deriv * partial(i);
          ++parity;
        }
      DiffOp term = deriv * from_coeff(f.conj());
      if (parity % 2 == 1) term = -term;
      out += term;
    }
    return out;
  }

  // coefficient-wise complex conjugation (multiplicative involution)
  DiffOp conj_coeffs() const {
    DiffOp op = *this;
    for (auto& [d, f] : op.terms_) f = f.conj();
    return op;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, f] : terms_) {
      if (!first) os << "  +  ";
      first = false;
      os << "[" << f.str() << "]";
      static const char* names[3] = {"d1", "d2", "d3"};
      for (int i = 0; i < 3; ++i) {
        if (d.b[i] > 0) {
          os << " " << names[i];
          if (d.b[i] > 1) os << "^" << d.b[i];
        }
      }
    }
    return os.str();
  }

 private:
  Map terms_;
};

inline DiffOp commutator(const DiffOp& A, const DiffOp& B) { return A * B - B * A; }

// sigma(X) = -X^*; the real structure fixes L_i and R_i
inline DiffOp sigma(const DiffOp& A) { return -A.adjoint(); }

// sigma'(X): conjugate all coefficient functions
inline DiffOp sigma_prime(const DiffOp& A) { return A.conj_coeffs(); }

// Cartan involution theta = sigma . sigma'; fixes rotations, negates the
// Runge-Lenz operators
inline DiffOp theta(const DiffOp& A) { return sigma(sigma_prime(A)); }

}  // namespace hydra
