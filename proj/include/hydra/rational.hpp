#pragma once

// Exact scalars: arbitrary-precision rationals (GMP-backed) and Gaussian
// rationals p/q + r/s·i.  All arithmetic is exact; equality is structural.

#include <gmpxx.h>

#include <complex>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hydra {

using Rational = mpq_class;

// mpq_class(n, d) does not canonicalize on its own.
inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rational_from_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("cannot parse rational: '" + s + "'");
  if (q.get_den() == 0)
    throw std::invalid_argument("rational with zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

struct GaussRational {
  Rational re, im;

  GaussRational() : re(0), im(0) {}
  GaussRational(long n) : re(n), im(0) {}
  GaussRational(Rational r) : re(std::move(r)), im(0) {}
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRational i() { return GaussRational(Rational(0), Rational(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }  // |z|^2

  GaussRational operator-() const { return {-re, -im}; }
  GaussRational& operator+=(const GaussRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  GaussRational& operator/=(const GaussRational& o) {
    Rational n = o.norm();
    if (n == 0) throw std::domain_error("division by zero GaussRational");
    Rational r = (re * o.re + im * o.im) / n;
    im = (im * o.re - re * o.im) / n;
    re = r;
    return *this;
  }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }
  // Lexicographic order; used only as a map key.
  friend bool operator<(const GaussRational& a, const GaussRational& b) {
    int c = cmp(a.re, b.re);
    if (c != 0) return c < 0;
    return cmp(a.im, b.im) < 0;
  }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  // Exact formats "p/q" (real) and "p/q+r/si" / "p/q-r/si"; round-trips.
  std::string str() const {
    if (im == 0) return re.get_str();
    std::string s = re.get_str();
    s += (im > 0) ? "+" : "-";
    Rational ai = abs(im);
    s += ai.get_str();
    s += "i";
    return s;
  }

  static GaussRational parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty GaussRational string");
    if (s.back() == 'i') {
      std::string body = s.substr(0, s.size() - 1);
      // split at the last top-level +/- that is not the leading sign
      for (size_t pos = body.size(); pos-- > 1;) {
        if (body[pos] == '+' || body[pos] == '-') {
          Rational re = rational_from_string(body.substr(0, pos));
          std::string ims = body.substr(pos + 1);
          Rational im = ims.empty() ? Rational(1) : rational_from_string(ims);
          if (body[pos] == '-') im = -im;
          return {re, im};
        }
      }
      // pure imaginary, e.g. "3/2i", "-i"
      if (body.empty() || body == "-" || body == "+")
        return {Rational(0), Rational(body == "-" ? -1 : 1)};
      return {Rational(0), rational_from_string(body)};
    }
    return {rational_from_string(s), Rational(0)};
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussRational& z) {
    return os << z.str();
  }
};

}  // namespace hydra
