#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hydra/poly_lambda.hpp"
#include "hydra/rational.hpp"

using namespace hydra;

namespace {

std::mt19937 rng(20260809);

Rational random_rational() {
  std::uniform_int_distribution<long> num(-12, 12), den(1, 9);
  return make_rational(num(rng), den(rng));
}

GaussRational random_gauss() { return {random_rational(), random_rational()}; }

PolyLambda random_poly(int max_deg = 5) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::vector<GaussRational> c(deg(rng) + 1);
  for (auto& a : c) a = random_gauss();
  return PolyLambda(std::move(c));
}

}  // namespace

TEST_CASE("rational parsing and printing round-trips exactly") {
  for (const char* s : {"3/2", "-1/4", "0", "7", "-22/7"}) {
    Rational q = rational_from_string(s);
    CHECK(to_string(q) == s);
  }
  CHECK(rational_from_string("4/8") == make_rational(1, 2));
  CHECK_THROWS(rational_from_string("1/0"));
}

TEST_CASE("gaussian rational string format round-trips") {
  for (const char* s : {"1/2+1/3i", "-3/4-2i", "0", "5", "0+1i", "0-7/2i"}) {
    GaussRational z = GaussRational::parse(s);
    CHECK(GaussRational::parse(z.str()) == z);
  }
  GaussRational z = GaussRational::parse("1/2-3/4i");
  CHECK(z.re == make_rational(1, 2));
  CHECK(z.im == make_rational(-3, 4));
  for (int trial = 0; trial < 300; ++trial) {
    GaussRational w = random_gauss();
    CHECK(GaussRational::parse(w.str()) == w);
  }
}

TEST_CASE("gaussian rationals satisfy the ring axioms on random inputs") {
  for (int trial = 0; trial < 200; ++trial) {
    GaussRational a = random_gauss(), b = random_gauss(), c = random_gauss();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + (-a) == GaussRational());
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("conjugation is an involutive ring map") {
  for (int trial = 0; trial < 100; ++trial) {
    GaussRational a = random_gauss(), b = random_gauss();
    CHECK(a.conj().conj() == a);
    CHECK((a * b).conj() == a.conj() * b.conj());
    CHECK((a + b).conj() == a.conj() + b.conj());
  }
}

TEST_CASE("poly_eval at stated points") {
  // p = L + 1 at -1 vanishes
  PolyLambda p({GaussRational(1), GaussRational(1)});
  CHECK(p.eval(GaussRational(make_rational(-1))).is_zero());

  // p = 4L + 1 at -1/4 vanishes (root of L*n^2 + gamma^2 with gamma=1, n=2:
  // clear denominators by hand -> 4*(-1/4) + 1 = 0)
  PolyLambda q({GaussRational(1), GaussRational(4)});
  CHECK(q.eval(GaussRational(make_rational(-1, 4))).is_zero());

  // the empty product is the constant 1
  CHECK(PolyLambda::one().eval(random_gauss()) == GaussRational(1));
}

TEST_CASE("vanishing_order by exact synthetic division") {
  PolyLambda lin1({GaussRational(1), GaussRational(1)});   // L + 1
  PolyLambda lin2({GaussRational(1), GaussRational(4)});   // 4L + 1
  GaussRational m1(make_rational(-1)), m14(make_rational(-1, 4));

  CHECK(vanishing_order(lin1 * lin1, m1) == 2);
  CHECK(vanishing_order(lin1 * lin2, m14) == 1);
  CHECK(vanishing_order(lin1 * lin2, GaussRational(7)) == 0);
  CHECK_THROWS_AS(vanishing_order(PolyLambda::zero(), m1), std::domain_error);
}

TEST_CASE("vanishing_order is additive under products") {
  GaussRational x0(make_rational(2, 3));
  PolyLambda root({-x0, GaussRational(1)});
  for (int trial = 0; trial < 60; ++trial) {
    PolyLambda p = random_poly(), q = random_poly();
    if (p.is_zero() || q.is_zero()) continue;
    std::uniform_int_distribution<int> extra(0, 2);
    int ep = extra(rng), eq = extra(rng);
    for (int k = 0; k < ep; ++k) p = p * root;
    for (int k = 0; k < eq; ++k) q = q * root;
    CHECK(vanishing_order(p * q, x0) == vanishing_order(p, x0) + vanishing_order(q, x0));
  }
}

TEST_CASE("polynomial ring axioms and degree rule on random inputs") {
  for (int trial = 0; trial < 100; ++trial) {
    PolyLambda p = random_poly(), q = random_poly(), s = random_poly();
    CHECK((p + q) + s == p + (q + s));
    CHECK(p * (q + s) == p * q + p * s);
    CHECK((p * q) * s == p * (q * s));
    CHECK((p - p).is_zero());
    if (!p.is_zero() && !q.is_zero()) CHECK((p * q).degree() == p.degree() + q.degree());
  }
}

TEST_CASE("conj_poly examples and involution") {
  PolyLambda il({GaussRational(), GaussRational::i()});  // i*L
  CHECK(conj_poly(il) == PolyLambda({GaussRational(), -GaussRational::i()}));

  PolyLambda real({GaussRational(1), GaussRational(0), GaussRational(1)});  // L^2 + 1
  CHECK(conj_poly(real) == real);

  PolyLambda p({GaussRational(), GaussRational(), GaussRational(),
                GaussRational(Rational(2), Rational(1))});  // (2+i)L^3
  CHECK(conj_poly(conj_poly(p)) == p);

  for (int trial = 0; trial < 50; ++trial) {
    PolyLambda a = random_poly(), b = random_poly();
    CHECK(conj_poly(a * b) == conj_poly(a) * conj_poly(b));
    CHECK(conj_poly(a + b) == conj_poly(a) + conj_poly(b));
  }
}
