#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hydra/matrix_family.hpp"

using namespace hydra;

namespace {

// Independent oracle: the Killing matrix assembled by hand from the bracket
// table.  ad L_i and ad R_i act on span{L_1..L_3, R_1..R_3}; working out the
// traces gives B = diag(-4,-4,-4, 4*lambda, 4*lambda, 4*lambda) and zero
// mixed blocks.
std::array<std::array<Rational, 6>, 6> killing_oracle(const Rational& lambda0) {
  std::array<std::array<Rational, 6>, 6> B;
  for (auto& row : B) row.fill(Rational(0));
  for (int i = 0; i < 3; ++i) {
    B[i][i] = Rational(-4);
    B[3 + i][3 + i] = Rational(4) * lambda0;
  }
  return B;
}

}  // namespace

TEST_CASE("matrix transcription entries") {
  MatrixGenerators g = matrix_generators();
  CHECK(g.L[2][0][1] == PolyLambda({GaussRational(make_rational(-1))}));
  CHECK(g.L[2][1][0] == PolyLambda::one());
  CHECK(g.R[0][0][3] == PolyLambda::one());
  CHECK(g.R[0][3][0] == PolyLambda::lambda());
  // block shape: skew 3x3 rotation block, last row is lambda times last column
  for (int i = 0; i < 3; ++i) {
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        CHECK((g.L[i][a][b] + g.L[i][b][a]).is_zero());
        CHECK(g.R[i][a][b].is_zero());
      }
    for (int a = 0; a < 3; ++a) {
      CHECK(g.L[i][a][3].is_zero());
      CHECK(g.L[i][3][a].is_zero());
      CHECK(g.R[i][3][a] == PolyLambda::lambda() * g.R[i][a][3]);
    }
  }
}

TEST_CASE("matrix commutators realize the bracket table with T -> lambda") {
  for (const auto& c : verify_homomorphism()) {
    INFO("check ", c.id);
    CHECK(c.pass);
  }
  MatrixGenerators g = matrix_generators();
  CHECK(poly_commutator(g.L[0], g.L[1]) ==
        GaussRational(make_rational(-1)) * g.L[2]);
  PolyMat tl3 = g.L[2];
  for (auto& row : tl3)
    for (auto& e : row) e = PolyLambda::lambda() * e;
  CHECK(poly_commutator(g.R[0], g.R[1]) == tl3);
}

TEST_CASE("the six images are linearly independent over the polynomial ring") {
  CHECK(verify_linear_independence(GaussRational(2)));
  CHECK(verify_linear_independence(GaussRational(0)));
}

TEST_CASE("killing matrix matches the hand-assembled oracle") {
  for (long num : {-2L, -1L, 0L, 1L, 3L}) {
    Rational l0 = make_rational(num, 2);
    CHECK(killing_matrix(l0) == killing_oracle(l0));
  }
}

TEST_CASE("killing signatures classify the real fibers") {
  CHECK(killing_signature(make_rational(-1)) == KillingSignature{0, 6, 0});
  CHECK(killing_signature(make_rational(1)) == KillingSignature{3, 3, 0});
  CHECK(killing_signature(make_rational(0)).n_zero == 3);
  CHECK(killing_signature(make_rational(0)) == KillingSignature{0, 3, 3});
}

TEST_CASE("signature is constant on each half line") {
  for (long n : {1L, 3L, 7L}) {
    CHECK(killing_signature(make_rational(-n, 4)) == KillingSignature{0, 6, 0});
    CHECK(killing_signature(make_rational(n, 4)) == KillingSignature{3, 3, 0});
  }
}

TEST_CASE("killing form is ad-invariant: B([X,Y],Z) + B(Y,[X,Z]) = 0") {
  Rational l0 = make_rational(5, 3);
  auto B = killing_matrix(l0);
  // structure constants replicated from killing_matrix's bracket table
  auto C = [&](int a, int b, int d) -> Rational {
    bool aL = a < 3, bL = b < 3, dL = d < 3;
    int i = a % 3, j = b % 3, k = d % 3;
    if (aL && bL) return dL ? Rational(-levi_civita_m(i, j, k)) : Rational(0);
    if (!aL && !bL) return dL ? Rational(levi_civita_m(i, j, k)) * l0 : Rational(0);
    if (aL && !bL) return dL ? Rational(0) : Rational(-levi_civita_m(i, j, k));
    return dL ? Rational(0) : Rational(levi_civita_m(j, i, k));
  };
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y)
      for (int z = 0; z < 6; ++z) {
        Rational s(0);
        for (int d = 0; d < 6; ++d) s += C(x, y, d) * B[d][z] + C(x, z, d) * B[y][d];
        CHECK(s == 0);
      }
}

TEST_CASE("signature routine handles a hollow symmetric matrix") {
  // all-zero diagonal but nondegenerate: hyperbolic planes
  std::array<std::array<Rational, 6>, 6> m;
  for (auto& row : m) row.fill(Rational(0));
  m[0][1] = m[1][0] = Rational(1);
  m[2][3] = m[3][2] = Rational(-2);
  m[4][5] = m[5][4] = make_rational(1, 3);
  CHECK(signature(m) == KillingSignature{3, 3, 0});
}
