#pragma once

// The 4x4 matrix realization of the symmetry family over polynomials in the
// spectral coordinate, plus exact fiber classification through the signature
// of the Killing form.

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "hydra/poly_lambda.hpp"

namespace hydra {

using PolyMat = std::array<std::array<PolyLambda, 4>, 4>;

inline PolyMat poly_mat_zero() {
  PolyMat m;
  for (auto& row : m)
    for (auto& e : row) e = PolyLambda::zero();
  return m;
}

inline PolyMat operator*(const PolyMat& a, const PolyMat& b) {
  PolyMat m = poly_mat_zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) m[i][j] += a[i][k] * b[k][j];
  return m;
}

inline PolyMat operator+(const PolyMat& a, const PolyMat& b) {
  PolyMat m = a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] += b[i][j];
  return m;
}

inline PolyMat operator-(const PolyMat& a, const PolyMat& b) {
  PolyMat m = a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] -= b[i][j];
  return m;
}

inline PolyMat operator*(const GaussRational& s, const PolyMat& a) {
  PolyMat m = a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = s * m[i][j];
  return m;
}

inline bool is_zero(const PolyMat& a) {
  for (const auto& row : a)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

inline bool operator==(const PolyMat& a, const PolyMat& b) { return is_zero(a - b); }

inline PolyMat poly_commutator(const PolyMat& a, const PolyMat& b) { return a * b - b * a; }

struct MatrixGenerators {
  std::array<PolyMat, 3> L;
  std::array<PolyMat, 3> R;
};

// Exact transcription: L_i are constant skew matrices, R_i couple the last
// row/column with entries {+-1, +-T}.
inline MatrixGenerators matrix_generators() {
  auto one = []() { return PolyLambda::one(); };
  auto minus_one = []() { return PolyLambda({GaussRational(make_rational(-1))}); };
  auto lam = []() { return PolyLambda::lambda(); };
  auto minus_lam = []() { return PolyLambda({GaussRational(), GaussRational(make_rational(-1))}); };

  MatrixGenerators g;
  for (auto& m : g.L) m = poly_mat_zero();
  for (auto& m : g.R) m = poly_mat_zero();

  g.L[0][1][2] = minus_one();
  g.L[0][2][1] = one();

  g.L[1][0][2] = minus_one();
  g.L[1][2][0] = one();

  g.L[2][0][1] = minus_one();
  g.L[2][1][0] = one();

  g.R[0][0][3] = one();
  g.R[0][3][0] = lam();

  g.R[1][1][3] = minus_one();
  g.R[1][3][1] = minus_lam();

  g.R[2][2][3] = one();
  g.R[2][3][2] = lam();

  return g;
}

inline int levi_civita_m(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((i + 1) % 3 == j) ? 1 : -1;
}

struct MatrixCheck {
  std::string id;
  bool pass;
};

// Matrix commutators reproduce the bracket table with T replaced by lambda,
// exactly over the polynomial ring.
inline std::vector<MatrixCheck> verify_homomorphism() {
  MatrixGenerators g = matrix_generators();
  std::vector<MatrixCheck> out;
  PolyLambda lam = PolyLambda::lambda();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      PolyMat ll = poly_commutator(g.L[i], g.L[j]);
      PolyMat rr = poly_commutator(g.R[i], g.R[j]);
      PolyMat lr = poly_commutator(g.L[i], g.R[j]);
      PolyMat ll_expect = poly_mat_zero(), rr_expect = poly_mat_zero(),
              lr_expect = poly_mat_zero();
      for (int k = 0; k < 3; ++k) {
        int e = levi_civita_m(i, j, k);
        if (e == 0) continue;
        GaussRational s(make_rational(-e));
        ll_expect = ll_expect + (s * g.L[k]);
        lr_expect = lr_expect + (s * g.R[k]);
        PolyMat tl = g.L[k];
        for (auto& row : tl)
          for (auto& el : row) el = lam * el;
        rr_expect = rr_expect + (GaussRational(e) * tl);
      }
      std::string si = std::to_string(i + 1), sj = std::to_string(j + 1);
      out.push_back({"[L" + si + ",L" + sj + "]", ll == ll_expect});
      out.push_back({"[R" + si + ",R" + sj + "]", rr == rr_expect});
      out.push_back({"[L" + si + ",R" + sj + "]", lr == lr_expect});
    }
  // tracelessness
  for (int i = 0; i < 3; ++i) {
    PolyLambda trL, trR;
    for (int d = 0; d < 4; ++d) {
      trL += g.L[i][d][d];
      trR += g.R[i][d][d];
    }
    out.push_back({"trace L" + std::to_string(i + 1), trL.is_zero()});
    out.push_back({"trace R" + std::to_string(i + 1), trR.is_zero()});
  }
  return out;
}

// The six images, flattened to 16-vectors over the polynomial ring, are
// linearly independent over it.  It suffices to find full rank 6 after
// evaluating at a rational point (divide any relation by the largest power
// of (lambda - x0) and evaluate).
inline bool verify_linear_independence(const GaussRational& x0) {
  MatrixGenerators g = matrix_generators();
  std::array<PolyMat, 6> basis{g.L[0], g.L[1], g.L[2], g.R[0], g.R[1], g.R[2]};
  std::vector<std::vector<GaussRational>> rows;
  for (const auto& m : basis) {
    std::vector<GaussRational> row;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) row.push_back(m[i][j].eval(x0));
    rows.push_back(std::move(row));
  }
  // Gaussian elimination over the Gaussian rationals
  int rank = 0;
  size_t cols = rows[0].size();
  for (size_t c = 0; c < cols && rank < 6; ++c) {
    int pivot = -1;
    for (int r = rank; r < 6; ++r)
      if (!rows[r][c].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < 6; ++r) {
      if (r == rank || rows[r][c].is_zero()) continue;
      GaussRational f = rows[r][c] / rows[rank][c];
      for (size_t cc = 0; cc < cols; ++cc) rows[r][cc] -= f * rows[rank][cc];
    }
    ++rank;
  }
  return rank == 6;
}

struct KillingSignature {
  int n_plus = 0, n_minus = 0, n_zero = 0;

  friend bool operator==(const KillingSignature&, const KillingSignature&) = default;
};

// Killing matrix B(X,Y) = tr(ad X ad Y) of the 6-dimensional fiber at a real
// rational point, from the bracket table.  Basis order: L1,L2,L3,R1,R2,R3.
inline std::array<std::array<Rational, 6>, 6> killing_matrix(const Rational& lambda0) {
  // structure constants: [basis_a, basis_b] = sum_d C[a][b][d] basis_d
  auto C = [&](int a, int b, int d) -> Rational {
    bool aL = a < 3, bL = b < 3, dL = d < 3;
    int i = a % 3, j = b % 3, k = d % 3;
    if (aL && bL) return dL ? Rational(-levi_civita_m(i, j, k)) : Rational(0);
    if (!aL && !bL) return dL ? Rational(levi_civita_m(i, j, k)) * lambda0 : Rational(0);
    if (aL && !bL) return dL ? Rational(0) : Rational(-levi_civita_m(i, j, k));
    // [R_i, L_j] = -[L_j, R_i] = eps_jik R_k
    return dL ? Rational(0) : Rational(levi_civita_m(j, i, k));
  };
  std::array<std::array<std::array<Rational, 6>, 6>, 6> ad;  // ad[a]: matrix (d, b)
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int d = 0; d < 6; ++d) ad[a][d][b] = C(a, b, d);
  std::array<std::array<Rational, 6>, 6> B;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      Rational tr(0);
      for (int p = 0; p < 6; ++p)
        for (int q = 0; q < 6; ++q) tr += ad[a][p][q] * ad[b][q][p];
      B[a][b] = tr;
    }
  return B;
}

// Exact signature by symmetric (congruence) elimination with rational pivots.
inline KillingSignature signature(std::array<std::array<Rational, 6>, 6> m) {
  const int n = 6;
  std::vector<int> active(n);
  for (int i = 0; i < n; ++i) active[i] = i;
  KillingSignature sig;
  std::vector<bool> done(n, false);
  int remaining = n;
  while (remaining > 0) {
    // find a nonzero diagonal pivot
    int piv = -1;
    for (int i = 0; i < n; ++i)
      if (!done[i] && m[i][i] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) {
      // look for an off-diagonal entry; if none, the rest is the radical
      int oi = -1, oj = -1;
      for (int i = 0; i < n && oi < 0; ++i)
        for (int j = i + 1; j < n && oi < 0; ++j)
          if (!done[i] && !done[j] && m[i][j] != 0) {
            oi = i;
            oj = j;
          }
      if (oi < 0) {
        sig.n_zero += remaining;
        return sig;
      }
      // congruence: row/col i += row/col j creates a nonzero diagonal
      for (int c = 0; c < n; ++c) m[oi][c] += m[oj][c];
      for (int r = 0; r < n; ++r) m[r][oi] += m[r][oj];
      continue;
    }
    Rational d = m[piv][piv];
    if (d > 0)
      ++sig.n_plus;
    else
      ++sig.n_minus;
    done[piv] = true;
    --remaining;
    for (int r = 0; r < n; ++r) {
      if (r == piv || done[r] || m[r][piv] == 0) continue;
      Rational f = m[r][piv] / d;
      // congruence transform E M E^t applied sequentially
      for (int c = 0; c < n; ++c) m[r][c] -= f * m[piv][c];
      for (int c = 0; c < n; ++c) m[c][r] -= f * m[c][piv];
    }
  }
  return sig;
}

// Fiber classification: negative definite (0,6,0) on the compact side
// lambda < 0, split (3,3,0) for lambda > 0, and a 3-dimensional radical at
// lambda = 0 where the Runge-Lenz directions become translations.
inline KillingSignature killing_signature(const Rational& lambda0) {
  return signature(killing_matrix(lambda0));
}

}  // namespace hydra
