#pragma once

// Exact identity checks on the operator algebra: structure constants,
// Casimir values, the order-2 centralizer list, involution properties and
// the Jacobi identity.  Every check reports the residual operator, which
// must be identically zero.

#include <string>
#include <vector>

#include "hydra/generators.hpp"

namespace hydra {

struct IdentityCheck {
  std::string id;
  bool pass;
  std::string residual;  // pretty-printed residual operator; "0" when passing

  static IdentityCheck of(std::string name, const DiffOp& residual_op) {
    return {std::move(name), residual_op.is_zero(), residual_op.str()};
  }
};

inline int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  if ((i + 1) % 3 == j) return 1;  // cyclic (i,j,k)
  return -1;
}

// [L_i,L_j] = -eps_ijk L_k, [R_i,R_j] = eps_ijk T L_k, [L_i,R_j] = -eps_ijk R_k,
// [T, L_i] = [T, R_i] = 0
inline std::vector<IdentityCheck> verify_structure_constants(const Generators& g) {
  std::vector<IdentityCheck> out;
  auto eps_combo = [&](int i, int j, const std::array<DiffOp, 3>& basis, bool with_T) {
    DiffOp rhs = DiffOp::zero();
    for (int k = 0; k < 3; ++k) {
      int e = levi_civita(i, j, k);
      if (e == 0) continue;
      DiffOp term = basis[k];
      if (with_T) term = g.T * term;
      rhs += GaussRational(e) * term;
    }
    return rhs;
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      std::string si = std::to_string(i + 1), sj = std::to_string(j + 1);
      out.push_back(IdentityCheck::of(
          "[L" + si + ",L" + sj + "] + eps*L",
          commutator(g.L[i], g.L[j]) + eps_combo(i, j, g.L, false)));
      out.push_back(IdentityCheck::of(
          "[R" + si + ",R" + sj + "] - eps*T*L",
          commutator(g.R[i], g.R[j]) - eps_combo(i, j, g.L, true)));
      out.push_back(IdentityCheck::of(
          "[L" + si + ",R" + sj + "] + eps*R",
          commutator(g.L[i], g.R[j]) + eps_combo(i, j, g.R, false)));
    }
  for (int i = 0; i < 3; ++i) {
    std::string si = std::to_string(i + 1);
    out.push_back(IdentityCheck::of("[T,L" + si + "]", commutator(g.T, g.L[i])));
    out.push_back(IdentityCheck::of("[T,R" + si + "]", commutator(g.T, g.R[i])));
  }
  return out;
}

// alpha(RL) and alpha(TL^2 - R^2) - (T + gamma^2 I); both must vanish.
inline std::pair<DiffOp, DiffOp> casimir_values(const Generators& g) {
  DiffOp rl = DiffOp::zero();
  for (int i = 0; i < 3; ++i) rl += g.R[i] * g.L[i];

  DiffOp l2 = DiffOp::zero(), r2 = DiffOp::zero();
  for (int i = 0; i < 3; ++i) {
    l2 += g.L[i] * g.L[i];
    r2 += g.R[i] * g.R[i];
  }
  DiffOp second = g.T * l2 - r2 - g.T - DiffOp::scalar(g.gamma * g.gamma);
  return {rl, second};
}

// The order-2 part of the centralizer of T is spanned by: I, T, L_i, R_i,
// L^2, and the symmetric quadratics in L.  Check [T, X] = 0 for each.
inline std::vector<IdentityCheck> centralizer_order2_check(const Generators& g) {
  std::vector<IdentityCheck> out;
  auto check = [&](const std::string& name, const DiffOp& X) {
    out.push_back(IdentityCheck::of("[T," + name + "]", commutator(g.T, X)));
  };
  check("I", DiffOp::identity());
  check("T", g.T);
  for (int i = 0; i < 3; ++i) check("L" + std::to_string(i + 1), g.L[i]);
  for (int i = 0; i < 3; ++i) check("R" + std::to_string(i + 1), g.R[i]);
  DiffOp l2 = DiffOp::zero();
  for (int i = 0; i < 3; ++i) l2 += g.L[i] * g.L[i];
  check("L^2", l2);
  auto sym = [&](int i, int j) { return g.L[i] * g.L[j] + g.L[j] * g.L[i]; };
  check("L1L2+L2L1", sym(0, 1));
  check("L1L3+L3L1", sym(0, 2));
  check("L2L3+L3L2", sym(1, 2));
  check("L1^2-L2^2", g.L[0] * g.L[0] - g.L[1] * g.L[1]);
  check("L2^2-L3^2", g.L[1] * g.L[1] - g.L[2] * g.L[2]);
  return out;
}

// sigma fixes L and R; theta fixes L and negates R; both are involutions.
inline std::vector<IdentityCheck> verify_involutions(const Generators& g) {
  std::vector<IdentityCheck> out;
  for (int i = 0; i < 3; ++i) {
    std::string si = std::to_string(i + 1);
    out.push_back(IdentityCheck::of("sigma(L" + si + ")-L" + si, sigma(g.L[i]) - g.L[i]));
    out.push_back(IdentityCheck::of("sigma(R" + si + ")-R" + si, sigma(g.R[i]) - g.R[i]));
    out.push_back(IdentityCheck::of("theta(L" + si + ")-L" + si, theta(g.L[i]) - g.L[i]));
    out.push_back(IdentityCheck::of("theta(R" + si + ")+R" + si, theta(g.R[i]) + g.R[i]));
  }
  out.push_back(IdentityCheck::of("sigma(T)+T", sigma(g.T) + g.T));  // T is formally self-adjoint
  return out;
}

inline std::vector<IdentityCheck> verify_jacobi(const Generators& g) {
  std::array<DiffOp, 6> basis{g.L[0], g.L[1], g.L[2], g.R[0], g.R[1], g.R[2]};
  static const char* names[6] = {"L1", "L2", "L3", "R1", "R2", "R3"};
  std::vector<IdentityCheck> out;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      for (int c = b + 1; c < 6; ++c) {
        DiffOp s = commutator(basis[a], commutator(basis[b], basis[c])) +
                   commutator(basis[b], commutator(basis[c], basis[a])) +
                   commutator(basis[c], commutator(basis[a], basis[b]));
        out.push_back(IdentityCheck::of(
            std::string("jacobi(") + names[a] + "," + names[b] + "," + names[c] + ")", s));
      }
  return out;
}

}  // namespace hydra
