#pragma once

// The rescaled Coulomb Hamiltonian T = -Laplace - 2*gamma/r, the rotation
// generators L_i, and the Runge-Lenz operators R_i, all as exact DiffOps.
// gamma = mu e^2 / hbar^2 folds the physical constants into one positive
// rational.

#include <stdexcept>

#include "hydra/diff_op.hpp"

namespace hydra {

struct Generators {
  GaussRational gamma;
  DiffOp T;
  std::array<DiffOp, 3> L;
  std::array<DiffOp, 3> R;
};

inline DiffOp rotation_generator(int i, int j) {
  // x_i d_j - x_j d_i
  return DiffOp::coordinate(i) * DiffOp::partial(j) - DiffOp::coordinate(j) * DiffOp::partial(i);
}

inline Generators build_generators(const GaussRational& gamma) {
  if (!gamma.is_real() || !(gamma.re > 0))
    throw std::invalid_argument("gamma must be a positive real rational (attractive potential)");

  Generators g;
  g.gamma = gamma;

  g.L[0] = rotation_generator(1, 2);  // x2 d3 - x3 d2
  g.L[1] = rotation_generator(2, 0);  // x3 d1 - x1 d3
  g.L[2] = rotation_generator(0, 1);  // x1 d2 - x2 d1

  // T = -Laplace - 2 gamma / r
  DiffOp lap = DiffOp::zero();
  for (int i = 0; i < 3; ++i) lap += DiffOp::partial(i) * DiffOp::partial(i);
  g.T = -lap - DiffOp::from_coeff(CoeffElem::r_power(-1, GaussRational(2) * gamma));

  // R_1 = i (L3 d2 - L2 d3 - d1 + gamma x1 / r), and cyclic
  const GaussRational I = GaussRational::i();
  auto runge_lenz = [&](const DiffOp& La, const DiffOp& Lb, int da, int db, int i) {
    DiffOp inner = La * DiffOp::partial(da) - Lb * DiffOp::partial(db) - DiffOp::partial(i);
    CoeffElem pot = CoeffElem::coordinate(i, gamma) * CoeffElem::r_power(-1);
    inner += DiffOp::from_coeff(pot);
    return I * inner;
  };
  g.R[0] = runge_lenz(g.L[2], g.L[1], 1, 2, 0);
  g.R[1] = runge_lenz(g.L[0], g.L[2], 2, 0, 1);
  g.R[2] = runge_lenz(g.L[1], g.L[0], 0, 1, 2);

  return g;
}

}  // namespace hydra
