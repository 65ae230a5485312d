#pragma once

#include <Eigen/Dense>
#include <vector>

#include "topoquench/coeffs.hpp"
#include "topoquench/errors.hpp"

namespace tq {

/// Fixed-convention representation of the Pauli / Gamma matrices.
///
/// rank 2: gamma = {sigma_z, sigma_x, sigma_y}
/// rank 4: gamma_0 = sz x s0, gamma_{1,2,3} = sx x s{x,y,z}, gamma_4 = sy x s0
struct MatrixRep {
  int rank = 0;
  std::vector<Eigen::MatrixXcd> gamma;
  Eigen::MatrixXcd id;

  int generators() const { return static_cast<int>(gamma.size()); }
};

MatrixRep build_rep(int rank);

/// H = sum_j h_j gamma_j. h may use any prefix of the generator list.
Eigen::MatrixXcd hamiltonian(const MatrixRep& rep, const Coeffs& h);

/// Clifford rotation taking gamma_axis to gamma_0, together with the induced
/// orthogonal map O on coefficient vectors: H' = W H W^dag = sum_j (O h)_j gamma_j.
struct QuenchFrame {
  Eigen::MatrixXcd w;
  Eigen::MatrixXd coeff_map;
};

QuenchFrame quench_transform(const MatrixRep& rep, int axis);

/// Anti-unitary symmetry P = i sz x sy K of the rank-4 family.
struct SymmetryOp {
  Eigen::Matrix4cd u;
  Eigen::Vector4cd apply(const Eigen::Vector4cd& psi) const {
    return u * psi.conjugate();
  }
};

SymmetryOp symmetry_op();

}  // namespace tq
