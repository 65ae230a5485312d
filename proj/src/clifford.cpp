#include "topoquench/clifford.hpp"

namespace tq {

namespace {

using Eigen::Matrix2cd;
using Eigen::MatrixXcd;
using cplx = std::complex<double>;

Matrix2cd pauli(int i) {
  Matrix2cd m;
  switch (i) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

MatrixXcd kron(const Matrix2cd& a, const Matrix2cd& b) {
  MatrixXcd m(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return m;
}

}  // namespace

MatrixRep build_rep(int rank) {
  MatrixRep rep;
  rep.rank = rank;
  if (rank == 2) {
    rep.gamma = {pauli(3), pauli(1), pauli(2)};
    rep.id = pauli(0);
  } else if (rank == 4) {
    rep.gamma = {kron(pauli(3), pauli(0)), kron(pauli(1), pauli(1)),
                 kron(pauli(1), pauli(2)), kron(pauli(1), pauli(3)),
                 kron(pauli(2), pauli(0))};
    rep.id = MatrixXcd::Identity(4, 4);
  } else {
    throw UnsupportedRank("matrix rank must be 2 or 4");
  }
  return rep;
}

Eigen::MatrixXcd hamiltonian(const MatrixRep& rep, const Coeffs& h) {
  if (h.n < 1 || h.n > rep.generators())
    throw DimensionMismatch("coefficient count does not fit representation");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rep.rank, rep.rank);
  for (int j = 0; j < h.n; ++j) m += h[j] * rep.gamma[j];
  return m;
}

QuenchFrame quench_transform(const MatrixRep& rep, int axis) {
  if (axis < 0 || axis >= rep.generators())
    throw DimensionMismatch("quench axis outside generator range");
  const int ng = rep.generators();
  QuenchFrame f;
  f.coeff_map = Eigen::MatrixXd::Identity(ng, ng);
  if (axis == 0) {
    f.w = rep.id;
    return f;
  }
  // W = exp((pi/4) g0 gq) = cos(pi/4) I + sin(pi/4) g0 gq, since (g0 gq)^2 = -I.
  // Then W gq W^dag = g0 and W g0 W^dag = -gq; other generators commute with g0 gq.
  const double c = std::sqrt(0.5);
  f.w = c * rep.id + c * (rep.gamma[0] * rep.gamma[axis]);
  f.coeff_map(0, 0) = 0;
  f.coeff_map(axis, axis) = 0;
  f.coeff_map(0, axis) = 1;   // h'_0 = h_axis
  f.coeff_map(axis, 0) = -1;  // h'_axis = -h_0
  return f;
}

SymmetryOp symmetry_op() {
  SymmetryOp op;
  op.u = cplx(0, 1) * kron(pauli(3), pauli(2));
  return op;
}

}  // namespace tq
