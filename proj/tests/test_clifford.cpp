#include <doctest.h>

#include <random>

#include "topoquench/clifford.hpp"
#include "topoquench/models.hpp"

using namespace tq;
using Eigen::MatrixXcd;

namespace {

double anticomm_residual(const MatrixRep& rep) {
  double worst = 0;
  const int ng = rep.generators();
  for (int j = 0; j < ng; ++j)
    for (int l = 0; l < ng; ++l) {
      MatrixXcd ac = rep.gamma[j] * rep.gamma[l] + rep.gamma[l] * rep.gamma[j];
      if (j == l) ac -= 2.0 * rep.id;
      worst = std::max(worst, ac.cwiseAbs().maxCoeff());
    }
  return worst;
}

Coeffs random_coeffs(std::mt19937& rng, int n) {
  Coeffs c;
  c.n = n;
  for (int i = 0; i < n; ++i)
    c[i] = 2.0 * (rng() / 4294967296.0) - 1.0;
  return c;
}

}  // namespace

TEST_CASE("gamma matrices satisfy the Clifford algebra") {
  for (int rank : {2, 4}) {
    MatrixRep rep = build_rep(rank);
    CHECK(anticomm_residual(rep) < 1e-14);
    for (const auto& g : rep.gamma) {
      CHECK((g - g.adjoint()).cwiseAbs().maxCoeff() < 1e-15);               // Hermitian
      CHECK((g * g.adjoint() - rep.id).cwiseAbs().maxCoeff() < 1e-15);     // unitary
    }
  }
  CHECK_THROWS_AS(build_rep(3), UnsupportedRank);
}

TEST_CASE("convention pins gamma_0") {
  MatrixRep rep = build_rep(2);
  CHECK(rep.gamma[0](0, 0).real() == doctest::Approx(1.0));
  CHECK(rep.gamma[0](1, 1).real() == doctest::Approx(-1.0));
  CHECK(std::abs(rep.gamma[0](0, 1)) == doctest::Approx(0.0));
  MatrixRep rep4 = build_rep(4);
  // {g_0, g_0} = 2I and {g_1, g_2} = 0 spot checks
  CHECK(((rep4.gamma[0] * rep4.gamma[0]) - rep4.id).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((rep4.gamma[1] * rep4.gamma[2] + rep4.gamma[2] * rep4.gamma[1])
            .cwiseAbs()
            .maxCoeff() < 1e-15);
}

TEST_CASE("hamiltonian squares to eps^2 and has symmetric spectrum") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int rank = trial % 2 ? 2 : 4;
    MatrixRep rep = build_rep(rank);
    Coeffs h = random_coeffs(rng, rep.generators());
    MatrixXcd m = hamiltonian(rep, h);
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    const double e2 = h.norm2();
    CHECK((m * m - e2 * rep.id).cwiseAbs().maxCoeff() < 1e-13);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m);
    for (int i = 0; i < rank; ++i)
      CHECK(std::abs(std::abs(es.eigenvalues()(i)) - std::sqrt(e2)) < 1e-12);
  }
  MatrixRep rep = build_rep(2);
  Coeffs bad;
  bad.n = 5;
  CHECK_THROWS_AS(hamiltonian(rep, bad), DimensionMismatch);
}

TEST_CASE("hamiltonian oracle: h = (0,1,1,1,0) has eigenvalues +-sqrt(3) twice") {
  MatrixRep rep = build_rep(4);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(
      hamiltonian(rep, make_coeffs({0, 1, 1, 1, 0})));
  const double r3 = std::sqrt(3.0);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-r3));
  CHECK(es.eigenvalues()(1) == doctest::Approx(-r3));
  CHECK(es.eigenvalues()(2) == doctest::Approx(r3));
  CHECK(es.eigenvalues()(3) == doctest::Approx(r3));
}

TEST_CASE("quench_transform rotates gamma_q onto gamma_0") {
  for (int rank : {2, 4}) {
    MatrixRep rep = build_rep(rank);
    for (int q = 0; q < rep.generators(); ++q) {
      QuenchFrame f = quench_transform(rep, q);
      CHECK((f.w * f.w.adjoint() - rep.id).cwiseAbs().maxCoeff() < 1e-13);
      CHECK((f.w * rep.gamma[q] * f.w.adjoint() - rep.gamma[0]).cwiseAbs().maxCoeff() <
            1e-13);
      if (q != 0)
        CHECK((f.w * rep.gamma[0] * f.w.adjoint() + rep.gamma[q])
                  .cwiseAbs()
                  .maxCoeff() < 1e-13);
      // Induced coefficient map reproduces conjugation of the Hamiltonian.
      std::mt19937 rng(11 * rank + q);
      Coeffs h = random_coeffs(rng, rep.generators());
      Eigen::VectorXd hv(rep.generators());
      for (int i = 0; i < h.n; ++i) hv(i) = h[i];
      Eigen::VectorXd hp = f.coeff_map * hv;
      Coeffs h2;
      h2.n = h.n;
      for (int i = 0; i < h.n; ++i) h2[i] = hp(i);
      CHECK((f.w * hamiltonian(rep, h) * f.w.adjoint() - hamiltonian(rep, h2))
                .cwiseAbs()
                .maxCoeff() < 1e-12);
      // Orthogonality of the coefficient map.
      CHECK((f.coeff_map.transpose() * f.coeff_map -
             Eigen::MatrixXd::Identity(rep.generators(), rep.generators()))
                .cwiseAbs()
                .maxCoeff() < 1e-14);
    }
    CHECK((quench_transform(rep, 0).w - rep.id).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("anti-unitary symmetry commutes with every zoo Hamiltonian") {
  SymmetryOp op = symmetry_op();
  MatrixRep rep = build_rep(4);
  std::mt19937 rng(23);
  ModelParams p;
  for (const char* name : {"chiral3d", "aii3d_z2"}) {
    Model m = Model::from_name(name, p);
    for (int trial = 0; trial < 50; ++trial) {
      Vec3 k{2 * M_PI * (rng() / 4294967296.0) - M_PI,
             2 * M_PI * (rng() / 4294967296.0) - M_PI,
             2 * M_PI * (rng() / 4294967296.0) - M_PI};
      MatrixXcd h = hamiltonian(rep, m.eval(k));
      // P H P^-1 = H with P = U K: U conj(H) U^dag = H
      CHECK((op.u * h.conjugate() * op.u.adjoint() - h).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
  // Kramers-like orthogonality <psi | P psi> = 0.
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::Vector4cd psi;
    for (int i = 0; i < 4; ++i)
      psi(i) = std::complex<double>(rng() / 4294967296.0 - 0.5,
                                    rng() / 4294967296.0 - 0.5);
    psi.normalize();
    CHECK(std::abs(psi.dot(op.apply(psi))) < 1e-13);
  }
}
