#include <doctest.h>

#include <cmath>
#include <random>

#include "topoquench/clifford.hpp"
#include "topoquench/lz.hpp"

using namespace tq;

TEST_CASE("transition probability: limits and frozen values") {
  // Sudden limit is the plain ground-state overlap (1 + h_0/eps)/2.
  CHECK(transition_probability(0, 0.0, 1.0) == doctest::Approx(0.5));
  CHECK(transition_probability(0, -0.6, 1.0) == doctest::Approx(0.2));
  CHECK(transition_probability(0, 1.0, 1.0) == doctest::Approx(1.0));

  // Frozen reference: g = 1 on the band-inversion surface,
  // P_d = (1 - e^{-2pi})/(1 - e^{-4pi}).
  CHECK(transition_probability(1.0, 0.0, 1.0) ==
        doctest::Approx(0.9981360381).epsilon(1e-9));
  // scale invariance in (h_0, eps)
  CHECK(transition_probability(1.0, 0.2, 0.5) ==
        doctest::Approx(transition_probability(1.0, 0.4, 1.0)).epsilon(1e-14));

  // adiabatic limit
  CHECK(transition_probability(50.0, -0.9, 1.0) == doctest::Approx(1.0));
  // edge cases of rho
  CHECK(transition_probability(1.0, -1.0, 1.0) == doctest::Approx(0.0));
  CHECK(transition_probability(1.0, 1.0, 1.0) == doctest::Approx(1.0));

  CHECK_THROWS_AS(transition_probability(1.0, 0.0, 0.0), GaplessPoint);
  CHECK_THROWS_AS(transition_probability(1.0, 2.0, 1.0), InvalidField);
  CHECK_THROWS_AS(transition_probability(-1.0, 0.0, 1.0), InvalidField);
}

TEST_CASE("transition probability increases with h_0/eps") {
  for (double g : {0.0, 0.1, 1.0, 5.0}) {
    double prev = -1;
    for (int i = 0; i <= 40; ++i) {
      const double rho = -1 + 2.0 * i / 40;
      const double p = transition_probability(g, rho, 1.0);
      CHECK(p >= prev);
      if (p < 1 - 1e-12) CHECK(p > prev);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
      prev = p;
    }
  }
}

TEST_CASE("on-surface prefactor c(g)") {
  CHECK(prefactor_c(1.0) == doctest::Approx(-0.9962720762).epsilon(1e-9));
  CHECK(prefactor_c(0.0) == doctest::Approx(0.0));
  // c(g) is exactly the band imbalance where the inversion surface sits
  for (double g : {0.05, 0.4, 1.0, 3.0})
    CHECK(band_imbalance(g, 0.0, 1.0) == doctest::Approx(prefactor_c(g)).epsilon(1e-13));
}

TEST_CASE("spin-inversion level rho*(g)") {
  for (double g : {0.05, 0.3, 1.0, 4.0, 40.0}) {
    const double r = sis_level(g);
    CHECK(r > -1.0);
    CHECK(r < 0.0);
    // defining property: P_u = P_d there
    CHECK(band_imbalance(g, r, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
    // agreement with the naive expression where it does not overflow
    if (g < 4)
      CHECK(r == doctest::Approx(-std::log(std::cosh(2 * M_PI * g)) /
                                 (2 * M_PI * g)).epsilon(1e-12));
  }
  // slow quench pushes the level toward -1 as -1 + ln2/(2 pi g)
  CHECK(sis_level(40.0) ==
        doctest::Approx(-1.0 + M_LN2 / (2 * M_PI * 40)).epsilon(1e-12));
  CHECK_THROWS_AS(sis_level(0.0), NoSis);
  CHECK_THROWS_AS(sis_level(-1.0), NoSis);
}

TEST_CASE("tasp obeys the imbalance identity on any axis") {
  std::mt19937 rng(99);
  auto uni = [&] { return 2.0 * (rng() / 4294967296.0) - 1.0; };
  for (int trial = 0; trial < 30; ++trial) {
    const int n = trial % 2 ? 2 : 5;
    Coeffs h;
    h.n = n;
    for (int i = 0; i < n; ++i) h[i] = uni();
    if (h.eps() < 0.2) continue;
    QuenchSpec spec{trial % n, 0.2 + std::abs(uni())};
    Coeffs t = tasp(h, spec);
    const double s = band_imbalance(spec.g, h[spec.axis], h.eps());
    for (int i = 0; i < n; ++i)
      CHECK(t[i] == doctest::Approx(s * h[i] / h.eps()).epsilon(1e-12));
    // covariance: rotating the field with the frame map rotates the tasp
    MatrixRep rep = build_rep(n <= 3 ? 2 : 4);
    QuenchFrame f = quench_transform(rep, spec.axis);
    Eigen::VectorXd hv(n), tv(n);
    for (int i = 0; i < n; ++i) hv(i) = h[i], tv(i) = t[i];
    Eigen::VectorXd hp = f.coeff_map * hv;
    Coeffs h2;
    h2.n = n;
    for (int i = 0; i < n; ++i) h2[i] = hp(i);
    Coeffs t2 = tasp(h2, QuenchSpec{0, spec.g});
    Eigen::VectorXd tp = f.coeff_map * tv;
    for (int i = 0; i < n; ++i)
      CHECK(t2[i] == doctest::Approx(tp(i)).epsilon(1e-10));
  }
}

TEST_CASE("final state: orthonormal branch vectors and weight budget") {
  std::mt19937 rng(41);
  auto uni = [&] { return 2.0 * (rng() / 4294967296.0) - 1.0; };
  MatrixRep rep = build_rep(4);
  for (int trial = 0; trial < 40; ++trial) {
    Coeffs h = make_coeffs({uni(), uni(), uni(), uni(), uni()});
    if (h.eps() < 0.2) continue;
    const double g = 0.2 + std::abs(uni());
    LzResult r = final_state(h, g);
    CHECK(r.p_d + r.p_u == doctest::Approx(1.0));
    CHECK(std::norm(r.w_p1) + std::norm(r.w_p2) == doctest::Approx(r.p_u).epsilon(1e-12));
    CHECK(r.w_m1 * r.w_m1 == doctest::Approx(r.p_d).epsilon(1e-12));

    Eigen::MatrixXcd hm = hamiltonian(rep, h);
    CHECK((hm * r.psi_p1 - r.eps * r.psi_p1).norm() < 1e-10);
    CHECK((hm * r.psi_p2 - r.eps * r.psi_p2).norm() < 1e-10);
    CHECK((hm * r.psi_m1 + r.eps * r.psi_m1).norm() < 1e-10);
    CHECK(r.psi_p1.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(r.psi_p1.dot(r.psi_p2)) < 1e-12);
    CHECK(std::abs(r.psi_p1.dot(r.psi_m1)) < 1e-12);

    // The dephased average must land on the closed-form tasp.
    Coeffs t = tasp(h, QuenchSpec{0, g});
    for (int i = 0; i < 5; ++i)
      CHECK(r.tasp[i] == doctest::Approx(t[i]).epsilon(1e-10));
  }
}

TEST_CASE("final state: anti-unitary partner structure") {
  SymmetryOp op = symmetry_op();
  Coeffs h = make_coeffs({0.3, 0.5, -0.2, 0.4, 0.1});
  LzResult r = final_state(h, 1.0);
  // P maps the upper band to itself and pairs the two branch vectors.
  Eigen::Vector4cd pp1 = op.apply(r.psi_p1);
  CHECK(std::abs(std::abs(pp1.dot(r.psi_p2)) - 1.0) < 1e-12);
  CHECK(std::abs(pp1.dot(r.psi_p1)) < 1e-12);
}

TEST_CASE("final state: degenerate fallback at h_0 = -eps") {
  Coeffs h = make_coeffs({-1.0, 0, 0, 0, 0});
  LzResult r = final_state(h, 1.0);
  CHECK(r.degenerate_fallback);
  CHECK(r.p_d == doctest::Approx(0.0));
  // deep inverted region, fully adiabatic: tasp = -h_0/eps * sign pattern
  CHECK(r.tasp[0] == doctest::Approx(1.0 * band_imbalance(1.0, -1.0, 1.0)* -1.0));
}

TEST_CASE("two-state reduction") {
  Coeffs h = make_coeffs({0.3, 0.5, -0.2, 0.4, 0.1});
  TwoState ts = two_state_reduce(h);
  CHECK(ts.h_0 == doctest::Approx(0.3));
  CHECK(ts.h == doctest::Approx(h.so_norm()));
  CHECK(ts.eps() == doctest::Approx(h.eps()));
  // the reduced problem reproduces the rank-4 transition probability
  CHECK(transition_probability(0.7, ts.h_0, ts.eps()) ==
        doctest::Approx(final_state(h, 0.7).p_d));
  Coeffs bad = make_coeffs({1.0, 0.5});
  CHECK_THROWS_AS(two_state_reduce(bad), DimensionMismatch);
}
