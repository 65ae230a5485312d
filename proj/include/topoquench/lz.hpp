#pragma once

#include <Eigen/Dense>
#include <complex>

#include "topoquench/clifford.hpp"
#include "topoquench/coeffs.hpp"

namespace tq {

/// One g/t quench: drive (h_q + g/t) gamma_q from a trivial Hamiltonian at
/// t=0+ to the static field at t=inf.  g = 0 is the sudden limit.
struct QuenchSpec {
  int axis = 0;
  double g = 1.0;
  bool sudden() const { return g == 0.0; }
};

/// Final lower-band population P_d after the g/t sweep.
/// g = 0 returns the analytic sudden limit (1 + h_0/eps)/2.
double transition_probability(double g, double h_0, double eps);

/// P_u - P_d = 1 - 2 P_d.
double band_imbalance(double g, double h_0, double eps);

/// On-BIS TASP prefactor c = (1 - cosh 2 pi g)/sinh 2 pi g = -tanh(pi g).
double prefactor_c(double g);

/// SIS level rho* = -ln(cosh 2 pi g)/(2 pi g): P_u = P_d exactly at h_0/eps = rho*.
double sis_level(double g);

/// Time-averaged spin polarization, Eq. <gamma_i> = (P_u - P_d) h_i / eps
/// generalized to an arbitrary quench axis via the Clifford frame rotation.
Coeffs tasp(const Coeffs& field, const QuenchSpec& spec);

/// Closed-form final state of the rank-4 problem, initial state (0,0,1,0)^T.
/// The undetermined relative phase delta multiplies the whole upper-band part
/// and never enters any exported quantity.
struct LzResult {
  double p_d = 0, p_u = 0, eps = 0;
  std::complex<double> w_p1, w_p2;  // weights on psi_{+1}, psi_{+2}
  double w_m1 = 0;                  // weight on psi_{-1}
  Eigen::Vector4cd psi_p1, psi_p2, psi_m1;
  bool degenerate_fallback = false;  // eps + h_0 ~ 0: numerical eigenbasis used
  Coeffs tasp;
};

LzResult final_state(const Coeffs& field, double g);

/// Decoupled two-level parameters of the rank-4 problem (Appendix-style
/// reduction): effective (h_0, h) with h = |h_so|.
struct TwoState {
  double h_0 = 0, h = 0;
  double eps() const { return std::hypot(h_0, h); }
};

TwoState two_state_reduce(const Coeffs& field);

}  // namespace tq
