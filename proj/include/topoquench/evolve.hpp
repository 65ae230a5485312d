#pragma once

#include <Eigen/Dense>
#include <vector>

#include "topoquench/clifford.hpp"
#include "topoquench/coeffs.hpp"
#include "topoquench/lz.hpp"

namespace tq {

/// Brute-force integration of i d/dt psi = [H_static + (g/t) gamma_q] psi.
/// The t=0+ singularity is regularized by starting at finite
/// t_start = g / (lambda * max(eps, 1)) in the instantaneous ground state.
struct EvolutionConfig {
  double lambda = 1e3;            // g/t dominates the static field by this factor at t_start
  double t_max = 0;               // 0: choose automatically from g and eps
  double rtol = 1e-9;
  double atol = 1e-12;
  int samples_per_halfperiod = 16;  // uniform sampling grid, halfperiod = pi/eps
  int initial_index = -1;         // basis state to polarize toward; -1: rank/2
};

struct Trajectory {
  double g = 0;
  int axis = 0;
  double eps = 0;
  double sample_dt = 0;
  int samples_per_halfperiod = 0;
  std::vector<double> t;
  std::vector<Eigen::VectorXcd> psi;
  std::vector<std::array<double, 5>> spin;  // <gamma_i(t)>, one per generator
  int nspin = 0;
};

Trajectory integrate(const Coeffs& field, const QuenchSpec& spec,
                     const EvolutionConfig& cfg);

/// Trapezoidal time average of <gamma_i(t)> over [t_a, t_b].  The window is
/// snapped to sample nodes and must span an integer number of half-periods.
Coeffs finite_tasp(const Trajectory& traj, double t_a, double t_b);

/// Finite average over the last `halfperiods` half-periods of the run.
Coeffs tail_tasp(const Trajectory& traj, int halfperiods);

/// Band population of the final static Hamiltonian at the last sample.
double population(const Trajectory& traj, const Coeffs& field, bool lower);

}  // namespace tq
