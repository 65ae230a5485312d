#include "topoquench/evolve.hpp"

#include <cmath>

#include "topoquench/errors.hpp"

namespace tq {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using cplx = std::complex<double>;

// Dormand-Prince 5(4) with FSAL.
struct Dopri5 {
  const MatrixXcd& h_static;
  const MatrixXcd& drive;  // gamma_q
  double g;

  VectorXcd deriv(double t, const VectorXcd& y) const {
    return cplx(0, -1) * (h_static * y + (g / t) * (drive * y));
  }

  // Advances y from t to t_end, adapting the step size.  Returns false on
  // step-size underflow.
  bool advance(double& t, VectorXcd& y, double t_end, double rtol, double atol,
               double& h, VectorXcd& k1, bool& k1_valid) const {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                            e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640,
                            e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    while (t < t_end) {
      if (!k1_valid) {
        k1 = deriv(t, y);
        k1_valid = true;
      }
      double hs = std::min(h, t_end - t);
      if (hs < 1e-14 * std::max(1.0, t)) {
        t = t_end;
        return true;
      }
      for (;;) {
        VectorXcd k2 = deriv(t + hs / 5, y + hs * (a21 * k1));
        VectorXcd k3 = deriv(t + 0.3 * hs, y + hs * (a31 * k1 + a32 * k2));
        VectorXcd k4 = deriv(t + 0.8 * hs, y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
        VectorXcd k5 = deriv(t + 8.0 / 9 * hs,
                             y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        VectorXcd y6 = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        VectorXcd k6 = deriv(t + hs, y6);
        VectorXcd y5 = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        VectorXcd k7 = deriv(t + hs, y5);
        VectorXcd err_v =
            hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double err = 0;
        for (int i = 0; i < y.size(); ++i) {
          const double sc = atol + rtol * std::max(std::abs(y(i)), std::abs(y5(i)));
          const double r = std::abs(err_v(i)) / sc;
          err += r * r;
        }
        err = std::sqrt(err / y.size());
        if (err <= 1.0) {
          t += hs;
          y = y5;
          k1 = k7;  // FSAL
          h = hs * std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 1.0, 5.0);
          break;
        }
        hs *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        if (hs < 1e-15 * std::max(1.0, t)) return false;
      }
    }
    return true;
  }
};

}  // namespace

Trajectory integrate(const Coeffs& field, const QuenchSpec& spec,
                     const EvolutionConfig& cfg) {
  if (!(spec.g > 0)) throw InvalidField("slow-quench oracle needs g > 0");
  if (cfg.lambda < 10) throw BadStart("lambda too small");
  const int rank = field.n <= 3 ? 2 : 4;
  MatrixRep rep = build_rep(rank);
  if (spec.axis < 0 || spec.axis >= field.n)
    throw DimensionMismatch("quench axis outside field");
  const double eps = field.eps();
  if (!(eps > 0)) throw GaplessPoint("eps <= 0");

  const MatrixXcd h_static = hamiltonian(rep, field);
  const MatrixXcd& drive = rep.gamma[spec.axis];
  const double t_start = spec.g / (cfg.lambda * std::max(eps, 1.0));

  // Ground subspace of the t->0+ drive is W^dag applied to the lower
  // coordinate sector; polarize toward the chosen basis vector there, then
  // project onto the instantaneous ground subspace at t_start.
  QuenchFrame frame = quench_transform(rep, spec.axis);
  const int nlow = rank / 2;
  const int target = cfg.initial_index >= 0 ? cfg.initial_index : rank / 2;
  const VectorXcd ref = frame.w.adjoint() * VectorXcd::Unit(rank, target);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h_static + (spec.g / t_start) * drive);
  VectorXcd psi0 = VectorXcd::Zero(rank);
  for (int j = 0; j < nlow; ++j) {
    VectorXcd v = es.eigenvectors().col(j);
    psi0 += v * v.dot(ref);
  }
  const double ov = psi0.norm();
  if (ov * ov < 1 - 1e-4)
    throw BadStart("start time too late to polarize the initial state");
  psi0 /= ov;

  Trajectory traj;
  traj.g = spec.g;
  traj.axis = spec.axis;
  traj.eps = eps;
  traj.samples_per_halfperiod = cfg.samples_per_halfperiod;
  traj.sample_dt = (M_PI / eps) / cfg.samples_per_halfperiod;
  traj.nspin = rep.generators();

  double t_max = cfg.t_max;
  if (t_max <= 0)
    t_max = 2000.0 * spec.g / eps + 120.0 * M_PI / eps;
  const long nsteps = std::lround(std::ceil((t_max - t_start) / traj.sample_dt));

  Dopri5 stepper{h_static, drive, spec.g};
  VectorXcd y = psi0, k1;
  bool k1_valid = false;
  double t = t_start, h = t_start / 50;
  traj.t.reserve(nsteps + 1);
  traj.psi.reserve(nsteps + 1);
  traj.spin.reserve(nsteps + 1);
  auto record = [&](double tt, const VectorXcd& yy) {
    traj.t.push_back(tt);
    traj.psi.push_back(yy);
    std::array<double, 5> sp{};
    for (int i = 0; i < traj.nspin; ++i)
      sp[i] = std::real(yy.dot(rep.gamma[i] * yy));
    traj.spin.push_back(sp);
  };
  record(t, y);
  for (long j = 1; j <= nsteps; ++j) {
    const double t_next = t_start + j * traj.sample_dt;
    if (!stepper.advance(t, y, t_next, cfg.rtol, cfg.atol, h, k1, k1_valid))
      throw StiffnessFailure("step size underflow at t = " + std::to_string(t));
    record(t, y);
  }
  return traj;
}

Coeffs finite_tasp(const Trajectory& traj, double t_a, double t_b) {
  if (traj.t.empty()) throw WindowError("empty trajectory");
  const double t0 = traj.t.front(), dt = traj.sample_dt;
  long ia = std::lround((t_a - t0) / dt);
  long ib = std::lround((t_b - t0) / dt);
  const long n = static_cast<long>(traj.t.size());
  if (ia < 0 || ib >= n || ib <= ia) throw WindowError("window outside trajectory");
  if ((ib - ia) % traj.samples_per_halfperiod != 0)
    throw WindowError("window must span integer half-periods");
  Coeffs out;
  out.n = traj.nspin;
  for (int c = 0; c < traj.nspin; ++c) {
    double acc = 0.5 * (traj.spin[ia][c] + traj.spin[ib][c]);
    for (long j = ia + 1; j < ib; ++j) acc += traj.spin[j][c];
    out[c] = acc / (ib - ia);
  }
  return out;
}

Coeffs tail_tasp(const Trajectory& traj, int halfperiods) {
  const long n = static_cast<long>(traj.t.size());
  const long len = static_cast<long>(halfperiods) * traj.samples_per_halfperiod;
  if (len + 1 > n) throw WindowError("trajectory shorter than requested window");
  const long ib = n - 1;
  return finite_tasp(traj, traj.t[ib - len], traj.t[ib]);
}

double population(const Trajectory& traj, const Coeffs& field, bool lower) {
  const int rank = field.n <= 3 ? 2 : 4;
  MatrixRep rep = build_rep(rank);
  const Eigen::MatrixXcd hf = hamiltonian(rep, field);
  const double eps = field.eps();
  const Eigen::VectorXcd& psi = traj.psi.back();
  const Eigen::MatrixXcd proj =
      0.5 * (Eigen::MatrixXcd::Identity(rank, rank) + (lower ? -1.0 : 1.0) * hf / eps);
  return std::real(psi.dot(proj * psi));
}

}  // namespace tq
