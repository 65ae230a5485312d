#include "topoquench/models.hpp"

#include <cmath>

#include "topoquench/errors.hpp"

namespace tq {

Model Model::from_name(const std::string& name, const ModelParams& p) {
  if (name == "aiii1d") return Model(ModelKind::Aiii1d, p);
  if (name == "qah2d") return Model(ModelKind::Qah2d, p);
  if (name == "chiral3d") return Model(ModelKind::Chiral3d, p);
  if (name == "aii3d_z2") return Model(ModelKind::Aii3dZ2, p);
  if (name == "highchern2d") return Model(ModelKind::HighChern2d, p);
  throw ConfigError("unknown model: " + name);
}

std::string Model::name() const {
  switch (kind_) {
    case ModelKind::Aiii1d: return "aiii1d";
    case ModelKind::Qah2d: return "qah2d";
    case ModelKind::Chiral3d: return "chiral3d";
    case ModelKind::Aii3dZ2: return "aii3d_z2";
    case ModelKind::HighChern2d: return "highchern2d";
  }
  return "?";
}

int Model::dim() const {
  switch (kind_) {
    case ModelKind::Aiii1d: return 1;
    case ModelKind::Qah2d:
    case ModelKind::HighChern2d: return 2;
    default: return 3;
  }
}

int Model::ncomp() const {
  switch (kind_) {
    case ModelKind::Aiii1d: return 2;
    case ModelKind::Qah2d:
    case ModelKind::HighChern2d: return 3;
    case ModelKind::Chiral3d: return 4;
    case ModelKind::Aii3dZ2: return 5;
  }
  return 0;
}

Coeffs Model::eval(const Vec3& k) const {
  const double kx = k[0], ky = k[1], kz = k[2];
  Coeffs c;
  switch (kind_) {
    case ModelKind::Aiii1d:
      c.n = 2;
      c[0] = p_.m_z - p_.t_0 * std::cos(kx);
      c[1] = p_.t_so * std::sin(kx);
      break;
    case ModelKind::Qah2d:
      c.n = 3;
      c[0] = p_.m_z - p_.t_0 * std::cos(kx) - p_.t_0 * std::cos(ky);
      c[1] = p_.m_x + p_.t_so_x * std::sin(kx);
      c[2] = p_.m_y + p_.t_so_y * std::sin(ky);
      break;
    case ModelKind::HighChern2d:
      c.n = 3;
      c[0] = p_.m_z - p_.t_0 * std::cos(2 * kx) - p_.t_0 * std::cos(2 * ky);
      c[1] = p_.t_so * std::sin(2 * kx);
      c[2] = p_.t_so * std::sin(2 * ky);
      break;
    case ModelKind::Chiral3d:
      c.n = 4;
      c[0] = p_.m_z - p_.t_0 * (std::cos(kx) + std::cos(ky) + std::cos(kz));
      c[1] = p_.t_so * std::sin(kx);
      c[2] = p_.t_so * std::sin(ky);
      c[3] = p_.t_so * std::sin(kz);
      break;
    case ModelKind::Aii3dZ2:
      c.n = 5;
      c[0] = p_.m - p_.t_0 * (std::cos(kx) + std::cos(ky) + std::cos(kz));
      c[1] = p_.t_so * std::sin(ky + kz - kx);
      c[2] = p_.t_so * std::sin(kx + kz - ky);
      c[3] = p_.t_so * std::sin(kx + ky - kz);
      c[4] = p_.t_so * std::sin(kx + ky + kz);
      break;
  }
  return c;
}

int chern_simons_sign(double m, double t_0) {
  const double v = (m - 3 * t_0) * std::pow(m - t_0, 3) * std::pow(m + t_0, 3) *
                   (m + 3 * t_0);
  return sgn(v);
}

GroundTruth ground_truth(const Model& mod) {
  GroundTruth gt;
  const ModelParams& p = mod.params();
  const double mz = p.m_z, t0 = p.t_0;
  const double tol = 1e-12;
  auto on = [&](double x) { return std::abs(x) < tol; };
  switch (mod.kind()) {
    case ModelKind::Aiii1d:
      if (on(std::abs(mz) - t0)) return gt;
      gt.invariant = std::abs(mz) < t0 ? 1 : 0;
      break;
    case ModelKind::Qah2d:
      if (on(mz) || on(std::abs(mz) - 2 * t0)) return gt;
      gt.invariant = (mz > 0 && mz < 2 * t0) ? -1 : (mz > -2 * t0 && mz < 0) ? 1 : 0;
      break;
    case ModelKind::HighChern2d:
      if (on(mz) || on(std::abs(mz) - 2 * t0)) return gt;
      gt.invariant = (mz > 0 && mz < 2 * t0) ? -4 : (mz > -2 * t0 && mz < 0) ? 4 : 0;
      break;
    case ModelKind::Chiral3d:
      if (on(std::abs(mz) - t0) || on(std::abs(mz) - 3 * t0)) return gt;
      if (std::abs(mz) > 3 * t0)
        gt.invariant = 0;
      else if (std::abs(mz) < t0)
        gt.invariant = 2;
      else
        gt.invariant = -1;
      break;
    case ModelKind::Aii3dZ2: {
      const double m = p.m;
      if (on(m - 3 * t0) || on(m - t0) || on(m + t0) || on(m + 3 * t0)) return gt;
      gt.invariant = chern_simons_sign(m, t0);
      break;
    }
  }
  gt.trivial = gt.invariant && (*gt.invariant == 0 || (mod.z2() && *gt.invariant == 1));
  return gt;
}

}  // namespace tq
