#pragma once

#include <optional>
#include <string>

#include "topoquench/coeffs.hpp"

namespace tq {

enum class ModelKind { Aiii1d, Qah2d, Chiral3d, Aii3dZ2, HighChern2d };

struct ModelParams {
  double m_z = 1.0;
  double t_0 = 1.0;
  double t_so = 1.0;
  double t_so_x = 1.0;  // 2D QAH only
  double t_so_y = 1.0;  // 2D QAH only
  double m_x = 0.0;     // 2D QAH only
  double m_y = 0.0;     // 2D QAH only
  double m = 1.8;       // 3D AII only
};

/// Momentum-space coefficient field h(k) of one zoo model.  The paper's
/// (h_z, h_x, h_y) order is remapped so that component 0 is always the
/// quench-band axis.
class Model {
 public:
  Model(ModelKind kind, ModelParams p) : kind_(kind), p_(p) {}

  static Model from_name(const std::string& name, const ModelParams& p);
  std::string name() const;

  ModelKind kind() const { return kind_; }
  const ModelParams& params() const { return p_; }

  int dim() const;    // momentum-space dimension
  int ncomp() const;  // number of coefficients (2, 3, 4 or 5)
  int rank() const { return ncomp() <= 3 ? 2 : 4; }
  bool z2() const { return kind_ == ModelKind::Aii3dZ2; }

  Coeffs eval(const Vec3& k) const;

 private:
  ModelKind kind_;
  ModelParams p_;
};

/// Analytic ground truth: the paper's phase diagram for a parameter point.
struct GroundTruth {
  std::optional<int> invariant;  // integer for Z-type, +-1 for Z2; nullopt on a boundary
  bool trivial = false;
};

GroundTruth ground_truth(const Model& m);

/// sgn[(m-3t0)(m-t0)^3(m+t0)^3(m+3t0)] for the 3D AII model.
int chern_simons_sign(double m, double t_0);

}  // namespace tq
