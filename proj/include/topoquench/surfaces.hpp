#pragma once

#include <array>
#include <functional>
#include <vector>

#include "topoquench/coeffs.hpp"
#include "topoquench/errors.hpp"
#include "topoquench/lz.hpp"
#include "topoquench/models.hpp"

namespace tq {

using ScalarFn = std::function<double(const Vec3&)>;

/// Bound grid-sweep parallelism; 0 restores the hardware default.
void set_max_workers(int n);

/// Uniform closed grid over one Brillouin-zone period per axis: node i sits at
/// lo + i * spacing, i = 0..n-1, with node n-1 identified with node 0.
struct GridSpec {
  int n = 201;
  double lo = -M_PI;
  double period = 2 * M_PI;

  int cells() const { return n - 1; }
  double spacing() const { return period / (n - 1); }
  double coord(int i) const { return lo + i * spacing(); }
};

struct Loop {
  std::vector<Vec3> k;  // closed, oriented; last vertex connects to first
};

struct TriMesh {
  std::vector<Vec3> v;
  std::vector<std::array<int, 3>> tri;  // oriented: normal along the defining gradient
};

struct LoopCrossing {
  Vec3 k;
  int ds_sign = 0;  // sign of d(scalar)/ds along the loop orientation
  int loop = 0;     // index of the parent loop
};

/// Zeros of f(kx) over one period, ascending.  Throws EmptySurface if none.
std::vector<double> detect_zeros_1d(const ScalarFn& f, const GridSpec& g);

/// Closed zero contours of f on the 2D torus, each oriented so that the
/// tangent is the 90-degree counterclockwise rotation of grad f.
std::vector<Loop> contour_2d(const ScalarFn& f, const GridSpec& g);

/// Watertight triangle mesh of the zero set of f on the 3D torus (marching
/// tetrahedra on a 6-tet cell split), triangles oriented along grad f.
TriMesh isosurface_3d(const ScalarFn& f, const GridSpec& g);

/// Intersection rings of an isosurface mesh of f with the zero set of r,
/// oriented along grad r x grad f.
std::vector<Loop> mesh_section(const TriMesh& m, const ScalarFn& f,
                               const ScalarFn& r, const GridSpec& g);

/// Zero crossings of r along an oriented loop.
std::vector<LoopCrossing> loop_zeros(const Loop& loop, const ScalarFn& r,
                                     const GridSpec& g);

/// Normalized gradient of f (the surface normal k_perp for a defining scalar
/// that increases away from the inverted region).  Throws FlatField.
Vec3 kperp_dir(const ScalarFn& f, const Vec3& k, double step);

Vec3 num_grad(const ScalarFn& f, const Vec3& k, double step);

/// Bisection refinement of a sign change of f along the segment a -> b.
Vec3 refine_crossing(const ScalarFn& f, const Vec3& a, const Vec3& b);

/// Quench-dressed view of a model: the analytic scalars and vector fields the
/// surface hierarchy is built from.
class QuenchField {
 public:
  QuenchField(Model model, QuenchSpec spec) : model_(std::move(model)), spec_(spec) {}

  const Model& model() const { return model_; }
  const QuenchSpec& spec() const { return spec_; }

  Coeffs field(const Vec3& k) const { return model_.eval(k); }
  double eps(const Vec3& k) const { return model_.eval(k).eps(); }

  /// h_axis / eps, the scalar whose gradient orients every surface.
  double rho(const Vec3& k) const;

  /// P_u - P_d after the quench; zero on the SIS.
  double imbalance(const Vec3& k) const;

  Coeffs tasp(const Vec3& k) const;

  /// Defining scalars: h_axis for the BIS, h_axis/eps - rho*(g) for the SIS.
  ScalarFn bis_scalar() const;
  ScalarFn sis_scalar() const;

  /// Dynamical field component i as a scalar of k: value -<gamma_i>bar.
  ScalarFn value_fn(int i) const;
  /// Gradient component gtilde_i = -d<gamma_i>bar/dk_perp (step: grid spacing).
  ScalarFn gradient_fn(int i, double step) const;

 private:
  Model model_;
  QuenchSpec spec_;
};

}  // namespace tq
