#pragma once

#include <functional>
#include <string>
#include <vector>

#include "topoquench/surfaces.hpp"

namespace tq {

inline constexpr double kSignEta = 1e-6;

using Field2 = std::function<std::array<double, 2>(const Vec3&)>;
using Field3 = std::function<Vec3(const Vec3&)>;

/// 1D two-point extraction: |sgn(v_minus) - sgn(v_plus)| / 2, or the signed
/// half-difference when signed_version is set.
int winding_1d_pair(double v_minus, double v_plus, bool signed_version = false);

/// Accumulated angle of the 2-vector field around an oriented loop, in units
/// of 2 pi.  Throws NonQuantized (residual >= 0.1) or DegenerateSign.
int ring_winding(const Loop& loop, const Field2& field);

/// Degree of the normalized 3-vector field over an oriented closed mesh via
/// summed signed solid angles.
int surface_degree(const TriMesh& mesh, const Field3& field);

/// One extraction step of the report: which surface and order produced which
/// integer, with per-element evidence.
struct OrderResult {
  int order = 1;
  std::string surface;             // "bis" or "sis"
  std::string method;              // "winding", "degree", "pair", "z2"
  std::string provenance;          // "value", "gradient", "second-value"
  std::vector<int> element_values; // per loop / mesh / pair
  int value = 0;
};

struct InvariantReport {
  std::string model;
  std::string scheme;  // "scheme1" or "scheme2"
  double g = 0;
  int second_axis = -1;
  int grid = 0;
  bool z2 = false;
  int invariant = 0;
  std::vector<OrderResult> orders;
};

/// Single-quench characterization: invariants at every order from BIS values
/// and SIS gradients; all entries must agree.
InvariantReport scheme1(const Model& model, double g, const GridSpec& grid);

/// Two-quench characterization: surfaces from the axis-0 quench's SIS, values
/// from a second quench along another axis.
InvariantReport scheme2(const Model& model, double g, int second_axis,
                        const GridSpec& grid);

/// Sudden-quench comparator on the 2D QAH model: at g = 0 the second-quench
/// values on the BIS carry no quantized winding; at g = 1 the same pipeline
/// recovers the Chern number.
struct SuddenControl {
  double max_quench_component = 0;   // max over BIS of <gamma_axis>bar after the second quench
  double max_pair_component = 0;     // max |<gamma_1>bar| at the pair points
  bool winding_quantized = false;
  int winding = 0;                   // meaningful only if quantized
  int degenerate_points = 0;         // pair points where both components vanish
  int pair_value = 0;                // sign sum over the surviving pair points
  InvariantReport positive_control;  // scheme2 at g = 1
};

SuddenControl sudden_control(const Model& model, const GridSpec& grid);

}  // namespace tq
