#pragma once

#include <string>
#include <vector>

#include "topoquench/config.hpp"
#include "topoquench/evolve.hpp"
#include "topoquench/invariants.hpp"

namespace tq {

/// Full round-trip decimal formatting (17 significant digits).
std::string fmt_full(double x);

void ensure_dir(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Scalar sampled on every node of the closed grid (row-major, k-last fastest).
struct ScalarGrid {
  int dim = 1;
  GridSpec grid;
  std::vector<double> v;
};

ScalarGrid sample_grid(const ScalarFn& f, int dim, const GridSpec& g);

std::string grid_csv(const ScalarGrid& sg);
/// 1D: polyline plot; 2D: heatmap; 3D: empty (no static figure).
std::string grid_svg(const ScalarGrid& sg);

std::string trajectory_csv(const Trajectory& tr);
std::string trajectory_svg(const Trajectory& tr);

std::string report_json(const InvariantReport& rep);
std::string sudden_json(const SuddenControl& sc);

}  // namespace tq
