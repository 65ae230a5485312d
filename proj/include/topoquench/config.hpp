#pragma once

#include <string>
#include <vector>

#include "topoquench/models.hpp"
#include "topoquench/surfaces.hpp"

namespace tq {

/// One run: model + parameters, quench spec(s), grid, scheme, export formats.
/// Fully deterministic (no seed); round-trips losslessly through dump/parse.
struct RunConfig {
  std::string model = "qah2d";
  ModelParams params;
  int axis = 0;            // first quench axis
  double g = 1.0;          // sweep rate; 0 = sudden
  int second_axis = 2;     // scheme2 / sudden control second quench
  std::string scheme = "scheme1";  // scheme1 | scheme2 | sudden_control
  int grid = 201;
  double grid_lo = -M_PI;  // zone window start (shifted window support)
  Vec3 k{0, 0, 0};         // evolve: momentum point
  double t_max = 0;        // evolve: 0 = automatic window
  std::vector<std::string> formats{"csv", "json"};
  int workers = 0;         // 0 = hardware concurrency
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string dump_config(const RunConfig& c);

Model make_model(const RunConfig& c);
GridSpec make_grid(const RunConfig& c);

}  // namespace tq
