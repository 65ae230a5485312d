#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "topoquench/config.hpp"
#include "topoquench/evolve.hpp"
#include "topoquench/invariants.hpp"
#include "topoquench/lz.hpp"

namespace py = pybind11;
using namespace tq;

namespace {

Coeffs to_coeffs(const std::vector<double>& h) {
  if (h.size() < 2 || h.size() > 5)
    throw DimensionMismatch("field needs 2 to 5 components");
  Coeffs c;
  c.n = static_cast<int>(h.size());
  for (int i = 0; i < c.n; ++i) c[i] = h[i];
  return c;
}

std::vector<double> from_coeffs(const Coeffs& c) {
  return {c.h.begin(), c.h.begin() + c.n};
}

GridSpec grid_of(int n, double lo) {
  GridSpec g;
  g.n = n;
  g.lo = lo;
  return g;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "slow-quench band topology: closed forms, integrator, surfaces, "
            "invariant extraction";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<GaplessPoint>(m, "GaplessPoint");
  py::register_exception<EmptySurface>(m, "EmptySurfaceError");
  py::register_exception<NonQuantized>(m, "NonQuantizedError");
  py::register_exception<DegenerateSign>(m, "DegenerateSignError");
  py::register_exception<InconsistentEvidence>(m, "InconsistentEvidenceError");

  // closed forms
  m.def("transition_probability", &transition_probability, py::arg("g"),
        py::arg("h_0"), py::arg("eps"),
        "Final lower-band population after the g/t sweep");
  m.def("band_imbalance", &band_imbalance, py::arg("g"), py::arg("h_0"),
        py::arg("eps"));
  m.def("prefactor_c", &prefactor_c, py::arg("g"));
  m.def("sis_level", &sis_level, py::arg("g"));
  m.def(
      "tasp",
      [](const std::vector<double>& field, int axis, double g) {
        return from_coeffs(tasp(to_coeffs(field), QuenchSpec{axis, g}));
      },
      py::arg("field"), py::arg("axis") = 0, py::arg("g") = 1.0,
      "Time-averaged spin polarization of a coefficient field");

  // models
  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def_readwrite("m_z", &ModelParams::m_z)
      .def_readwrite("t_0", &ModelParams::t_0)
      .def_readwrite("t_so", &ModelParams::t_so)
      .def_readwrite("t_so_x", &ModelParams::t_so_x)
      .def_readwrite("t_so_y", &ModelParams::t_so_y)
      .def_readwrite("m_x", &ModelParams::m_x)
      .def_readwrite("m_y", &ModelParams::m_y)
      .def_readwrite("m", &ModelParams::m);

  py::class_<Model>(m, "Model")
      .def_static("from_name", &Model::from_name, py::arg("name"),
                  py::arg("params") = ModelParams{})
      .def_property_readonly("name", &Model::name)
      .def_property_readonly("dim", &Model::dim)
      .def_property_readonly("ncomp", &Model::ncomp)
      .def_property_readonly("rank", &Model::rank)
      .def("eval", [](const Model& mod, double kx, double ky, double kz) {
        return from_coeffs(mod.eval({kx, ky, kz}));
      }, py::arg("kx"), py::arg("ky") = 0.0, py::arg("kz") = 0.0);

  // brute-force integrator
  m.def(
      "evolve",
      [](const std::vector<double>& field, int axis, double g, double t_max) {
        EvolutionConfig ec;
        ec.t_max = t_max;
        Trajectory tr = integrate(to_coeffs(field), QuenchSpec{axis, g}, ec);
        std::vector<std::vector<double>> spin(tr.nspin);
        for (int i = 0; i < tr.nspin; ++i) {
          spin[i].reserve(tr.t.size());
          for (const auto& s : tr.spin) spin[i].push_back(s[i]);
        }
        py::dict out;
        out["t"] = tr.t;
        out["spin"] = spin;
        out["tail_tasp"] = from_coeffs(tail_tasp(tr, 100));
        out["population_lower"] = population(tr, to_coeffs(field), true);
        return out;
      },
      py::arg("field"), py::arg("axis") = 0, py::arg("g") = 1.0,
      py::arg("t_max") = 0.0,
      "Integrate one momentum point and return sampled <gamma_i(t)>");

  // invariant extraction
  py::class_<OrderResult>(m, "OrderResult")
      .def_readonly("order", &OrderResult::order)
      .def_readonly("surface", &OrderResult::surface)
      .def_readonly("method", &OrderResult::method)
      .def_readonly("provenance", &OrderResult::provenance)
      .def_readonly("element_values", &OrderResult::element_values)
      .def_readonly("value", &OrderResult::value);

  py::class_<InvariantReport>(m, "InvariantReport")
      .def_readonly("model", &InvariantReport::model)
      .def_readonly("scheme", &InvariantReport::scheme)
      .def_readonly("g", &InvariantReport::g)
      .def_readonly("second_axis", &InvariantReport::second_axis)
      .def_readonly("grid", &InvariantReport::grid)
      .def_readonly("z2", &InvariantReport::z2)
      .def_readonly("invariant", &InvariantReport::invariant)
      .def_readonly("orders", &InvariantReport::orders);

  m.def(
      "scheme1",
      [](const Model& mod, double g, int grid, double lo) {
        return scheme1(mod, g, grid_of(grid, lo));
      },
      py::arg("model"), py::arg("g") = 1.0, py::arg("grid") = 201,
      py::arg("grid_lo") = -M_PI);
  m.def(
      "scheme2",
      [](const Model& mod, double g, int second_axis, int grid, double lo) {
        return scheme2(mod, g, second_axis, grid_of(grid, lo));
      },
      py::arg("model"), py::arg("g") = 1.0, py::arg("second_axis") = 2,
      py::arg("grid") = 201, py::arg("grid_lo") = -M_PI);

  py::class_<SuddenControl>(m, "SuddenControl")
      .def_readonly("max_quench_component", &SuddenControl::max_quench_component)
      .def_readonly("max_pair_component", &SuddenControl::max_pair_component)
      .def_readonly("winding_quantized", &SuddenControl::winding_quantized)
      .def_readonly("winding", &SuddenControl::winding)
      .def_readonly("degenerate_points", &SuddenControl::degenerate_points)
      .def_readonly("pair_value", &SuddenControl::pair_value)
      .def_readonly("positive_control", &SuddenControl::positive_control);

  m.def(
      "sudden_control",
      [](const Model& mod, int grid, double lo) {
        return sudden_control(mod, grid_of(grid, lo));
      },
      py::arg("model"), py::arg("grid") = 201, py::arg("grid_lo") = -M_PI);

  m.def("set_max_workers", &set_max_workers, py::arg("n"));
}
