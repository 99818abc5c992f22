#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "emskin/commands.hpp"
#include "emskin/config.hpp"
#include "emskin/export.hpp"

namespace py = pybind11;
using namespace emskin;

namespace {

Scenario scenario_from(const std::string& text) { return build_scenario(parse_scenario_config(text)); }

py::dict report_dict(const CoverageReport& r) {
  py::dict d;
  d["min_db"] = r.min_db;
  d["max_db"] = r.max_db;
  d["avg_db"] = r.avg_db;
  d["phi1"] = r.phi1;
  d["phi2"] = r.phi2;
  d["covered"] = r.covered;
  d["connected"] = r.connected;
  d["blackout"] = r.blackout;
  d["power_db"] = r.power_db;
  return d;
}

} // namespace

PYBIND11_MODULE(_emskin, m) {
  m.doc() = "Reflective-tile layout optimizer core";
  m.attr("__version__") = kToolVersion;

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<Scenario>(m, "Scenario")
      .def_static("load", &load_scenario, py::arg("path"))
      .def_static("from_json", &scenario_from, py::arg("text"))
      .def_property_readonly("tile_count", &Scenario::tile_count)
      .def_property_readonly("receiver_count", [](const Scenario& s) { return s.receivers.size(); })
      .def_property_readonly("admissible_count", [](const Scenario& s) { return s.facade.admissible_count(); })
      .def_readonly("power_threshold_db", &Scenario::power_threshold_db)
      .def_readonly("blackout_threshold_db", &Scenario::blackout_threshold_db);

  m.def(
      "parse_layout", [](const std::string& text, std::size_t n) { return to_bit_string(parse_layout(text, n)); },
      py::arg("text"), py::arg("n"), "Normalize a bit string or index list to a bit string.");

  m.def(
      "evaluate",
      [](const Scenario& s, const std::string& layout, double sinc_arg_scale) {
        FieldConfig cfg;
        cfg.sinc_arg_scale = sinc_arg_scale;
        cfg.validate();
        const Layout l = parse_layout(layout, s.tile_count());
        validate_layout(l, s.facade);
        return report_dict(coverage_report(l, s.receivers, s, cfg));
      },
      py::arg("scenario"), py::arg("layout"), py::arg("sinc_arg_scale") = 1.0);

  m.def(
      "optimize",
      [](const Scenario& s, std::uint64_t seed, std::optional<int> iterations, std::optional<int> population,
         double sinc_arg_scale) {
        FieldConfig cfg;
        cfg.sinc_arg_scale = sinc_arg_scale;
        cfg.validate();
        RunOptions o;
        o.seed = seed;
        o.iterations = iterations;
        o.population = population;
        o.snapshot_interval = 0;
        const GaConfig ga = ga_config_from(o, s.tile_count());
        EvolutionResult r;
        {
          py::gil_scoped_release release;
          const Evaluator ev(s, cfg);
          r = evolve(ga, ev);
        }
        py::list front;
        for (const Individual& ind : r.front.solutions) {
          py::dict d;
          d["phi1"] = ind.objectives.phi1;
          d["phi2"] = ind.objectives.phi2;
          d["tiles"] = ind.layout.popcount();
          d["bits"] = to_bit_string(ind.layout);
          front.append(d);
        }
        return front;
      },
      py::arg("scenario"), py::arg("seed") = 0, py::arg("iterations") = py::none(),
      py::arg("population") = py::none(), py::arg("sinc_arg_scale") = 1.0);

  m.def(
      "validate_single_tile",
      [](double theta, double phi, double side_wavelengths) {
        SingleTileOptions o;
        o.steer_theta_deg = theta;
        o.steer_phi_deg = phi;
        o.side_wavelengths = side_wavelengths;
        const SingleTileReport r = validate_single_tile(o);
        py::dict d;
        d["peak_theta_deg"] = r.peak.theta_deg;
        d["peak_phi_deg"] = r.peak.phi_deg;
        d["peak_db"] = r.peak_db;
        d["theta_beamwidth_deg"] = r.theta_beamwidth_deg;
        d["phi_beamwidth_deg"] = r.phi_beamwidth_deg;
        return d;
      },
      py::arg("theta") = 40.0, py::arg("phi") = -20.0, py::arg("side_wavelengths") = 25.0);
}
