// Python bindings: the request/response engine plus typed shortcuts for the
// common calculators. Validation failures raise ValueError with the field name.
#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aerocalc/atmosphere.hpp"
#include "aerocalc/engine.hpp"
#include "aerocalc/error.hpp"
#include "aerocalc/holding.hpp"
#include "aerocalc/performance.hpp"
#include "aerocalc/units.hpp"
#include "aerocalc/windnav.hpp"

namespace py = pybind11;
using namespace aerocalc;
using units::Quantity;
using units::Unit;

namespace {

engine::Engine make_engine(const std::optional<std::string>& data_dir) {
  if (data_dir) return engine::Engine(bundle::load_data_set(*data_dir));
  return engine::Engine::from_default_data();
}

py::dict isa(double altitude_ft) {
  const auto s = atmosphere::isa_conditions({altitude_ft, Unit::ft});
  py::dict d;
  d["temperature_c"] = s.temperature.value;
  d["pressure_hpa"] = s.pressure.value;
  d["density_kgm3"] = s.density.value;
  return d;
}

py::dict wind_components(double runway_heading, double wind_direction, double wind_speed) {
  const auto c = windnav::wind_components(runway_heading, windnav::make_wind(wind_direction, wind_speed));
  py::dict d;
  d["headwind_kt"] = c.headwind_kt;
  d["crosswind_kt"] = c.crosswind_kt;
  d["crosswind_side"] = std::string(windnav::to_string(c.crosswind_side));
  return d;
}

py::dict wind_triangle(double true_course, double tas, double wind_direction, double wind_speed) {
  const auto s = windnav::solve_wind_triangle(true_course, tas, windnav::make_wind(wind_direction, wind_speed));
  py::dict d;
  d["wind_correction_angle_deg"] = s.wind_correction_angle_deg;
  d["true_heading_deg"] = s.true_heading_deg;
  d["ground_speed_kt"] = s.ground_speed_kt;
  return d;
}

}  // namespace

PYBIND11_MODULE(_aerocalc, m) {
  m.doc() = "Offline flight computer calculations";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<engine::Engine>(m, "Engine")
      .def(py::init(&make_engine), py::arg("data_dir") = py::none())
      .def(
          "handle",
          [](const engine::Engine& e, const std::string& request) {
            engine::json req;
            try {
              req = engine::json::parse(request);
            } catch (const engine::json::parse_error& err) {
              throw ValidationError("request", err.what());
            }
            py::gil_scoped_release release;
            return engine::serialise(e.handle(req));
          },
          py::arg("request"), "Runs one JSON request and returns the JSON response text.")
      .def("catalogue", [](const engine::Engine& e) { return engine::serialise(e.catalogue()); })
      .def("operations", [](const engine::Engine& e) {
        std::vector<std::string> names;
        for (const auto& op : e.operations()) names.push_back(op.name);
        return names;
      });

  m.def(
      "convert",
      [](double value, const std::string& from, const std::string& to) {
        return units::value_in({value, units::parse_unit(from)}, units::parse_unit(to));
      },
      py::arg("value"), py::arg("from_unit"), py::arg("to_unit"));
  m.def("isa", &isa, py::arg("altitude_ft"));
  m.def(
      "pressure_altitude",
      [](double elevation_ft, double qnh_hpa) {
        return atmosphere::pressure_altitude({elevation_ft, Unit::ft}, {qnh_hpa, Unit::hpa}).value;
      },
      py::arg("field_elevation_ft"), py::arg("qnh_hpa"));
  m.def(
      "density_altitude",
      [](double pa_ft, double oat_c) {
        return atmosphere::density_altitude({pa_ft, Unit::ft}, {oat_c, Unit::degc}).value;
      },
      py::arg("pressure_altitude_ft"), py::arg("oat_c"));
  m.def(
      "tas_from_cas",
      [](double cas_kt, double pa_ft, double oat_c) {
        return units::value_in(
            atmosphere::tas_from_cas({cas_kt, Unit::kt}, {pa_ft, Unit::ft}, {oat_c, Unit::degc}), Unit::kt);
      },
      py::arg("cas_kt"), py::arg("pressure_altitude_ft"), py::arg("oat_c"));
  m.def("wind_components", &wind_components, py::arg("runway_heading"), py::arg("wind_direction"),
        py::arg("wind_speed"));
  m.def("wind_triangle", &wind_triangle, py::arg("true_course"), py::arg("tas"), py::arg("wind_direction"),
        py::arg("wind_speed"));
  m.def(
      "hold_entry",
      [](double inbound, double heading, const std::string& turn) {
        return std::string(holding::to_string(holding::classify_entry(inbound, heading, holding::parse_turn(turn))));
      },
      py::arg("inbound_course"), py::arg("arrival_heading"), py::arg("turn") = "right");
  m.def(
      "tailwind_factor",
      [](double tailwind_kt, double reference_speed_kt) {
        return performance::tailwind_factor({tailwind_kt, Unit::kt}, {reference_speed_kt, Unit::kt});
      },
      py::arg("tailwind_kt"), py::arg("reference_speed_kt"));
  m.def("load_factor", &performance::load_factor, py::arg("bank_deg"));
}
