#include "aerocalc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "aerocalc/angles.hpp"
#include "aerocalc/atmosphere.hpp"
#include "aerocalc/carbicing.hpp"
#include "aerocalc/error.hpp"
#include "aerocalc/holding.hpp"
#include "aerocalc/performance.hpp"
#include "aerocalc/weightbalance.hpp"
#include "aerocalc/windnav.hpp"

namespace aerocalc::engine {

using units::Category;
using units::Quantity;
using units::Unit;

std::string_view to_string(InputType t) {
  switch (t) {
    case InputType::text: return "text";
    case InputType::loads: return "loads";
    default: return "quantity";
  }
}

json quantity_json(double value, Unit unit) { return json{{"value", value}, {"unit", units::id(unit)}}; }

std::string serialise(const json& j) { return j.dump(2) + "\n"; }

const InputSpec* OperationSpec::find_input(std::string_view n) const {
  for (const auto& i : inputs) {
    if (i.name == n) return &i;
  }
  return nullptr;
}

DisplaySystem parse_display_system(std::string_view text) {
  if (text == "native") return DisplaySystem::native;
  if (text == "metric") return DisplaySystem::metric;
  if (text == "imperial") return DisplaySystem::imperial;
  throw ValidationError("units", "display system must be 'metric' or 'imperial'");
}

namespace {

Unit display_unit(Unit u, DisplaySystem sys) {
  const bool metric = sys == DisplaySystem::metric;
  switch (units::category_of(u)) {
    case Category::distance:
      if (u == Unit::nm || u == Unit::sm || u == Unit::km) return u;
      if (metric) return Unit::m;
      return u == Unit::m ? Unit::ft : u;
    case Category::mass: return metric ? Unit::kg : Unit::lb;
    case Category::volume: return metric ? Unit::l : Unit::usgal;
    case Category::temperature: return metric ? Unit::degc : Unit::degf;
    case Category::temperature_delta: return metric ? Unit::delta_degc : Unit::delta_degf;
    case Category::pressure: return metric ? Unit::hpa : Unit::inhg;
    case Category::density:
      if (u == Unit::kgm3) return u;
      return metric ? Unit::kgl : Unit::lbusgal;
    case Category::moment: return metric ? Unit::kgm : Unit::lbin;
    default: return u;
  }
}

bool is_quantity(const json& j) {
  return j.is_object() && j.size() == 2 && j.contains("value") && j.contains("unit") && j["value"].is_number() &&
         j["unit"].is_string();
}

}  // namespace

void convert_for_display(json& j, DisplaySystem sys) {
  if (sys == DisplaySystem::native) return;
  if (is_quantity(j)) {
    Unit u;
    try {
      u = units::parse_unit(j["unit"].get<std::string>());
    } catch (const ValidationError&) {
      return;
    }
    const Unit target = display_unit(u, sys);
    if (target != u) {
      j["value"] = units::value_in({j["value"].get<double>(), u}, target);
      j["unit"] = units::id(target);
    }
    return;
  }
  if (j.is_object() || j.is_array()) {
    for (auto& item : j) convert_for_display(item, sys);
  }
}

namespace {

// ---------------------------------------------------------------------------
// Request inputs

class Inputs {
public:
  Inputs(const OperationSpec& spec, const json& raw) {
    if (!raw.is_null() && !raw.is_object()) throw ValidationError("inputs", "inputs must be an object");
    if (raw.is_object()) {
      for (const auto& [key, _] : raw.items()) {
        if (spec.find_input(key) == nullptr) {
          throw ValidationError(key, "unknown input for '" + spec.name + "'");
        }
      }
    }
    for (const auto& in : spec.inputs) {
      const json* v = nullptr;
      if (raw.is_object() && raw.contains(in.name) && !raw[in.name].is_null()) v = &raw[in.name];
      if (v == nullptr && in.default_value) v = &*in.default_value;
      if (v == nullptr) {
        if (in.required) throw ValidationError(in.name, "required input is missing");
        continue;
      }
      check(in, *v);
      values_[in.name] = *v;
    }
  }

  bool has(const std::string& name) const { return values_.contains(name); }

  Quantity q(const std::string& name) const {
    const json& v = get(name);
    return Quantity{v["value"].get<double>(), units::parse_unit(v["unit"].get<std::string>(), name)};
  }

  std::optional<Quantity> opt_q(const std::string& name) const {
    if (!has(name)) return std::nullopt;
    return q(name);
  }

  double in(const std::string& name, Unit u) const { return units::value_in(q(name), u); }

  int count(const std::string& name) const {
    const double v = in(name, Unit::ratio);
    if (v != std::floor(v) || std::abs(v) > 1e6) throw ValidationError(name, "expected a whole number");
    return static_cast<int>(v);
  }

  std::string text(const std::string& name) const { return get(name).get<std::string>(); }

  std::map<std::string, Quantity> loads(const std::string& name) const {
    std::map<std::string, Quantity> out;
    for (const auto& [key, v] : get(name).items()) {
      out[key] = Quantity{v["value"].get<double>(), units::parse_unit(v["unit"].get<std::string>(), name + "." + key)};
    }
    return out;
  }

private:
  const json& get(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end()) throw ValidationError(name, "required input is missing");
    return it->second;
  }

  static void check_quantity(const json& v, const std::string& field, std::optional<Category> category) {
    if (v.is_number()) {
      throw ValidationError(field, "numeric inputs need a unit: use {\"value\": ..., \"unit\": ...}");
    }
    if (!v.is_object() || !v.contains("value") || !v.contains("unit") || v.size() != 2) {
      throw ValidationError(field, "expected {\"value\": number, \"unit\": identifier}");
    }
    if (!v["value"].is_number() || !std::isfinite(v["value"].get<double>())) {
      throw ValidationError(field, "value must be a finite number");
    }
    if (!v["unit"].is_string()) throw ValidationError(field, "unit must be a unit identifier");
    const Quantity q{v["value"].get<double>(), units::parse_unit(v["unit"].get<std::string>(), field)};
    if (category) units::require_category(q, *category, field);
  }

  static void check(const InputSpec& in, const json& v) {
    switch (in.type) {
      case InputType::quantity: check_quantity(v, in.name, in.category); break;
      case InputType::text:
        if (!v.is_string()) throw ValidationError(in.name, "expected a string");
        if (!in.choices.empty() &&
            std::find(in.choices.begin(), in.choices.end(), v.get<std::string>()) == in.choices.end()) {
          std::string list;
          for (const auto& c : in.choices) list += (list.empty() ? "" : ", ") + c;
          throw ValidationError(in.name, "'" + v.get<std::string>() + "' is not one of: " + list);
        }
        break;
      case InputType::loads:
        if (!v.is_object()) throw ValidationError(in.name, "expected an object of station name to mass");
        for (const auto& [key, item] : v.items()) check_quantity(item, in.name + "." + key, Category::mass);
        break;
    }
  }

  std::map<std::string, json> values_;
};

struct Context {
  const bundle::DataSet& data;
  std::vector<std::string> warnings;
  std::vector<std::string> assumptions;
};

using Handler = std::function<json(const Inputs&, Context&)>;

struct Operation {
  OperationSpec spec;
  Handler run;
  std::vector<std::string> assumptions;
  std::map<std::string, std::string> field_map;  // core field name -> input name
};

json qj(double v, Unit u) { return quantity_json(v, u); }
json qj(const Quantity& q) { return quantity_json(q.value, q.unit); }

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

// Input spec builders.
InputSpec quantity(std::string name, Category c, Unit default_unit, std::string description) {
  InputSpec s;
  s.name = std::move(name);
  s.category = c;
  s.default_unit = default_unit;
  s.description = std::move(description);
  return s;
}

InputSpec with_default(InputSpec s, double value, Unit unit) {
  s.default_value = quantity_json(value, unit);
  s.required = false;
  return s;
}

InputSpec optional(InputSpec s) {
  s.required = false;
  return s;
}

InputSpec alias(InputSpec s, std::string cli_alias) {
  s.cli_alias = std::move(cli_alias);
  return s;
}

InputSpec text(std::string name, std::vector<std::string> choices, std::optional<std::string> def,
               std::string description) {
  InputSpec s;
  s.name = std::move(name);
  s.type = InputType::text;
  s.choices = std::move(choices);
  if (def) {
    s.default_value = *def;
    s.required = false;
  }
  s.description = std::move(description);
  return s;
}

std::vector<std::string> surface_names() {
  std::vector<std::string> out;
  for (auto s : performance::all_surfaces()) out.emplace_back(performance::to_string(s));
  return out;
}

json factor_chain_json(const performance::FactorChain& c) {
  json entries = json::array();
  for (const auto& e : c.entries) {
    entries.push_back({{"name", e.name},
                       {"input", e.input ? qj(*e.input) : json(nullptr)},
                       {"factor", qj(e.factor, Unit::ratio)},
                       {"note", e.note}});
  }
  json j{{"phase", performance::to_string(c.phase)},
         {"mode", performance::to_string(c.mode)},
         {"base_distance", qj(c.base_distance)},
         {"entries", entries},
         {"environmental_product", qj(c.environmental_product(), Unit::ratio)},
         {"environmental_distance", qj(c.environmental_distance)}};
  if (c.general_factor) j["general_factor"] = qj(*c.general_factor, Unit::ratio);
  if (c.final_distance) j["final_distance"] = qj(*c.final_distance);
  return j;
}

json run_performance(const Inputs& in, Context& ctx, performance::Phase phase) {
  performance::Conditions c;
  c.weight_ratio = in.in("weight_ratio", Unit::ratio);
  c.elevation = in.q("elevation");
  if (in.has("oat")) {
    c.oat = in.q("oat");
  } else {
    const double isa_c = atmosphere::isa_temperature_k(units::value_in(c.elevation, Unit::m)) -
                         atmosphere::constants::kZeroCelsiusK;
    c.oat = Quantity{isa_c, Unit::degc};
    ctx.warnings.push_back("oat not given; ISA temperature at aerodrome elevation assumed");
  }
  c.tailwind = in.opt_q("tailwind");
  c.headwind = in.opt_q("headwind");
  c.reference_speed = in.opt_q("reference_speed");
  c.slope_percent = in.in("slope", Unit::percent);
  c.surface = performance::parse_surface(in.text("surface"));
  const auto mode = performance::parse_mode(in.text("mode"));
  const auto& table = ctx.data.factor_table;

  const auto chain = phase == performance::Phase::takeoff ? performance::todr(in.q("base_distance"), c, table, mode)
                                                          : performance::ldr(in.q("base_distance"), c, table, mode);
  ctx.assumptions.push_back("factor table: " + table.display_name + " (" + table.id + " " + table.version + ")");
  if (mode == performance::Mode::stepped) {
    ctx.assumptions.push_back("stepped mode: each condition is rounded up to the next tabulated increment");
  }
  if (c.tailwind && c.tailwind->value > 0.0) {
    ctx.warnings.push_back("tailwind of " + fmt("%.1f", units::value_in(*c.tailwind, Unit::kt)) +
                           " kt adds " + fmt("%.1f", 100.0 * (chain.entries[3].factor - 1.0)) + "% to the distance");
  }
  if (c.headwind && chain.entries[3].factor == 1.0) {
    ctx.warnings.push_back("no headwind credit taken in this factor table");
  }
  return json{{"factor_chain", factor_chain_json(chain)},
              {"environmental_distance", qj(chain.environmental_distance)},
              {"final_distance", qj(*chain.final_distance)},
              {"final_to_base_ratio", qj(chain.final_distance->value / chain.base_distance.value, Unit::ratio)}};
}

std::vector<InputSpec> performance_inputs(performance::Phase phase) {
  const bool takeoff = phase == performance::Phase::takeoff;
  return {
      alias(quantity("base_distance", Category::distance, Unit::m,
                     takeoff ? "unfactored take-off distance to 50 ft from the flight manual"
                             : "unfactored landing distance from 50 ft from the flight manual"),
            "base"),
      with_default(quantity("weight_ratio", Category::dimensionless, Unit::ratio,
                            "actual mass divided by the flight manual reference mass"),
                   1.0, Unit::ratio),
      with_default(quantity("elevation", Category::distance, Unit::ft, "aerodrome elevation"), 0.0, Unit::ft),
      optional(quantity("oat", Category::temperature, Unit::degc, "outside air temperature; ISA if omitted")),
      optional(quantity("tailwind", Category::speed, Unit::kt, "tailwind component")),
      optional(quantity("headwind", Category::speed, Unit::kt, "headwind component")),
      optional(alias(quantity("reference_speed", Category::speed, Unit::kt,
                              takeoff ? "lift-off speed V_LO" : "approach reference speed"),
                     takeoff ? "vlo" : "vref")),
      with_default(quantity("slope", Category::dimensionless, Unit::percent,
                            "runway slope, positive up-slope in the direction of travel"),
                   0.0, Unit::percent),
      text("surface", surface_names(), "paved_dry", "runway surface"),
      text("mode", {"continuous", "stepped"}, "continuous", "continuous interpolation or tabulated steps"),
  };
}

json phase_json(const weightbalance::PhasePoint& p, const weightbalance::LoadingResult& r) {
  json envelopes = json::array();
  for (const auto& c : p.checks) {
    envelopes.push_back({{"name", c.envelope},
                         {"verdict", geometry::to_string(c.verdict)},
                         {"margin", qj(c.margin, Unit::ratio)}});
  }
  return json{{"phase", weightbalance::to_string(p.phase)},
              {"weight", qj(p.weight, r.mass_unit)},
              {"moment", qj(p.moment, r.moment_unit)},
              {"cg_arm", qj(p.cg_arm, r.arm_unit)},
              {"fuel_mass", qj(p.fuel_mass, r.mass_unit)},
              {"envelopes", envelopes}};
}

std::vector<std::string> profile_ids(const bundle::DataSet& d) {
  std::vector<std::string> ids;
  for (const auto& p : d.profiles) ids.push_back(p.id);
  return ids;
}

std::vector<Operation> build_registry(const bundle::DataSet& data) {
  std::vector<Operation> ops;
  auto add = [&ops](std::string name, std::string summary, std::vector<InputSpec> inputs, Handler run,
                    std::vector<std::string> assumptions = {}, std::map<std::string, std::string> field_map = {}) {
    Operation op;
    op.spec.name = std::move(name);
    op.spec.summary = std::move(summary);
    op.spec.inputs = std::move(inputs);
    op.run = std::move(run);
    op.assumptions = std::move(assumptions);
    op.field_map = std::move(field_map);
    ops.push_back(std::move(op));
  };

  const std::vector<std::string> isa_note{
      "International Standard Atmosphere: 15 degC, 1013.25 hPa, 1.225 kg/m3 at sea level",
      "temperature lapse 6.5 degC per km to 11 km, isothermal above to 20 km",
      "altitudes are geopotential"};
  auto with = [](std::vector<std::string> a, std::initializer_list<std::string> more) {
    a.insert(a.end(), more);
    return a;
  };

  // -- units --
  {
    InputSpec value;
    value.name = "value";
    value.description = "quantity to convert, any category";
    add("convert", "Convert a quantity to another unit of the same category",
        {value, text("to", {}, std::nullopt, "target unit identifier")},
        [](const Inputs& in, Context&) {
          const Quantity q = in.q("value");
          const Unit to = units::parse_unit(in.text("to"), "to");
          return json{{"input", qj(q)}, {"value", qj(units::convert(q, to))}};
        });
    ops.back().spec.display_conversion = false;

    std::vector<std::string> categories;
    for (Category c : {Category::distance, Category::speed, Category::mass, Category::volume, Category::temperature,
                       Category::temperature_delta, Category::pressure, Category::angle, Category::time,
                       Category::density, Category::moment, Category::dimensionless}) {
      categories.emplace_back(units::id(c));
    }
    add("list-units", "List unit identifiers, optionally for one category",
        {text("category", categories, "", "unit category")}, [](const Inputs& in, Context&) {
          json list = json::array();
          const std::string cat = in.text("category");
          for (const auto& u : units::unit_table()) {
            if (!cat.empty() && units::id(u.category) != cat) continue;
            list.push_back({{"id", u.id}, {"name", u.display}, {"category", units::id(u.category)}});
          }
          return json{{"units", list}};
        });
    ops.back().spec.inputs[0].choices.insert(ops.back().spec.inputs[0].choices.begin(), "");
    ops.back().spec.display_conversion = false;
  }

  // -- atmosphere --
  add("isa", "Standard atmosphere at a geopotential altitude",
      {quantity("altitude", Category::distance, Unit::ft, "geopotential altitude")},
      [](const Inputs& in, Context&) {
        const auto s = atmosphere::isa_conditions(in.q("altitude"));
        return json{{"altitude", qj(s.geopotential_altitude)},
                    {"temperature", qj(s.temperature)},
                    {"pressure", qj(s.pressure)},
                    {"density", qj(s.density)},
                    {"density_ratio", qj(s.density.value / atmosphere::isa_density(0.0), Unit::ratio)},
                    {"speed_of_sound", qj(atmosphere::speed_of_sound(s.temperature))}};
      },
      isa_note);

  add("pa", "Pressure altitude from field elevation and QNH",
      {quantity("field_elevation", Category::distance, Unit::ft, "field elevation"),
       quantity("qnh", Category::pressure, Unit::hpa, "altimeter setting QNH")},
      [](const Inputs& in, Context&) {
        const Quantity pa = atmosphere::pressure_altitude(in.q("field_elevation"), in.q("qnh"));
        const double offset = pa.value - in.in("field_elevation", Unit::ft);
        return json{{"pressure_altitude", qj(pa)}, {"correction", qj(offset, Unit::ft)}};
      },
      with(isa_note, {"station pressure follows the ISA troposphere law below the field"}));

  add("da", "Density altitude from pressure altitude and OAT",
      {quantity("pressure_altitude", Category::distance, Unit::ft, "pressure altitude"),
       quantity("oat", Category::temperature, Unit::degc, "outside air temperature")},
      [](const Inputs& in, Context&) {
        const Quantity da = atmosphere::density_altitude(in.q("pressure_altitude"), in.q("oat"));
        const double isa_c = atmosphere::isa_temperature_k(in.in("pressure_altitude", Unit::m)) -
                             atmosphere::constants::kZeroCelsiusK;
        return json{{"density_altitude", qj(da)},
                    {"isa_temperature", qj(isa_c, Unit::degc)},
                    {"isa_deviation", qj(in.in("oat", Unit::degc) - isa_c, Unit::delta_degc)}};
      },
      with(isa_note, {"dry air: humidity is not included"}));

  add("tas", "True airspeed from calibrated airspeed",
      {quantity("cas", Category::speed, Unit::kt, "calibrated airspeed"),
       quantity("pressure_altitude", Category::distance, Unit::ft, "pressure altitude"),
       quantity("oat", Category::temperature, Unit::degc, "outside air temperature")},
      [](const Inputs& in, Context&) {
        const Quantity tas = atmosphere::tas_from_cas(in.q("cas"), in.q("pressure_altitude"), in.q("oat"));
        return json{{"tas", qj(tas)},
                    {"eas", qj(atmosphere::eas_from_cas(in.q("cas"), in.q("pressure_altitude")))},
                    {"mach", qj(atmosphere::mach_number(tas, in.q("oat")), Unit::ratio)}};
      },
      with(isa_note, {"compressible subsonic flow; instrument and position errors already removed (CAS)"}));

  add("mach", "Mach number from true airspeed and OAT",
      {quantity("tas", Category::speed, Unit::kt, "true airspeed"),
       quantity("oat", Category::temperature, Unit::degc, "outside air temperature")},
      [](const Inputs& in, Context&) {
        return json{{"mach", qj(atmosphere::mach_number(in.q("tas"), in.q("oat")), Unit::ratio)},
                    {"speed_of_sound", qj(atmosphere::speed_of_sound(in.q("oat")))}};
      },
      {"speed of sound for dry air, gamma 1.4"});

  add("humidity", "Relative humidity and dew point spread",
      {quantity("oat", Category::temperature, Unit::degc, "outside air temperature"),
       quantity("dew_point", Category::temperature, Unit::degc, "dew point")},
      [](const Inputs& in, Context& ctx) {
        const auto h = atmosphere::humidity(in.q("oat"), in.q("dew_point"));
        if (h.spread.value < 0.0) ctx.warnings.push_back("dew point above OAT; treated as saturated");
        return json{{"relative_humidity", qj(h.relative_humidity)},
                    {"spread", qj(h.spread)},
                    {"saturated", h.spread.value <= 0.0}};
      },
      {"Magnus formula over water (6.112 hPa, 17.62, 243.12 degC)"});

  // -- wind and navigation --
  add("wind-components", "Headwind and crosswind on a runway",
      {quantity("runway_heading", Category::angle, Unit::deg, "runway heading, same reference as the wind"),
       quantity("wind_direction", Category::angle, Unit::deg, "direction the wind blows from"),
       quantity("wind_speed", Category::speed, Unit::kt, "wind speed")},
      [](const Inputs& in, Context& ctx) {
        const double rwy = in.in("runway_heading", Unit::deg);
        const auto w = windnav::make_wind(in.in("wind_direction", Unit::deg), in.in("wind_speed", Unit::kt));
        const auto c = windnav::wind_components(rwy, w);
        double off = std::abs(angles::normalize180(w.direction_from_deg - rwy));
        if (off > 90.0) off = 180.0 - off;
        const double clock = windnav::clock_code_crosswind(off, w.speed_kt);
        if (c.headwind_kt < 0.0) ctx.warnings.push_back("tailwind component " + fmt("%.1f", -c.headwind_kt) + " kt");
        return json{{"headwind", qj(c.headwind_kt, Unit::kt)},
                    {"tailwind", qj(std::max(0.0, -c.headwind_kt), Unit::kt)},
                    {"crosswind", qj(c.crosswind_kt, Unit::kt)},
                    {"crosswind_from", windnav::to_string(c.crosswind_side)},
                    {"angle_off", qj(off, Unit::deg)},
                    {"clock_code_crosswind", qj(clock, Unit::kt)}};
      },
      {"runway heading and wind direction share one reference (true or magnetic)",
       "clock code: crosswind = wind speed x angle-off/60, full wind speed from 60 degrees"},
      {{"reference_heading", "runway_heading"}, {"angle_off", "wind_direction"}});

  add("wind-triangle", "Heading and ground speed to fly a course in wind",
      {quantity("true_course", Category::angle, Unit::deg, "desired track over the ground"),
       quantity("tas", Category::speed, Unit::kt, "true airspeed"),
       quantity("wind_direction", Category::angle, Unit::deg, "direction the wind blows from"),
       quantity("wind_speed", Category::speed, Unit::kt, "wind speed")},
      [](const Inputs& in, Context&) {
        const auto w = windnav::make_wind(in.in("wind_direction", Unit::deg), in.in("wind_speed", Unit::kt));
        const double course = angles::normalize360(in.in("true_course", Unit::deg));
        const auto s = windnav::solve_wind_triangle(course, in.in("tas", Unit::kt), w);
        const auto c = windnav::wind_components(course, w);
        return json{{"true_heading", qj(s.true_heading_deg, Unit::deg)},
                    {"wind_correction_angle", qj(s.wind_correction_angle_deg, Unit::deg)},
                    {"ground_speed", qj(s.ground_speed_kt, Unit::kt)},
                    {"headwind", qj(c.headwind_kt, Unit::kt)},
                    {"crosswind", qj(c.crosswind_kt, Unit::kt)}};
      },
      {"steady wind, flat earth over the leg"});

  add("clock-code", "Clock-code crosswind estimate against exact trigonometry",
      {quantity("angle_off", Category::angle, Unit::deg, "angle between wind and runway, 0 to 90"),
       quantity("wind_speed", Category::speed, Unit::kt, "wind speed")},
      [](const Inputs& in, Context&) {
        const double off = in.in("angle_off", Unit::deg);
        const double s = in.in("wind_speed", Unit::kt);
        const double est = windnav::clock_code_crosswind(off, s);
        const double exact = s * angles::sind(off);
        return json{{"estimate", qj(est, Unit::kt)},
                    {"exact", qj(exact, Unit::kt)},
                    {"error", qj(est - exact, Unit::kt)}};
      },
      {"clock code: crosswind = wind speed x angle-off/60, full wind speed from 60 degrees"});

  const std::vector<InputSpec> route{
      quantity("from_lat", Category::angle, Unit::deg, "departure latitude, north positive"),
      quantity("from_lon", Category::angle, Unit::deg, "departure longitude, east positive"),
      quantity("to_lat", Category::angle, Unit::deg, "destination latitude"),
      quantity("to_lon", Category::angle, Unit::deg, "destination longitude")};
  auto points = [](const Inputs& in) {
    return std::pair{windnav::LatLon{in.in("from_lat", Unit::deg), in.in("from_lon", Unit::deg)},
                     windnav::LatLon{in.in("to_lat", Unit::deg), in.in("to_lon", Unit::deg)}};
  };
  const std::map<std::string, std::string> route_fields{{"from", "from_lat"}, {"to", "to_lat"}};

  add("gc", "Great-circle distance and initial bearing", route,
      [points](const Inputs& in, Context& ctx) {
        const auto [a, b] = points(in);
        const auto r = windnav::great_circle(a, b);
        json out{{"distance", qj(r.distance_nm, Unit::nm)}, {"initial_bearing", nullptr}};
        if (r.bearing_defined) {
          out["initial_bearing"] = qj(r.initial_bearing_deg, Unit::deg);
        } else {
          ctx.warnings.push_back("initial bearing undefined for coincident or antipodal points");
        }
        return out;
      },
      {"spherical earth, 1 NM per arc-minute of great circle"}, route_fields);

  add("rhumb", "Rhumb-line distance and constant bearing", route,
      [points](const Inputs& in, Context&) {
        const auto [a, b] = points(in);
        const auto r = windnav::rhumb_line(a, b);
        return json{{"distance", qj(r.distance_nm, Unit::nm)}, {"bearing", qj(r.bearing_deg, Unit::deg)}};
      },
      {"spherical earth, 1 NM per arc-minute of great circle", "shorter way round in longitude"}, route_fields);

  add("los", "Radio line-of-sight range",
      {quantity("aircraft_height", Category::distance, Unit::ft, "aircraft height above the surface"),
       with_default(quantity("station_height", Category::distance, Unit::ft, "station antenna height"), 0.0,
                    Unit::ft)},
      [](const Inputs& in, Context&) {
        return json{{"range", qj(windnav::line_of_sight_range_nm(in.in("aircraft_height", Unit::ft),
                                                                 in.in("station_height", Unit::ft)),
                                 Unit::nm)}};
      },
      {"4/3 earth radius refraction model", "smooth earth; terrain and obstructions ignored"},
      {{"h1", "aircraft_height"}, {"h2", "station_height"}});

  // -- holding --
  const auto turn_input = text("turn", {"right", "left"}, "right", "direction of turns in the hold");
  add("hold-entry", "Holding entry for an arrival heading",
      {quantity("inbound_course", Category::angle, Unit::deg, "inbound course to the fix"),
       quantity("arrival_heading", Category::angle, Unit::deg, "heading when reaching the fix"), turn_input},
      [](const Inputs& in, Context& ctx) {
        const double inbound = in.in("inbound_course", Unit::deg);
        const double arrival = in.in("arrival_heading", Unit::deg);
        const auto turn = holding::parse_turn(in.text("turn"));
        const auto entry = holding::classify_entry(inbound, arrival, turn);
        double d = angles::normalize180(arrival - inbound);
        if (turn == holding::Turn::left) d = angles::normalize180(-d);
        for (double edge : {-70.0, 110.0, 180.0}) {
          if (std::abs(angles::normalize180(d - edge)) <= 5.0) {
            ctx.warnings.push_back("arrival heading within 5 degrees of a sector boundary; the adjacent entry is also acceptable");
            break;
          }
        }
        return json{{"entry", holding::to_string(entry)}, {"relative_heading", qj(d, Unit::deg)}};
      },
      {"sector boundaries 70 degrees either side of the inbound course line extended through the fix",
       "5 degree flexibility either side of a boundary"});

  add("hold-plan", "Holding entry, wind-corrected headings and timing",
      {quantity("inbound_course", Category::angle, Unit::deg, "inbound course to the fix"),
       quantity("arrival_heading", Category::angle, Unit::deg, "heading when reaching the fix"), turn_input,
       quantity("tas", Category::speed, Unit::kt, "true airspeed in the hold"),
       with_default(quantity("wind_direction", Category::angle, Unit::deg, "direction the wind blows from"), 0.0,
                    Unit::deg),
       with_default(quantity("wind_speed", Category::speed, Unit::kt, "wind speed"), 0.0, Unit::kt),
       with_default(quantity("leg_time", Category::time, Unit::s, "inbound leg time"), 1.0, Unit::min),
       with_default(quantity("drift_multiplier", Category::dimensionless, Unit::ratio,
                             "outbound drift correction as a multiple of the inbound one"),
                    3.0, Unit::ratio)},
      [](const Inputs& in, Context&) {
        holding::HoldSpec spec;
        spec.inbound_course_deg = in.in("inbound_course", Unit::deg);
        spec.turn = holding::parse_turn(in.text("turn"));
        spec.tas_kt = in.in("tas", Unit::kt);
        spec.wind = windnav::make_wind(in.in("wind_direction", Unit::deg), in.in("wind_speed", Unit::kt));
        spec.leg_time_s = in.in("leg_time", Unit::s);
        spec.outbound_drift_multiplier = in.in("drift_multiplier", Unit::ratio);
        const auto p = holding::plan_hold(spec, in.in("arrival_heading", Unit::deg));
        return json{{"entry", holding::to_string(p.entry)},
                    {"inbound_course", qj(p.inbound_course_deg, Unit::deg)},
                    {"inbound_heading", qj(p.inbound_heading_deg, Unit::deg)},
                    {"outbound_heading", qj(p.outbound_heading_deg, Unit::deg)},
                    {"inbound_ground_speed", qj(p.inbound_ground_speed_kt, Unit::kt)},
                    {"outbound_ground_speed", qj(p.outbound_ground_speed_kt, Unit::kt)},
                    {"outbound_time", qj(p.outbound_time_s, Unit::s)},
                    {"wind_correction_angle", qj(p.wind_correction_angle_inbound_deg, Unit::deg)},
                    {"steps", p.procedural_steps}};
      },
      {"outbound heading allows for three times the inbound drift unless drift_multiplier says otherwise",
       "outbound time scaled by the ground speed ratio so the inbound leg keeps its timing",
       "turn radius and rate-one turn geometry are not modelled"},
      {{"leg_time", "leg_time"}});

  // -- performance --
  const std::vector<std::string> perf_notes{
      "factors compound multiplicatively in the order listed",
      "temperature factor applies to the excess above ISA at aerodrome elevation",
      "general safety factor is applied as a separate second stage",
      "tailwind law valid up to half the reference speed"};
  add("todr", "Take-off distance required with condition and safety factors",
      performance_inputs(performance::Phase::takeoff),
      [](const Inputs& in, Context& ctx) { return run_performance(in, ctx, performance::Phase::takeoff); },
      perf_notes, {{"slope_percent", "slope"}});
  add("ldr", "Landing distance required with condition and safety factors",
      performance_inputs(performance::Phase::landing),
      [](const Inputs& in, Context& ctx) { return run_performance(in, ctx, performance::Phase::landing); },
      perf_notes, {{"slope_percent", "slope"}});

  add("tailwind-factor", "Distance factor for a tailwind component",
      {quantity("tailwind", Category::speed, Unit::kt, "tailwind component"),
       alias(quantity("reference_speed", Category::speed, Unit::kt, "lift-off or approach speed"), "vlo")},
      [](const Inputs& in, Context&) {
        return json{{"factor", qj(performance::tailwind_factor(in.q("tailwind"), in.q("reference_speed")),
                                  Unit::ratio)}};
      },
      {"20% more distance for each tailwind of 10% of the reference speed, interpolated linearly"});

  add("load-factor", "Load factor and stall speed in a level turn",
      {quantity("bank", Category::angle, Unit::deg, "bank angle, 0 to 85"),
       optional(quantity("stall_speed", Category::speed, Unit::kt, "wings-level stall speed"))},
      [](const Inputs& in, Context&) {
        const double bank = in.in("bank", Unit::deg);
        json out{{"load_factor", qj(performance::load_factor(bank), Unit::ratio)}};
        if (in.has("stall_speed")) {
          out["stall_speed_in_turn"] =
              qj(performance::stall_speed_in_turn(in.in("stall_speed", Unit::kt), bank), Unit::kt);
        }
        return out;
      },
      {"level coordinated turn: n = 1/cos(bank)", "stall speed scales with the square root of n"});

  // -- weight and balance --
  {
    InputSpec loads;
    loads.name = "loads";
    loads.type = InputType::loads;
    loads.default_value = json::object();
    loads.required = false;
    loads.description = "mass at each named station";
    loads.cli_alias = "load";
    auto profile = text("profile", profile_ids(data), std::nullopt, "aircraft profile identifier");
    add("wb", "Weight and balance for the four loading phases",
        {profile, loads, with_default(quantity("fuel", Category::volume, Unit::usgal, "usable fuel at start"), 0.0,
                                      Unit::usgal),
         with_default(quantity("taxi_fuel", Category::volume, Unit::usgal, "fuel used before take-off"), 0.0,
                      Unit::usgal),
         with_default(quantity("trip_fuel", Category::volume, Unit::usgal, "fuel used in flight"), 0.0, Unit::usgal),
         with_default(quantity("samples", Category::dimensionless, Unit::ratio, "points on the fuel-burn track"), 101,
                      Unit::ratio)},
        [](const Inputs& in, Context& ctx) {
          const auto* p = ctx.data.find_profile(in.text("profile"));
          if (p == nullptr) throw ValidationError("profile", "unknown profile '" + in.text("profile") + "'");
          const auto r = weightbalance::compute_loading(*p, in.loads("loads"), in.q("fuel"), in.q("taxi_fuel"),
                                                        in.q("trip_fuel"));
          const auto track = weightbalance::cg_track(r.at(weightbalance::LoadingPhase::takeoff),
                                                     r.at(weightbalance::LoadingPhase::zero_fuel),
                                                     p->envelopes.front(), in.count("samples"));
          json phases = json::array();
          for (const auto& ph : r.phases) phases.push_back(phase_json(ph, r));
          json violations = json::array();
          for (const auto& v : r.violations) {
            violations.push_back({{"limit", v.limit}, {"message", v.message}});
            ctx.warnings.push_back(v.message);
          }
          json samples = json::array();
          for (const auto& s : track.samples) {
            samples.push_back({{"burned_fraction", qj(s.burned_fraction, Unit::ratio)},
                               {"cg_arm", qj(s.point.x, r.arm_unit)},
                               {"weight", qj(s.point.y, r.mass_unit)},
                               {"verdict", geometry::to_string(s.verdict)}});
          }
          ctx.assumptions.push_back("profile: " + p->display_name);
          return json{{"profile", p->id},
                      {"phases", phases},
                      {"within_limits", r.within_limits()},
                      {"violations", violations},
                      {"cg_track",
                       {{"envelope", p->envelopes.front().name},
                        {"samples", samples},
                        {"first_violation", track.first_violation ? qj(*track.first_violation, Unit::ratio)
                                                                  : json(nullptr)}}}};
        },
        {"bundled profiles are illustrative; use the aircraft's own flight manual and weighing record",
         "envelope boundaries count as inside", "all fuel sits at one arm and burns uniformly"},
        {{"station_loads", "loads"}, {"fuel_at_start", "fuel"}});
  }

  add("profile", "Aircraft profile with stations, limits and envelopes",
      {text("id", profile_ids(data), std::nullopt, "aircraft profile identifier")},
      [](const Inputs& in, Context& ctx) {
        const auto* p = ctx.data.find_profile(in.text("id"));
        if (p == nullptr) throw ValidationError("id", "unknown profile '" + in.text("id") + "'");
        return bundle::encode(*p);
      },
      {"bundled profiles are illustrative"});
  ops.back().spec.display_conversion = false;

  add("factor-table", "The performance factor table in use", {},
      [](const Inputs&, Context& ctx) { return bundle::encode(ctx.data.factor_table); });
  ops.back().spec.display_conversion = false;

  // -- carburettor icing --
  add("carb-icing", "Carburettor icing risk category from OAT and dew point",
      {quantity("oat", Category::temperature, Unit::degc, "outside air temperature"),
       quantity("dew_point", Category::temperature, Unit::degc, "dew point")},
      [](const Inputs& in, Context& ctx) {
        const auto& chart = ctx.data.icing_chart;
        const auto a = carbicing::assess(in.q("oat"), in.q("dew_point"), chart);
        if (a.saturated) ctx.warnings.push_back("air is saturated (100% relative humidity)");
        ctx.assumptions.push_back("chart: " + chart.display_name + " (" + chart.id + " " + chart.version + ")");
        return json{{"category_cruise", carbicing::to_string(a.category_cruise)},
                    {"category_descent", carbicing::to_string(a.category_descent)},
                    {"relative_humidity", qj(a.relative_humidity)},
                    {"spread", qj(a.spread)},
                    {"saturated", a.saturated},
                    {"disclaimer", a.disclaimer}};
      },
      {carbicing::kDisclaimer, "categories are qualitative; no probability is implied"});

  add("risk-grid", "Icing categories over the chart domain for plotting",
      {with_default(quantity("oat_cells", Category::dimensionless, Unit::ratio, "columns across the OAT axis"), 12,
                    Unit::ratio),
       with_default(quantity("dew_cells", Category::dimensionless, Unit::ratio, "rows across the dew point axis"), 16,
                    Unit::ratio)},
      [](const Inputs& in, Context& ctx) {
        const auto& chart = ctx.data.icing_chart;
        const auto g = carbicing::risk_grid(chart, in.count("oat_cells"), in.count("dew_cells"));
        json cells = json::array();
        for (const auto& c : g.cells) {
          cells.push_back({{"oat", qj(c.oat, Unit::degc)},
                           {"dew_point", qj(c.dew_point, Unit::degc)},
                           {"valid", c.valid},
                           {"cruise", c.cruise ? json(carbicing::to_string(*c.cruise)) : json(nullptr)},
                           {"descent", c.descent ? json(carbicing::to_string(*c.descent)) : json(nullptr)}});
        }
        return json{{"chart", chart.id},
                    {"oat_cells", qj(g.oat_cells, Unit::ratio)},
                    {"dew_cells", qj(g.dew_cells, Unit::ratio)},
                    {"cells", cells}};
      },
      {carbicing::kDisclaimer, "cells above the saturation line are invalid"});

  return ops;
}

json error_response(const std::string& op, const char* code, const std::string& field, const std::string& message) {
  return json{{"operation", op},
              {"ok", false},
              {"error", {{"code", code}, {"field", field}, {"message", message}}}};
}

std::string map_field(const Operation& op, const std::string& field) {
  for (const auto& [from, to] : op.field_map) {
    if (field == from) return to;
    if (field.rfind(from, 0) == 0 && (field[from.size()] == '.' || field[from.size()] == '[')) {
      return to + field.substr(from.size());
    }
  }
  return field;
}

json input_spec_json(const InputSpec& s) {
  json j{{"name", s.name}, {"type", to_string(s.type)}, {"required", s.required}, {"description", s.description}};
  if (s.category) j["category"] = units::id(*s.category);
  if (s.default_unit) j["default_unit"] = units::id(*s.default_unit);
  if (s.default_value) j["default"] = *s.default_value;
  if (!s.choices.empty()) j["choices"] = s.choices;
  if (!s.cli_alias.empty()) j["cli_alias"] = s.cli_alias;
  return j;
}

}  // namespace

struct Engine::Registry {
  std::vector<Operation> ops;
  std::vector<OperationSpec> specs;
};

Engine::Engine(bundle::DataSet data) : data_(std::move(data)) {
  auto r = std::make_shared<Registry>();
  r->ops = build_registry(data_);
  for (const auto& op : r->ops) r->specs.push_back(op.spec);
  registry_ = std::move(r);
}

Engine Engine::from_default_data() { return Engine(bundle::load_data_set(bundle::data_dir())); }

const std::vector<OperationSpec>& Engine::operations() const { return registry_->specs; }

const OperationSpec* Engine::find(std::string_view name) const {
  for (const auto& s : operations()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

json Engine::handle(const json& request) const {
  std::string op_name;
  const Operation* op = nullptr;
  try {
    if (!request.is_object()) {
      return error_response("", error_code::kMalformed, "", "request must be a JSON object");
    }
    for (const auto& [key, _] : request.items()) {
      if (key != "operation" && key != "inputs" && key != "units") {
        return error_response("", error_code::kMalformed, key, "unknown request field");
      }
    }
    if (!request.contains("operation") || !request["operation"].is_string()) {
      return error_response("", error_code::kMalformed, "operation", "request needs an operation name");
    }
    op_name = request["operation"].get<std::string>();
    for (const auto& o : registry_->ops) {
      if (o.spec.name == op_name) op = &o;
    }
    if (op == nullptr) {
      return error_response(op_name, error_code::kUnknownOperation, "operation",
                            "unknown operation '" + op_name + "'");
    }
    DisplaySystem system = DisplaySystem::native;
    if (request.contains("units")) {
      if (!request["units"].is_string()) throw ValidationError("units", "expected 'metric' or 'imperial'");
      system = parse_display_system(request["units"].get<std::string>());
    }
    const Inputs inputs(op->spec, request.contains("inputs") ? request["inputs"] : json(nullptr));
    Context ctx{data_, {}, {}};
    json result = op->run(inputs, ctx);
    if (op->spec.display_conversion) convert_for_display(result, system);
    std::vector<std::string> assumptions = op->assumptions;
    assumptions.insert(assumptions.end(), ctx.assumptions.begin(), ctx.assumptions.end());
    return json{{"operation", op_name},
                {"ok", true},
                {"result", result},
                {"warnings", ctx.warnings},
                {"assumptions", assumptions}};
  } catch (const ValidationError& e) {
    const std::string field = op ? map_field(*op, e.field()) : e.field();
    return error_response(op_name, error_code::kValidation, field, e.message());
  } catch (const json::exception& e) {
    return error_response(op_name, error_code::kMalformed, "", e.what());
  } catch (const std::exception& e) {
    return error_response(op_name, error_code::kInternal, "", e.what());
  }
}

json Engine::catalogue() const {
  json ops = json::array();
  for (const auto& s : operations()) {
    json inputs = json::array();
    for (const auto& i : s.inputs) inputs.push_back(input_spec_json(i));
    ops.push_back({{"name", s.name},
                   {"summary", s.summary},
                   {"inputs", inputs},
                   {"display_conversion", s.display_conversion}});
  }
  json profiles = json::array(), tables = json::array(), charts = json::array();
  for (const auto& e : data_.catalogue) {
    json entry{{"id", e.id}, {"display_name", e.display_name}};
    if (e.kind == bundle::Kind::aircraft_profile) {
      profiles.push_back(entry);
    } else {
      entry["default"] = e.is_default;
      (e.kind == bundle::Kind::factor_table ? tables : charts).push_back(entry);
    }
  }
  return json{{"operations", ops},
              {"profiles", profiles},
              {"factor_tables", tables},
              {"icing_charts", charts},
              {"factor_table_in_use", data_.factor_table.id},
              {"icing_chart_in_use", data_.icing_chart.id},
              {"display_systems", {"native", "metric", "imperial"}},
              {"schema_version", bundle::kMaxSchemaVersion}};
}

}  // namespace aerocalc::engine
