#include "aerocalc/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "aerocalc/error.hpp"

#ifndef AEROCALC_DEFAULT_DATA_DIR
#define AEROCALC_DEFAULT_DATA_DIR "data"
#endif

namespace aerocalc::bundle {

namespace fs = std::filesystem;
using units::Category;
using units::Quantity;
using units::Unit;

namespace {

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path, "expected an object");
}

void check_keys(const json& j, const std::string& path, std::initializer_list<std::string_view> required,
                std::initializer_list<std::string_view> optional = {}) {
  require_object(j, path);
  for (auto key : required) {
    if (!j.contains(std::string(key))) throw ValidationError(join(path, key), "required field is missing");
  }
  for (const auto& [key, _] : j.items()) {
    const bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                       std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) throw ValidationError(join(path, key), "unknown field");
  }
}

const json& at(const json& j, const std::string& path, std::string_view key) {
  require_object(j, path);
  auto it = j.find(std::string(key));
  if (it == j.end()) throw ValidationError(join(path, key), "required field is missing");
  return *it;
}

std::string text(const json& j, const std::string& path, std::string_view key) {
  const json& v = at(j, path, key);
  if (!v.is_string()) throw ValidationError(join(path, key), "expected a string");
  return v.get<std::string>();
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ValidationError(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ValidationError(path, "expected a finite number");
  return d;
}

Unit unit_of(const json& v, const std::string& path, Category expected) {
  if (!v.is_string()) throw ValidationError(path, "expected a unit identifier");
  const Unit u = units::parse_unit(v.get<std::string>(), path);
  if (units::category_of(u) != expected) {
    throw ValidationError(path, "expected a " + std::string(units::id(expected)) + " unit, got '" +
                                    v.get<std::string>() + "'");
  }
  return u;
}

Quantity quantity(const json& j, const std::string& path, std::string_view key, Category expected) {
  const std::string p = join(path, key);
  const json& v = at(j, path, key);
  check_keys(v, p, {"value", "unit"});
  return Quantity{number(v["value"], p + ".value"), unit_of(v["unit"], p + ".unit", expected)};
}

double quantity_in(const json& j, const std::string& path, std::string_view key, Unit target) {
  return units::value_in(quantity(j, path, key, units::category_of(target)), target);
}

json q(double value, Unit u) { return json{{"value", value}, {"unit", units::id(u)}}; }
json q(const Quantity& x) { return q(x.value, x.unit); }

// Re-raise a model validation error with the payload path in front.
template <class F>
void validated(const std::string& path, F&& check) {
  try {
    check();
  } catch (const ValidationError& e) {
    throw ValidationError(join(path, e.field()), e.message());
  }
}

json encode_vertices(const geometry::Polygon& poly) {
  json out = json::array();
  for (const auto& p : poly) out.push_back(json::array({p.x, p.y}));
  return out;
}

geometry::Polygon decode_vertices(const json& j, const std::string& path, Unit x_from, Unit x_to, Unit y_from,
                                  Unit y_to) {
  if (!j.is_array()) throw ValidationError(path, "expected an array of [x, y] pairs");
  geometry::Polygon poly;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& v = j[i];
    const std::string p = index(path, i);
    if (!v.is_array() || v.size() != 2) throw ValidationError(p, "expected an [x, y] pair");
    poly.push_back({units::value_in({number(v[0], p + "[0]"), x_from}, x_to),
                    units::value_in({number(v[1], p + "[1]"), y_from}, y_to)});
  }
  return poly;
}

// ---- factor tables ----

json encode_rule(const performance::LinearRule& r, Unit step_unit) {
  return json{{"step", q(r.step, step_unit)}, {"factor_per_step", q(r.factor_per_step, Unit::ratio)}};
}

performance::LinearRule decode_rule(const json& j, const std::string& path, Unit step_unit,
                                    std::initializer_list<std::string_view> extra = {}) {
  std::vector<std::string_view> optional(extra);
  require_object(j, path);
  for (const auto& [key, _] : j.items()) {
    if (key != "step" && key != "factor_per_step" &&
        std::find(optional.begin(), optional.end(), key) == optional.end()) {
      throw ValidationError(join(path, key), "unknown field");
    }
  }
  return {quantity_in(j, path, "step", step_unit), quantity_in(j, path, "factor_per_step", Unit::ratio)};
}

json encode_phase(const performance::PhaseFactors& f) {
  json j;
  j["weight"] = encode_rule(f.weight, Unit::percent);
  j["elevation"] = encode_rule(f.elevation, Unit::ft);
  j["temperature"] = encode_rule(f.temperature, Unit::delta_degc);
  j["tailwind"] = encode_rule(f.tailwind, Unit::ratio);
  if (f.headwind) {
    j["headwind"] = encode_rule(*f.headwind, Unit::ratio);
    j["headwind"]["min_factor"] = q(f.headwind_min_factor, Unit::ratio);
  }
  j["slope_adverse"] = encode_rule(f.slope_adverse, Unit::percent);
  j["slope_favourable"] = encode_rule(f.slope_favourable, Unit::percent);
  json s = json::object();
  for (const auto& [surface, factor] : f.surface) s[std::string(performance::to_string(surface))] = q(factor, Unit::ratio);
  j["surface"] = s;
  j["general_safety"] = q(f.general_safety, Unit::ratio);
  return j;
}

performance::PhaseFactors decode_phase(const json& j, const std::string& path) {
  check_keys(j, path,
             {"weight", "elevation", "temperature", "tailwind", "slope_adverse", "slope_favourable", "surface",
              "general_safety"},
             {"headwind"});
  performance::PhaseFactors f;
  f.weight = decode_rule(j["weight"], join(path, "weight"), Unit::percent);
  f.elevation = decode_rule(j["elevation"], join(path, "elevation"), Unit::ft);
  f.temperature = decode_rule(j["temperature"], join(path, "temperature"), Unit::delta_degc);
  f.tailwind = decode_rule(j["tailwind"], join(path, "tailwind"), Unit::ratio);
  if (j.contains("headwind")) {
    const std::string hp = join(path, "headwind");
    f.headwind = decode_rule(j["headwind"], hp, Unit::ratio, {"min_factor"});
    if (j["headwind"].contains("min_factor")) f.headwind_min_factor = quantity_in(j["headwind"], hp, "min_factor", Unit::ratio);
  }
  f.slope_adverse = decode_rule(j["slope_adverse"], join(path, "slope_adverse"), Unit::percent);
  f.slope_favourable = decode_rule(j["slope_favourable"], join(path, "slope_favourable"), Unit::percent);
  const std::string sp = join(path, "surface");
  require_object(j["surface"], sp);
  for (const auto& [key, _] : j["surface"].items()) {
    performance::Surface s;
    try {
      s = performance::parse_surface(key);
    } catch (const ValidationError& e) {
      throw ValidationError(join(sp, key), e.message());
    }
    f.surface[s] = quantity_in(j["surface"], sp, key, Unit::ratio);
  }
  f.general_safety = quantity_in(j, path, "general_safety", Unit::ratio);
  return f;
}

}  // namespace

std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::factor_table: return "factor_table";
    case Kind::icing_chart: return "icing_chart";
    default: return "aircraft_profile";
  }
}

Kind parse_kind(std::string_view text) {
  for (Kind k : {Kind::aircraft_profile, Kind::factor_table, Kind::icing_chart}) {
    if (to_string(k) == text) return k;
  }
  throw ValidationError("kind", "unknown bundle kind '" + std::string(text) +
                                    "' (expected aircraft_profile, factor_table or icing_chart)");
}

// ---- aircraft profiles ----

json encode(const weightbalance::AircraftProfile& p) {
  const Unit m = p.mass_unit, a = p.arm_unit;
  json j;
  j["id"] = p.id;
  j["display_name"] = p.display_name;
  j["units"] = {{"mass", units::id(m)}, {"arm", units::id(a)}, {"volume", units::id(p.volume_unit)}};
  j["empty"] = {{"weight", q(p.empty_weight, m)}, {"arm", q(p.empty_arm, a)}};
  json stations = json::array();
  for (const auto& s : p.stations) {
    stations.push_back({{"name", s.name}, {"arm", q(s.arm, a)}, {"max_load", q(s.max_load, m)}});
  }
  j["stations"] = stations;
  j["fuel"] = {{"arm", q(p.fuel.arm, a)},
               {"usable_capacity", q(p.fuel.usable_capacity, p.volume_unit)},
               {"density", q(p.fuel.density)}};
  json limits{{"max_ramp", q(p.limits.max_ramp, m)},
              {"max_takeoff", q(p.limits.max_takeoff, m)},
              {"max_landing", q(p.limits.max_landing, m)}};
  if (p.limits.max_zero_fuel) limits["max_zero_fuel"] = q(*p.limits.max_zero_fuel, m);
  j["limits"] = limits;
  json envelopes = json::array();
  for (const auto& e : p.envelopes) {
    envelopes.push_back({{"name", e.name},
                         {"axes", {{"arm", units::id(a)}, {"weight", units::id(m)}}},
                         {"vertices", encode_vertices(e.polygon)}});
  }
  j["envelopes"] = envelopes;
  return j;
}

weightbalance::AircraftProfile decode_profile(const json& j) {
  const std::string path = "payload";
  check_keys(j, path, {"id", "display_name", "units", "empty", "stations", "fuel", "limits", "envelopes"});
  weightbalance::AircraftProfile p;
  p.id = text(j, path, "id");
  p.display_name = text(j, path, "display_name");

  const std::string up = join(path, "units");
  check_keys(j["units"], up, {"mass", "arm", "volume"});
  p.mass_unit = unit_of(j["units"]["mass"], join(up, "mass"), Category::mass);
  p.arm_unit = unit_of(j["units"]["arm"], join(up, "arm"), Category::distance);
  p.volume_unit = unit_of(j["units"]["volume"], join(up, "volume"), Category::volume);
  const Unit m = p.mass_unit, a = p.arm_unit;

  const std::string ep = join(path, "empty");
  check_keys(j["empty"], ep, {"weight", "arm"});
  p.empty_weight = quantity_in(j["empty"], ep, "weight", m);
  p.empty_arm = quantity_in(j["empty"], ep, "arm", a);

  const std::string sp = join(path, "stations");
  if (!j["stations"].is_array()) throw ValidationError(sp, "expected an array");
  for (std::size_t i = 0; i < j["stations"].size(); ++i) {
    const json& s = j["stations"][i];
    const std::string p_i = index(sp, i);
    check_keys(s, p_i, {"name", "arm", "max_load"});
    p.stations.push_back({text(s, p_i, "name"), quantity_in(s, p_i, "arm", a), quantity_in(s, p_i, "max_load", m)});
  }

  const std::string fp = join(path, "fuel");
  check_keys(j["fuel"], fp, {"arm", "usable_capacity", "density"});
  p.fuel.arm = quantity_in(j["fuel"], fp, "arm", a);
  p.fuel.usable_capacity = quantity_in(j["fuel"], fp, "usable_capacity", p.volume_unit);
  p.fuel.density = quantity(j["fuel"], fp, "density", Category::density);

  const std::string lp = join(path, "limits");
  check_keys(j["limits"], lp, {"max_ramp", "max_takeoff", "max_landing"}, {"max_zero_fuel"});
  p.limits.max_ramp = quantity_in(j["limits"], lp, "max_ramp", m);
  p.limits.max_takeoff = quantity_in(j["limits"], lp, "max_takeoff", m);
  p.limits.max_landing = quantity_in(j["limits"], lp, "max_landing", m);
  if (j["limits"].contains("max_zero_fuel")) p.limits.max_zero_fuel = quantity_in(j["limits"], lp, "max_zero_fuel", m);

  const std::string envp = join(path, "envelopes");
  if (!j["envelopes"].is_array()) throw ValidationError(envp, "expected an array");
  for (std::size_t i = 0; i < j["envelopes"].size(); ++i) {
    const json& e = j["envelopes"][i];
    const std::string p_i = index(envp, i);
    check_keys(e, p_i, {"name", "axes", "vertices"});
    const std::string ap = join(p_i, "axes");
    check_keys(e["axes"], ap, {"arm", "weight"});
    const Unit xa = unit_of(e["axes"]["arm"], join(ap, "arm"), Category::distance);
    const Unit ya = unit_of(e["axes"]["weight"], join(ap, "weight"), Category::mass);
    p.envelopes.push_back({text(e, p_i, "name"), decode_vertices(e["vertices"], join(p_i, "vertices"), xa, a, ya, m)});
  }

  validated(path, [&] { weightbalance::validate(p); });
  return p;
}

json encode(const performance::FactorTable& t) {
  return json{{"id", t.id},
              {"display_name", t.display_name},
              {"version", t.version},
              {"takeoff", encode_phase(t.takeoff)},
              {"landing", encode_phase(t.landing)}};
}

performance::FactorTable decode_factor_table(const json& j) {
  const std::string path = "payload";
  check_keys(j, path, {"id", "display_name", "version", "takeoff", "landing"});
  performance::FactorTable t;
  t.id = text(j, path, "id");
  t.display_name = text(j, path, "display_name");
  t.version = text(j, path, "version");
  t.takeoff = decode_phase(j["takeoff"], join(path, "takeoff"));
  t.landing = decode_phase(j["landing"], join(path, "landing"));
  if (t.id.empty()) throw ValidationError(join(path, "id"), "identifier is required");
  validated(path, [&] { performance::validate(t); });
  return t;
}

json encode(const carbicing::IcingChart& c) {
  json regions = json::array();
  for (const auto& r : c.regions) {
    regions.push_back({{"label", r.label},
                       {"category", carbicing::to_string(r.category)},
                       {"power_context", carbicing::to_string(r.power)},
                       {"vertices", encode_vertices(r.polygon)}});
  }
  return json{{"id", c.id},
              {"display_name", c.display_name},
              {"version", c.version},
              {"domain",
               {{"oat_min", q(c.domain.oat_min, Unit::degc)},
                {"oat_max", q(c.domain.oat_max, Unit::degc)},
                {"dew_min", q(c.domain.dew_min, Unit::degc)}}},
              {"axes", {{"oat", "degc"}, {"dew_point", "degc"}}},
              {"regions", regions}};
}

carbicing::IcingChart decode_icing_chart(const json& j) {
  const std::string path = "payload";
  check_keys(j, path, {"id", "display_name", "version", "domain", "axes", "regions"});
  carbicing::IcingChart c;
  c.id = text(j, path, "id");
  c.display_name = text(j, path, "display_name");
  c.version = text(j, path, "version");

  const std::string dp = join(path, "domain");
  check_keys(j["domain"], dp, {"oat_min", "oat_max", "dew_min"});
  c.domain.oat_min = quantity_in(j["domain"], dp, "oat_min", Unit::degc);
  c.domain.oat_max = quantity_in(j["domain"], dp, "oat_max", Unit::degc);
  c.domain.dew_min = quantity_in(j["domain"], dp, "dew_min", Unit::degc);

  const std::string ap = join(path, "axes");
  check_keys(j["axes"], ap, {"oat", "dew_point"});
  const Unit xu = unit_of(j["axes"]["oat"], join(ap, "oat"), Category::temperature);
  const Unit yu = unit_of(j["axes"]["dew_point"], join(ap, "dew_point"), Category::temperature);

  const std::string rp = join(path, "regions");
  if (!j["regions"].is_array()) throw ValidationError(rp, "expected an array");
  for (std::size_t i = 0; i < j["regions"].size(); ++i) {
    const json& r = j["regions"][i];
    const std::string p_i = index(rp, i);
    check_keys(r, p_i, {"label", "category", "power_context", "vertices"});
    carbicing::Region region;
    region.label = text(r, p_i, "label");
    validated(p_i, [&] {
      region.category = carbicing::parse_severity(text(r, p_i, "category"));
      region.power = carbicing::parse_power_context(text(r, p_i, "power_context"));
    });
    region.polygon = decode_vertices(r["vertices"], join(p_i, "vertices"), xu, Unit::degc, yu, Unit::degc);
    c.regions.push_back(std::move(region));
  }
  validated(path, [&] { carbicing::validate(c); });
  return c;
}

json to_json(const DataBundle& b) {
  json j;
  j["schema_version"] = b.schema_version;
  j["kind"] = to_string(b.kind());
  j["provenance"] = b.provenance;
  if (b.kind() != Kind::aircraft_profile) j["default"] = b.is_default;
  j["payload"] = std::visit([](const auto& p) { return encode(p); }, b.payload);
  return j;
}

DataBundle from_json(const json& j) {
  check_keys(j, "", {"schema_version", "kind", "provenance", "payload"}, {"default"});
  const json& v = j["schema_version"];
  if (!v.is_number_integer()) throw ValidationError("schema_version", "expected an integer");
  DataBundle b;
  b.schema_version = v.get<int>();
  if (b.schema_version < kMinSchemaVersion || b.schema_version > kMaxSchemaVersion) {
    throw ValidationError("schema_version", "unsupported schema version " + std::to_string(b.schema_version) +
                                                " (supported: " + std::to_string(kMinSchemaVersion) + " to " +
                                                std::to_string(kMaxSchemaVersion) + ")");
  }
  const Kind kind = parse_kind(text(j, "", "kind"));
  b.provenance = text(j, "", "provenance");
  if (b.provenance.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw ValidationError("provenance", "a source note is required");
  }
  if (j.contains("default")) {
    if (!j["default"].is_boolean()) throw ValidationError("default", "expected true or false");
    if (kind == Kind::aircraft_profile) throw ValidationError("default", "only tables and charts have a default");
    b.is_default = j["default"].get<bool>();
  }
  switch (kind) {
    case Kind::aircraft_profile: b.payload = decode_profile(j["payload"]); break;
    case Kind::factor_table: b.payload = decode_factor_table(j["payload"]); break;
    case Kind::icing_chart: b.payload = decode_icing_chart(j["payload"]); break;
  }
  return b;
}

std::string canonical_text(const DataBundle& b) { return to_json(b).dump(2) + "\n"; }

DataBundle parse_bundle(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("", std::string("malformed JSON: ") + e.what());
  }
  return from_json(j);
}

DataBundle load_bundle(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("path", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_bundle(buf.str());
  } catch (const ValidationError& e) {
    throw ValidationError(e.field(), path.filename().string() + ": " + e.message());
  }
}

void save_bundle(const DataBundle& b, const fs::path& path, bool overwrite) {
  if (!overwrite && fs::exists(path)) {
    throw ValidationError("path", path.string() + " already exists; pass overwrite to replace it");
  }
  const std::string out = canonical_text(b);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << out;
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

fs::path data_dir() {
  if (const char* env = std::getenv("AEROCALC_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return AEROCALC_DEFAULT_DATA_DIR;
}

std::vector<CatalogueEntry> list_bundled(const fs::path& dir) {
  std::vector<CatalogueEntry> out;
  for (const char* sub : {"profiles", "factor_tables", "icing_charts"}) {
    const fs::path d = dir / sub;
    if (!fs::is_directory(d)) continue;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(d)) {
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const DataBundle b = load_bundle(f);
      CatalogueEntry entry;
      entry.kind = b.kind();
      entry.path = f;
      entry.is_default = b.is_default;
      std::visit(
          [&](const auto& p) {
            entry.id = p.id;
            entry.display_name = p.display_name;
          },
          b.payload);
      out.push_back(std::move(entry));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const CatalogueEntry& a, const CatalogueEntry& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.id < b.id;
  });
  return out;
}

std::vector<CatalogueEntry> list_bundled() { return list_bundled(data_dir()); }

const weightbalance::AircraftProfile* DataSet::find_profile(std::string_view id) const {
  for (const auto& p : profiles) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

DataSet load_data_set(const fs::path& dir) {
  DataSet ds;
  ds.factor_table = performance::default_factor_table();
  ds.icing_chart = carbicing::default_chart();
  ds.catalogue = list_bundled(dir);
  for (const auto& entry : ds.catalogue) {
    if (entry.kind == Kind::aircraft_profile) {
      ds.profiles.push_back(std::get<weightbalance::AircraftProfile>(load_bundle(entry.path).payload));
    } else if (entry.is_default && entry.kind == Kind::factor_table) {
      ds.factor_table = std::get<performance::FactorTable>(load_bundle(entry.path).payload);
    } else if (entry.is_default && entry.kind == Kind::icing_chart) {
      ds.icing_chart = std::get<carbicing::IcingChart>(load_bundle(entry.path).payload);
    }
  }
  return ds;
}

}  // namespace aerocalc::bundle
