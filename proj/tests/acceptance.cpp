// Acceptance suite: one line per criterion, exit status 1 if any fails.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <algorithm>
#include <map>
#include <sys/wait.h>
#include <string>
#include <vector>

#include "httplib.h"

#include "aerocalc/atmosphere.hpp"
#include "aerocalc/bundle.hpp"
#include "aerocalc/engine.hpp"
#include "aerocalc/holding.hpp"
#include "aerocalc/performance.hpp"
#include "aerocalc/server.hpp"
#include "aerocalc/units.hpp"
#include "aerocalc/weightbalance.hpp"
#include "aerocalc/windnav.hpp"
#include "oracles.hpp"

using namespace aerocalc;
using engine::json;
using units::Quantity;
using units::Unit;

namespace {

int failures = 0;

void report(bool ok, const char* name, const std::string& detail) {
  std::printf("%s  %-28s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

json q(double v, const char* unit) { return {{"value", v}, {"unit", unit}}; }

const engine::Engine& eng() {
  static const engine::Engine e(bundle::load_data_set(AEROCALC_TEST_DATA_DIR));
  return e;
}

// ---------------------------------------------------------------------------

void tailwind_factor() {
  const double f = performance::tailwind_factor({5, Unit::kt}, {55, Unit::kt});
  const double tenth = performance::tailwind_factor({5.5, Unit::kt}, {55, Unit::kt});
  report(std::abs(f - 1.182) <= 0.0005 && tenth == 1.2, "tailwind factor",
         fmt("5 kt / V_LO 55 kt -> %.5f (1.182 +-0.0005); 10%% of V_LO -> %.17g (exactly 1.2)", f, tenth));
}

void general_safety() {
  const auto t = performance::default_factor_table();
  performance::Conditions c;
  c.weight_ratio = 1.15;
  c.elevation = {2500, Unit::ft};
  c.oat = {28, Unit::degc};
  c.tailwind = Quantity{4, Unit::kt};
  c.reference_speed = Quantity{60, Unit::kt};
  c.slope_percent = 1.5;
  c.surface = performance::Surface::wet_grass;
  bool ok = true;
  double worst = 0.0;
  for (auto phase : {performance::Phase::takeoff, performance::Phase::landing}) {
    const auto env = performance::environmental_distance({500, Unit::m}, c, t, phase, performance::Mode::continuous);
    const auto fin = performance::apply_general_safety(env, t);
    const double g = phase == performance::Phase::takeoff ? 1.33 : 1.43;
    ok = ok && fin.general_factor && *fin.general_factor == g && fin.entries.size() == env.entries.size();
    for (std::size_t i = 0; ok && i < env.entries.size(); ++i) ok = fin.entries[i].factor == env.entries[i].factor;
    double product = 1.0;
    for (const auto& e : fin.entries) product *= e.factor;
    worst = std::max(worst, std::abs(fin.environmental_distance.value - 500.0 * product) / (500.0 * product));
    worst = std::max(worst, std::abs(fin.final_distance->value - fin.environmental_distance.value * g) /
                                fin.final_distance->value);
  }
  report(ok && worst <= 1e-9, "general safety factors",
         fmt("takeoff x1.33, landing x1.43 as a separate stage; chain identity max rel err %.2e (<= 1e-9)", worst));
}

json fixture(const char* op, bool imperial) {
  json inputs;
  if (std::string(op) == "todr") {
    inputs = {{"base_distance", imperial ? q(1280, "ft") : q(390, "m")},
              {"weight_ratio", q(1.1, "ratio")},
              {"elevation", q(1500, "ft")},
              {"oat", imperial ? q(71.6, "degf") : q(22, "degc")},
              {"tailwind", q(5, "kt")},
              {"reference_speed", q(55, "kt")},
              {"slope", q(2, "percent")},
              {"surface", "dry_grass"}};
  } else {
    inputs = {{"base_distance", imperial ? q(1805, "ft") : q(550, "m")},
              {"weight_ratio", q(1.1, "ratio")},
              {"elevation", q(1500, "ft")},
              {"oat", imperial ? q(71.6, "degf") : q(22, "degc")},
              {"tailwind", q(3, "kt")},
              {"reference_speed", q(60, "kt")},
              {"slope", q(-2, "percent")},
              {"surface", "wet_grass"}};
  }
  return eng().handle({{"operation", op}, {"inputs", inputs}, {"units", imperial ? "imperial" : "metric"}});
}

void distance_fixtures() {
  struct Case {
    const char* op;
    double expected_ratio;
  };
  bool ok = true;
  std::string detail;
  for (const Case& c : {Case{"todr", 1220.0 / 390.0}, Case{"ldr", 1600.0 / 550.0}}) {
    const auto m = fixture(c.op, false);
    const auto i = fixture(c.op, true);
    if (!m["ok"].get<bool>() || !i["ok"].get<bool>()) {
      ok = false;
      detail += std::string(c.op) + " failed; ";
      continue;
    }
    const double ratio = m["result"]["final_to_base_ratio"]["value"];
    const double metric_final = m["result"]["final_distance"]["value"];
    const double imperial_final_m =
        units::value_in({i["result"]["final_distance"]["value"].get<double>(), Unit::ft}, Unit::m);
    const double agree = std::abs(metric_final - imperial_final_m) / metric_final;
    const bool within = std::abs(ratio - c.expected_ratio) <= 0.15 * c.expected_ratio && agree <= 0.001 &&
                        m["result"]["final_distance"]["unit"] == "m" && i["result"]["final_distance"]["unit"] == "ft";
    ok = ok && within;
    char buf[200];
    std::snprintf(buf, sizeof buf, "%s ratio %.3f vs %.2f (+-15%%), final %.0f m, metric vs imperial %.4f%%; ", c.op,
                  ratio, c.expected_ratio, metric_final, 100.0 * agree);
    detail += buf;
  }
  report(ok, "distance fixtures", detail);
}

void holding_entry() {
  const auto e = holding::classify_entry(303, 110, holding::Turn::right);
  holding::HoldSpec s;
  s.inbound_course_deg = 303;
  s.turn = holding::Turn::right;
  s.tas_kt = 100;
  s.leg_time_s = 60;
  s.wind = windnav::make_wind(0, 0);
  const auto p = holding::plan_hold(s, 110);
  const bool ok = e == holding::Entry::teardrop && p.outbound_heading_deg == 123.0 && p.outbound_time_s == 60.0 &&
                  p.inbound_heading_deg == 303.0;
  report(ok, "holding entry",
         std::string("303 inbound, right, heading 110 -> ") + std::string(holding::to_string(e)) +
             fmt("; zero wind outbound %.17g deg for %.17g s", p.outbound_heading_deg, p.outbound_time_s));
}

void wind_triangle() {
  oracle::Gen g(4242);
  double worst_gs = 0, worst_hdg = 0;
  for (int i = 0; i < 1000; ++i) {
    const double course = g.uniform(0, 360), tas = g.uniform(60, 300), wd = g.uniform(0, 360), ws = g.uniform(0, 0.9 * tas);
    const auto s = windnav::solve_wind_triangle(course, tas, windnav::make_wind(wd, ws));
    const auto o = oracle::wind_triangle(course, tas, wd, ws);
    worst_gs = std::max(worst_gs, std::abs(s.ground_speed_kt - o.ground_speed));
    worst_hdg = std::max(worst_hdg, std::abs(oracle::angle_diff(s.true_heading_deg, o.heading)));
  }
  const auto calm = windnav::solve_wind_triangle(123, 110, windnav::make_wind(0, 0));
  const bool calm_ok = calm.wind_correction_angle_deg == 0 && calm.true_heading_deg == 123 && calm.ground_speed_kt == 110;
  const auto c = windnav::wind_components(230, windnav::make_wind(285, 12));
  const double hh = 12 * std::cos(oracle::rad(55)), hc = 12 * std::sin(oracle::rad(55));
  const double comp_err = std::max(std::abs(c.headwind_kt - hh), std::abs(c.crosswind_kt - hc));
  report(worst_gs < 1e-6 && worst_hdg < 1e-6 && calm_ok && comp_err <= 0.01, "wind triangle",
         fmt("1000 random: max |dGS| %.1e kt, max |dHDG| %.1e deg; runway 23 wind 285/12 -> %.2f head %.2f cross", worst_gs,
             worst_hdg, c.headwind_kt, c.crosswind_kt) +
             (calm_ok ? "; zero wind exact" : "; zero wind NOT exact"));
}

void isa() {
  const auto s = atmosphere::isa_conditions({0, Unit::ft});
  const bool triple = s.temperature.value == 15.0 && s.pressure.value == 1013.25 &&
                      s.density.value == 101325.0 / (287.05287 * 288.15) && std::abs(s.density.value - 1.225) < 5e-4;
  const double tropo = atmosphere::isa_conditions({36089, Unit::ft}).temperature.value;
  double worst_da = 0;
  for (double h : {0.0, 2000.0, 5000.0, 10000.0, 20000.0}) {
    const auto t = atmosphere::isa_conditions({h, Unit::ft}).temperature;
    worst_da = std::max(worst_da, std::abs(atmosphere::density_altitude({h, Unit::ft}, t).value - h));
  }
  double worst_gas = 0;
  for (double h = -2000; h <= 65000; h += 500) {
    const auto a = atmosphere::isa_conditions({h, Unit::ft});
    const double ideal = a.pressure.value * 100 / (287.05287 * (a.temperature.value + 273.15));
    worst_gas = std::max(worst_gas, std::abs(a.density.value - ideal) / ideal);
  }
  report(triple && std::abs(tropo + 56.5) <= 0.01 && worst_da <= 1.0 && worst_gas <= 1e-9, "ISA",
         fmt("sea level %.6f kg/m3; 36089 ft -> %.4f degC; DA round trip max %.2e ft; ideal gas max %.1e", s.density.value,
             tropo, worst_da, worst_gas));
}

void weight_balance() {
  const auto prof = eng().data().find_profile("c172m");
  int mismatches = 0, checked = 0;
  oracle::Gen g(2024);
  for (const auto& env : prof->envelopes) {
    std::vector<oracle::P> op;
    for (const auto& v : env.polygon) op.push_back({v.x, v.y});
    auto agree = [&](geometry::Point p) {
      const auto o = oracle::ray_cast(op, {p.x, p.y});
      const auto v = weightbalance::check_envelope(env, p).verdict;
      const auto want = o == oracle::Where::inside    ? geometry::Verdict::inside
                        : o == oracle::Where::outside ? geometry::Verdict::outside
                                                      : geometry::Verdict::on_boundary;
      ++checked;
      if (v != want) ++mismatches;
    };
    for (int i = 0; i < 10000; ++i) agree({g.uniform(33, 49), g.uniform(1400, 2400)});
    for (std::size_t i = 0; i < env.polygon.size(); ++i) {
      const auto a = env.polygon[i], b = env.polygon[(i + 1) % env.polygon.size()];
      for (int k = 0; k < 20; ++k) agree({a.x + k / 20.0 * (b.x - a.x), a.y + k / 20.0 * (b.y - a.y)});
    }
  }
  // Additivity and scale invariance.
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    const double a = g.uniform(0, 400), b = g.uniform(0, 300);
    auto ld = [&](const weightbalance::AircraftProfile& p, std::map<std::string, Quantity> m) {
      return weightbalance::compute_loading(p, m, {0, Unit::usgal}, {0, Unit::usgal}, {0, Unit::usgal})
          .at(weightbalance::LoadingPhase::zero_fuel);
    };
    const auto both = ld(*prof, {{"front_seats", {a, Unit::lb}}, {"rear_seats", {b, Unit::lb}}});
    const auto one = ld(*prof, {{"front_seats", {a, Unit::lb}}});
    const auto two = ld(*prof, {{"rear_seats", {b, Unit::lb}}});
    const double empty = prof->empty_weight * prof->empty_arm;
    worst = std::max(worst, std::abs(both.moment - (one.moment + two.moment - empty)) / both.moment);
    const double k = g.log_uniform(0.1, 10);
    auto scaled = *prof;
    scaled.empty_weight *= k;
    for (auto& s : scaled.stations) s.max_load *= k;
    const auto sb = ld(scaled, {{"front_seats", {a * k, Unit::lb}}, {"rear_seats", {b * k, Unit::lb}}});
    worst = std::max(worst, std::abs(sb.moment - k * both.moment) / (k * both.moment));
    worst = std::max(worst, std::abs(sb.cg_arm - both.cg_arm) / both.cg_arm);
  }
  weightbalance::AircraftProfile p;
  p.id = "hand";
  p.empty_weight = 1500;
  p.empty_arm = 39.0;
  p.stations = {{"pilot", 37.0, 400}};
  p.fuel = {48, 40, {6, Unit::lbusgal}};
  p.limits = {2000, 2000, 2000, std::nullopt};
  p.envelopes = {{"box", {{30, 1000}, {50, 1000}, {50, 2000}, {30, 2000}}}};
  const double cg = weightbalance::compute_loading(p, {{"pilot", {170, Unit::lb}}}, {0, Unit::usgal}, {0, Unit::usgal},
                                                   {0, Unit::usgal})
                        .at(weightbalance::LoadingPhase::zero_fuel)
                        .cg_arm;
  report(mismatches == 0 && worst <= 1e-12 && std::abs(cg - 38.796) <= 0.001, "weight and balance",
         fmt("%.0f envelope points, %.0f oracle mismatches; additivity/scale max rel %.1e; two-station cg %.4f in",
             checked, mismatches, worst, cg));
}

void load_factor() {
  const double n60 = performance::load_factor(60);
  double worst = 0;
  for (int i = 0; i <= 8500; ++i) {
    const double b = i * 0.01;
    worst = std::max(worst, std::abs(performance::load_factor(b) * std::cos(oracle::rad(b)) - 1.0));
  }
  report(n60 == 2.0 && worst <= 1e-12, "load factor", fmt("n(60) = %.17g; max |n cos - 1| over [0, 85] %.1e", n60, worst));
}

void units_criterion() {
  double worst = 0;
  for (const auto& a : units::unit_table()) {
    for (const auto& b : units::list_units(a.category)) {
      for (const auto& c : units::list_units(a.category)) {
        for (int e = -6; e <= 9; ++e) {
          const double x = std::pow(10.0, e) * 1.37;
          auto rel = [&](double got, double want, Unit u) {
            // Affine scales: error against the largest magnitude on any temperature scale.
            if (a.category == units::Category::temperature) {
              double scale = 0.0;
              for (const auto& t : units::list_units(a.category))
                scale = std::max(scale, std::abs(units::value_in({want, u}, t.unit)));
              return std::abs(units::value_in({got, u}, Unit::k) - units::value_in({want, u}, Unit::k)) / scale;
            }
            return std::abs(got - want) / std::abs(want);
          };
          const double there = units::value_in({x, a.unit}, b.unit);
          worst = std::max(worst, rel(units::value_in({there, b.unit}, a.unit), x, a.unit));
          const double via = units::value_in({there, b.unit}, c.unit);
          worst = std::max(worst, rel(via, units::value_in({x, a.unit}, c.unit), c.unit));
        }
      }
    }
  }
  const double f390 = units::value_in({390, Unit::m}, Unit::ft), f550 = units::value_in({550, Unit::m}, Unit::ft);
  report(worst <= 1e-9 && std::abs(f390 - 1280) <= 1 && std::abs(f550 - 1805) <= 1, "units",
         fmt("round trip/transitivity max rel %.1e; 390 m = %.1f ft, 550 m = %.1f ft", worst, f390, f550));
}

void stepped_vs_continuous() {
  oracle::Gen g(16180);
  const auto t = performance::default_factor_table();
  int violations = 0, n = 0;
  for (int i = 0; i < 5000; ++i) {
    performance::Conditions c;
    c.weight_ratio = g.uniform(0.8, 1.3);
    c.elevation = {g.uniform(0, 8000), Unit::ft};
    c.oat = {g.uniform(-10, 40), Unit::degc};
    c.reference_speed = Quantity{g.uniform(45, 90), Unit::kt};
    c.tailwind = Quantity{g.uniform(0, 0.5 * c.reference_speed->value), Unit::kt};
    c.slope_percent = g.uniform(-4, 4);
    c.surface = performance::all_surfaces()[g.integer(0, 5)];
    for (auto phase : {performance::Phase::takeoff, performance::Phase::landing}) {
      auto run = [&](performance::Mode m) {
        return performance::apply_general_safety(performance::environmental_distance({400, Unit::m}, c, t, phase, m), t)
            .final_distance->value;
      };
      ++n;
      if (run(performance::Mode::stepped) < run(performance::Mode::continuous)) ++violations;
    }
  }
  report(violations == 0, "stepped >= continuous", fmt("%.0f random condition sets, %.0f violations", n, violations));
}

// ---------------------------------------------------------------------------

struct Scripted {
  std::vector<std::string> cli;
  std::string operation;
  json body;
};

std::vector<Scripted> scripted() {
  return {
      {{"convert", "100", "kt", "kmh"}, "convert", {{"inputs", {{"value", q(100, "kt")}, {"to", "kmh"}}}}},
      {{"isa", "--altitude", "10000ft"}, "isa", {{"inputs", {{"altitude", q(10000, "ft")}}}}},
      {{"pa", "--field-elevation", "1000ft", "--qnh", "1000hpa"}, "pa",
       {{"inputs", {{"field_elevation", q(1000, "ft")}, {"qnh", q(1000, "hpa")}}}}},
      {{"da", "--pressure-altitude", "5000ft", "--oat", "25degc"}, "da",
       {{"inputs", {{"pressure_altitude", q(5000, "ft")}, {"oat", q(25, "degc")}}}}},
      {{"tas", "--cas", "120kt", "--pressure-altitude", "10000ft", "--oat", "0degc"}, "tas",
       {{"inputs", {{"cas", q(120, "kt")}, {"pressure_altitude", q(10000, "ft")}, {"oat", q(0, "degc")}}}}},
      {{"mach", "--tas", "661.48kt", "--oat", "15degc"}, "mach", {{"inputs", {{"tas", q(661.48, "kt")}, {"oat", q(15, "degc")}}}}},
      {{"humidity", "--oat", "20degc", "--dew-point", "10degc"}, "humidity",
       {{"inputs", {{"oat", q(20, "degc")}, {"dew_point", q(10, "degc")}}}}},
      {{"wind-components", "--runway", "23", "--wind", "285/12"}, "wind-components",
       {{"inputs", {{"runway_heading", q(230, "deg")}, {"wind_direction", q(285, "deg")}, {"wind_speed", q(12, "kt")}}}}},
      {{"wind-triangle", "--true-course", "090deg", "--tas", "100kt", "--wind", "360/20"}, "wind-triangle",
       {{"inputs", {{"true_course", q(90, "deg")}, {"tas", q(100, "kt")}, {"wind_direction", q(360, "deg")}, {"wind_speed", q(20, "kt")}}}}},
      {{"clock-code", "--angle-off", "55deg", "--wind-speed", "12kt"}, "clock-code",
       {{"inputs", {{"angle_off", q(55, "deg")}, {"wind_speed", q(12, "kt")}}}}},
      {{"gc", "--from-lat", "51", "--from-lon", "0", "--to-lat", "52", "--to-lon", "1"}, "gc",
       {{"inputs", {{"from_lat", q(51, "deg")}, {"from_lon", q(0, "deg")}, {"to_lat", q(52, "deg")}, {"to_lon", q(1, "deg")}}}}},
      {{"rhumb", "--from-lat", "50", "--from-lon", "-10", "--to-lat", "40", "--to-lon", "-20"}, "rhumb",
       {{"inputs", {{"from_lat", q(50, "deg")}, {"from_lon", q(-10, "deg")}, {"to_lat", q(40, "deg")}, {"to_lon", q(-20, "deg")}}}}},
      {{"los", "--aircraft-height", "10000ft"}, "los", {{"inputs", {{"aircraft_height", q(10000, "ft")}}}}},
      {{"hold-entry", "--inbound-course", "303", "--arrival-heading", "110", "--turn", "right"}, "hold-entry",
       {{"inputs", {{"inbound_course", q(303, "deg")}, {"arrival_heading", q(110, "deg")}, {"turn", "right"}}}}},
      {{"hold-plan", "--inbound-course", "303", "--arrival-heading", "110", "--tas", "100kt", "--wind", "020/10"}, "hold-plan",
       {{"inputs", {{"inbound_course", q(303, "deg")}, {"arrival_heading", q(110, "deg")}, {"tas", q(100, "kt")},
                    {"wind_direction", q(20, "deg")}, {"wind_speed", q(10, "kt")}}}}},
      {{"--units", "imperial", "todr", "--base", "390m", "--weight-ratio", "1.1", "--elevation", "1500ft", "--oat", "22degc",
        "--tailwind", "5kt", "--vlo", "55kt", "--slope", "2%", "--surface", "dry_grass"},
       "todr",
       {{"units", "imperial"},
        {"inputs", {{"base_distance", q(390, "m")}, {"weight_ratio", q(1.1, "ratio")}, {"elevation", q(1500, "ft")},
                    {"oat", q(22, "degc")}, {"tailwind", q(5, "kt")}, {"reference_speed", q(55, "kt")},
                    {"slope", q(2, "percent")}, {"surface", "dry_grass"}}}}},
      {{"ldr", "--base", "550m", "--weight-ratio", "1.1", "--elevation", "1500ft", "--oat", "22degc", "--tailwind", "3kt",
        "--vref", "60kt", "--slope", "-2%", "--surface", "wet_grass", "--mode", "stepped"},
       "ldr",
       {{"inputs", {{"base_distance", q(550, "m")}, {"weight_ratio", q(1.1, "ratio")}, {"elevation", q(1500, "ft")},
                    {"oat", q(22, "degc")}, {"tailwind", q(3, "kt")}, {"reference_speed", q(60, "kt")},
                    {"slope", q(-2, "percent")}, {"surface", "wet_grass"}, {"mode", "stepped"}}}}},
      {{"load-factor", "--bank", "60deg", "--stall-speed", "50kt"}, "load-factor",
       {{"inputs", {{"bank", q(60, "deg")}, {"stall_speed", q(50, "kt")}}}}},
      {{"--units", "metric", "wb", "--profile", "c172m", "--load", "front_seats=340lb", "--load", "baggage=30lb", "--fuel",
        "30usgal", "--taxi-fuel", "1usgal", "--trip-fuel", "12usgal"},
       "wb",
       {{"units", "metric"},
        {"inputs", {{"profile", "c172m"}, {"loads", {{"front_seats", q(340, "lb")}, {"baggage", q(30, "lb")}}},
                    {"fuel", q(30, "usgal")}, {"taxi_fuel", q(1, "usgal")}, {"trip_fuel", q(12, "usgal")}}}}},
      {{"carb-icing", "--oat", "15degc", "--dew-point", "13degc"}, "carb-icing",
       {{"inputs", {{"oat", q(15, "degc")}, {"dew_point", q(13, "degc")}}}}},
  };
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

std::pair<int, std::string> run_cli_process(const std::vector<std::string>& args) {
  std::string cmd = shell_quote(AEROCALC_CLI_PATH) + " --json";
  for (const auto& a : args) cmd += " " + shell_quote(a);
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

void cli_service_parity() {
  setenv("AEROCALC_DATA_DIR", AEROCALC_TEST_DATA_DIR, 1);
  server::Server srv(eng());
  const int port = srv.bind("127.0.0.1", 0);
  srv.start();
  httplib::Client client("127.0.0.1", port);
  const auto cases = scripted();
  std::vector<std::string> ops_seen;
  int identical = 0;
  std::string first_bad;
  for (const auto& c : cases) {
    const auto [code, cli_out] = run_cli_process(c.cli);
    const auto res = client.Post(("/v1/" + c.operation).c_str(), c.body.dump(), "application/json");
    const bool ok = code == 0 && res && res->status == 200 && res->body == cli_out &&
                    json::parse(cli_out)["ok"] == true;
    if (ok) ++identical;
    else if (first_bad.empty()) first_bad = c.operation;
    ops_seen.push_back(c.operation);
  }
  srv.stop();
  std::sort(ops_seen.begin(), ops_seen.end());
  ops_seen.erase(std::unique(ops_seen.begin(), ops_seen.end()), ops_seen.end());
  report(identical == static_cast<int>(cases.size()) && cases.size() >= 20, "CLI --json equals service",
         fmt("%.0f of %.0f scripted inputs byte-identical across %.0f operations", identical, cases.size(),
             ops_seen.size()) +
             (first_bad.empty() ? "" : "; first mismatch: " + first_bad));
}

}  // namespace

int main() {
  tailwind_factor();
  general_safety();
  distance_fixtures();
  holding_entry();
  wind_triangle();
  isa();
  weight_balance();
  load_factor();
  units_criterion();
  stepped_vs_continuous();
  cli_service_parity();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
