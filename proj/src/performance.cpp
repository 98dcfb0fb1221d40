#include "aerocalc/performance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "aerocalc/angles.hpp"
#include "aerocalc/atmosphere.hpp"
#include "aerocalc/error.hpp"

namespace aerocalc::performance {

using units::Category;
using units::Quantity;
using units::Unit;

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

void check_rule(const LinearRule& r, const std::string& name, bool adverse) {
  if (!(r.step > 0.0) || !std::isfinite(r.step)) throw ValidationError(name + ".step", "step must be positive");
  if (!std::isfinite(r.factor_per_step) || !(r.factor_per_step > 0.0)) {
    throw ValidationError(name + ".factor_per_step", "factor must be positive");
  }
  if (adverse && r.factor_per_step < 1.0) {
    throw ValidationError(name + ".factor_per_step", "factor for an adverse condition must be >= 1");
  }
}

void check_phase(const PhaseFactors& f, Phase phase) {
  const std::string p{to_string(phase)};
  check_rule(f.weight, p + ".weight", true);
  check_rule(f.elevation, p + ".elevation", true);
  check_rule(f.temperature, p + ".temperature", true);
  check_rule(f.tailwind, p + ".tailwind", true);
  check_rule(f.slope_adverse, p + ".slope_adverse", true);
  check_rule(f.slope_favourable, p + ".slope_favourable", false);
  if (f.headwind) {
    check_rule(*f.headwind, p + ".headwind", false);
    if (f.headwind->factor_per_step > 1.0) {
      throw ValidationError(p + ".headwind.factor_per_step", "headwind credit must be <= 1");
    }
    if (!(f.headwind_min_factor > 0.0 && f.headwind_min_factor <= 1.0)) {
      throw ValidationError(p + ".headwind.min_factor", "credit floor must lie in (0, 1]");
    }
  }
  for (Surface s : all_surfaces()) {
    auto it = f.surface.find(s);
    if (it == f.surface.end()) {
      throw ValidationError(p + ".surface." + std::string(to_string(s)), "surface factor missing");
    }
    if (!(it->second >= 1.0) || !std::isfinite(it->second)) {
      throw ValidationError(p + ".surface." + std::string(to_string(s)), "surface factor must be >= 1");
    }
  }
  const double expected = phase == Phase::takeoff ? kTakeoffSafetyFactor : kLandingSafetyFactor;
  if (f.general_safety != expected) {
    throw ValidationError(p + ".general_safety", "general safety factor is fixed at " + fixed(expected, 2));
  }
}

double speed_kt(const Quantity& q, const char* field) {
  units::require_category(q, Category::speed, field);
  const double v = units::value_in(q, Unit::kt);
  if (!std::isfinite(v)) throw ValidationError(field, "value must be finite");
  return v;
}

}  // namespace

std::string_view to_string(Phase p) { return p == Phase::takeoff ? "takeoff" : "landing"; }
std::string_view to_string(Mode m) { return m == Mode::continuous ? "continuous" : "stepped"; }

std::string_view to_string(Surface s) {
  switch (s) {
    case Surface::paved_dry: return "paved_dry";
    case Surface::wet_paved: return "wet_paved";
    case Surface::dry_grass: return "dry_grass";
    case Surface::wet_grass: return "wet_grass";
    case Surface::soft_ground: return "soft_ground";
    case Surface::snow: return "snow";
  }
  return "paved_dry";
}

const std::vector<Surface>& all_surfaces() {
  static const std::vector<Surface> all{Surface::paved_dry, Surface::wet_paved, Surface::dry_grass,
                                        Surface::wet_grass, Surface::soft_ground, Surface::snow};
  return all;
}

Phase parse_phase(std::string_view text) {
  if (text == "takeoff") return Phase::takeoff;
  if (text == "landing") return Phase::landing;
  throw ValidationError("phase", "phase must be 'takeoff' or 'landing'");
}

Mode parse_mode(std::string_view text) {
  if (text == "continuous") return Mode::continuous;
  if (text == "stepped") return Mode::stepped;
  throw ValidationError("mode", "mode must be 'continuous' or 'stepped'");
}

Surface parse_surface(std::string_view text) {
  for (Surface s : all_surfaces()) {
    if (to_string(s) == text) return s;
  }
  throw ValidationError("surface", "unknown surface '" + std::string(text) +
                                       "' (expected paved_dry, wet_paved, dry_grass, wet_grass, soft_ground or snow)");
}

void validate(const FactorTable& table) {
  check_phase(table.takeoff, Phase::takeoff);
  check_phase(table.landing, Phase::landing);
}

void validate(const Conditions& c) {
  if (!std::isfinite(c.weight_ratio) || c.weight_ratio < 0.0) {
    throw ValidationError("weight_ratio", "weight ratio must be a non-negative number");
  }
  units::require_category(c.elevation, Category::distance, "elevation");
  const double elevation_ft = units::value_in(c.elevation, Unit::ft);
  if (!(elevation_ft >= atmosphere::constants::kMinAltitudeFt && elevation_ft <= atmosphere::constants::kMaxAltitudeFt)) {
    throw ValidationError("elevation", "elevation is outside the supported ISA band");
  }
  units::require_category(c.oat, Category::temperature, "oat");
  if (!(units::value_in(c.oat, Unit::k) > 0.0)) throw ValidationError("oat", "temperature must be above absolute zero");
  if (c.tailwind && c.headwind) {
    throw ValidationError("tailwind", "give either a tailwind or a headwind component, not both");
  }
  std::optional<double> vref;
  if (c.reference_speed) {
    vref = speed_kt(*c.reference_speed, "reference_speed");
    if (!(*vref > 0.0)) throw ValidationError("reference_speed", "reference speed must be positive");
  }
  if (c.tailwind) {
    const double tw = speed_kt(*c.tailwind, "tailwind");
    if (tw < 0.0) throw ValidationError("tailwind", "tailwind component must be non-negative");
    if (tw > 0.0 && !vref) throw ValidationError("reference_speed", "a tailwind needs the reference speed");
    if (vref && tw > kMaxTailwindFraction * *vref) {
      throw ValidationError("tailwind", "tailwind above " + fixed(100.0 * kMaxTailwindFraction, 0) +
                                            "% of the reference speed is outside the factor law's validity");
    }
  }
  if (c.headwind && speed_kt(*c.headwind, "headwind") < 0.0) {
    throw ValidationError("headwind", "headwind component must be non-negative");
  }
  if (!std::isfinite(c.slope_percent)) throw ValidationError("slope", "slope must be finite");
}

double FactorChain::environmental_product() const {
  double p = 1.0;
  for (const auto& e : entries) p *= e.factor;
  return p;
}

double linear_factor(const LinearRule& rule, double x, Mode mode) {
  double steps = x / rule.step;
  // Unit conversion noise (1000 ft arriving as 1000.0000000000001) must not
  // push a value onto the next tabulated increment.
  if (const double nearest = std::round(steps); std::abs(steps - nearest) < 1e-9) steps = nearest;
  if (mode == Mode::stepped) {
    // Round toward the conservative side: up for penalties, down for credits.
    steps = rule.factor_per_step >= 1.0 ? std::ceil(steps) : std::floor(steps);
  }
  return 1.0 + (rule.factor_per_step - 1.0) * steps;
}

double tailwind_factor(const Quantity& tailwind, const Quantity& reference_speed) {
  const double tw = speed_kt(tailwind, "tailwind");
  const double vref = speed_kt(reference_speed, "reference_speed");
  if (!(vref > 0.0)) throw ValidationError("reference_speed", "reference speed must be positive");
  if (tw < 0.0) throw ValidationError("tailwind", "tailwind component must be non-negative");
  if (tw > kMaxTailwindFraction * vref) {
    throw ValidationError("tailwind", "tailwind above 50% of the reference speed is outside the factor law's validity");
  }
  return linear_factor({0.1, 1.2}, tw / vref, Mode::continuous);
}

FactorChain environmental_distance(const Quantity& base, const Conditions& c, const FactorTable& table,
                                   Phase phase, Mode mode) {
  units::require_category(base, Category::distance, "base_distance");
  if (!(base.value > 0.0) || !std::isfinite(base.value)) {
    throw ValidationError("base_distance", "unfactored distance must be positive");
  }
  validate(c);
  const PhaseFactors& f = table.phase(phase);

  FactorChain chain;
  chain.phase = phase;
  chain.mode = mode;
  chain.base_distance = base;

  const double over_pct = (c.weight_ratio - 1.0) * 100.0;
  chain.entries.push_back({"weight", Quantity{over_pct, Unit::percent},
                           linear_factor(f.weight, std::max(0.0, over_pct), mode),
                           "mass " + fixed(100.0 * c.weight_ratio, 1) + "% of reference"});

  const double elevation_ft = units::value_in(c.elevation, Unit::ft);
  chain.entries.push_back({"elevation", units::convert(c.elevation, Unit::ft),
                           linear_factor(f.elevation, std::max(0.0, elevation_ft), mode), ""});

  const double isa_c = atmosphere::isa_temperature_k(units::value_in(c.elevation, Unit::m)) -
                       atmosphere::constants::kZeroCelsiusK;
  const double deviation = units::value_in(c.oat, Unit::degc) - isa_c;
  chain.entries.push_back({"temperature", units::convert(c.oat, Unit::degc),
                           linear_factor(f.temperature, std::max(0.0, deviation), mode),
                           "ISA" + std::string(deviation >= 0.0 ? "+" : "") + fixed(deviation, 1) + " degC"});

  const char* ref_name = phase == Phase::takeoff ? "V_LO" : "V_ref";
  if (c.headwind && speed_kt(*c.headwind, "headwind") > 0.0) {
    const double hw = speed_kt(*c.headwind, "headwind");
    double factor = 1.0;
    std::string note = "no headwind credit taken";
    if (f.headwind && c.reference_speed) {
      const double frac = hw / speed_kt(*c.reference_speed, "reference_speed");
      factor = std::max(f.headwind_min_factor, linear_factor(*f.headwind, frac, mode));
      note = "headwind " + fixed(100.0 * frac, 1) + "% of " + ref_name;
    }
    chain.entries.push_back({"wind", units::convert(*c.headwind, Unit::kt), factor, note});
  } else {
    const Quantity tw = c.tailwind ? units::convert(*c.tailwind, Unit::kt) : Quantity{0.0, Unit::kt};
    double factor = 1.0;
    std::string note = "calm";
    if (tw.value > 0.0) {
      const double frac = tw.value / speed_kt(*c.reference_speed, "reference_speed");
      factor = linear_factor(f.tailwind, frac, mode);
      note = "tailwind " + fixed(100.0 * frac, 1) + "% of " + ref_name;
    }
    chain.entries.push_back({"wind", tw, factor, note});
  }

  // Up-slope hurts the take-off; down-slope hurts the landing.
  const double adverse_sign = phase == Phase::takeoff ? 1.0 : -1.0;
  const double signed_slope = adverse_sign * c.slope_percent;
  const bool adverse = signed_slope >= 0.0;
  const double slope_factor = adverse ? linear_factor(f.slope_adverse, signed_slope, mode)
                                      : linear_factor(f.slope_favourable, -signed_slope, mode);
  std::string slope_note = c.slope_percent == 0.0 ? "level"
                                                   : (c.slope_percent > 0.0 ? "up-slope" : "down-slope");
  chain.entries.push_back({"slope", Quantity{c.slope_percent, Unit::percent}, slope_factor, slope_note});

  auto it = f.surface.find(c.surface);
  if (it == f.surface.end()) throw ValidationError("surface", "surface has no factor in this table");
  chain.entries.push_back({"surface", std::nullopt, it->second, std::string(to_string(c.surface))});

  chain.environmental_distance = Quantity{base.value * chain.environmental_product(), base.unit};
  return chain;
}

FactorChain apply_general_safety(FactorChain env, const FactorTable& table) {
  const double g = table.phase(env.phase).general_safety;
  env.general_factor = g;
  env.final_distance = Quantity{env.environmental_distance.value * g, env.environmental_distance.unit};
  return env;
}

FactorChain todr(const Quantity& base, const Conditions& c, const FactorTable& table, Mode mode) {
  return apply_general_safety(environmental_distance(base, c, table, Phase::takeoff, mode), table);
}

FactorChain ldr(const Quantity& base, const Conditions& c, const FactorTable& table, Mode mode) {
  return apply_general_safety(environmental_distance(base, c, table, Phase::landing, mode), table);
}

FactorTable default_factor_table() {
  FactorTable t;
  t.id = "caa-ss09";
  t.display_name = "UK CAA Safety Sense Leaflet 09 factors";
  t.version = "2024.1";

  t.takeoff.weight = {10.0, 1.20};
  t.takeoff.elevation = {1000.0, 1.10};
  t.takeoff.temperature = {10.0, 1.10};
  t.takeoff.tailwind = {0.10, 1.20};
  t.takeoff.slope_adverse = {2.0, 1.10};
  t.takeoff.slope_favourable = {2.0, 1.0};
  t.takeoff.surface = {{Surface::paved_dry, 1.0}, {Surface::wet_paved, 1.0},  {Surface::dry_grass, 1.20},
                       {Surface::wet_grass, 1.30}, {Surface::soft_ground, 1.25}, {Surface::snow, 1.25}};
  t.takeoff.general_safety = kTakeoffSafetyFactor;

  t.landing.weight = {10.0, 1.10};
  t.landing.elevation = {1000.0, 1.05};
  t.landing.temperature = {10.0, 1.05};
  t.landing.tailwind = {0.10, 1.20};
  t.landing.slope_adverse = {2.0, 1.10};
  t.landing.slope_favourable = {2.0, 1.0};
  t.landing.surface = {{Surface::paved_dry, 1.0}, {Surface::wet_paved, 1.15},  {Surface::dry_grass, 1.15},
                       {Surface::wet_grass, 1.35}, {Surface::soft_ground, 1.25}, {Surface::snow, 1.25}};
  t.landing.general_safety = kLandingSafetyFactor;
  return t;
}

double load_factor(double bank_deg) {
  if (!std::isfinite(bank_deg) || bank_deg < 0.0 || bank_deg > 85.0) {
    throw ValidationError("bank", "bank angle must lie in [0, 85] degrees; load factor is singular at 90");
  }
  return 1.0 / angles::cosd(bank_deg);
}

double stall_speed_in_turn(double vs_level_kt, double bank_deg) {
  if (!std::isfinite(vs_level_kt) || vs_level_kt < 0.0) {
    throw ValidationError("stall_speed", "level stall speed must be non-negative");
  }
  return vs_level_kt * std::sqrt(load_factor(bank_deg));
}

}  // namespace aerocalc::performance
