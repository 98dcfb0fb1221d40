#include "aerocalc/weightbalance.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "aerocalc/error.hpp"

namespace aerocalc::weightbalance {

using geometry::Normaliser;
using geometry::Point;
using geometry::Verdict;
using units::Category;
using units::Quantity;
using units::Unit;

namespace {

std::string num(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

void require_finite(double v, const std::string& field) {
  if (!std::isfinite(v)) throw ValidationError(field, "value must be finite");
}

double volume_in_profile(const AircraftProfile& p, const Quantity& q, const std::string& field) {
  units::require_category(q, Category::volume, field);
  const double v = units::value_in(q, p.volume_unit);
  if (!std::isfinite(v) || v < 0.0) throw ValidationError(field, "fuel quantity must be non-negative");
  return v;
}

double fuel_mass(const AircraftProfile& p, double volume) {
  const double kg = units::value_in({volume, p.volume_unit}, Unit::l) * units::value_in(p.fuel.density, Unit::kgl);
  return units::value_in({kg, Unit::kg}, p.mass_unit);
}

// Roots of a f^2 + b f + c = 0 that lie in [0, 1].
void unit_interval_roots(double a, double b, double c, std::vector<double>& out) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (scale == 0.0) return;
  a /= scale;
  b /= scale;
  c /= scale;
  auto keep = [&out](double r) {
    if (r >= -1e-12 && r <= 1.0 + 1e-12) out.push_back(std::clamp(r, 0.0, 1.0));
  };
  if (std::abs(a) < 1e-14) {
    if (std::abs(b) > 0.0) keep(-c / b);
    return;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return;
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(sq, b));
  if (q != 0.0) {
    keep(q / a);
    keep(c / q);
  } else {
    keep(0.0);
  }
}

}  // namespace

Unit AircraftProfile::moment_unit() const {
  return mass_unit == Unit::lb ? Unit::lbin : Unit::kgm;
}

const Station* AircraftProfile::find_station(std::string_view name) const {
  for (const auto& s : stations) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

void validate(const AircraftProfile& p) {
  if (p.id.empty()) throw ValidationError("id", "profile identifier is required");
  const bool imperial = p.mass_unit == Unit::lb && p.arm_unit == Unit::in;
  const bool metric = p.mass_unit == Unit::kg && p.arm_unit == Unit::m;
  if (!imperial && !metric) {
    throw ValidationError("units", "profiles use either lb with in, or kg with m");
  }
  if (units::category_of(p.volume_unit) != Category::volume) {
    throw ValidationError("units.volume", "fuel volume unit must be a volume");
  }
  require_finite(p.empty_weight, "empty_weight");
  require_finite(p.empty_arm, "empty_arm");
  if (!(p.empty_weight > 0.0)) throw ValidationError("empty_weight", "empty weight must be positive");

  std::set<std::string> names;
  for (std::size_t i = 0; i < p.stations.size(); ++i) {
    const auto& s = p.stations[i];
    const std::string field = "stations[" + std::to_string(i) + "]";
    if (s.name.empty()) throw ValidationError(field + ".name", "station name is required");
    if (!names.insert(s.name).second) throw ValidationError(field + ".name", "duplicate station '" + s.name + "'");
    require_finite(s.arm, field + ".arm");
    require_finite(s.max_load, field + ".max_load");
    if (s.max_load < 0.0) throw ValidationError(field + ".max_load", "maximum load must be non-negative");
  }

  require_finite(p.fuel.arm, "fuel.arm");
  require_finite(p.fuel.usable_capacity, "fuel.usable_capacity");
  if (p.fuel.usable_capacity < 0.0) throw ValidationError("fuel.usable_capacity", "capacity must be non-negative");
  units::require_category(p.fuel.density, Category::density, "fuel.density");
  if (!(p.fuel.density.value > 0.0)) throw ValidationError("fuel.density", "fuel density must be positive");

  const auto& l = p.limits;
  for (auto [v, f] : {std::pair{l.max_ramp, "limits.max_ramp"}, std::pair{l.max_takeoff, "limits.max_takeoff"},
                      std::pair{l.max_landing, "limits.max_landing"}}) {
    require_finite(v, f);
    if (!(v > 0.0)) throw ValidationError(f, "mass limit must be positive");
  }
  if (l.max_ramp < l.max_takeoff) throw ValidationError("limits.max_ramp", "ramp limit is below the take-off limit");
  if (l.max_takeoff < l.max_landing) {
    throw ValidationError("limits.max_takeoff", "take-off limit is below the landing limit");
  }
  if (l.max_zero_fuel) {
    require_finite(*l.max_zero_fuel, "limits.max_zero_fuel");
    if (!(*l.max_zero_fuel > 0.0)) throw ValidationError("limits.max_zero_fuel", "mass limit must be positive");
  }

  if (p.envelopes.empty()) throw ValidationError("envelopes", "at least one CG envelope is required");
  for (std::size_t i = 0; i < p.envelopes.size(); ++i) {
    const auto& e = p.envelopes[i];
    const std::string field = "envelopes[" + std::to_string(i) + "]";
    if (e.name.empty()) throw ValidationError(field + ".name", "envelope name is required");
    if (e.polygon.size() < 3) {
      throw ValidationError(field + ".vertices", "envelope '" + e.name + "' needs at least three vertices");
    }
    if (!geometry::is_simple(e.polygon)) {
      throw ValidationError(field + ".vertices", "envelope '" + e.name + "' is self-intersecting or degenerate");
    }
  }
}

std::string_view to_string(LoadingPhase p) {
  switch (p) {
    case LoadingPhase::ramp: return "ramp";
    case LoadingPhase::takeoff: return "takeoff";
    case LoadingPhase::landing: return "landing";
    default: return "zero_fuel";
  }
}

EnvelopeCheck check_envelope(const Envelope& envelope, Point point) {
  const Normaliser n = Normaliser::for_polygon(envelope.polygon);
  const auto poly = n.apply(envelope.polygon);
  const Point p = n.apply(point);
  EnvelopeCheck out;
  out.envelope = envelope.name;
  out.verdict = geometry::locate(poly, p);
  out.margin = geometry::signed_distance(poly, p);
  return out;
}

LoadingResult compute_loading(const AircraftProfile& profile, const std::map<std::string, Quantity>& station_loads,
                              const Quantity& fuel_at_start, const Quantity& taxi_fuel, const Quantity& trip_fuel) {
  LoadingResult r;
  r.mass_unit = profile.mass_unit;
  r.arm_unit = profile.arm_unit;
  r.moment_unit = profile.moment_unit();

  double payload_weight = 0.0;
  double payload_moment = 0.0;
  for (const auto& [name, q] : station_loads) {
    const std::string field = "station_loads." + name;
    const Station* s = profile.find_station(name);
    if (s == nullptr) throw ValidationError(field, "profile '" + profile.id + "' has no station '" + name + "'");
    units::require_category(q, Category::mass, field);
    const double m = units::value_in(q, profile.mass_unit);
    if (!std::isfinite(m) || m < 0.0) throw ValidationError(field, "load must be non-negative");
    if (m > s->max_load) {
      r.violations.push_back({"station:" + name, m, s->max_load,
                              "station '" + name + "' load " + num(m) + " exceeds its maximum " + num(s->max_load)});
    }
    payload_weight += m;
    payload_moment += m * s->arm;
  }

  const double start = volume_in_profile(profile, fuel_at_start, "fuel_at_start");
  const double taxi = volume_in_profile(profile, taxi_fuel, "taxi_fuel");
  const double trip = volume_in_profile(profile, trip_fuel, "trip_fuel");
  if (taxi + trip > start) {
    throw ValidationError("trip_fuel", "taxi plus trip fuel exceeds the fuel on board at start");
  }
  if (start > profile.fuel.usable_capacity) {
    r.violations.push_back({"fuel_capacity", start, profile.fuel.usable_capacity,
                            "fuel at start " + num(start) + " exceeds usable capacity " +
                                num(profile.fuel.usable_capacity)});
  }

  const double base_weight = profile.empty_weight + payload_weight;
  const double base_moment = profile.empty_weight * profile.empty_arm + payload_moment;
  const std::array<double, 4> fuel_volume{start, start - taxi, start - taxi - trip, 0.0};
  for (std::size_t i = 0; i < 4; ++i) {
    PhasePoint& pt = r.phases[i];
    pt.phase = static_cast<LoadingPhase>(i);
    pt.fuel_mass = fuel_mass(profile, fuel_volume[i]);
    pt.weight = base_weight + pt.fuel_mass;
    pt.moment = base_moment + pt.fuel_mass * profile.fuel.arm;
    pt.cg_arm = pt.moment / pt.weight;
    for (const auto& env : profile.envelopes) pt.checks.push_back(check_envelope(env, pt.point()));
  }

  auto check_limit = [&](LoadingPhase ph, double allowed, const char* name) {
    const double w = r.at(ph).weight;
    if (w > allowed) {
      r.violations.push_back({name, w, allowed,
                              std::string(to_string(ph)) + " weight " + num(w) + " exceeds " + name + " " + num(allowed)});
    }
  };
  check_limit(LoadingPhase::ramp, profile.limits.max_ramp, "max_ramp");
  check_limit(LoadingPhase::takeoff, profile.limits.max_takeoff, "max_takeoff");
  check_limit(LoadingPhase::landing, profile.limits.max_landing, "max_landing");
  if (profile.limits.max_zero_fuel) check_limit(LoadingPhase::zero_fuel, *profile.limits.max_zero_fuel, "max_zero_fuel");

  for (LoadingPhase ph : {LoadingPhase::takeoff, LoadingPhase::landing, LoadingPhase::zero_fuel}) {
    const auto& check = r.at(ph).primary();
    if (check.verdict == Verdict::outside) {
      r.violations.push_back({"envelope:" + check.envelope + "@" + std::string(to_string(ph)), check.margin, 0.0,
                              std::string(to_string(ph)) + " CG " + num(r.at(ph).cg_arm) + " is outside the " +
                                  check.envelope + " envelope"});
    }
  }
  return r;
}

CgTrack cg_track(const PhasePoint& takeoff, const PhasePoint& zero_fuel, const Envelope& envelope, int samples) {
  if (samples < 2) throw ValidationError("samples", "at least two samples are required");
  const Normaliser n = Normaliser::for_polygon(envelope.polygon);
  const auto poly = n.apply(envelope.polygon);

  const double w0 = takeoff.weight, dw = zero_fuel.weight - takeoff.weight;
  const double m0 = takeoff.moment, dm = zero_fuel.moment - takeoff.moment;
  auto at = [&](double f) {
    const double w = w0 + f * dw;
    return Point{(m0 + f * dm) / w, w};
  };
  auto verdict_at = [&](double f) { return geometry::locate(poly, n.apply(at(f))); };

  CgTrack track;
  for (int i = 0; i < samples; ++i) {
    const double f = static_cast<double>(i) / (samples - 1);
    track.samples.push_back({f, at(f), verdict_at(f)});
  }

  if (verdict_at(0.0) == Verdict::outside) {
    track.first_violation = 0.0;
    return track;
  }
  if (dw == 0.0 && dm == 0.0) return track;

  // Along the track X = (M/W, W). An edge line n.(X - P) = 0 becomes, after
  // multiplying by W, a quadratic in the burned fraction f.
  std::vector<double> breaks{0.0, 1.0};
  const auto& e = envelope.polygon;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Point p = e[i];
    const Point q = e[(i + 1) % e.size()];
    const double nx = q.y - p.y;
    const double ny = -(q.x - p.x);
    const double a2 = ny * dw * dw;
    const double a1 = nx * (dm - p.x * dw) + ny * (2.0 * w0 * dw - p.y * dw);
    const double a0 = nx * (m0 - p.x * w0) + ny * (w0 * w0 - p.y * w0);
    unit_interval_roots(a2, a1, a0, breaks);
  }
  std::sort(breaks.begin(), breaks.end());
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = breaks[i], hi = breaks[i + 1];
    if (hi - lo < 1e-12) continue;
    if (verdict_at(0.5 * (lo + hi)) == Verdict::outside) {
      track.first_violation = lo;
      break;
    }
  }
  return track;
}

}  // namespace aerocalc::weightbalance
