// Aircraft weight and balance: loading phases, CG envelopes, fuel-burn track.
//
// A profile stores every mass, arm and volume in its own declared units
// (typically lb / in / US gal as printed in the POH). Envelopes are polygons
// over (CG arm, weight) in those units.
#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aerocalc/geometry.hpp"
#include "aerocalc/units.hpp"

namespace aerocalc::weightbalance {

struct Station {
  std::string name;
  double arm = 0.0;
  double max_load = 0.0;
  bool operator==(const Station&) const = default;
};

struct FuelSystem {
  double arm = 0.0;
  double usable_capacity = 0.0;  // profile volume unit
  units::Quantity density{0.72, units::Unit::kgl};
  bool operator==(const FuelSystem&) const = default;
};

struct Limits {
  double max_ramp = 0.0;
  double max_takeoff = 0.0;
  double max_landing = 0.0;
  std::optional<double> max_zero_fuel;
  bool operator==(const Limits&) const = default;
};

struct Envelope {
  std::string name;
  geometry::Polygon polygon;  // (arm, weight)
  bool operator==(const Envelope&) const = default;
};

struct AircraftProfile {
  std::string id;
  std::string display_name;
  units::Unit mass_unit = units::Unit::lb;
  units::Unit arm_unit = units::Unit::in;
  units::Unit volume_unit = units::Unit::usgal;
  double empty_weight = 0.0;
  double empty_arm = 0.0;
  std::vector<Station> stations;
  FuelSystem fuel;
  Limits limits;
  std::vector<Envelope> envelopes;  // the first one is the primary envelope

  units::Unit moment_unit() const;
  const Station* find_station(std::string_view name) const;
  bool operator==(const AircraftProfile&) const = default;
};

/// Throws ValidationError naming the offending field.
void validate(const AircraftProfile& profile);

enum class LoadingPhase { ramp, takeoff, landing, zero_fuel };
std::string_view to_string(LoadingPhase p);

struct EnvelopeCheck {
  std::string envelope;
  geometry::Verdict verdict = geometry::Verdict::outside;
  double margin = 0.0;  // signed distance to the nearest edge, bounding-box normalised
};

struct PhasePoint {
  LoadingPhase phase = LoadingPhase::ramp;
  double weight = 0.0;
  double moment = 0.0;
  double cg_arm = 0.0;
  double fuel_mass = 0.0;
  std::vector<EnvelopeCheck> checks;  // one per profile envelope, same order

  geometry::Point point() const { return {cg_arm, weight}; }
  const EnvelopeCheck& primary() const { return checks.front(); }
};

struct Violation {
  std::string limit;  // e.g. "max_takeoff", "station:baggage", "envelope:normal@landing"
  double value = 0.0;
  double allowed = 0.0;
  std::string message;
};

struct LoadingResult {
  units::Unit mass_unit = units::Unit::lb;
  units::Unit arm_unit = units::Unit::in;
  units::Unit moment_unit = units::Unit::lbin;
  std::array<PhasePoint, 4> phases;  // ramp, takeoff, landing, zero_fuel
  std::vector<Violation> violations;

  const PhasePoint& at(LoadingPhase p) const { return phases[static_cast<std::size_t>(p)]; }
  bool within_limits() const { return violations.empty(); }
};

EnvelopeCheck check_envelope(const Envelope& envelope, geometry::Point point);

/// Limit exceedances are reported in `violations`, not thrown. Unknown
/// stations, negative loads and burning more fuel than loaded are rejected.
LoadingResult compute_loading(const AircraftProfile& profile,
                              const std::map<std::string, units::Quantity>& station_loads,
                              const units::Quantity& fuel_at_start, const units::Quantity& taxi_fuel,
                              const units::Quantity& trip_fuel);

struct TrackSample {
  double burned_fraction = 0.0;
  geometry::Point point;
  geometry::Verdict verdict = geometry::Verdict::outside;
};

struct CgTrack {
  std::vector<TrackSample> samples;
  std::optional<double> first_violation;  // burned-fuel fraction where the track leaves the envelope
};

/// Follows the CG as fuel burns from the take-off point to the zero-fuel point.
/// Fuel sits at a single arm, so moment is linear in weight along the way; the
/// exit fraction is found exactly from the edge crossings.
CgTrack cg_track(const PhasePoint& takeoff, const PhasePoint& zero_fuel, const Envelope& envelope,
                 int samples = 101);

}  // namespace aerocalc::weightbalance
