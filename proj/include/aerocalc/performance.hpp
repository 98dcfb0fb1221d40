// Take-off and landing distance factoring.
//
// Each condition contributes one multiplicative factor; their product scales the
// unfactored distance to an environmental distance, and a fixed general safety
// factor is then applied as a separate, visible second stage.
//
// A linear factor rule reads "factor_per_step for every `step` of the variable":
//   continuous: F(x) = 1 + (factor_per_step - 1) * x / step
//   stepped:    F(x) = 1 + (factor_per_step - 1) * ceil(x / step)
// Stepped mode rounds the variable up to the next tabulated increment, so it is
// never less conservative than continuous mode.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aerocalc/units.hpp"

namespace aerocalc::performance {

enum class Phase { takeoff, landing };
enum class Mode { continuous, stepped };
enum class Surface { paved_dry, wet_paved, dry_grass, wet_grass, soft_ground, snow };

std::string_view to_string(Phase p);
std::string_view to_string(Mode m);
std::string_view to_string(Surface s);
Phase parse_phase(std::string_view text);
Mode parse_mode(std::string_view text);
Surface parse_surface(std::string_view text);
const std::vector<Surface>& all_surfaces();

inline constexpr double kTakeoffSafetyFactor = 1.33;
inline constexpr double kLandingSafetyFactor = 1.43;
/// Tailwinds beyond this fraction of the reference speed are outside the
/// linear law's validity and are rejected.
inline constexpr double kMaxTailwindFraction = 0.5;

struct LinearRule {
  double step = 1.0;
  double factor_per_step = 1.0;
  bool operator==(const LinearRule&) const = default;
};

struct PhaseFactors {
  LinearRule weight;       // step in percent over the reference mass
  LinearRule elevation;    // step in ft
  LinearRule temperature;  // step in degC above ISA at aerodrome elevation
  LinearRule tailwind;     // step as a fraction of the reference speed
  std::optional<LinearRule> headwind;  // optional credit, factor_per_step <= 1
  double headwind_min_factor = 1.0;    // floor for the credit
  LinearRule slope_adverse;            // step in percent (up-slope for take-off, down-slope for landing)
  LinearRule slope_favourable;         // opposite sense; factor_per_step defaults to 1
  std::map<Surface, double> surface;
  double general_safety = 1.0;
  bool operator==(const PhaseFactors&) const = default;
};

struct FactorTable {
  std::string id;
  std::string display_name;
  std::string version;
  PhaseFactors takeoff;
  PhaseFactors landing;

  const PhaseFactors& phase(Phase p) const { return p == Phase::takeoff ? takeoff : landing; }
  bool operator==(const FactorTable&) const = default;
};

/// Throws ValidationError naming the offending entry.
void validate(const FactorTable& table);

struct Conditions {
  double weight_ratio = 1.0;                  // actual / reference mass
  units::Quantity elevation{0.0, units::Unit::ft};
  units::Quantity oat{15.0, units::Unit::degc};
  std::optional<units::Quantity> tailwind;    // exactly one of tailwind / headwind
  std::optional<units::Quantity> headwind;
  std::optional<units::Quantity> reference_speed;  // V_LO for take-off, approach speed for landing
  double slope_percent = 0.0;                 // positive is up-slope in the direction of travel
  Surface surface = Surface::paved_dry;
};

/// Throws ValidationError for inconsistent conditions.
void validate(const Conditions& c);

struct FactorEntry {
  std::string name;
  std::optional<units::Quantity> input;
  double factor = 1.0;
  std::string note;
};

struct FactorChain {
  Phase phase = Phase::takeoff;
  Mode mode = Mode::continuous;
  units::Quantity base_distance;
  std::vector<FactorEntry> entries;  // weight, elevation, temperature, wind, slope, surface
  units::Quantity environmental_distance;
  std::optional<double> general_factor;
  std::optional<units::Quantity> final_distance;

  double environmental_product() const;
};

double linear_factor(const LinearRule& rule, double x, Mode mode);

/// 1 + 0.2 * tailwind / (0.1 * reference speed): twenty percent per tailwind of
/// ten percent of the reference speed.
double tailwind_factor(const units::Quantity& tailwind, const units::Quantity& reference_speed);

FactorChain environmental_distance(const units::Quantity& base, const Conditions& c,
                                   const FactorTable& table, Phase phase, Mode mode);

/// Adds the general safety stage; the environmental entries are left untouched.
FactorChain apply_general_safety(FactorChain env, const FactorTable& table);

FactorChain todr(const units::Quantity& base, const Conditions& c, const FactorTable& table, Mode mode);
FactorChain ldr(const units::Quantity& base, const Conditions& c, const FactorTable& table, Mode mode);

/// Built-in table with the leaflet's published values; the shipped data file
/// carries the same numbers.
FactorTable default_factor_table();

double load_factor(double bank_deg);
double stall_speed_in_turn(double vs_level_kt, double bank_deg);

}  // namespace aerocalc::performance
