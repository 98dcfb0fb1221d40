// Holding pattern entry classification and wind-corrected hold geometry.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "aerocalc/windnav.hpp"

namespace aerocalc::holding {

enum class Turn { left, right };
enum class Entry { direct, parallel, teardrop };

std::string_view to_string(Turn t);
std::string_view to_string(Entry e);
Turn parse_turn(std::string_view text);

/// Sector rule: direct 180 deg, teardrop 70 deg, parallel 110 deg, mirrored for
/// left-hand holds. Headings exactly on a sector line take the simpler entry
/// (direct over teardrop over parallel).
Entry classify_entry(double inbound_course_deg, double arrival_heading_deg, Turn turn);

struct HoldSpec {
  double inbound_course_deg = 0.0;
  Turn turn = Turn::right;
  double leg_time_s = 60.0;
  double tas_kt = 0.0;
  windnav::Wind wind;
  double outbound_drift_multiplier = 3.0;  // teaching heuristic: triple the inbound drift
};

struct HoldPlan {
  Entry entry = Entry::direct;
  double inbound_course_deg = 0.0;
  double inbound_heading_deg = 0.0;
  double outbound_heading_deg = 0.0;
  double inbound_ground_speed_kt = 0.0;
  double outbound_ground_speed_kt = 0.0;
  double outbound_time_s = 0.0;
  double wind_correction_angle_inbound_deg = 0.0;
  std::vector<std::string> procedural_steps;
};

/// Outbound time is chosen so the outbound leg covers the same along-track
/// distance the inbound leg covers in `leg_time_s`.
HoldPlan plan_hold(const HoldSpec& spec, double arrival_heading_deg);

}  // namespace aerocalc::holding
