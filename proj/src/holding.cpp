#include "aerocalc/holding.hpp"

#include <cmath>
#include <cstdio>

#include "aerocalc/angles.hpp"
#include "aerocalc/error.hpp"

namespace aerocalc::holding {

namespace {

std::string heading_text(double deg) {
  char buf[16];
  long rounded = std::lround(angles::normalize360(deg));
  if (rounded == 0) rounded = 360;
  std::snprintf(buf, sizeof buf, "%03ld", rounded);
  return std::string(buf) + "\xC2\xB0";
}

std::string duration_text(double seconds) {
  const long total = std::lround(seconds);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%ld:%02ld", total / 60, total % 60);
  return buf;
}

std::string_view opposite(Turn t) { return t == Turn::right ? "left" : "right"; }

}  // namespace

std::string_view to_string(Turn t) { return t == Turn::right ? "right" : "left"; }

std::string_view to_string(Entry e) {
  switch (e) {
    case Entry::parallel: return "parallel";
    case Entry::teardrop: return "teardrop";
    default: return "direct";
  }
}

Turn parse_turn(std::string_view text) {
  if (text == "right" || text == "r") return Turn::right;
  if (text == "left" || text == "l") return Turn::left;
  throw ValidationError("turn", "turn direction must be 'left' or 'right'");
}

Entry classify_entry(double inbound_course_deg, double arrival_heading_deg, Turn turn) {
  if (!std::isfinite(inbound_course_deg)) throw ValidationError("inbound_course", "value must be finite");
  if (!std::isfinite(arrival_heading_deg)) throw ValidationError("arrival_heading", "value must be finite");
  double d = angles::normalize180(arrival_heading_deg - inbound_course_deg);
  // Work in the right-hand frame; a left-hand hold is its mirror image.
  if (turn == Turn::left) d = angles::normalize180(-d);
  if (d >= -70.0 && d <= 110.0) return Entry::direct;
  if (d > 110.0) return Entry::teardrop;
  return Entry::parallel;
}

HoldPlan plan_hold(const HoldSpec& spec, double arrival_heading_deg) {
  if (!(spec.leg_time_s > 0.0) || !std::isfinite(spec.leg_time_s)) {
    throw ValidationError("leg_time", "leg time must be positive");
  }
  if (!(spec.tas_kt > 0.0)) throw ValidationError("tas", "true airspeed must be positive");
  if (!(spec.outbound_drift_multiplier >= 0.0)) {
    throw ValidationError("drift_multiplier", "outbound drift multiplier must be non-negative");
  }

  const double inbound_course = angles::normalize360(spec.inbound_course_deg);
  const double outbound_course = angles::normalize360(inbound_course + 180.0);
  const auto inbound = windnav::solve_wind_triangle(inbound_course, spec.tas_kt, spec.wind);
  const auto outbound = windnav::solve_wind_triangle(outbound_course, spec.tas_kt, spec.wind);
  if (!(outbound.ground_speed_kt > 0.0) || !(inbound.ground_speed_kt > 0.0)) {
    throw ValidationError("wind_speed", "wind leaves no ground speed on one of the legs");
  }

  HoldPlan plan;
  plan.entry = classify_entry(inbound_course, arrival_heading_deg, spec.turn);
  plan.inbound_course_deg = inbound_course;
  plan.wind_correction_angle_inbound_deg = inbound.wind_correction_angle_deg;
  plan.inbound_heading_deg = inbound.true_heading_deg;
  plan.inbound_ground_speed_kt = inbound.ground_speed_kt;
  plan.outbound_ground_speed_kt = outbound.ground_speed_kt;
  plan.outbound_heading_deg = angles::normalize360(
      outbound_course - spec.outbound_drift_multiplier * inbound.wind_correction_angle_deg);
  plan.outbound_time_s = spec.leg_time_s * (inbound.ground_speed_kt / outbound.ground_speed_kt);

  const std::string turn{to_string(spec.turn)};
  const std::string away{opposite(spec.turn)};
  const std::string outbound_hdg = heading_text(plan.outbound_heading_deg);
  const std::string leg = duration_text(spec.leg_time_s);
  auto& steps = plan.procedural_steps;

  switch (plan.entry) {
    case Entry::direct:
      steps.push_back("Direct entry: cross the fix and turn " + turn + " onto the outbound heading " +
                      outbound_hdg + ".");
      break;
    case Entry::teardrop: {
      // 30 degrees off the outbound track, into the holding side.
      const double offset = spec.turn == Turn::right ? -30.0 : 30.0;
      steps.push_back("Teardrop entry: cross the fix and fly heading " +
                      heading_text(plan.outbound_heading_deg + offset) + " for " + leg + ".");
      steps.push_back("Turn " + turn + " to intercept the inbound course " + heading_text(inbound_course) + ".");
      break;
    }
    case Entry::parallel:
      steps.push_back("Parallel entry: cross the fix, turn " + away + " onto heading " + outbound_hdg +
                      " for " + leg + ".");
      steps.push_back("Turn " + away + " through more than 180\xC2\xB0 to intercept the inbound course " +
                      heading_text(inbound_course) + " or return to the fix.");
      break;
  }
  steps.push_back("Outbound: at the fix turn " + turn + " onto heading " + outbound_hdg + " (course " +
                  heading_text(outbound_course) + ") for " + duration_text(plan.outbound_time_s) + ".");
  steps.push_back("Inbound: turn " + turn + " to intercept course " + heading_text(inbound_course) +
                  ", hold heading " + heading_text(plan.inbound_heading_deg) + " for " + leg + " to the fix.");
  if (spec.wind.speed_kt == 0.0) {
    steps.push_back("Still air: no wind correction applied.");
  } else {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "Wind %s/%.0f kt: inbound correction %+.1f\xC2\xB0, outbound correction %+.1f\xC2\xB0 "
                  "(%.0fx drift).",
                  heading_text(spec.wind.direction_from_deg).c_str(), spec.wind.speed_kt,
                  plan.wind_correction_angle_inbound_deg,
                  -spec.outbound_drift_multiplier * plan.wind_correction_angle_inbound_deg,
                  spec.outbound_drift_multiplier);
    steps.push_back(buf);
  }
  return plan;
}

}  // namespace aerocalc::holding
