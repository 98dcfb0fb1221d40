#include "aerocalc/windnav.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "aerocalc/angles.hpp"
#include "aerocalc/error.hpp"

namespace aerocalc::windnav {

using angles::kDegToRad;
using angles::kRadToDeg;

namespace {

void require_finite(double v, const char* field) {
  if (!std::isfinite(v)) throw ValidationError(field, "value must be finite");
}

void check_position(const LatLon& p, const char* field) {
  require_finite(p.lat_deg, field);
  require_finite(p.lon_deg, field);
  if (p.lat_deg < -90.0 || p.lat_deg > 90.0) {
    throw ValidationError(field, "latitude must lie in [-90, 90] degrees");
  }
}

}  // namespace

Wind make_wind(double direction_from_deg, double speed_kt) {
  require_finite(direction_from_deg, "wind_direction");
  require_finite(speed_kt, "wind_speed");
  if (speed_kt < 0.0) throw ValidationError("wind_speed", "wind speed must be non-negative");
  return {angles::normalize360(direction_from_deg), speed_kt};
}

std::string_view to_string(Side s) {
  switch (s) {
    case Side::left: return "left";
    case Side::right: return "right";
    default: return "none";
  }
}

WindComponents wind_components(double reference_heading_deg, const Wind& wind) {
  require_finite(reference_heading_deg, "reference_heading");
  const double delta = angles::normalize180(wind.direction_from_deg - reference_heading_deg);
  const auto [s, c] = angles::sincosd(delta);
  WindComponents out;
  out.headwind_kt = wind.speed_kt * c;
  out.crosswind_kt = wind.speed_kt * std::abs(s);
  if (out.crosswind_kt > 0.0) out.crosswind_side = s > 0.0 ? Side::right : Side::left;
  return out;
}

WindTriangleSolution solve_wind_triangle(double true_course_deg, double tas_kt, const Wind& wind) {
  require_finite(true_course_deg, "true_course");
  require_finite(tas_kt, "tas");
  if (!(tas_kt > 0.0)) throw ValidationError("tas", "true airspeed must be positive");

  const double wind_angle = wind.direction_from_deg - true_course_deg;
  const auto [s, c] = angles::sincosd(wind_angle);
  const double cross = wind.speed_kt * s;
  const double sine = cross / tas_kt;
  if (std::abs(sine) > 1.0) {
    const double limit = std::asin(tas_kt / wind.speed_kt) * kRadToDeg;
    std::ostringstream msg;
    msg << "crosswind " << std::abs(cross) << " kt exceeds TAS " << tas_kt
        << " kt; the course can only be held with the wind within " << limit
        << " degrees of the nose or tail";
    throw ValidationError("wind_speed", msg.str());
  }
  const double wca = std::asin(sine) * kRadToDeg;
  const double gs = tas_kt * std::cos(wca * kDegToRad) - wind.speed_kt * c;
  if (gs < 0.0) {
    throw ValidationError("wind_speed", "headwind exceeds true airspeed; no progress along the course");
  }
  return {wca, angles::normalize360(true_course_deg + wca), gs};
}

double clock_code_crosswind(double angle_off_deg, double wind_speed_kt) {
  require_finite(angle_off_deg, "angle_off");
  require_finite(wind_speed_kt, "wind_speed");
  if (angle_off_deg < 0.0 || angle_off_deg > 90.0) {
    throw ValidationError("angle_off", "angle off the nose must lie in [0, 90] degrees");
  }
  if (wind_speed_kt < 0.0) throw ValidationError("wind_speed", "wind speed must be non-negative");
  return wind_speed_kt * std::min(angle_off_deg / 60.0, 1.0);
}

GreatCircleResult great_circle(const LatLon& from, const LatLon& to) {
  check_position(from, "from");
  check_position(to, "to");
  const double phi1 = from.lat_deg * kDegToRad;
  const double phi2 = to.lat_deg * kDegToRad;
  const double dphi = phi2 - phi1;
  const double dlambda = angles::normalize180(to.lon_deg - from.lon_deg) * kDegToRad;

  const double sdp = std::sin(dphi / 2.0);
  const double sdl = std::sin(dlambda / 2.0);
  const double a = std::clamp(sdp * sdp + std::cos(phi1) * std::cos(phi2) * sdl * sdl, 0.0, 1.0);
  const double central = 2.0 * std::atan2(std::sqrt(a), std::sqrt(1.0 - a));

  GreatCircleResult out;
  out.distance_nm = kEarthRadiusNm * central;
  if (central == 0.0 || central > std::numbers::pi - 1e-12) {
    out.bearing_defined = false;
    return out;
  }
  const double y = std::sin(dlambda) * std::cos(phi2);
  const double x = std::cos(phi1) * std::sin(phi2) - std::sin(phi1) * std::cos(phi2) * std::cos(dlambda);
  out.initial_bearing_deg = angles::normalize360(std::atan2(y, x) * kRadToDeg);
  return out;
}

RhumbResult rhumb_line(const LatLon& from, const LatLon& to) {
  check_position(from, "from");
  check_position(to, "to");
  if (std::abs(from.lat_deg) == 90.0) throw ValidationError("from", "rhumb line undefined at a pole");
  if (std::abs(to.lat_deg) == 90.0) throw ValidationError("to", "rhumb line undefined at a pole");

  const double phi1 = from.lat_deg * kDegToRad;
  const double phi2 = to.lat_deg * kDegToRad;
  const double dphi = phi2 - phi1;
  const double dlambda = angles::normalize180(to.lon_deg - from.lon_deg) * kDegToRad;
  const double quarter = std::numbers::pi / 4.0;
  const double dpsi = std::log(std::tan(quarter + phi2 / 2.0) / std::tan(quarter + phi1 / 2.0));
  // q -> cos(phi) as the track approaches east-west
  const double q = std::abs(dpsi) > 1e-12 ? dphi / dpsi : std::cos(phi1);

  RhumbResult out;
  out.distance_nm = std::sqrt(dphi * dphi + q * q * dlambda * dlambda) * kEarthRadiusNm;
  out.bearing_deg = angles::normalize360(std::atan2(dlambda, dpsi) * kRadToDeg);
  return out;
}

double line_of_sight_range_nm(double h1_ft, double h2_ft) {
  require_finite(h1_ft, "h1");
  require_finite(h2_ft, "h2");
  if (h1_ft < 0.0) throw ValidationError("h1", "height must be non-negative");
  if (h2_ft < 0.0) throw ValidationError("h2", "height must be non-negative");
  return 1.23 * (std::sqrt(h1_ft) + std::sqrt(h2_ft));
}

}  // namespace aerocalc::windnav
