// Wind components, the wind triangle and spherical navigation.
//
// Angles are degrees true, speeds knots, distances nautical miles. The earth
// is a sphere sized so one arc-minute of great circle is one nautical mile.
#pragma once

#include <optional>
#include <string_view>

namespace aerocalc::windnav {

inline constexpr double kEarthRadiusNm = 10800.0 / 3.14159265358979323846;

struct Wind {
  double direction_from_deg = 0.0;  // normalised to [0, 360) on construction via make_wind
  double speed_kt = 0.0;
};

/// Validates speed >= 0 and normalises the direction.
Wind make_wind(double direction_from_deg, double speed_kt);

enum class Side { none, left, right };
std::string_view to_string(Side s);

struct WindComponents {
  double headwind_kt = 0.0;  // negative is a tailwind
  double crosswind_kt = 0.0;
  Side crosswind_side = Side::none;
};

WindComponents wind_components(double reference_heading_deg, const Wind& wind);

struct WindTriangleSolution {
  double wind_correction_angle_deg = 0.0;  // positive: nose right of course
  double true_heading_deg = 0.0;
  double ground_speed_kt = 0.0;
};

/// Throws ValidationError when the crosswind exceeds TAS or the wind would
/// carry the aircraft backwards along the course.
WindTriangleSolution solve_wind_triangle(double true_course_deg, double tas_kt, const Wind& wind);

/// Taught mental rule: wind speed times angle-off/60, saturating at 60 degrees.
double clock_code_crosswind(double angle_off_deg, double wind_speed_kt);

struct LatLon {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
};

struct GreatCircleResult {
  double distance_nm = 0.0;
  double initial_bearing_deg = 0.0;
  bool bearing_defined = true;  // false for coincident or antipodal points
};

struct RhumbResult {
  double distance_nm = 0.0;
  double bearing_deg = 0.0;
};

GreatCircleResult great_circle(const LatLon& from, const LatLon& to);

/// Loxodrome on the same sphere. Endpoints at a pole are rejected.
RhumbResult rhumb_line(const LatLon& from, const LatLon& to);

/// Radio horizon with the 4/3-earth refraction model.
double line_of_sight_range_nm(double h1_ft, double h2_ft);

}  // namespace aerocalc::windnav
