#pragma once

#include <cmath>
#include <numbers>
#include <utility>

namespace aerocalc::angles {

inline constexpr double kDegToRad = std::numbers::pi / 180.0;
inline constexpr double kRadToDeg = 180.0 / std::numbers::pi;

/// Wraps to [0, 360).
inline double normalize360(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  if (r >= 360.0) r -= 360.0;
  return r;
}

/// Wraps to (-180, 180].
inline double normalize180(double deg) {
  double r = normalize360(deg);
  return r > 180.0 ? r - 360.0 : r;
}

/// Sine and cosine of an angle in degrees. The argument is reduced in degrees
/// first, so multiples of 30 and 90 give exactly representable results
/// (cos 60 == 0.5, sin 180 == 0).
inline std::pair<double, double> sincosd(double deg) {
  int q = 0;
  double r = std::remquo(deg, 90.0, &q);  // r in [-45, 45]
  double s = 0.0;
  double c = 0.0;
  if (std::abs(r) == 30.0) {
    s = std::copysign(0.5, r);
    c = std::sqrt(3.0) / 2.0;
  } else {
    const double rad = r * kDegToRad;
    s = std::sin(rad);
    c = std::cos(rad);
  }
  switch (static_cast<unsigned>(q) & 3u) {
    case 0: return {s, c};
    case 1: return {c, -s};
    case 2: return {-s, -c};
    default: return {-c, s};
  }
}

inline double sind(double deg) { return sincosd(deg).first; }
inline double cosd(double deg) { return sincosd(deg).second; }

}  // namespace aerocalc::angles
