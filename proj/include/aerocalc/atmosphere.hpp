// ISA 1976 atmosphere (troposphere and lower stratosphere) with derived
// altitudes, airspeeds and humidity.
#pragma once

#include "aerocalc/units.hpp"

namespace aerocalc::atmosphere {

namespace constants {
inline constexpr double kSeaLevelTemperatureK = 288.15;
inline constexpr double kSeaLevelPressureHpa = 1013.25;
inline constexpr double kLapseRateKPerM = 0.0065;
inline constexpr double kTropopauseM = 11000.0;
inline constexpr double kCeilingM = 20000.0;
inline constexpr double kGasConstant = 287.05287;  // J/(kg K), dry air
inline constexpr double kGravity = 9.80665;
inline constexpr double kGamma = 1.4;
inline constexpr double kZeroCelsiusK = 273.15;

// Supported altitude band, geopotential feet.
inline constexpr double kMinAltitudeFt = -2000.0;
inline constexpr double kMaxAltitudeFt = 65617.0;

// Magnus form over water, Sonntag-style coefficients: es = 6.112 exp(17.62 t / (243.12 + t)) hPa.
inline constexpr double kMagnusA = 6.112;
inline constexpr double kMagnusB = 17.62;
inline constexpr double kMagnusC = 243.12;

// Dew point may exceed OAT by this much before the pair is rejected.
inline constexpr double kDewPointToleranceC = 0.5;
}  // namespace constants

struct AtmosphereState {
  units::Quantity geopotential_altitude;  // ft
  units::Quantity temperature;            // degc
  units::Quantity pressure;               // hpa
  units::Quantity density;                // kgm3
};

struct HumidityState {
  units::Quantity oat;                // degc
  units::Quantity dew_point;          // degc
  units::Quantity relative_humidity;  // percent, clamped to [0, 100]
  units::Quantity spread;             // delta_degc
};

AtmosphereState isa_conditions(const units::Quantity& altitude);

units::Quantity pressure_altitude(const units::Quantity& field_elevation, const units::Quantity& qnh);
units::Quantity density_altitude(const units::Quantity& pressure_altitude, const units::Quantity& oat);

/// Compressible CAS -> TAS using ISA pressure at `pressure_altitude` and the
/// actual OAT. Rejects inputs whose flow would be supersonic.
units::Quantity tas_from_cas(const units::Quantity& cas, const units::Quantity& pressure_altitude,
                             const units::Quantity& oat);

/// Equivalent airspeed for the same chain, exposed for reporting.
units::Quantity eas_from_cas(const units::Quantity& cas, const units::Quantity& pressure_altitude);

units::Quantity speed_of_sound(const units::Quantity& oat);
double mach_number(const units::Quantity& tas, const units::Quantity& oat);

HumidityState humidity(const units::Quantity& oat, const units::Quantity& dew_point);

/// Saturation vapour pressure over water, hPa.
double saturation_vapour_pressure_hpa(double temperature_c);

// Raw profile helpers over geopotential metres. No range checks.
double isa_temperature_k(double altitude_m);
double isa_pressure_hpa(double altitude_m);
double isa_density(double altitude_m);

}  // namespace aerocalc::atmosphere
