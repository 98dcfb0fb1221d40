#include "aerocalc/atmosphere.hpp"

#include <cmath>
#include <sstream>

#include "aerocalc/error.hpp"

namespace aerocalc::atmosphere {

using namespace constants;
using units::Category;
using units::Quantity;
using units::Unit;

namespace {

constexpr double kExponent = kGravity / (kGasConstant * kLapseRateKPerM);
constexpr double kTropopauseTemperatureK = kSeaLevelTemperatureK - kLapseRateKPerM * kTropopauseM;

double tropopause_pressure_hpa() {
  static const double p = kSeaLevelPressureHpa * std::pow(kTropopauseTemperatureK / kSeaLevelTemperatureK, kExponent);
  return p;
}

double tropopause_density() {
  static const double rho = tropopause_pressure_hpa() * 100.0 / (kGasConstant * kTropopauseTemperatureK);
  return rho;
}

double sea_level_speed_of_sound_mps() {
  static const double a0 = std::sqrt(kGamma * kGasConstant * kSeaLevelTemperatureK);
  return a0;
}

void check_altitude_ft(double ft, std::string_view field) {
  if (!std::isfinite(ft) || ft < kMinAltitudeFt || ft > kMaxAltitudeFt) {
    std::ostringstream msg;
    msg << "altitude " << ft << " ft is outside the supported ISA band [" << kMinAltitudeFt << ", "
        << kMaxAltitudeFt << "] ft";
    throw ValidationError(std::string(field), msg.str());
  }
}

double oat_kelvin(const Quantity& oat, std::string_view field) {
  units::require_category(oat, Category::temperature, field);
  const double t = units::value_in(oat, Unit::k);
  if (!std::isfinite(t) || t <= 0.0) {
    throw ValidationError(std::string(field), "temperature must be above absolute zero");
  }
  return t;
}

double altitude_m(const Quantity& altitude, std::string_view field) {
  units::require_category(altitude, Category::distance, field);
  const double m = units::value_in(altitude, Unit::m);
  check_altitude_ft(m / 0.3048, field);
  return m;
}

Quantity feet_from_metres(double m) { return units::convert({m, Unit::m}, Unit::ft); }

double altitude_from_pressure_m(double p_hpa) {
  if (p_hpa >= tropopause_pressure_hpa()) {
    return kSeaLevelTemperatureK / kLapseRateKPerM *
           (1.0 - std::pow(p_hpa / kSeaLevelPressureHpa, 1.0 / kExponent));
  }
  return kTropopauseM +
         kGasConstant * kTropopauseTemperatureK / kGravity * std::log(tropopause_pressure_hpa() / p_hpa);
}

double altitude_from_density_m(double rho) {
  if (rho >= tropopause_density()) {
    const double rho0 = isa_density(0.0);
    const double t = kSeaLevelTemperatureK * std::pow(rho / rho0, 1.0 / (kExponent - 1.0));
    return (kSeaLevelTemperatureK - t) / kLapseRateKPerM;
  }
  return kTropopauseM +
         kGasConstant * kTropopauseTemperatureK / kGravity * std::log(tropopause_density() / rho);
}

double mach_from_impact_pressure(double qc_hpa, double static_hpa) {
  return std::sqrt(5.0 * (std::pow(qc_hpa / static_hpa + 1.0, 2.0 / 7.0) - 1.0));
}

double impact_pressure_from_cas(double cas_mps) {
  const double ratio = cas_mps / sea_level_speed_of_sound_mps();
  return kSeaLevelPressureHpa * (std::pow(1.0 + 0.2 * ratio * ratio, 3.5) - 1.0);
}

// Returns flight Mach number for the CAS at the ISA pressure of `pa_m`.
double mach_for_cas(const Quantity& cas, double pa_m) {
  units::require_category(cas, Category::speed, "cas");
  const double cas_mps = units::value_in(cas, Unit::mps);
  if (!(cas_mps > 0.0)) throw ValidationError("cas", "calibrated airspeed must be positive");
  if (cas_mps >= sea_level_speed_of_sound_mps()) {
    throw ValidationError("cas", "calibrated airspeed is supersonic; the subsonic pitot relation does not apply");
  }
  const double mach = mach_from_impact_pressure(impact_pressure_from_cas(cas_mps), isa_pressure_hpa(pa_m));
  if (mach >= 1.0) {
    std::ostringstream msg;
    msg << "flow at this pressure altitude would be supersonic (Mach " << mach << ")";
    throw ValidationError("cas", msg.str());
  }
  return mach;
}

}  // namespace

double isa_temperature_k(double altitude_m) {
  if (altitude_m <= kTropopauseM) return kSeaLevelTemperatureK - kLapseRateKPerM * altitude_m;
  return kTropopauseTemperatureK;
}

double isa_pressure_hpa(double altitude_m) {
  if (altitude_m <= kTropopauseM) {
    return kSeaLevelPressureHpa * std::pow(isa_temperature_k(altitude_m) / kSeaLevelTemperatureK, kExponent);
  }
  return tropopause_pressure_hpa() *
         std::exp(-kGravity * (altitude_m - kTropopauseM) / (kGasConstant * kTropopauseTemperatureK));
}

double isa_density(double altitude_m) {
  return isa_pressure_hpa(altitude_m) * 100.0 / (kGasConstant * isa_temperature_k(altitude_m));
}

AtmosphereState isa_conditions(const Quantity& altitude) {
  const double h = altitude_m(altitude, "altitude");
  const double t = isa_temperature_k(h);
  return {
      feet_from_metres(h),
      units::convert({t, Unit::k}, Unit::degc),
      {isa_pressure_hpa(h), Unit::hpa},
      {isa_density(h), Unit::kgm3},
  };
}

Quantity pressure_altitude(const Quantity& field_elevation, const Quantity& qnh) {
  const double elevation = altitude_m(field_elevation, "field_elevation");
  units::require_category(qnh, Category::pressure, "qnh");
  const double qnh_hpa = units::value_in(qnh, Unit::hpa);
  if (!(qnh_hpa >= 850.0 && qnh_hpa <= 1100.0)) {
    std::ostringstream msg;
    msg << "QNH " << qnh_hpa << " hPa is outside [850, 1100] hPa";
    throw ValidationError("qnh", msg.str());
  }
  // An altimeter set to QNH reads field elevation on the ground, so the station
  // pressure follows the standard profile scaled to QNH.
  const double station_hpa =
      qnh_hpa * std::pow(1.0 - kLapseRateKPerM * elevation / kSeaLevelTemperatureK, kExponent);
  const double pa = altitude_from_pressure_m(station_hpa);
  check_altitude_ft(pa / 0.3048, "qnh");
  return feet_from_metres(pa);
}

Quantity density_altitude(const Quantity& pressure_altitude, const Quantity& oat) {
  const double pa = altitude_m(pressure_altitude, "pressure_altitude");
  const double t = oat_kelvin(oat, "oat");
  const double rho = isa_pressure_hpa(pa) * 100.0 / (kGasConstant * t);
  const double da = altitude_from_density_m(rho);
  if (da > kCeilingM) {
    throw ValidationError("oat", "density altitude lies above the supported ISA layers");
  }
  return feet_from_metres(da);
}

Quantity tas_from_cas(const Quantity& cas, const Quantity& pressure_altitude, const Quantity& oat) {
  const double pa = altitude_m(pressure_altitude, "pressure_altitude");
  const double t = oat_kelvin(oat, "oat");
  const double mach = mach_for_cas(cas, pa);
  const double tas_mps = mach * std::sqrt(kGamma * kGasConstant * t);
  return units::convert({tas_mps, Unit::mps}, Unit::kt);
}

Quantity eas_from_cas(const Quantity& cas, const Quantity& pressure_altitude) {
  const double pa = altitude_m(pressure_altitude, "pressure_altitude");
  const double mach = mach_for_cas(cas, pa);
  const double eas_mps = mach * sea_level_speed_of_sound_mps() * std::sqrt(isa_pressure_hpa(pa) / kSeaLevelPressureHpa);
  return units::convert({eas_mps, Unit::mps}, Unit::kt);
}

Quantity speed_of_sound(const Quantity& oat) {
  const double t = oat_kelvin(oat, "oat");
  return units::convert({std::sqrt(kGamma * kGasConstant * t), Unit::mps}, Unit::kt);
}

double mach_number(const Quantity& tas, const Quantity& oat) {
  units::require_category(tas, Category::speed, "tas");
  const double v = units::value_in(tas, Unit::mps);
  if (!std::isfinite(v) || v < 0.0) throw ValidationError("tas", "true airspeed must be non-negative");
  return v / units::value_in(speed_of_sound(oat), Unit::mps);
}

double saturation_vapour_pressure_hpa(double temperature_c) {
  return kMagnusA * std::exp(kMagnusB * temperature_c / (kMagnusC + temperature_c));
}

HumidityState humidity(const Quantity& oat, const Quantity& dew_point) {
  units::require_category(oat, Category::temperature, "oat");
  units::require_category(dew_point, Category::temperature, "dew_point");
  const double t = units::value_in(oat, Unit::degc);
  const double td = units::value_in(dew_point, Unit::degc);
  if (!std::isfinite(t) || !std::isfinite(td) || t <= -kMagnusC || td <= -kMagnusC) {
    throw ValidationError("oat", "temperatures outside the Magnus range");
  }
  if (td > t + kDewPointToleranceC) {
    std::ostringstream msg;
    msg << "dew point " << td << " degC exceeds OAT " << t << " degC by more than "
        << kDewPointToleranceC << " degC";
    throw ValidationError("dew_point", msg.str());
  }
  double rh = 100.0 * saturation_vapour_pressure_hpa(td) / saturation_vapour_pressure_hpa(t);
  if (rh > 100.0) rh = 100.0;
  return {
      {t, Unit::degc},
      {td, Unit::degc},
      {rh, Unit::percent},
      {t - td, Unit::delta_degc},
  };
}

}  // namespace aerocalc::atmosphere
