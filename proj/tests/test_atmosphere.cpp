#include "doctest.h"

#include <cmath>

#include "aerocalc/atmosphere.hpp"
#include "aerocalc/error.hpp"
#include "oracles.hpp"

using namespace aerocalc;
using namespace aerocalc::atmosphere;
using units::Quantity;
using units::Unit;

namespace {

Quantity ft(double v) { return {v, Unit::ft}; }
Quantity degc(double v) { return {v, Unit::degc}; }
Quantity kt(double v) { return {v, Unit::kt}; }
double m_from_ft(double f) { return f * 0.3048; }

// Density altitude by bisection on the oracle's ISA density.
double oracle_density_altitude_ft(double pa_ft, double oat_c) {
  const double rho = oracle::isa_pressure(m_from_ft(pa_ft)) * 100.0 / (oracle::R * (oat_c + 273.15));
  const double h = oracle::bisect([&](double x) { return oracle::isa_density(x) - rho; }, -2000.0, 20000.0);
  return h / 0.3048;
}

double oracle_pressure_altitude_ft(double elevation_ft, double qnh) {
  const double station = oracle::isa_pressure(m_from_ft(elevation_ft)) * qnh / oracle::P0;
  const double h = oracle::bisect([&](double x) { return oracle::isa_pressure(x) - station; }, -2000.0, 20000.0);
  return h / 0.3048;
}

}  // namespace

TEST_CASE("sea-level triple") {
  const auto s = isa_conditions(ft(0.0));
  CHECK(s.temperature.value == 15.0);
  CHECK(s.pressure.value == 1013.25);
  CHECK(s.density.value == doctest::Approx(1.225).epsilon(1e-6));
  CHECK(s.density.value == doctest::Approx(101325.0 / (287.05287 * 288.15)).epsilon(1e-15));
}

TEST_CASE("tropopause temperature") {
  CHECK(std::abs(isa_conditions(ft(36089.0)).temperature.value + 56.5) <= 0.01);
  CHECK(isa_conditions(ft(50000.0)).temperature.value == doctest::Approx(-56.5).epsilon(1e-12));
}

TEST_CASE("pressure at 10,000 ft against the barometric oracle") {
  const double p = isa_conditions(ft(10000.0)).pressure.value;
  CHECK(p == doctest::Approx(oracle::isa_pressure(3048.0)).epsilon(1e-12));
  CHECK(std::abs(p - 696.8) < 0.1);
  CHECK(isa_conditions(ft(50000.0)).pressure.value ==
        doctest::Approx(oracle::isa_pressure(m_from_ft(50000.0))).epsilon(1e-12));
}

TEST_CASE("profiles are monotone") {
  double last_p = 1e9, last_rho = 1e9, last_t = 1e9;
  for (double h = -2000.0; h <= 65000.0; h += 250.0) {
    const auto s = isa_conditions(ft(h));
    CHECK(s.pressure.value < last_p);
    CHECK(s.density.value < last_rho);
    CHECK(s.temperature.value <= last_t);
    last_p = s.pressure.value;
    last_rho = s.density.value;
    last_t = s.temperature.value;
  }
}

TEST_CASE("ideal gas consistency within 1e-9 relative") {
  for (double h = -2000.0; h <= 65000.0; h += 1000.0) {
    const auto s = isa_conditions(ft(h));
    const double t_k = s.temperature.value + 273.15;
    CHECK(s.density.value == doctest::Approx(s.pressure.value * 100.0 / (287.05287 * t_k)).epsilon(1e-9));
  }
}

TEST_CASE("altitude outside the supported layers is rejected") {
  CHECK_THROWS_AS(isa_conditions(ft(70000.0)), ValidationError);
  CHECK_THROWS_AS(isa_conditions(ft(-3000.0)), ValidationError);
  CHECK_THROWS_AS(isa_conditions({1.0, Unit::kt}), ValidationError);
}

TEST_CASE("pressure altitude") {
  CHECK(pressure_altitude(ft(0.0), {1013.25, Unit::hpa}).value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(pressure_altitude(ft(1000.0), {1013.25, Unit::hpa}).value == doctest::Approx(1000.0).epsilon(1e-9));
  const double pa = pressure_altitude(ft(0.0), {1000.0, Unit::hpa}).value;
  CHECK(std::abs(pa - 364.0) < 1.0);
  CHECK(pa == doctest::Approx(oracle_pressure_altitude_ft(0.0, 1000.0)).epsilon(1e-9));
  CHECK(pressure_altitude(ft(2500.0), {29.5, Unit::inhg}).value ==
        doctest::Approx(oracle_pressure_altitude_ft(2500.0, 29.5 * 33.8639)).epsilon(1e-9));
  CHECK_THROWS_AS(pressure_altitude(ft(0.0), {800.0, Unit::hpa}), ValidationError);
  CHECK_THROWS_AS(pressure_altitude(ft(0.0), {1200.0, Unit::hpa}), ValidationError);
}

TEST_CASE("pressure altitude inverts the ISA pressure profile within 0.01 hPa") {
  // QNH above about 1088 hPa at sea level puts the result below the -2000 ft floor.
  const double floor_hpa = oracle::isa_pressure(-2000.0 * 0.3048);
  for (double q = 850.0; q <= 1100.0; q += 2.5) {
    INFO("qnh=", q);
    if (q <= floor_hpa) {
      const auto pa = pressure_altitude(ft(0.0), {q, Unit::hpa});
      CHECK(std::abs(isa_conditions(pa).pressure.value - q) <= 0.01);
    } else {
      try {
        pressure_altitude(ft(0.0), {q, Unit::hpa});
        FAIL("accepted a result below the ISA floor");
      } catch (const ValidationError& e) {
        CHECK(e.field() == "qnh");
      }
    }
  }
}

TEST_CASE("density altitude") {
  CHECK(std::abs(density_altitude(ft(0.0), degc(15.0)).value) < 1e-6);
  CHECK(density_altitude(ft(0.0), degc(35.0)).value > 0.0);
  CHECK(density_altitude(ft(5000.0), degc(25.0)).value ==
        doctest::Approx(oracle_density_altitude_ft(5000.0, 25.0)).epsilon(1e-9));
  for (double h : {0.0, 2000.0, 5000.0, 10000.0, 20000.0}) {
    const auto isa_t = isa_conditions(ft(h)).temperature;
    INFO("h=", h);
    CHECK(std::abs(density_altitude(ft(h), isa_t).value - h) <= 1.0);
  }
}

TEST_CASE("true airspeed") {
  for (double cas : {40.0, 90.0, 150.0, 250.0}) {
    CHECK(tas_from_cas(kt(cas), ft(0.0), degc(15.0)).value == doctest::Approx(cas).epsilon(1e-12));
  }
  CHECK(tas_from_cas(kt(100.0), ft(8000.0), isa_conditions(ft(8000.0)).temperature).value > 100.0);
  const double oracle_kt = oracle::tas_from_cas(120.0 * 1852.0 / 3600.0, 3048.0, 273.15) * 3600.0 / 1852.0;
  CHECK(tas_from_cas(kt(120.0), ft(10000.0), degc(0.0)).value == doctest::Approx(oracle_kt).epsilon(1e-10));
  CHECK_THROWS_AS(tas_from_cas(kt(0.0), ft(0.0), degc(15.0)), ValidationError);
  CHECK_THROWS_AS(tas_from_cas(kt(700.0), ft(0.0), degc(15.0)), ValidationError);
}

TEST_CASE("TAS is never below CAS where density is below sea level") {
  oracle::Gen g(20240611);
  for (int i = 0; i < 500; ++i) {
    const double pa = g.uniform(0.0, 25000.0);
    const double oat = isa_conditions(ft(pa)).temperature.value + g.uniform(-15.0, 30.0);
    const double cas = g.uniform(40.0, 250.0);
    const double rho = isa_pressure_hpa(m_from_ft(pa)) * 100.0 / (287.05287 * (oat + 273.15));
    if (rho >= 1.225) continue;
    CHECK(tas_from_cas(kt(cas), ft(pa), degc(oat)).value >= cas);
  }
}

TEST_CASE("Mach number") {
  CHECK(std::abs(mach_number(kt(661.48), degc(15.0)) - 1.0) <= 0.001);
  CHECK(mach_number(kt(0.0), degc(15.0)) == 0.0);
  double last = -1.0;
  for (double v = 0.0; v < 800.0; v += 10.0) {
    const double m = mach_number(kt(v), degc(-20.0));
    CHECK(m > last);
    last = m;
  }
  CHECK(speed_of_sound(degc(15.0)).value == doctest::Approx(38.967854 * std::sqrt(288.15)).epsilon(1e-6));
}

TEST_CASE("humidity") {
  CHECK(humidity(degc(12.0), degc(12.0)).relative_humidity.value == 100.0);
  const double rh = humidity(degc(20.0), degc(10.0)).relative_humidity.value;
  CHECK(rh >= 52.0);
  CHECK(rh <= 53.0);
  CHECK(rh == doctest::Approx(oracle::magnus_rh(20.0, 10.0)).epsilon(1e-12));
  CHECK(humidity(degc(30.0), degc(-10.0)).relative_humidity.value < 10.0);
  CHECK(humidity(degc(20.0), degc(10.0)).spread.value == 10.0);
  // Within tolerance: clamped to saturation.
  CHECK(humidity(degc(10.0), degc(10.4)).relative_humidity.value == 100.0);
  CHECK_THROWS_AS(humidity(degc(10.0), degc(11.0)), ValidationError);
  oracle::Gen g(77);
  for (int i = 0; i < 1000; ++i) {
    const double t = g.uniform(-40.0, 45.0);
    const double td = t - g.uniform(0.0, 40.0);
    const double r = humidity(degc(t), degc(td)).relative_humidity.value;
    CHECK(r <= 100.0);
    CHECK(r >= 0.0);
  }
}
