#include "aerocalc/units.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "aerocalc/error.hpp"

namespace aerocalc::units {
namespace {

constexpr double kFoot = 0.3048;
constexpr double kInch = 0.0254;
constexpr double kNauticalMile = 1852.0;
constexpr double kStatuteMile = 1609.344;
constexpr double kPound = 0.45359237;
constexpr double kUsGallon = 3.785411784;
constexpr double kImperialGallon = 4.54609;
constexpr double kInHg = 33.8639;
constexpr double kPsi = 68.94757293168361;  // 6894.757293168361 Pa
constexpr double kZeroCelsius = 273.15;

// Order within a category is the listing order.
constexpr std::array kUnits{
    UnitInfo{Unit::nm, "nm", "nautical mile", Category::distance, kNauticalMile, 0.0},
    UnitInfo{Unit::sm, "sm", "statute mile", Category::distance, kStatuteMile, 0.0},
    UnitInfo{Unit::km, "km", "kilometre", Category::distance, 1000.0, 0.0},
    UnitInfo{Unit::m, "m", "metre", Category::distance, 1.0, 0.0},
    UnitInfo{Unit::ft, "ft", "foot", Category::distance, kFoot, 0.0},
    UnitInfo{Unit::in, "in", "inch", Category::distance, kInch, 0.0},

    UnitInfo{Unit::kt, "kt", "knot", Category::speed, kNauticalMile / 3600.0, 0.0},
    UnitInfo{Unit::mph, "mph", "statute mile per hour", Category::speed, kStatuteMile / 3600.0, 0.0},
    UnitInfo{Unit::kmh, "kmh", "kilometre per hour", Category::speed, 1000.0 / 3600.0, 0.0},
    UnitInfo{Unit::mps, "mps", "metre per second", Category::speed, 1.0, 0.0},

    UnitInfo{Unit::kg, "kg", "kilogram", Category::mass, 1.0, 0.0},
    UnitInfo{Unit::lb, "lb", "pound", Category::mass, kPound, 0.0},

    UnitInfo{Unit::l, "l", "litre", Category::volume, 1.0, 0.0},
    UnitInfo{Unit::usgal, "usgal", "US gallon", Category::volume, kUsGallon, 0.0},
    UnitInfo{Unit::impgal, "impgal", "imperial gallon", Category::volume, kImperialGallon, 0.0},

    UnitInfo{Unit::degc, "degc", "degree Celsius", Category::temperature, 1.0, kZeroCelsius},
    UnitInfo{Unit::degf, "degf", "degree Fahrenheit", Category::temperature, 5.0 / 9.0,
             kZeroCelsius - 32.0 * 5.0 / 9.0},
    UnitInfo{Unit::k, "k", "kelvin", Category::temperature, 1.0, 0.0},

    UnitInfo{Unit::delta_degc, "delta_degc", "Celsius degree (difference)", Category::temperature_delta, 1.0, 0.0},
    UnitInfo{Unit::delta_degf, "delta_degf", "Fahrenheit degree (difference)", Category::temperature_delta, 5.0 / 9.0, 0.0},
    UnitInfo{Unit::delta_k, "delta_k", "kelvin (difference)", Category::temperature_delta, 1.0, 0.0},

    UnitInfo{Unit::hpa, "hpa", "hectopascal", Category::pressure, 1.0, 0.0},
    UnitInfo{Unit::inhg, "inhg", "inch of mercury", Category::pressure, kInHg, 0.0},
    UnitInfo{Unit::psi, "psi", "pound per square inch", Category::pressure, kPsi, 0.0},

    UnitInfo{Unit::deg, "deg", "degree", Category::angle, 1.0, 0.0},
    UnitInfo{Unit::rad, "rad", "radian", Category::angle, 57.29577951308232, 0.0},

    UnitInfo{Unit::s, "s", "second", Category::time, 1.0, 0.0},
    UnitInfo{Unit::min, "min", "minute", Category::time, 60.0, 0.0},
    UnitInfo{Unit::h, "h", "hour", Category::time, 3600.0, 0.0},

    UnitInfo{Unit::kgm3, "kgm3", "kilogram per cubic metre", Category::density, 1.0, 0.0},
    UnitInfo{Unit::kgl, "kgl", "kilogram per litre", Category::density, 1000.0, 0.0},
    UnitInfo{Unit::lbusgal, "lbusgal", "pound per US gallon", Category::density,
             kPound / kUsGallon * 1000.0, 0.0},

    UnitInfo{Unit::kgm, "kgm", "kilogram metre", Category::moment, 1.0, 0.0},
    UnitInfo{Unit::lbin, "lbin", "pound inch", Category::moment, kPound * kInch, 0.0},

    UnitInfo{Unit::ratio, "ratio", "ratio", Category::dimensionless, 1.0, 0.0},
    UnitInfo{Unit::percent, "percent", "percent", Category::dimensionless, 0.01, 0.0},
};

constexpr std::array<std::string_view, 12> kCategoryIds{
    "distance", "speed", "mass", "volume", "temperature", "temperature_delta",
    "pressure", "angle", "time", "density", "moment", "dimensionless"};

constexpr std::array<Unit, 12> kCanonical{
    Unit::m, Unit::mps, Unit::kg, Unit::l, Unit::k, Unit::delta_k,
    Unit::hpa, Unit::deg, Unit::s, Unit::kgm3, Unit::kgm, Unit::ratio};

}  // namespace

std::span<const UnitInfo> unit_table() { return kUnits; }

const UnitInfo& info(Unit u) {
  for (const auto& row : kUnits) {
    if (row.unit == u) return row;
  }
  throw ValidationError("unit", "unknown unit");
}

Category category_of(Unit u) { return info(u).category; }
std::string_view id(Unit u) { return info(u).id; }
std::string_view id(Category c) { return kCategoryIds.at(static_cast<std::size_t>(c)); }
Unit canonical_unit(Category c) { return kCanonical.at(static_cast<std::size_t>(c)); }

Unit parse_unit(std::string_view text, std::string_view field) {
  for (const auto& row : kUnits) {
    if (row.id == text) return row.unit;
  }
  throw ValidationError(std::string(field), "unknown unit '" + std::string(text) + "'");
}

Category parse_category(std::string_view text, std::string_view field) {
  for (std::size_t i = 0; i < kCategoryIds.size(); ++i) {
    if (kCategoryIds[i] == text) return static_cast<Category>(i);
  }
  throw ValidationError(std::string(field), "unknown category '" + std::string(text) + "'");
}

Quantity convert(const Quantity& q, Unit target) {
  const UnitInfo& from = info(q.unit);
  const UnitInfo& to = info(target);
  if (from.category != to.category) {
    throw ValidationError("unit", "cannot convert " + std::string(id(from.category)) + " (" +
                                      std::string(from.id) + ") to " +
                                      std::string(id(to.category)) + " (" + std::string(to.id) + ")");
  }
  if (from.unit == to.unit) return q;
  if (from.offset == 0.0 && to.offset == 0.0) {
    return {q.value * (from.scale / to.scale), target};
  }
  const double canonical = q.value * from.scale + from.offset;
  return {(canonical - to.offset) / to.scale, target};
}

double value_in(const Quantity& q, Unit target) { return convert(q, target).value; }

void require_category(const Quantity& q, Category expected, std::string_view field) {
  const Category actual = q.category();
  if (actual != expected) {
    throw ValidationError(std::string(field), "expected a " + std::string(id(expected)) +
                                                  " unit, got '" + std::string(id(q.unit)) + "' (" +
                                                  std::string(id(actual)) + ")");
  }
}

std::vector<UnitInfo> list_units(Category c) {
  std::vector<UnitInfo> out;
  std::copy_if(kUnits.begin(), kUnits.end(), std::back_inserter(out),
               [c](const UnitInfo& row) { return row.category == c; });
  return out;
}

}  // namespace aerocalc::units
