// Unit-safe quantities for the calculation engine.
//
// Every quantity belongs to exactly one category. Conversions compose through
// the category's canonical unit: canonical = value * scale + offset. Only the
// temperature units carry a non-zero offset.
#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aerocalc::units {

enum class Category {
  distance,
  speed,
  mass,
  volume,
  temperature,
  temperature_delta,
  pressure,
  angle,
  time,
  density,
  moment,
  dimensionless,
};

enum class Unit {
  // distance (canonical m)
  nm, sm, km, m, ft, in,
  // speed (canonical m/s)
  kt, mph, kmh, mps,
  // mass (canonical kg)
  kg, lb,
  // volume (canonical L)
  l, usgal, impgal,
  // temperature (canonical K)
  degc, degf, k,
  // temperature difference (canonical K)
  delta_degc, delta_degf, delta_k,
  // pressure (canonical hPa)
  hpa, inhg, psi,
  // angle (canonical degree)
  deg, rad,
  // time (canonical s)
  s, min, h,
  // density (canonical kg/m3)
  kgm3, kgl, lbusgal,
  // moment (canonical kg.m)
  kgm, lbin,
  // dimensionless (canonical ratio)
  ratio, percent,
};

struct UnitInfo {
  Unit unit;
  std::string_view id;
  std::string_view display;
  Category category;
  double scale;   // canonical units per one of this unit
  double offset;  // canonical value of this unit's zero
};

/// Conversion constants, one row per unit. Values are the standard
/// definitions (1 ft = 0.3048 m, 1 NM = 1852 m, 1 lb = 0.45359237 kg,
/// 1 US gal = 3.785411784 L, 1 inHg = 33.8639 hPa).
std::span<const UnitInfo> unit_table();

const UnitInfo& info(Unit u);
Category category_of(Unit u);
std::string_view id(Unit u);
std::string_view id(Category c);
Unit canonical_unit(Category c);

/// Lookup by lowercase identifier ("nm", "kt", "degc"). Throws
/// ValidationError naming `field` if the identifier is unknown.
Unit parse_unit(std::string_view text, std::string_view field = "unit");
Category parse_category(std::string_view text, std::string_view field = "category");

struct Quantity {
  double value = 0.0;
  Unit unit = Unit::ratio;

  Category category() const { return category_of(unit); }
  bool operator==(const Quantity&) const = default;
};

/// Throws ValidationError when `target` is outside the quantity's category;
/// the message names both categories.
Quantity convert(const Quantity& q, Unit target);

/// Value of `q` expressed in `target`.
double value_in(const Quantity& q, Unit target);

/// Throws ValidationError naming `field` unless `q` is in `expected`.
void require_category(const Quantity& q, Category expected, std::string_view field);

/// Units of one category in table order.
std::vector<UnitInfo> list_units(Category c);

inline Quantity make(double v, Unit u) { return Quantity{v, u}; }

}  // namespace aerocalc::units
