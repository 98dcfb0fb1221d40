// Carburettor icing risk from OAT and dew point, looked up in a chart of
// qualitative regions. The output is categorical only.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aerocalc/geometry.hpp"
#include "aerocalc/units.hpp"

namespace aerocalc::carbicing {

enum class Severity { none = 0, light = 1, moderate = 2, serious = 3 };
enum class PowerContext { any, cruise, descent };

std::string_view to_string(Severity s);
std::string_view to_string(PowerContext p);
Severity parse_severity(std::string_view text);
PowerContext parse_power_context(std::string_view text);

struct Region {
  std::string label;
  Severity category = Severity::none;
  PowerContext power = PowerContext::any;
  geometry::Polygon polygon;  // (oat degC, dew point degC)
  bool operator==(const Region&) const = default;
};

/// Chart domain: oat in [oat_min, oat_max], dew point in [dew_min, oat].
struct Domain {
  double oat_min = -20.0;
  double oat_max = 40.0;
  double dew_min = -40.0;
  bool operator==(const Domain&) const = default;
  geometry::Polygon polygon() const;
};

struct IcingChart {
  std::string id;
  std::string display_name;
  std::string version;
  Domain domain;
  std::vector<Region> regions;
  bool operator==(const IcingChart&) const = default;
};

/// Regions must tile the domain without overlap in each power context and the
/// descent severity must never be below the cruise severity.
void validate(const IcingChart& chart);

/// Dew point may exceed the OAT by this much (sensor rounding) and is then
/// treated as saturated.
inline constexpr double kSupersaturationTolerance = 0.5;

extern const char* const kDisclaimer;

struct IcingAssessment {
  Severity category_cruise = Severity::none;
  Severity category_descent = Severity::none;
  units::Quantity relative_humidity;  // percent
  units::Quantity spread;             // delta_degc
  bool saturated = false;
  std::string disclaimer;
};

IcingAssessment assess(const units::Quantity& oat, const units::Quantity& dew_point, const IcingChart& chart);

/// Highest severity among regions applying to `power` that contain the point.
Severity lookup(const IcingChart& chart, double oat_c, double dew_c, PowerContext power);

struct GridCell {
  double oat = 0.0;
  double dew_point = 0.0;
  bool valid = false;  // false above the saturation line
  std::optional<Severity> cruise;
  std::optional<Severity> descent;
};

struct RiskGrid {
  int oat_cells = 0;
  int dew_cells = 0;
  std::vector<GridCell> cells;  // row-major, dew point rows, oat columns
  const GridCell& at(int dew_row, int oat_col) const { return cells[dew_row * oat_cells + oat_col]; }
};

/// Categories at cell centres over the chart domain's bounding box.
RiskGrid risk_grid(const IcingChart& chart, int oat_cells, int dew_cells);

/// Built-in chart with the same regions as the shipped data file.
IcingChart default_chart();

}  // namespace aerocalc::carbicing
