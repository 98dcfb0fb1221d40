#include "aerocalc/carbicing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aerocalc/atmosphere.hpp"
#include "aerocalc/error.hpp"

namespace aerocalc::carbicing {

using geometry::Point;
using geometry::Polygon;
using geometry::Verdict;
using units::Quantity;
using units::Unit;

const char* const kDisclaimer =
    "Approximation only: the category comes from a generic temperature/dew point chart. Actual icing "
    "also depends on carburettor location within the engine cowling, specific engine and induction "
    "system design, throttle setting, fuel vaporisation characteristics, and pilot technique.";

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::light: return "light";
    case Severity::moderate: return "moderate";
    case Severity::serious: return "serious";
    default: return "none";
  }
}

std::string_view to_string(PowerContext p) {
  switch (p) {
    case PowerContext::cruise: return "cruise";
    case PowerContext::descent: return "descent";
    default: return "any";
  }
}

Severity parse_severity(std::string_view text) {
  for (Severity s : {Severity::none, Severity::light, Severity::moderate, Severity::serious}) {
    if (to_string(s) == text) return s;
  }
  throw ValidationError("category", "unknown icing category '" + std::string(text) + "'");
}

PowerContext parse_power_context(std::string_view text) {
  for (PowerContext p : {PowerContext::any, PowerContext::cruise, PowerContext::descent}) {
    if (to_string(p) == text) return p;
  }
  throw ValidationError("power_context", "power context must be any, cruise or descent");
}

Polygon Domain::polygon() const {
  return {{oat_min, dew_min}, {oat_max, dew_min}, {oat_max, oat_max}, {oat_min, oat_min}};
}

namespace {

bool applies(const Region& r, PowerContext ctx) { return r.power == PowerContext::any || r.power == ctx; }

std::string num(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

}  // namespace

Severity lookup(const IcingChart& chart, double oat_c, double dew_c, PowerContext power) {
  const Point p{oat_c, std::min(dew_c, oat_c)};
  Severity best = Severity::none;
  for (const auto& r : chart.regions) {
    if (!applies(r, power)) continue;
    if (geometry::locate(r.polygon, p) != Verdict::outside) best = std::max(best, r.category);
  }
  return best;
}

void validate(const IcingChart& chart) {
  const Domain& d = chart.domain;
  if (chart.id.empty()) throw ValidationError("id", "chart identifier is required");
  if (!(d.oat_min < d.oat_max) || !(d.dew_min < d.oat_min) || !std::isfinite(d.oat_max) ||
      !std::isfinite(d.dew_min)) {
    throw ValidationError("domain", "domain needs dew_min < oat_min < oat_max");
  }
  if (chart.regions.empty()) throw ValidationError("regions", "chart has no regions");
  for (std::size_t i = 0; i < chart.regions.size(); ++i) {
    const auto& r = chart.regions[i];
    const std::string field = "regions[" + std::to_string(i) + "]";
    if (!geometry::is_simple(r.polygon)) {
      throw ValidationError(field + ".vertices", "region '" + r.label + "' is self-intersecting or degenerate");
    }
  }

  const Polygon dom = d.polygon();
  const double dom_area = std::abs(geometry::signed_area(dom));
  for (PowerContext ctx : {PowerContext::cruise, PowerContext::descent}) {
    double area = 0.0;
    for (const auto& r : chart.regions) {
      if (applies(r, ctx)) area += std::abs(geometry::signed_area(r.polygon));
    }
    if (std::abs(area - dom_area) > 1e-9 * dom_area) {
      throw ValidationError("regions", std::string(to_string(ctx)) + " regions cover area " + num(area) +
                                           ", domain area is " + num(dom_area));
    }
  }

  // Sample off the integer lattice so points avoid shared edges.
  const double step = 0.5;
  for (double oat = d.oat_min + 0.13; oat < d.oat_max; oat += step) {
    for (double dew = d.dew_min + 0.29; dew < oat; dew += step) {
      const Point p{oat, dew};
      for (PowerContext ctx : {PowerContext::cruise, PowerContext::descent}) {
        int inside = 0, touching = 0;
        for (const auto& r : chart.regions) {
          if (!applies(r, ctx)) continue;
          const Verdict v = geometry::locate(r.polygon, p);
          if (v == Verdict::inside) ++inside;
          if (v != Verdict::outside) ++touching;
        }
        if (touching == 0) {
          throw ValidationError("regions", "no " + std::string(to_string(ctx)) + " region covers oat " + num(oat) +
                                               ", dew point " + num(dew));
        }
        if (inside > 1) {
          throw ValidationError("regions", std::string(to_string(ctx)) + " regions overlap at oat " + num(oat) +
                                               ", dew point " + num(dew));
        }
      }
      if (lookup(chart, oat, dew, PowerContext::descent) < lookup(chart, oat, dew, PowerContext::cruise)) {
        throw ValidationError("regions", "descent severity below cruise at oat " + num(oat) + ", dew point " +
                                             num(dew));
      }
    }
  }
}

IcingAssessment assess(const Quantity& oat, const Quantity& dew_point, const IcingChart& chart) {
  units::require_category(oat, units::Category::temperature, "oat");
  units::require_category(dew_point, units::Category::temperature, "dew_point");
  const double t = units::value_in(oat, Unit::degc);
  const double td = units::value_in(dew_point, Unit::degc);
  const Domain& d = chart.domain;
  if (!std::isfinite(t) || t < d.oat_min || t > d.oat_max) {
    throw ValidationError("oat", "OAT " + num(t) + " degC is outside the chart domain [" + num(d.oat_min) + ", " +
                                     num(d.oat_max) + "] degC");
  }
  if (!std::isfinite(td) || td < d.dew_min || td > t + kSupersaturationTolerance) {
    throw ValidationError("dew_point", "dew point " + num(td) + " degC is outside the chart domain [" +
                                           num(d.dew_min) + ", OAT] degC");
  }

  const auto h = atmosphere::humidity(oat, dew_point);
  IcingAssessment a;
  a.category_cruise = lookup(chart, t, td, PowerContext::cruise);
  a.category_descent = lookup(chart, t, td, PowerContext::descent);
  a.relative_humidity = h.relative_humidity;
  a.spread = h.spread;
  a.saturated = td >= t;
  a.disclaimer = kDisclaimer;
  return a;
}

RiskGrid risk_grid(const IcingChart& chart, int oat_cells, int dew_cells) {
  if (oat_cells < 2) throw ValidationError("oat_cells", "resolution must be at least 2");
  if (dew_cells < 2) throw ValidationError("dew_cells", "resolution must be at least 2");
  const Domain& d = chart.domain;
  const double oat_w = (d.oat_max - d.oat_min) / oat_cells;
  const double dew_w = (d.oat_max - d.dew_min) / dew_cells;
  RiskGrid g;
  g.oat_cells = oat_cells;
  g.dew_cells = dew_cells;
  g.cells.reserve(static_cast<std::size_t>(oat_cells) * dew_cells);
  for (int j = 0; j < dew_cells; ++j) {
    for (int i = 0; i < oat_cells; ++i) {
      GridCell c;
      c.oat = d.oat_min + (i + 0.5) * oat_w;
      c.dew_point = d.dew_min + (j + 0.5) * dew_w;
      c.valid = c.dew_point <= c.oat;
      if (c.valid) {
        c.cruise = lookup(chart, c.oat, c.dew_point, PowerContext::cruise);
        c.descent = lookup(chart, c.oat, c.dew_point, PowerContext::descent);
      }
      g.cells.push_back(c);
    }
  }
  return g;
}

IcingChart default_chart() {
  IcingChart c;
  c.id = "generic-carb-icing";
  c.display_name = "Generic carburettor icing chart (illustrative)";
  c.version = "2024.1";
  // Bands of constant dew point spread; wetter bands are more severe, and
  // descent power is penalised in the middle bands.
  const Polygon b1{{-5, -5}, {25, 25}, {25, 21}, {-5, -9}};
  const Polygon b2{{-10, -10}, {-5, -5}, {-5, -9}, {25, 21}, {25, 25}, {30, 30}, {30, 20}, {-10, -20}};
  const Polygon b3{{-10, -25}, {35, 20}, {35, 35}, {30, 30}, {30, 20}, {-10, -20}};
  const Polygon b4{{-15, -15}, {-10, -10}, {-10, -25}, {35, 20}, {35, 35}, {40, 40}, {40, 20}, {-15, -35}};
  const Polygon b5{{-20, -20}, {-15, -15}, {-15, -35}, {40, 20}, {40, -40}, {-20, -40}};
  c.regions = {
      {"serious icing at any power", Severity::serious, PowerContext::any, b1},
      {"moderate icing at cruise power", Severity::moderate, PowerContext::cruise, b2},
      {"serious icing at descent power", Severity::serious, PowerContext::descent, b2},
      {"light icing at cruise power", Severity::light, PowerContext::cruise, b3},
      {"serious icing at descent power", Severity::serious, PowerContext::descent, b3},
      {"light icing at any power", Severity::light, PowerContext::any, b4},
      {"no significant icing", Severity::none, PowerContext::any, b5},
  };
  return c;
}

}  // namespace aerocalc::carbicing
