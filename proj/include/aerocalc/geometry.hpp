// Planar polygon helpers shared by the CG envelopes and the icing chart.
#pragma once

#include <string_view>
#include <vector>

namespace aerocalc::geometry {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

using Polygon = std::vector<Point>;

enum class Verdict { inside, outside, on_boundary };
std::string_view to_string(Verdict v);

/// Affine map taking the polygon's bounding box onto the unit square, so
/// distances are comparable across axes with different units.
struct Normaliser {
  double x0 = 0.0, x_span = 1.0, y0 = 0.0, y_span = 1.0;
  static Normaliser for_polygon(const Polygon& poly);
  Point apply(Point p) const { return {(p.x - x0) / x_span, (p.y - y0) / y_span}; }
  Polygon apply(const Polygon& poly) const;
};

/// Points within `tolerance` of an edge are on the boundary; otherwise the
/// winding number decides.
Verdict locate(const Polygon& poly, Point p, double tolerance = 1e-9);

double distance_to_segment(Point p, Point a, Point b);
double distance_to_boundary(const Polygon& poly, Point p);

/// Positive inside, negative outside, zero on the boundary.
double signed_distance(const Polygon& poly, Point p, double tolerance = 1e-9);

/// At least three vertices, no repeated consecutive vertices, and no two
/// edges touching except neighbours at their shared vertex.
bool is_simple(const Polygon& poly);

double signed_area(const Polygon& poly);
Point centroid(const Polygon& poly);

}  // namespace aerocalc::geometry
