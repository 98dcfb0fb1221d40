#include "aerocalc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aerocalc::geometry {

namespace {

double cross(Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

bool on_segment(Point p, Point a, Point b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

bool segments_touch(Point a, Point b, Point c, Point d) {
  const int d1 = sign(cross(c, d, a));
  const int d2 = sign(cross(c, d, b));
  const int d3 = sign(cross(a, b, c));
  const int d4 = sign(cross(a, b, d));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(a, c, d)) return true;
  if (d2 == 0 && on_segment(b, c, d)) return true;
  if (d3 == 0 && on_segment(c, a, b)) return true;
  if (d4 == 0 && on_segment(d, a, b)) return true;
  return false;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::inside: return "inside";
    case Verdict::outside: return "outside";
    default: return "on_boundary";
  }
}

Normaliser Normaliser::for_polygon(const Polygon& poly) {
  Normaliser n;
  if (poly.empty()) return n;
  double xmin = poly.front().x, xmax = xmin, ymin = poly.front().y, ymax = ymin;
  for (const Point& p : poly) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  n.x0 = xmin;
  n.y0 = ymin;
  n.x_span = xmax > xmin ? xmax - xmin : 1.0;
  n.y_span = ymax > ymin ? ymax - ymin : 1.0;
  return n;
}

Polygon Normaliser::apply(const Polygon& poly) const {
  Polygon out;
  out.reserve(poly.size());
  for (const Point& p : poly) out.push_back(apply(p));
  return out;
}

double distance_to_segment(Point p, Point a, Point b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

double distance_to_boundary(const Polygon& poly, Point p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    best = std::min(best, distance_to_segment(p, poly[i], poly[(i + 1) % n]));
  }
  return best;
}

Verdict locate(const Polygon& poly, Point p, double tolerance) {
  if (distance_to_boundary(poly, p) <= tolerance) return Verdict::on_boundary;
  // Winding number (Sunday's formulation).
  int winding = 0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    if (a.y <= p.y) {
      if (b.y > p.y && cross(a, b, p) > 0.0) ++winding;
    } else if (b.y <= p.y && cross(a, b, p) < 0.0) {
      --winding;
    }
  }
  return winding != 0 ? Verdict::inside : Verdict::outside;
}

double signed_distance(const Polygon& poly, Point p, double tolerance) {
  const double d = distance_to_boundary(poly, p);
  if (d <= tolerance) return 0.0;
  return locate(poly, p, tolerance) == Verdict::inside ? d : -d;
}

bool is_simple(const Polygon& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (const Point& p : poly) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (poly[i] == poly[(i + 1) % n]) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = poly[i], b = poly[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point c = poly[j], d = poly[(j + 1) % n];
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        // Neighbours share one vertex; they must not fold back onto each other.
        const Point shared = j == i + 1 ? b : a;
        const Point other_ab = j == i + 1 ? a : b;
        const Point other_cd = j == i + 1 ? d : c;
        if (cross(shared, other_ab, other_cd) == 0.0 &&
            ((other_ab.x - shared.x) * (other_cd.x - shared.x) + (other_ab.y - shared.y) * (other_cd.y - shared.y)) > 0.0) {
          return false;
        }
        continue;
      }
      if (segments_touch(a, b, c, d)) return false;
    }
  }
  return std::abs(signed_area(poly)) > 0.0;
}

double signed_area(const Polygon& poly) {
  double twice = 0.0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    twice += a.x * b.y - b.x * a.y;
  }
  return twice / 2.0;
}

Point centroid(const Polygon& poly) {
  const double area = signed_area(poly);
  double cx = 0.0, cy = 0.0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    const double w = a.x * b.y - b.x * a.y;
    cx += (a.x + b.x) * w;
    cy += (a.y + b.y) * w;
  }
  return {cx / (6.0 * area), cy / (6.0 * area)};
}

}  // namespace aerocalc::geometry
