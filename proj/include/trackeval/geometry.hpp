#pragma once

// Exact rotated-rectangle geometry: corner conversion, convex clipping,
// shoelace area and intersection-over-union.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "trackeval/error.hpp"

namespace trackeval {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 p) noexcept { return {s * p.x, s * p.y}; }
  friend constexpr bool operator==(Point2, Point2) = default;
};

constexpr double cross(Point2 a, Point2 b) noexcept { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) noexcept { return std::hypot(p.x, p.y); }

// Below this many px² a polygon is treated as empty.
inline constexpr double kDegenerateArea = 1e-9;

// Maps any finite angle in degrees onto [0, 180).
inline double canonical_angle(double degrees) noexcept {
  double t = std::fmod(degrees, 180.0);
  if (t < 0.0) t += 180.0;
  if (t >= 180.0) t -= 180.0;
  return t + 0.0;  // folds -0.0
}

// sin/cos of an angle in degrees, exact on the axis directions.
inline Point2 unit_direction(double degrees) noexcept {
  if (degrees == 0.0) return {1.0, 0.0};
  if (degrees == 90.0) return {0.0, 1.0};
  const double rad = degrees * std::numbers::pi / 180.0;
  return {std::cos(rad), std::sin(rad)};
}

/// A rectangle given by its center, its extent along its own axes and the
/// counterclockwise angle (degrees) of its width axis against the x-axis.
///
/// The angle is folded into [0, 180) on construction. No w/h swap is ever
/// performed, so a box at exactly 90 degrees keeps the dimensions it was
/// given.
class RotatedBox {
 public:
  RotatedBox(double cx, double cy, double w, double h, double theta = 0.0)
      : cx_(cx), cy_(cy), w_(w), h_(h), theta_(0.0) {
    if (!std::isfinite(cx) || !std::isfinite(cy) || !std::isfinite(w) || !std::isfinite(h) ||
        !std::isfinite(theta)) {
      throw Error(ErrorCode::DomainError, "box fields must be finite");
    }
    if (!(w > 0.0) || !(h > 0.0)) {
      throw Error(ErrorCode::DomainError,
                  "box dimensions must be positive (w=" + std::to_string(w) +
                      ", h=" + std::to_string(h) + ")");
    }
    theta_ = canonical_angle(theta);
  }

  double cx() const noexcept { return cx_; }
  double cy() const noexcept { return cy_; }
  double w() const noexcept { return w_; }
  double h() const noexcept { return h_; }
  double theta() const noexcept { return theta_; }
  Point2 center() const noexcept { return {cx_, cy_}; }
  double area() const noexcept { return w_ * h_; }

  friend bool operator==(const RotatedBox&, const RotatedBox&) = default;

 private:
  double cx_, cy_, w_, h_, theta_;
};

/// Four corners in counterclockwise order forming a convex quadrilateral.
class ConvexQuad {
 public:
  /// Validates orientation, convexity and area; corners are used as given.
  explicit ConvexQuad(const std::array<Point2, 4>& corners) : corners_(corners) {
    const double a = signed_area();
    if (!std::isfinite(a) || a < kDegenerateArea) {
      throw Error(ErrorCode::Degenerate, "quadrilateral area below threshold or clockwise");
    }
    for (std::size_t i = 0; i < 4; ++i) {
      const Point2 e0 = corners_[(i + 1) % 4] - corners_[i];
      const Point2 e1 = corners_[(i + 2) % 4] - corners_[(i + 1) % 4];
      if (cross(e0, e1) < -1e-12 * norm(e0) * norm(e1)) {
        throw Error(ErrorCode::NonConvex, "quadrilateral is not convex");
      }
    }
  }

  const std::array<Point2, 4>& corners() const noexcept { return corners_; }
  const Point2& operator[](std::size_t i) const noexcept { return corners_[i]; }

  double signed_area() const noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < 4; ++i) s += cross(corners_[i], corners_[(i + 1) % 4]);
    return 0.5 * s;
  }

 private:
  struct Trusted {};
  ConvexQuad(const std::array<Point2, 4>& corners, Trusted) : corners_(corners) {}
  friend ConvexQuad to_quad(const RotatedBox& box);

  std::array<Point2, 4> corners_;
};

/// Convex intersection result: empty, or at least three counterclockwise
/// corners with positive area.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;
  explicit ConvexPolygon(std::vector<Point2> corners) : corners_(std::move(corners)) {}

  bool empty() const noexcept { return corners_.empty(); }
  std::size_t size() const noexcept { return corners_.size(); }
  const std::vector<Point2>& corners() const noexcept { return corners_; }

 private:
  std::vector<Point2> corners_;
};

namespace detail {

inline double shoelace(std::span<const Point2> pts) noexcept {
  const std::size_t n = pts.size();
  if (n < 3) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += cross(pts[i], pts[(i + 1) % n]);
  return 0.5 * s;
}

// Drops repeated and collinear corners left behind by clipping.
inline std::vector<Point2> simplify(std::vector<Point2> pts) {
  double scale = 1.0;
  for (const Point2& p : pts) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  const double eps = 1e-12 * scale;

  std::vector<Point2> out;
  out.reserve(pts.size());
  for (const Point2& p : pts) {
    if (out.empty() || norm(p - out.back()) > eps) out.push_back(p);
  }
  while (out.size() > 1 && norm(out.front() - out.back()) <= eps) out.pop_back();

  bool changed = true;
  while (changed && out.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Point2 prev = out[(i + out.size() - 1) % out.size()];
      const Point2 next = out[(i + 1) % out.size()];
      const Point2 d0 = out[i] - prev;
      const Point2 d1 = next - out[i];
      if (std::abs(cross(d0, d1)) <= 1e-12 * norm(d0) * norm(d1)) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return out;
}

}  // namespace detail

/// Corners of `box`, counterclockwise, starting at the local (-w/2, -h/2)
/// corner so that the first edge runs along the width axis.
inline ConvexQuad to_quad(const RotatedBox& box) {
  const Point2 u = unit_direction(box.theta());
  const double hw = 0.5 * box.w();
  const double hh = 0.5 * box.h();
  const std::array<Point2, 4> local = {{{-hw, -hh}, {hw, -hh}, {hw, hh}, {-hw, hh}}};
  std::array<Point2, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    const Point2 p = local[i];
    out[i] = {box.cx() + p.x * u.x - p.y * u.y, box.cy() + p.x * u.y + p.y * u.x};
  }
  return ConvexQuad(out, ConvexQuad::Trusted{});
}

/// Builds a quad from x1,y1,...,x4,y4 (VOT polygon order). Clockwise input is
/// reversed while keeping the first corner first.
inline ConvexQuad quad_from_points(const std::array<double, 8>& xy) {
  for (double v : xy) {
    if (!std::isfinite(v)) throw Error(ErrorCode::DomainError, "non-finite polygon coordinate");
  }
  std::array<Point2, 4> pts = {{{xy[0], xy[1]}, {xy[2], xy[3]}, {xy[4], xy[5]}, {xy[6], xy[7]}}};
  const double a = detail::shoelace(pts);
  if (std::abs(a) < kDegenerateArea) {
    throw Error(ErrorCode::Degenerate, "polygon area " + std::to_string(std::abs(a)) + " px^2");
  }
  if (a < 0.0) std::swap(pts[1], pts[3]);
  return ConvexQuad(pts);
}

struct QuadBox {
  RotatedBox box;
  // False when opposite edges or the two diagonals differ by more than 1%.
  bool rectangular = true;
};

/// Recovers center, width (edges c1c2 / c3c4), height (edges c2c3 / c4c1)
/// and the angle of edge c1c2.
inline QuadBox box_from_quad(const ConvexQuad& q) {
  const auto& c = q.corners();
  const double e12 = norm(c[1] - c[0]);
  const double e23 = norm(c[2] - c[1]);
  const double e34 = norm(c[3] - c[2]);
  const double e41 = norm(c[0] - c[3]);
  const double d13 = norm(c[2] - c[0]);
  const double d24 = norm(c[3] - c[1]);

  const Point2 center = 0.25 * (c[0] + c[1] + c[2] + c[3]);
  const Point2 dir = c[1] - c[0];
  const double theta = std::atan2(dir.y, dir.x) * 180.0 / std::numbers::pi;

  auto differs = [](double a, double b) { return std::abs(a - b) > 0.01 * std::max(a, b); };
  const bool rectangular = !differs(e12, e34) && !differs(e23, e41) && !differs(d13, d24);
  return {RotatedBox(center.x, center.y, 0.5 * (e12 + e34), 0.5 * (e23 + e41), theta), rectangular};
}

inline double area(const ConvexPolygon& p) noexcept {
  return std::max(0.0, detail::shoelace(p.corners()));
}

inline double area(const ConvexQuad& q) noexcept { return std::max(0.0, q.signed_area()); }

/// Sutherland-Hodgman: clips `a` against each edge half-plane of `b`.
/// Points on a clip edge count as inside.
inline ConvexPolygon intersect(const ConvexQuad& a, const ConvexQuad& b) {
  std::vector<Point2> poly(a.corners().begin(), a.corners().end());
  std::vector<Point2> next;
  next.reserve(12);

  for (std::size_t e = 0; e < 4 && !poly.empty(); ++e) {
    const Point2 e0 = b[e];
    const Point2 edge = b[(e + 1) % 4] - e0;
    auto side = [&](Point2 p) { return cross(edge, p - e0); };

    next.clear();
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 prev = poly[(i + n - 1) % n];
      const Point2 cur = poly[i];
      const double sp = side(prev);
      const double sc = side(cur);
      if (sc >= 0.0) {
        if (sp < 0.0) next.push_back(prev + (sp / (sp - sc)) * (cur - prev));
        next.push_back(cur);
      } else if (sp >= 0.0) {
        next.push_back(prev + (sp / (sp - sc)) * (cur - prev));
      }
    }
    poly.swap(next);
  }

  poly = detail::simplify(std::move(poly));
  if (poly.size() < 3 || detail::shoelace(poly) < kDegenerateArea) return {};
  return ConvexPolygon(std::move(poly));
}

/// Intersection over union of two boxes, union = area(g) + area(t) - overlap.
inline double iou(const RotatedBox& g, const RotatedBox& t) {
  if (g == t) return 1.0;
  const double reach = 0.5 * (std::hypot(g.w(), g.h()) + std::hypot(t.w(), t.h()));
  if (norm(g.center() - t.center()) > reach) return 0.0;

  const double inter = area(intersect(to_quad(g), to_quad(t)));
  const double uni = g.area() + t.area() - inter;
  if (!(uni > 0.0)) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

}  // namespace trackeval
