#pragma once

// Worked configurations in which center error and overlap disagree or tie,
// each paired with its closed-form values, plus two brute-force overlap
// oracles that share no code with the clipping engine.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "trackeval/error.hpp"
#include "trackeval/geometry.hpp"
#include "trackeval/measures.hpp"

namespace trackeval::scenarios {

struct ExistingMeasures {
  double e_a1 = 0.0;
  double e_a2 = 0.0;
  double e_c1 = 0.0;
  double e_c2 = 0.0;
};

struct ScenarioResult {
  std::string description;
  RotatedBox gt;
  RotatedBox pred_alg1;
  RotatedBox pred_alg2;
  ExistingMeasures closed_form;
  ExistingMeasures computed;
  double e_ms1 = 0.0;
  double e_ms2 = 0.0;
};

/// Grid-sampled IoU: counts cell centers of a resolution x resolution grid
/// spanning the joint bounding box that fall inside each box.
inline double raster_iou(const RotatedBox& g, const RotatedBox& t, int resolution = 2000) {
  if (resolution < 100) throw Error(ErrorCode::DomainError, "raster resolution must be >= 100");

  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  for (const RotatedBox* b : {&g, &t}) {
    const ConvexQuad q = to_quad(*b);
    for (const Point2& p : q.corners()) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
  }
  const double dx = (x1 - x0) / resolution;
  const double dy = (y1 - y0) / resolution;

  struct Frame {
    double cx, cy, c, s, hw, hh;
  };
  auto frame = [](const RotatedBox& b) {
    const double rad = b.theta() * std::numbers::pi / 180.0;
    return Frame{b.cx(), b.cy(), std::cos(rad), std::sin(rad), 0.5 * b.w(), 0.5 * b.h()};
  };
  const Frame fg = frame(g);
  const Frame ft = frame(t);

  std::int64_t in_g = 0, in_t = 0, in_both = 0;
  for (int j = 0; j < resolution; ++j) {
    const double y = y0 + (j + 0.5) * dy;
    const double gy = y - fg.cy, ty = y - ft.cy;
    for (int i = 0; i < resolution; ++i) {
      const double x = x0 + (i + 0.5) * dx;
      const double gx = x - fg.cx, tx = x - ft.cx;
      const bool a = std::abs(gx * fg.c + gy * fg.s) <= fg.hw && std::abs(-gx * fg.s + gy * fg.c) <= fg.hh;
      const bool b = std::abs(tx * ft.c + ty * ft.s) <= ft.hw && std::abs(-tx * ft.s + ty * ft.c) <= ft.hh;
      in_g += a;
      in_t += b;
      in_both += a && b;
    }
  }
  const std::int64_t uni = in_g + in_t - in_both;
  return uni == 0 ? 0.0 : static_cast<double>(in_both) / static_cast<double>(uni);
}

namespace detail {

// Integral of x dy along the part of each edge of `a` lying inside `b`.
// Edges exactly on b's boundary are kept when `inclusive`.
inline double boundary_inside(const ConvexQuad& a, const ConvexQuad& b, bool inclusive) {
  double sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const Point2 p = a[i];
    const Point2 q = a[(i + 1) % 4];
    double lo = 0.0, hi = 1.0;
    bool empty = false;
    for (std::size_t k = 0; k < 4 && !empty; ++k) {
      const Point2 e0 = b[k];
      const Point2 edge = b[(k + 1) % 4] - e0;
      const double fp = cross(edge, p - e0);
      const double fq = cross(edge, q - e0);
      const bool p_in = inclusive ? fp >= 0.0 : fp > 0.0;
      const bool q_in = inclusive ? fq >= 0.0 : fq > 0.0;
      if (p_in && q_in) continue;
      if (!p_in && !q_in) {
        empty = true;
        break;
      }
      const double t = fp / (fp - fq);
      if (p_in) {
        hi = std::min(hi, t);
      } else {
        lo = std::max(lo, t);
      }
      if (lo >= hi) empty = true;
    }
    if (empty) continue;
    const Point2 s0 = p + lo * (q - p);
    const Point2 s1 = p + hi * (q - p);
    sum += 0.5 * (s0.x + s1.x) * (s1.y - s0.y);
  }
  return sum;
}

}  // namespace detail

/// Exact IoU by integrating x dy around the intersection boundary.
/// Boxes whose edges overlap collinearly may be miscounted; the scenario
/// constructions below never produce such pairs.
inline double boundary_iou(const RotatedBox& g, const RotatedBox& t) {
  const ConvexQuad a = to_quad(g);
  const ConvexQuad b = to_quad(t);
  const double inter =
      std::max(0.0, detail::boundary_inside(a, b, true) + detail::boundary_inside(b, a, false));
  const double uni = g.area() + t.area() - inter;
  return uni > 0.0 ? std::clamp(inter / uni, 0.0, 1.0) : 0.0;
}

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::DomainError, what);
}

inline ScenarioResult finish(ScenarioResult r, AngleMode mode) {
  r.computed = {iou(r.gt, r.pred_alg1), iou(r.gt, r.pred_alg2), center_error(r.gt, r.pred_alg1),
                center_error(r.gt, r.pred_alg2)};
  r.e_ms1 = frame_measures(r.gt, r.pred_alg1, mode).e_ms;
  r.e_ms2 = frame_measures(r.gt, r.pred_alg2, mode).e_ms;
  return r;
}

}  // namespace detail

/// Alg1 grows both sides around the true center; Alg2 grows the width only
/// and is displaced by `alpha` along x, still covering the ground truth.
inline ScenarioResult scaled_example_1(double w_g, double h_g, double w, double h, double alpha,
                                       AngleMode mode = AngleMode::raw) {
  detail::require(w_g > 0 && h_g > 0 && w > 0 && h > 0 && alpha > 0, "all arguments must be positive");
  detail::require(alpha <= 0.5 * w, "alpha must not exceed w/2 or Alg2 stops covering the ground truth");

  ScenarioResult r{"scaled tracker, example 1: enlarged concentric box vs wider displaced box",
                   RotatedBox(0.0, 0.0, w_g, h_g),
                   RotatedBox(0.0, 0.0, w_g + w, h_g + h),
                   RotatedBox(alpha, 0.0, w_g + w, h_g),
                   {},
                   {},
                   0.0,
                   0.0};
  const double s = w_g * h_g + w * h_g;
  r.closed_form = {w_g * h_g / (s + h * w_g + w * h), w_g * h_g / s, 0.0, alpha};
  return detail::finish(std::move(r), mode);
}

/// Alg1 loses `h` of height, Alg2 loses `w` of width; both concentric.
inline ScenarioResult scaled_example_2(double w_g, double h_g, double w, double h,
                                       AngleMode mode = AngleMode::raw) {
  detail::require(w_g > 0 && h_g > 0, "ground-truth size must be positive");
  detail::require(h > 0 && h < h_g && w > 0 && w < w_g, "offsets must satisfy 0 < h < h_g and 0 < w < w_g");

  ScenarioResult r{"scaled tracker, example 2: shorter box vs narrower box",
                   RotatedBox(0.0, 0.0, w_g, h_g),
                   RotatedBox(0.0, 0.0, w_g, h_g - h),
                   RotatedBox(0.0, 0.0, w_g - w, h_g),
                   {},
                   {},
                   0.0,
                   0.0};
  r.closed_form = {1.0 - h / h_g, 1.0 - w / w_g, 0.0, 0.0};
  return detail::finish(std::move(r), mode);
}

/// Same box turned by 135 degrees (Alg1) and by 45 degrees (Alg2). The two
/// overlaps are mirror images; their shared value is taken from the
/// boundary integral.
inline ScenarioResult oriented_example_2(double w_g, double h_g, AngleMode mode = AngleMode::raw) {
  detail::require(w_g > 0 && h_g > 0, "ground-truth size must be positive");

  ScenarioResult r{"oriented tracker, example 2: same box turned by 135 vs 45 degrees",
                   RotatedBox(0.0, 0.0, w_g, h_g, 0.0),
                   RotatedBox(0.0, 0.0, w_g, h_g, 135.0),
                   RotatedBox(0.0, 0.0, w_g, h_g, 45.0),
                   {},
                   {},
                   0.0,
                   0.0};
  const double overlap = boundary_iou(r.gt, r.pred_alg2);
  r.closed_form = {overlap, overlap, 0.0, 0.0};
  return detail::finish(std::move(r), mode);
}

/// Ground truth at 90 degrees. Alg1 is concentric and `h_off` shorter; Alg2
/// is `w_off` narrower and slid along the width axis by w_off/2, which keeps
/// it flush inside the ground truth.
inline ScenarioResult scaled_oriented_example_1(double w_gt, double h_gt, double w_off, double h_off,
                                                AngleMode mode = AngleMode::raw) {
  detail::require(w_gt > 0 && h_gt > 0, "ground-truth size must be positive");
  detail::require(h_off > 0 && h_off < h_gt && w_off > 0 && w_off < w_gt,
                  "offsets must satisfy 0 < h_off < h_gt and 0 < w_off < w_gt");

  const Point2 width_axis = unit_direction(90.0);
  const double shift = 0.5 * w_off;
  ScenarioResult r{"scaled and oriented tracker, example 1: shorter concentric box vs narrower shifted box",
                   RotatedBox(0.0, 0.0, w_gt, h_gt, 90.0),
                   RotatedBox(0.0, 0.0, w_gt, h_gt - h_off, 90.0),
                   RotatedBox(shift * width_axis.x, shift * width_axis.y, w_gt - w_off, h_gt, 90.0),
                   {},
                   {},
                   0.0,
                   0.0};
  r.closed_form = {1.0 - h_off / h_gt, 1.0 - w_off / w_gt, 0.0, shift};
  return detail::finish(std::move(r), mode);
}

}  // namespace trackeval::scenarios
