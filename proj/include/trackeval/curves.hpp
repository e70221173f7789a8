#pragma once

// Threshold sweeps over per-frame measures: precision (center error within
// tau px), success (overlap above tau) and matching (matching score above
// tau). AUC is the mean of the sampled values.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trackeval/error.hpp"
#include "trackeval/measures.hpp"

namespace trackeval {

enum class CurveKind { precision, success, matching };

enum class Comparison {
  strict,     // score > tau
  inclusive,  // score >= tau
};

constexpr std::string_view to_string(CurveKind kind) noexcept {
  switch (kind) {
    case CurveKind::precision: return "precision";
    case CurveKind::success: return "success";
    case CurveKind::matching: return "matching";
  }
  return "";
}

inline std::optional<CurveKind> parse_curve_kind(std::string_view s) noexcept {
  for (CurveKind k : {CurveKind::precision, CurveKind::success, CurveKind::matching}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

struct Curve {
  CurveKind kind = CurveKind::success;
  std::vector<double> thresholds;
  std::vector<double> values;
  double auc = 0.0;

  friend bool operator==(const Curve&, const Curve&) = default;
};

/// 0, 1, ..., max_px.
inline std::vector<double> precision_grid(int max_px = 50) {
  if (max_px < 0) throw Error(ErrorCode::DomainError, "precision grid maximum must be >= 0");
  std::vector<double> g(static_cast<std::size_t>(max_px) + 1);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = static_cast<double>(i);
  return g;
}

/// `steps` evenly spaced samples of [0, 1], both ends included.
inline std::vector<double> overlap_grid(int steps = 101) {
  if (steps < 2) throw Error(ErrorCode::DomainError, "overlap grid needs at least 2 samples");
  std::vector<double> g(static_cast<std::size_t>(steps));
  const auto last = static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = static_cast<double>(i) / last;
  return g;
}

inline double auc(std::span<const double> values) noexcept {
  if (values.empty()) return 0.0;
  detail::MeanAccumulator m;
  for (double v : values) m.add(v);
  return std::clamp(m.mean(), 0.0, 1.0);
}

inline double auc(const Curve& curve) noexcept { return auc(curve.values); }

/// Describes the first violated curve invariant, if any.
inline std::optional<std::string> curve_problem(const Curve& c) {
  if (c.thresholds.empty()) return "curve has no samples";
  if (c.thresholds.size() != c.values.size()) return "threshold/value length mismatch";
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    if (!std::isfinite(c.thresholds[i])) return "non-finite threshold";
    if (i > 0 && !(c.thresholds[i] > c.thresholds[i - 1])) return "thresholds not strictly increasing";
    if (!(c.values[i] >= 0.0 && c.values[i] <= 1.0)) return "curve value outside [0, 1]";
    if (i > 0) {
      const bool rising = c.values[i] >= c.values[i - 1];
      const bool falling = c.values[i] <= c.values[i - 1];
      if (c.kind == CurveKind::precision && !rising) return "precision curve decreases";
      if (c.kind != CurveKind::precision && !falling) return "success-type curve increases";
    }
  }
  if (std::abs(c.auc - auc(c.values)) > 1e-12) return "auc differs from the mean of the values";
  return std::nullopt;
}

namespace detail {

inline void check_grid(std::span<const double> thresholds) {
  if (thresholds.empty()) throw Error(ErrorCode::DomainError, "empty threshold grid");
  for (std::size_t i = 1; i < thresholds.size(); ++i) {
    if (!(thresholds[i] > thresholds[i - 1])) {
      throw Error(ErrorCode::DomainError, "threshold grid must be strictly increasing");
    }
  }
}

// Fraction of frames whose score passes each threshold. Failure frames
// (nullopt scores) never pass. `at_most` selects score <= tau, otherwise
// the comparison picks score > tau or score >= tau.
inline Curve sweep(CurveKind kind, std::span<const std::optional<double>> scores,
                   std::span<const double> thresholds, bool at_most, Comparison cmp) {
  if (scores.empty()) throw Error(ErrorCode::EmptySequence, "no frames for curve");
  check_grid(thresholds);

  std::vector<double> sorted;
  sorted.reserve(scores.size());
  for (const auto& s : scores) {
    if (s) sorted.push_back(*s);
  }
  std::sort(sorted.begin(), sorted.end());

  Curve c;
  c.kind = kind;
  c.thresholds.assign(thresholds.begin(), thresholds.end());
  c.values.reserve(thresholds.size());
  const auto n = static_cast<double>(scores.size());
  for (double tau : thresholds) {
    std::size_t pass = 0;
    if (at_most) {
      pass = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), tau) - sorted.begin());
    } else if (cmp == Comparison::strict) {
      pass = static_cast<std::size_t>(sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), tau));
    } else {
      pass = static_cast<std::size_t>(sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), tau));
    }
    c.values.push_back(static_cast<double>(pass) / n);
  }
  c.auc = auc(c.values);
  return c;
}

template <class Project>
std::vector<std::optional<double>> project(std::span<const FrameMeasures> frames, Project field) {
  std::vector<std::optional<double>> out;
  out.reserve(frames.size());
  for (const FrameMeasures& f : frames) {
    out.push_back(f.valid ? std::optional<double>(field(f)) : std::nullopt);
  }
  return out;
}

}  // namespace detail

inline Curve precision_curve(std::span<const FrameMeasures> frames,
                             std::span<const double> thresholds) {
  const auto scores = detail::project(frames, [](const FrameMeasures& f) { return f.e_c; });
  return detail::sweep(CurveKind::precision, scores, thresholds, true, Comparison::inclusive);
}

inline Curve success_curve(std::span<const FrameMeasures> frames, std::span<const double> thresholds,
                           Comparison cmp = Comparison::strict) {
  const auto scores = detail::project(frames, [](const FrameMeasures& f) { return f.e_a; });
  return detail::sweep(CurveKind::success, scores, thresholds, false, cmp);
}

inline Curve matching_curve(std::span<const FrameMeasures> frames, std::span<const double> thresholds,
                            Comparison cmp = Comparison::strict) {
  const auto scores = detail::project(frames, [](const FrameMeasures& f) { return f.e_ms; });
  return detail::sweep(CurveKind::matching, scores, thresholds, false, cmp);
}

/// Index of `threshold` in the curve's grid, matched to within 1e-9.
inline std::optional<std::size_t> threshold_index(const Curve& curve, double threshold) noexcept {
  const double tol = 1e-9 * std::max(1.0, std::abs(threshold));
  for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
    if (std::abs(curve.thresholds[i] - threshold) <= tol) return i;
  }
  return std::nullopt;
}

/// Sampled value at a grid point; no interpolation.
inline double value_at(const Curve& curve, double threshold) {
  const auto i = threshold_index(curve, threshold);
  if (!i) {
    throw Error(ErrorCode::ThresholdNotSampled,
                std::string(to_string(curve.kind)) + " curve has no sample at " + std::to_string(threshold));
  }
  return curve.values[*i];
}

}  // namespace trackeval
