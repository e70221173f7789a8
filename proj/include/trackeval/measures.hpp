#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>

#include "trackeval/error.hpp"
#include "trackeval/geometry.hpp"

namespace trackeval {

/// A tracker output for one frame; std::nullopt marks a failure frame.
using Region = std::optional<RotatedBox>;

enum class AngleMode {
  raw,   // |theta_g - theta|
  wrap,  // min(d, 180 - d)
};

// Stored in the error fields of failure frames. Never averaged.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

struct FrameMeasures {
  double e_c = kMissing;      // center error, px
  double e_a = 0.0;           // overlap in [0, 1]
  double e_h = kMissing;      // height error, px
  double e_w = kMissing;      // width error, px
  double e_theta = kMissing;  // orientation error, degrees
  double e_ms = 0.0;          // matching score in (0, 1]
  bool valid = false;
};

struct DimensionErrors {
  double e_h = 0.0;
  double e_w = 0.0;
  double e_theta = 0.0;
};

/// Averages over one sequence. The four error averages are empty when the
/// sequence has no valid frame.
struct SequenceSummary {
  std::size_t n_frames = 0;
  std::size_t n_failures = 0;
  std::optional<double> avg_c;
  double avg_a = 0.0;
  std::optional<double> avg_h;
  std::optional<double> avg_w;
  std::optional<double> avg_theta;
  double avg_ms = 0.0;

  friend bool operator==(const SequenceSummary&, const SequenceSummary&) = default;
};

inline double center_error(const RotatedBox& g, const RotatedBox& t) noexcept {
  return std::hypot(g.cx() - t.cx(), g.cy() - t.cy());
}

inline DimensionErrors dimension_errors(const RotatedBox& g, const RotatedBox& t,
                                        AngleMode mode = AngleMode::raw) noexcept {
  double d = std::abs(g.theta() - t.theta());
  if (mode == AngleMode::wrap) d = std::min(d, 180.0 - d);
  return {std::abs(g.h() - t.h()), std::abs(g.w() - t.w()), d};
}

/// Mean of the four reciprocal error terms 1/(1+e) and the overlap.
inline double matching_score(double e_c, double e_h, double e_w, double e_theta, double e_a) {
  for (double e : {e_c, e_h, e_w, e_theta}) {
    if (!(e >= 0.0) || !std::isfinite(e)) {
      throw Error(ErrorCode::DomainError, "error terms must be finite and non-negative");
    }
  }
  if (!(e_a >= 0.0 && e_a <= 1.0)) {
    throw Error(ErrorCode::DomainError, "overlap must lie in [0, 1]");
  }
  const double sum = 1.0 / (1.0 + e_c) + 1.0 / (1.0 + e_h) + 1.0 / (1.0 + e_w) +
                     1.0 / (1.0 + e_theta) + e_a;
  return sum / 5.0;
}

inline FrameMeasures frame_measures(const RotatedBox& g, const Region& t,
                                    AngleMode mode = AngleMode::raw) {
  if (!t) return FrameMeasures{};
  FrameMeasures m;
  m.valid = true;
  m.e_c = center_error(g, *t);
  m.e_a = iou(g, *t);
  const DimensionErrors d = dimension_errors(g, *t, mode);
  m.e_h = d.e_h;
  m.e_w = d.e_w;
  m.e_theta = d.e_theta;
  m.e_ms = matching_score(m.e_c, m.e_h, m.e_w, m.e_theta, m.e_a);
  return m;
}

namespace detail {

// Shifted mean: exact whenever every sample is equal.
class MeanAccumulator {
 public:
  void add(double v) noexcept {
    if (n_ == 0) origin_ = v;
    sum_ += v - origin_;
    ++n_;
  }
  std::size_t count() const noexcept { return n_; }
  double mean() const noexcept { return origin_ + sum_ / static_cast<double>(n_); }

 private:
  double origin_ = 0.0;
  double sum_ = 0.0;
  std::size_t n_ = 0;
};

}  // namespace detail

/// Overlap and matching score average over every frame (failures count as
/// zero); the error averages cover valid frames only.
inline SequenceSummary sequence_summary(std::span<const FrameMeasures> frames) {
  if (frames.empty()) throw Error(ErrorCode::EmptySequence, "no frames to summarize");

  detail::MeanAccumulator a, ms, c, h, w, t;
  for (const FrameMeasures& f : frames) {
    a.add(f.e_a);
    ms.add(f.e_ms);
    if (!f.valid) continue;
    c.add(f.e_c);
    h.add(f.e_h);
    w.add(f.e_w);
    t.add(f.e_theta);
  }

  SequenceSummary s;
  s.n_frames = frames.size();
  s.n_failures = frames.size() - c.count();
  s.avg_a = std::clamp(a.mean(), 0.0, 1.0);
  s.avg_ms = std::clamp(ms.mean(), 0.0, 1.0);
  if (c.count() > 0) {
    s.avg_c = c.mean();
    s.avg_h = h.mean();
    s.avg_w = w.mean();
    s.avg_theta = t.mean();
  }
  return s;
}

}  // namespace trackeval
