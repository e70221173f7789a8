#pragma once

// Evaluation report model and its versioned JSON form.
//
// Schema (version 1), keys sorted on output:
//
//   {
//     "schema": "trackeval-report", "version": 1, "dataset": "<name>",
//     "config": {"angle_mode": "raw"|"wrap", "comparison": "strict"|"inclusive",
//                "precision_thresholds": [...], "overlap_thresholds": [...]},
//     "sequences": ["<seq>", ...],          dataset order
//     "trackers": ["<tracker>", ...],       column order
//     "results": {"<tracker>": {
//         "sequences": {"<seq>": {"summary": SUMMARY,
//                                 "precision": CURVE, "success": CURVE, "matching": CURVE}},
//         "average": {"n_sequences": n, "n_frames": n, "n_failures": n,
//                     "avg_c" .. "avg_ms" as in SUMMARY,
//                     "precision": CURVE, "success": CURVE, "matching": CURVE}}}
//   }
//   SUMMARY := {"n_frames", "n_failures", "avg_a", "avg_ms",
//               "avg_c", "avg_h", "avg_w", "avg_theta" (null when undefined)}
//   CURVE   := {"auc": x, "values": [...]}   thresholds come from "config"

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>  // nlohmann/json, vendored

#include "trackeval/curves.hpp"
#include "trackeval/error.hpp"
#include "trackeval/measures.hpp"

namespace trackeval {

inline constexpr int kReportVersion = 1;
inline constexpr std::string_view kReportSchema = "trackeval-report";

struct EvaluationConfig {
  std::vector<double> precision_thresholds = precision_grid();
  std::vector<double> overlap_thresholds = overlap_grid();
  AngleMode angle_mode = AngleMode::raw;
  Comparison comparison = Comparison::strict;

  friend bool operator==(const EvaluationConfig&, const EvaluationConfig&) = default;
};

struct SequenceResult {
  SequenceSummary summary;
  Curve precision;
  Curve success;
  Curve matching;

  friend bool operator==(const SequenceResult&, const SequenceResult&) = default;
};

/// Macro averages: every sequence weighs the same. Error averages skip
/// sequences where they are undefined. Curves are sample-wise means.
struct DatasetAverage {
  std::size_t n_sequences = 0;
  std::size_t n_frames = 0;
  std::size_t n_failures = 0;
  std::optional<double> avg_c;
  double avg_a = 0.0;
  std::optional<double> avg_h;
  std::optional<double> avg_w;
  std::optional<double> avg_theta;
  double avg_ms = 0.0;
  Curve precision;
  Curve success;
  Curve matching;

  friend bool operator==(const DatasetAverage&, const DatasetAverage&) = default;
};

struct TrackerResult {
  std::map<std::string, SequenceResult> per_sequence;
  DatasetAverage average;

  friend bool operator==(const TrackerResult&, const TrackerResult&) = default;
};

struct EvaluationReport {
  std::string dataset_name;
  EvaluationConfig config;
  std::vector<std::string> sequences;
  std::vector<std::string> trackers;
  std::map<std::string, TrackerResult> per_tracker;

  friend bool operator==(const EvaluationReport&, const EvaluationReport&) = default;
};

inline const Curve& curve_of(const SequenceResult& r, CurveKind kind) noexcept {
  switch (kind) {
    case CurveKind::precision: return r.precision;
    case CurveKind::success: return r.success;
    default: return r.matching;
  }
}

inline const Curve& curve_of(const DatasetAverage& r, CurveKind kind) noexcept {
  switch (kind) {
    case CurveKind::precision: return r.precision;
    case CurveKind::success: return r.success;
    default: return r.matching;
  }
}

namespace detail {

inline Curve mean_curve(CurveKind kind, const std::vector<const Curve*>& curves,
                        const std::vector<double>& thresholds) {
  Curve out;
  out.kind = kind;
  out.thresholds = thresholds;
  out.values.assign(thresholds.size(), 0.0);
  if (curves.empty()) return out;
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    MeanAccumulator m;
    for (const Curve* c : curves) m.add(c->values.at(i));
    out.values[i] = std::clamp(m.mean(), 0.0, 1.0);
  }
  out.auc = auc(out.values);
  return out;
}

inline std::optional<double> mean_defined(const std::vector<std::optional<double>>& xs) {
  MeanAccumulator m;
  for (const auto& x : xs) {
    if (x) m.add(*x);
  }
  if (m.count() == 0) return std::nullopt;
  return m.mean();
}

}  // namespace detail

/// Averages the results of `order` (the dataset's sequence order).
inline DatasetAverage macro_average(const std::map<std::string, SequenceResult>& per_sequence,
                                    const std::vector<std::string>& order, const EvaluationConfig& config) {
  DatasetAverage avg;
  avg.n_sequences = order.size();
  std::vector<std::optional<double>> c, h, w, t;
  detail::MeanAccumulator a, ms;
  std::vector<const Curve*> pc, sc, mc;
  for (const auto& name : order) {
    const SequenceResult& r = per_sequence.at(name);
    avg.n_frames += r.summary.n_frames;
    avg.n_failures += r.summary.n_failures;
    c.push_back(r.summary.avg_c);
    h.push_back(r.summary.avg_h);
    w.push_back(r.summary.avg_w);
    t.push_back(r.summary.avg_theta);
    a.add(r.summary.avg_a);
    ms.add(r.summary.avg_ms);
    pc.push_back(&r.precision);
    sc.push_back(&r.success);
    mc.push_back(&r.matching);
  }
  avg.avg_c = detail::mean_defined(c);
  avg.avg_h = detail::mean_defined(h);
  avg.avg_w = detail::mean_defined(w);
  avg.avg_theta = detail::mean_defined(t);
  if (!order.empty()) {
    avg.avg_a = std::clamp(a.mean(), 0.0, 1.0);
    avg.avg_ms = std::clamp(ms.mean(), 0.0, 1.0);
  }
  avg.precision = detail::mean_curve(CurveKind::precision, pc, config.precision_thresholds);
  avg.success = detail::mean_curve(CurveKind::success, sc, config.overlap_thresholds);
  avg.matching = detail::mean_curve(CurveKind::matching, mc, config.overlap_thresholds);
  return avg;
}

// ---------------------------------------------------------------------------
// Validation

namespace detail {

[[noreturn]] inline void schema_fail(const std::string& what) { throw Error(ErrorCode::SchemaError, what); }

inline void check_curve(const Curve& c, CurveKind kind, const std::vector<double>& grid, const std::string& where) {
  if (c.kind != kind) schema_fail(where + ": wrong curve kind");
  if (c.thresholds != grid) schema_fail(where + ": thresholds differ from the configured grid");
  if (auto p = curve_problem(c)) schema_fail(where + ": " + *p);
}

inline void check_grid_config(const std::vector<double>& grid, const std::string& name) {
  if (grid.empty()) schema_fail(name + " is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      schema_fail(name + " must be finite and strictly increasing");
    }
  }
}

inline bool near(const std::optional<double>& a, const std::optional<double>& b, double tol) {
  if (a.has_value() != b.has_value()) return false;
  return !a || std::abs(*a - *b) <= tol;
}

}  // namespace detail

/// Throws SchemaError describing the first broken report invariant.
inline void validate_report(const EvaluationReport& r) {
  using detail::schema_fail;
  detail::check_grid_config(r.config.precision_thresholds, "precision_thresholds");
  detail::check_grid_config(r.config.overlap_thresholds, "overlap_thresholds");

  const std::set<std::string> seq_set(r.sequences.begin(), r.sequences.end());
  if (seq_set.size() != r.sequences.size()) schema_fail("duplicate sequence names");
  const std::set<std::string> trk_set(r.trackers.begin(), r.trackers.end());
  if (trk_set.size() != r.trackers.size()) schema_fail("duplicate tracker names");
  if (r.per_tracker.size() != r.trackers.size()) schema_fail("results do not match the tracker list");

  for (const auto& name : r.trackers) {
    const auto it = r.per_tracker.find(name);
    if (it == r.per_tracker.end()) schema_fail("missing results for tracker '" + name + "'");
    const TrackerResult& tr = it->second;
    if (tr.per_sequence.size() != r.sequences.size()) {
      schema_fail("tracker '" + name + "' does not cover the sequence set");
    }
    for (const auto& seq : r.sequences) {
      const auto s = tr.per_sequence.find(seq);
      if (s == tr.per_sequence.end()) schema_fail("tracker '" + name + "' lacks sequence '" + seq + "'");
      const std::string where = name + "/" + seq;
      const SequenceSummary& sum = s->second.summary;
      if (sum.n_frames == 0 || sum.n_failures > sum.n_frames) schema_fail(where + ": bad frame counts");
      if (!(sum.avg_a >= 0.0 && sum.avg_a <= 1.0) || !(sum.avg_ms >= 0.0 && sum.avg_ms <= 1.0)) {
        schema_fail(where + ": averages outside [0, 1]");
      }
      for (const auto& v : {sum.avg_c, sum.avg_h, sum.avg_w, sum.avg_theta}) {
        if (v && !(std::isfinite(*v) && *v >= 0.0)) schema_fail(where + ": bad error average");
      }
      detail::check_curve(s->second.precision, CurveKind::precision, r.config.precision_thresholds, where);
      detail::check_curve(s->second.success, CurveKind::success, r.config.overlap_thresholds, where);
      detail::check_curve(s->second.matching, CurveKind::matching, r.config.overlap_thresholds, where);
    }

    const DatasetAverage expect = macro_average(tr.per_sequence, r.sequences, r.config);
    const DatasetAverage& got = tr.average;
    constexpr double tol = 1e-12;
    const bool ok = got.n_sequences == expect.n_sequences && got.n_frames == expect.n_frames &&
                    got.n_failures == expect.n_failures && detail::near(got.avg_c, expect.avg_c, tol) &&
                    detail::near(got.avg_h, expect.avg_h, tol) && detail::near(got.avg_w, expect.avg_w, tol) &&
                    detail::near(got.avg_theta, expect.avg_theta, tol) &&
                    std::abs(got.avg_a - expect.avg_a) <= tol && std::abs(got.avg_ms - expect.avg_ms) <= tol;
    if (!ok) schema_fail("tracker '" + name + "': dataset average is not the mean of its sequences");
    for (CurveKind k : {CurveKind::precision, CurveKind::success, CurveKind::matching}) {
      const Curve& gc = curve_of(got, k);
      const Curve& ec = curve_of(expect, k);
      detail::check_curve(gc, k, ec.thresholds, name + "/average");
      for (std::size_t i = 0; i < gc.values.size(); ++i) {
        if (std::abs(gc.values[i] - ec.values[i]) > tol) {
          schema_fail("tracker '" + name + "': average " + std::string(to_string(k)) + " curve mismatch");
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

using nlohmann::json;

inline json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline std::optional<double> read_optional(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

inline json curve_json(const Curve& c) { return json{{"auc", c.auc}, {"values", c.values}}; }

inline Curve curve_from(const json& j, CurveKind kind, const std::vector<double>& grid) {
  Curve c;
  c.kind = kind;
  c.thresholds = grid;
  c.values = j.at("values").get<std::vector<double>>();
  c.auc = j.at("auc").get<double>();
  return c;
}

inline void put_averages(json& j, const std::optional<double>& c, double a, const std::optional<double>& h,
                         const std::optional<double>& w, const std::optional<double>& t, double ms) {
  j["avg_c"] = optional_number(c);
  j["avg_a"] = a;
  j["avg_h"] = optional_number(h);
  j["avg_w"] = optional_number(w);
  j["avg_theta"] = optional_number(t);
  j["avg_ms"] = ms;
}

}  // namespace detail

/// Serializes with sorted keys and shortest round-trip number formatting.
inline std::string to_json(const EvaluationReport& r, int indent = 2) {
  using detail::json;
  json results = json::object();
  for (const auto& [tracker, tr] : r.per_tracker) {
    json seqs = json::object();
    for (const auto& [name, sr] : tr.per_sequence) {
      json summary{{"n_frames", sr.summary.n_frames}, {"n_failures", sr.summary.n_failures}};
      detail::put_averages(summary, sr.summary.avg_c, sr.summary.avg_a, sr.summary.avg_h, sr.summary.avg_w,
                           sr.summary.avg_theta, sr.summary.avg_ms);
      seqs[name] = json{{"summary", summary},
                        {"precision", detail::curve_json(sr.precision)},
                        {"success", detail::curve_json(sr.success)},
                        {"matching", detail::curve_json(sr.matching)}};
    }
    const DatasetAverage& a = tr.average;
    json avg{{"n_sequences", a.n_sequences},
             {"n_frames", a.n_frames},
             {"n_failures", a.n_failures},
             {"precision", detail::curve_json(a.precision)},
             {"success", detail::curve_json(a.success)},
             {"matching", detail::curve_json(a.matching)}};
    detail::put_averages(avg, a.avg_c, a.avg_a, a.avg_h, a.avg_w, a.avg_theta, a.avg_ms);
    results[tracker] = json{{"sequences", seqs}, {"average", avg}};
  }

  json j{{"schema", std::string(kReportSchema)},
         {"version", kReportVersion},
         {"dataset", r.dataset_name},
         {"config",
          {{"angle_mode", r.config.angle_mode == AngleMode::raw ? "raw" : "wrap"},
           {"comparison", r.config.comparison == Comparison::strict ? "strict" : "inclusive"},
           {"precision_thresholds", r.config.precision_thresholds},
           {"overlap_thresholds", r.config.overlap_thresholds}}},
         {"sequences", r.sequences},
         {"trackers", r.trackers},
         {"results", results}};
  return j.dump(indent) + "\n";
}

inline EvaluationReport from_json(std::string_view text) {
  using detail::json;
  EvaluationReport r;
  try {
    const json j = json::parse(text);
    if (j.at("schema").get<std::string>() != kReportSchema) detail::schema_fail("not a report document");
    if (j.at("version").get<int>() != kReportVersion) {
      detail::schema_fail("unsupported report version " + j.at("version").dump());
    }
    r.dataset_name = j.at("dataset").get<std::string>();

    const json& cfg = j.at("config");
    const auto angle = cfg.at("angle_mode").get<std::string>();
    const auto cmp = cfg.at("comparison").get<std::string>();
    if (angle != "raw" && angle != "wrap") detail::schema_fail("bad angle_mode '" + angle + "'");
    if (cmp != "strict" && cmp != "inclusive") detail::schema_fail("bad comparison '" + cmp + "'");
    r.config.angle_mode = angle == "raw" ? AngleMode::raw : AngleMode::wrap;
    r.config.comparison = cmp == "strict" ? Comparison::strict : Comparison::inclusive;
    r.config.precision_thresholds = cfg.at("precision_thresholds").get<std::vector<double>>();
    r.config.overlap_thresholds = cfg.at("overlap_thresholds").get<std::vector<double>>();
    detail::check_grid_config(r.config.precision_thresholds, "precision_thresholds");
    detail::check_grid_config(r.config.overlap_thresholds, "overlap_thresholds");

    r.sequences = j.at("sequences").get<std::vector<std::string>>();
    r.trackers = j.at("trackers").get<std::vector<std::string>>();

    const auto& pg = r.config.precision_thresholds;
    const auto& og = r.config.overlap_thresholds;
    for (const auto& [tracker, tj] : j.at("results").items()) {
      TrackerResult tr;
      for (const auto& [name, sj] : tj.at("sequences").items()) {
        SequenceResult sr;
        const json& s = sj.at("summary");
        sr.summary.n_frames = s.at("n_frames").get<std::size_t>();
        sr.summary.n_failures = s.at("n_failures").get<std::size_t>();
        sr.summary.avg_c = detail::read_optional(s, "avg_c");
        sr.summary.avg_a = s.at("avg_a").get<double>();
        sr.summary.avg_h = detail::read_optional(s, "avg_h");
        sr.summary.avg_w = detail::read_optional(s, "avg_w");
        sr.summary.avg_theta = detail::read_optional(s, "avg_theta");
        sr.summary.avg_ms = s.at("avg_ms").get<double>();
        sr.precision = detail::curve_from(sj.at("precision"), CurveKind::precision, pg);
        sr.success = detail::curve_from(sj.at("success"), CurveKind::success, og);
        sr.matching = detail::curve_from(sj.at("matching"), CurveKind::matching, og);
        tr.per_sequence.emplace(name, std::move(sr));
      }
      const json& a = tj.at("average");
      DatasetAverage& avg = tr.average;
      avg.n_sequences = a.at("n_sequences").get<std::size_t>();
      avg.n_frames = a.at("n_frames").get<std::size_t>();
      avg.n_failures = a.at("n_failures").get<std::size_t>();
      avg.avg_c = detail::read_optional(a, "avg_c");
      avg.avg_a = a.at("avg_a").get<double>();
      avg.avg_h = detail::read_optional(a, "avg_h");
      avg.avg_w = detail::read_optional(a, "avg_w");
      avg.avg_theta = detail::read_optional(a, "avg_theta");
      avg.avg_ms = a.at("avg_ms").get<double>();
      avg.precision = detail::curve_from(a.at("precision"), CurveKind::precision, pg);
      avg.success = detail::curve_from(a.at("success"), CurveKind::success, og);
      avg.matching = detail::curve_from(a.at("matching"), CurveKind::matching, og);
      r.per_tracker.emplace(tracker, std::move(tr));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaError, e.what());
  }
  validate_report(r);
  return r;
}

}  // namespace trackeval
