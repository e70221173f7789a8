#pragma once

// One-pass evaluation of tracker runs against a dataset.

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "trackeval/curves.hpp"
#include "trackeval/dataset_io.hpp"
#include "trackeval/error.hpp"
#include "trackeval/measures.hpp"
#include "trackeval/report.hpp"

namespace trackeval {

inline std::vector<FrameMeasures> score_run(const Sequence& seq, const TrackerRun& run, AngleMode mode) {
  if (run.predictions.size() != seq.length()) {
    throw Error(ErrorCode::LengthMismatch, "tracker '" + run.tracker_name + "' sequence '" + seq.name + "': " +
                                               std::to_string(run.predictions.size()) + " predictions for " +
                                               std::to_string(seq.length()) + " frames");
  }
  std::vector<FrameMeasures> frames;
  frames.reserve(seq.length());
  for (std::size_t i = 0; i < seq.length(); ++i) {
    frames.push_back(frame_measures(seq.ground_truth[i], run.predictions[i], mode));
  }
  return frames;
}

inline SequenceResult evaluate_run(const Sequence& seq, const TrackerRun& run, const EvaluationConfig& config) {
  const auto frames = score_run(seq, run, config.angle_mode);
  return {sequence_summary(frames), precision_curve(frames, config.precision_thresholds),
          success_curve(frames, config.overlap_thresholds, config.comparison),
          matching_curve(frames, config.overlap_thresholds, config.comparison)};
}

namespace detail {

// Runs task(i) for i in [0, n) on `jobs` workers. If tasks throw, the
// exception of the lowest index is rethrown, independent of scheduling.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& task) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, n); ++w) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline EvaluationReport assemble(std::string dataset_name, const std::vector<Sequence>& sequences,
                                 const std::vector<std::string>& trackers, const EvaluationConfig& config,
                                 std::vector<SequenceResult> results) {
  EvaluationReport report;
  report.dataset_name = std::move(dataset_name);
  report.config = config;
  report.trackers = trackers;
  for (const auto& s : sequences) report.sequences.push_back(s.name);
  for (std::size_t t = 0; t < trackers.size(); ++t) {
    TrackerResult tr;
    for (std::size_t s = 0; s < sequences.size(); ++s) {
      tr.per_sequence.emplace(sequences[s].name, std::move(results[t * sequences.size() + s]));
    }
    tr.average = macro_average(tr.per_sequence, report.sequences, config);
    report.per_tracker.emplace(trackers[t], std::move(tr));
  }
  return report;
}

}  // namespace detail

/// In-memory evaluation. `runs` must hold one run per (tracker, sequence).
inline EvaluationReport evaluate(std::string dataset_name, const std::vector<Sequence>& sequences,
                                 const std::vector<std::string>& trackers, const std::vector<TrackerRun>& runs,
                                 const EvaluationConfig& config, int jobs = 1) {
  std::vector<SequenceResult> results(trackers.size() * sequences.size());
  detail::parallel_for(results.size(), jobs, [&](std::size_t i) {
    const std::string& tracker = trackers[i / sequences.size()];
    const Sequence& seq = sequences[i % sequences.size()];
    const auto it = std::find_if(runs.begin(), runs.end(), [&](const TrackerRun& r) {
      return r.tracker_name == tracker && r.sequence_name == seq.name;
    });
    if (it == runs.end()) {
      throw Error(ErrorCode::MissingFile, "no run for tracker '" + tracker + "' sequence '" + seq.name + "'");
    }
    results[i] = evaluate_run(seq, *it, config);
  });
  return detail::assemble(std::move(dataset_name), sequences, trackers, config, std::move(results));
}

/// Loads <dataset>/list.txt and <results>/<tracker>/<seq>.txt files and
/// evaluates every (tracker, sequence) pair. Work is spread over `jobs`
/// threads; the report does not depend on the thread count.
inline EvaluationReport evaluate_directories(const std::filesystem::path& dataset_root,
                                             const std::filesystem::path& results_root,
                                             const std::vector<std::string>& trackers,
                                             const EvaluationConfig& config, int jobs = 1) {
  const auto names = read_sequence_list(dataset_root);
  std::vector<Sequence> sequences(names.size());
  detail::parallel_for(names.size(), jobs,
                       [&](std::size_t i) { sequences[i] = load_sequence(dataset_root, names[i]); });

  std::vector<SequenceResult> results(trackers.size() * sequences.size());
  detail::parallel_for(results.size(), jobs, [&](std::size_t i) {
    const Sequence& seq = sequences[i % sequences.size()];
    const TrackerRun run = load_run(results_root, trackers[i / sequences.size()], seq);
    results[i] = evaluate_run(seq, run, config);
  });

  std::string name = std::filesystem::absolute(dataset_root).lexically_normal().filename().string();
  if (name.empty()) name = std::filesystem::absolute(dataset_root).lexically_normal().parent_path().filename().string();
  return detail::assemble(std::move(name), sequences, trackers, config, std::move(results));
}

}  // namespace trackeval
