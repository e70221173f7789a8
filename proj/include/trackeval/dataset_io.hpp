#pragma once

// VOT-style annotation files.
//
//   LINE := NUM | NUM,NUM,NUM,NUM | NUM{,NUM}x7
//   NUM  := [+-]? digits ('.' digits*)? ([eE] [+-]? digits)?
//
// One number marks a frame without prediction (init/failure codes), four are
// an axis-aligned x,y,w,h with (x,y) the left-top corner, eight are polygon
// corners. Spaces and tabs around commas are ignored, CRLF is accepted and
// trailing blank lines are dropped.

#include <algorithm>
#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "trackeval/error.hpp"
#include "trackeval/geometry.hpp"
#include "trackeval/measures.hpp"

namespace trackeval {

/// The numbers of one annotation line exactly as read (1, 4 or 8 values).
struct Annotation {
  std::vector<double> numbers;

  bool is_failure() const noexcept { return numbers.size() == 1; }
  friend bool operator==(const Annotation&, const Annotation&) = default;
};

struct Sequence {
  std::string name;
  std::vector<RotatedBox> ground_truth;

  std::size_t length() const noexcept { return ground_truth.size(); }
};

struct TrackerRun {
  std::string tracker_name;
  std::string sequence_name;
  std::vector<Region> predictions;
};

namespace detail {

inline std::string where(std::string_view source, std::size_t line_no) {
  std::string s(source.empty() ? "<input>" : source);
  if (line_no > 0) s += ":" + std::to_string(line_no);
  return s;
}

inline std::string_view trim(std::string_view s) noexcept {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

inline bool matches_number_grammar(std::string_view s) noexcept {
  std::size_t i = 0;
  auto digits = [&] {
    const std::size_t start = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    return i - start;
  };
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (digits() == 0) return false;
  if (i < s.size() && s[i] == '.') {
    ++i;
    digits();
  }
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (digits() == 0) return false;
  }
  return i == s.size();
}

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

inline std::string read_file(const std::filesystem::path& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, std::string(what) + " (" + path.string() + ")");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace detail

inline Annotation parse_annotation(std::string_view line, std::size_t line_no = 0,
                                   std::string_view source = {}) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  Annotation a;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    const std::string_view raw =
        line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    std::string_view tok = detail::trim(raw);
    if (!detail::matches_number_grammar(tok)) {
      throw Error(ErrorCode::ParseError,
                  detail::where(source, line_no) + ": not a number: '" + std::string(tok) + "'");
    }
    if (tok.front() == '+') tok.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
      throw Error(ErrorCode::ParseError,
                  detail::where(source, line_no) + ": number out of range: '" + std::string(tok) + "'");
    }
    a.numbers.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  const std::size_t n = a.numbers.size();
  if (n != 1 && n != 4 && n != 8) {
    throw Error(ErrorCode::ParseError, detail::where(source, line_no) + ": expected 1, 4 or 8 numbers, got " +
                                           std::to_string(n));
  }
  return a;
}

/// Interprets an annotation; geometric problems surface as ParseError.
inline Region to_region(const Annotation& a, std::size_t line_no = 0, std::string_view source = {}) {
  try {
    switch (a.numbers.size()) {
      case 1:
        return std::nullopt;
      case 4: {
        const auto& v = a.numbers;
        return RotatedBox(v[0] + 0.5 * v[2], v[1] + 0.5 * v[3], v[2], v[3], 0.0);
      }
      case 8: {
        std::array<double, 8> xy{};
        std::copy(a.numbers.begin(), a.numbers.end(), xy.begin());
        return box_from_quad(quad_from_points(xy)).box;
      }
      default:
        break;
    }
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, detail::where(source, line_no) + ": " + e.what());
  }
  throw Error(ErrorCode::ParseError, detail::where(source, line_no) + ": bad token count");
}

inline Region parse_region_line(std::string_view line, std::size_t line_no = 0,
                                std::string_view source = {}) {
  return to_region(parse_annotation(line, line_no, source), line_no, source);
}

/// Shortest text that parses back to the same doubles.
inline std::string format_annotation(const Annotation& a) {
  std::string out;
  std::array<char, 64> buf{};
  for (std::size_t i = 0; i < a.numbers.size(); ++i) {
    if (i > 0) out += ',';
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), a.numbers[i]);
    out.append(buf.data(), res.ptr);
  }
  return out;
}

inline std::vector<Annotation> parse_annotation_text(const std::string& text, std::string_view source = {}) {
  const auto lines = detail::split_lines(text);
  std::vector<Annotation> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) out.push_back(parse_annotation(lines[i], i + 1, source));
  return out;
}

inline std::string format_annotation_text(const std::vector<Annotation>& annotations) {
  std::string out;
  for (const Annotation& a : annotations) {
    out += format_annotation(a);
    out += '\n';
  }
  return out;
}

inline std::vector<Annotation> read_annotation_file(const std::filesystem::path& path, std::string_view what) {
  return parse_annotation_text(detail::read_file(path, what), path.string());
}

inline Sequence load_sequence(const std::filesystem::path& root, const std::string& name) {
  const auto path = root / name / "groundtruth.txt";
  const auto annotations = read_annotation_file(path, "ground truth of sequence '" + name + "'");
  if (annotations.empty()) throw Error(ErrorCode::ParseError, path.string() + ": ground truth is empty");

  Sequence seq;
  seq.name = name;
  seq.ground_truth.reserve(annotations.size());
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    const Region r = to_region(annotations[i], i + 1, path.string());
    if (!r) {
      throw Error(ErrorCode::GroundTruthFailureLine,
                  "sequence '" + name + "' line " + std::to_string(i + 1) + " has no region");
    }
    seq.ground_truth.push_back(*r);
  }
  return seq;
}

/// Sequence names from <root>/list.txt, in file order.
inline std::vector<std::string> read_sequence_list(const std::filesystem::path& root) {
  const auto lines = detail::split_lines(detail::read_file(root / "list.txt", "sequence list"));
  std::vector<std::string> names;
  for (const auto& line : lines) {
    const auto name = detail::trim(line);
    if (!name.empty()) names.emplace_back(name);
  }
  return names;
}

inline std::vector<Sequence> load_dataset(const std::filesystem::path& root) {
  std::vector<Sequence> out;
  for (const auto& name : read_sequence_list(root)) out.push_back(load_sequence(root, name));
  return out;
}

inline TrackerRun load_run(const std::filesystem::path& root, const std::string& tracker, const Sequence& seq) {
  const auto path = root / tracker / (seq.name + ".txt");
  const std::string label = "tracker '" + tracker + "' sequence '" + seq.name + "'";
  const auto annotations = read_annotation_file(path, "results of " + label);
  if (annotations.size() != seq.length()) {
    throw Error(ErrorCode::LengthMismatch, label + ": " + std::to_string(annotations.size()) +
                                               " result lines for " + std::to_string(seq.length()) +
                                               " frames");
  }
  TrackerRun run{tracker, seq.name, {}};
  run.predictions.reserve(annotations.size());
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    run.predictions.push_back(to_region(annotations[i], i + 1, path.string()));
  }
  return run;
}

/// Runs ordered tracker-major, then by the order of `sequences`.
inline std::vector<TrackerRun> load_results(const std::filesystem::path& root,
                                            const std::vector<std::string>& trackers,
                                            const std::vector<Sequence>& sequences) {
  std::vector<TrackerRun> runs;
  runs.reserve(trackers.size() * sequences.size());
  for (const auto& t : trackers) {
    for (const auto& s : sequences) runs.push_back(load_run(root, t, s));
  }
  return runs;
}

/// Subdirectory names of a results root, sorted.
inline std::vector<std::string> list_trackers(const std::filesystem::path& results_root) {
  std::error_code ec;
  std::vector<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(results_root, ec)) {
    if (entry.is_directory()) names.push_back(entry.path().filename().string());
  }
  if (ec) throw Error(ErrorCode::MissingFile, "results directory (" + results_root.string() + ")");
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace trackeval
