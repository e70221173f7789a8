#pragma once

// Text renderings of a report: per-sequence tables (Markdown, CSV, LaTeX)
// and SVG curve panels.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trackeval/curves.hpp"
#include "trackeval/error.hpp"
#include "trackeval/report.hpp"

namespace trackeval {

enum class TableFormat { markdown, csv, latex };

struct TableMetric {
  enum class Kind { auc_success, auc_matching, precision_at, success_at, matching_at };
  Kind kind = Kind::auc_success;
  double threshold = 0.0;  // for the *_at kinds
};

inline std::optional<TableFormat> parse_table_format(std::string_view s) noexcept {
  if (s == "markdown" || s == "md") return TableFormat::markdown;
  if (s == "csv") return TableFormat::csv;
  if (s == "latex" || s == "tex") return TableFormat::latex;
  return std::nullopt;
}

/// Accepts auc_success, auc_matching, precision@T, success@T and matching@T.
inline TableMetric parse_table_metric(std::string_view s) {
  using K = TableMetric::Kind;
  if (s == "auc_success") return {K::auc_success, 0.0};
  if (s == "auc_matching") return {K::auc_matching, 0.0};
  const auto at = s.find('@');
  if (at != std::string_view::npos) {
    const std::string_view name = s.substr(0, at);
    const std::string num(s.substr(at + 1));
    char* end = nullptr;
    const double tau = num.empty() ? 0.0 : std::strtod(num.c_str(), &end);
    if (!num.empty() && end == num.c_str() + num.size() && std::isfinite(tau)) {
      if (name == "precision") return {K::precision_at, tau};
      if (name == "success") return {K::success_at, tau};
      if (name == "matching") return {K::matching_at, tau};
    }
  }
  throw Error(ErrorCode::UnknownMetric,
              "'" + std::string(s) +
                  "' (expected auc_success, auc_matching, precision@T, success@T or matching@T)");
}

namespace detail {

inline std::string fixed(double v, int decimals) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*f", decimals, v);
  return buf.data();
}

template <class Result>
double metric_value(const Result& r, const TableMetric& m) {
  using K = TableMetric::Kind;
  switch (m.kind) {
    case K::auc_success: return r.success.auc;
    case K::auc_matching: return r.matching.auc;
    case K::precision_at: return value_at(r.precision, m.threshold);
    case K::success_at: return value_at(r.success, m.threshold);
    case K::matching_at: return value_at(r.matching, m.threshold);
  }
  return 0.0;
}

inline std::string latex_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '_' || c == '&' || c == '%' || c == '#' || c == '$' || c == '{' || c == '}') out += '\\';
    out += c;
  }
  return out;
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct TableRow {
  std::string label;
  std::vector<std::string> cells;  // 3-decimal text
  std::vector<bool> best;
};

// Bold marks every cell whose printed value equals the row maximum.
inline TableRow make_row(std::string label, const std::vector<double>& values) {
  TableRow row{std::move(label), {}, std::vector<bool>(values.size(), false)};
  double top = -1.0;
  std::vector<double> shown;
  for (double v : values) {
    row.cells.push_back(fixed(v, 3));
    shown.push_back(std::strtod(row.cells.back().c_str(), nullptr));
    top = std::max(top, shown.back());
  }
  for (std::size_t i = 0; i < shown.size(); ++i) row.best[i] = shown[i] == top;
  return row;
}

}  // namespace detail

/// One row per sequence plus a macro-average row, one column per tracker;
/// values printed with 3 decimals, the row maximum (ties included) marked.
inline std::string render_table(const EvaluationReport& report, const TableMetric& metric, TableFormat format) {
  std::vector<detail::TableRow> rows;
  for (const auto& seq : report.sequences) {
    std::vector<double> values;
    for (const auto& t : report.trackers) {
      values.push_back(detail::metric_value(report.per_tracker.at(t).per_sequence.at(seq), metric));
    }
    rows.push_back(detail::make_row(seq, values));
  }
  std::vector<double> averages;
  for (const auto& t : report.trackers) averages.push_back(detail::metric_value(report.per_tracker.at(t).average, metric));
  const std::string avg_label = "Average over " + std::to_string(report.sequences.size()) + " sequences";
  rows.push_back(detail::make_row(avg_label, averages));

  std::string out;
  const std::size_t n = report.trackers.size();
  switch (format) {
    case TableFormat::markdown: {
      out += "| Sequence |";
      for (const auto& t : report.trackers) out += " " + t + " |";
      out += "\n|:---|";
      for (std::size_t i = 0; i < n; ++i) out += "---:|";
      out += "\n";
      for (const auto& row : rows) {
        out += "| " + row.label + " |";
        for (std::size_t i = 0; i < n; ++i) {
          out += row.best[i] ? " **" + row.cells[i] + "** |" : " " + row.cells[i] + " |";
        }
        out += "\n";
      }
      break;
    }
    case TableFormat::csv: {
      out += "sequence";
      for (const auto& t : report.trackers) out += "," + detail::csv_field(t);
      out += ",best\n";
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        out += detail::csv_field(r + 1 == rows.size() ? std::string("average") : row.label);
        std::string best;
        for (std::size_t i = 0; i < n; ++i) {
          out += "," + row.cells[i];
          if (row.best[i]) best += (best.empty() ? "" : ";") + report.trackers[i];
        }
        out += "," + detail::csv_field(best) + "\n";
      }
      break;
    }
    case TableFormat::latex: {
      out += "\\begin{tabular}{|l|";
      for (std::size_t i = 0; i < n; ++i) out += "c|";
      out += "}\n\\hline\n\\textbf{Sequence}";
      for (const auto& t : report.trackers) out += " & \\textbf{" + detail::latex_escape(t) + "}";
      out += " \\\\ \\hline\n";
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (r + 1 == rows.size()) out += "\\hline\n";
        out += detail::latex_escape(row.label);
        for (std::size_t i = 0; i < n; ++i) {
          out += row.best[i] ? " & \\textbf{" + row.cells[i] + "}" : " & " + row.cells[i];
        }
        out += " \\\\\n";
      }
      out += "\\hline\n\\end{tabular}\n";
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// SVG plots

inline constexpr std::array<std::string_view, 10> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct PlotSeries {
  std::string name;
  const Curve* curve = nullptr;
};

namespace detail {

// Legend statistic: precision at 20 px when sampled (AUC otherwise), AUC
// for the success-type curves.
inline double legend_stat(const Curve& c) {
  if (c.kind == CurveKind::precision) {
    if (auto i = threshold_index(c, 20.0)) return c.values[*i];
  }
  return c.auc;
}

inline double nice_step(double span) {
  for (double base = 1e-6; base < 1e12; base *= 10.0) {
    for (double m : {1.0, 2.0, 5.0}) {
      if (span / (m * base) <= 10.0) return m * base;
    }
  }
  return span;
}

}  // namespace detail

/// 800x600 SVG built from line, text, rect and polyline elements only.
/// Series are ranked by their legend statistic (ties by name); rank picks
/// the palette color.
inline std::string render_curves_svg(const std::string& title, CurveKind kind, std::vector<PlotSeries> series) {
  using detail::fixed;
  constexpr double W = 800, H = 600;
  constexpr double left = 70, right = 560, top = 50, bottom = 540;

  std::stable_sort(series.begin(), series.end(), [](const PlotSeries& a, const PlotSeries& b) {
    const double sa = detail::legend_stat(*a.curve), sb = detail::legend_stat(*b.curve);
    if (sa != sb) return sa > sb;
    return a.name < b.name;
  });

  double x_min = 0.0, x_max = 1.0;
  if (!series.empty() && !series.front().curve->thresholds.empty()) {
    x_min = series.front().curve->thresholds.front();
    x_max = series.front().curve->thresholds.back();
  }
  if (!(x_max > x_min)) x_max = x_min + 1.0;
  auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * (right - left); };
  auto py = [&](double y) { return bottom - y * (bottom - top); };

  const char* x_label = kind == CurveKind::precision ? "Location error threshold (px)"
                        : kind == CurveKind::success ? "Overlap threshold"
                                                     : "Matching score threshold";
  const char* y_label = kind == CurveKind::precision ? "Precision" : "Success rate";

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"600\" "
       "viewBox=\"0 0 800 600\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + fixed(W, 0) + "\" height=\"" + fixed(H, 0) + "\" fill=\"#ffffff\"/>\n";
  s += "<text x=\"" + fixed((left + right) / 2, 2) + "\" y=\"30\" font-family=\"sans-serif\" font-size=\"18\" "
       "text-anchor=\"middle\">" + detail::xml_escape(title) + "</text>\n";

  // grid and ticks
  for (int i = 0; i <= 5; ++i) {
    const double v = i * 0.2;
    const std::string y = fixed(py(v), 2);
    s += "<line x1=\"" + fixed(left, 2) + "\" y1=\"" + y + "\" x2=\"" + fixed(right, 2) + "\" y2=\"" + y +
         "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    s += "<text x=\"" + fixed(left - 8, 2) + "\" y=\"" + fixed(py(v) + 4, 2) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">" + fixed(v, 1) + "</text>\n";
  }
  const double step = detail::nice_step(x_max - x_min);
  const int decimals = step >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log10(step) - 1e-9));
  const auto k_first = static_cast<long>(std::ceil(x_min / step - 1e-9));
  const auto k_last = static_cast<long>(std::floor(x_max / step + 1e-9));
  for (long k = k_first; k <= k_last; ++k) {
    const double v = static_cast<double>(k) * step;
    const std::string x = fixed(px(v), 2);
    s += "<line x1=\"" + x + "\" y1=\"" + fixed(top, 2) + "\" x2=\"" + x + "\" y2=\"" + fixed(bottom, 2) +
         "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    s += "<text x=\"" + x + "\" y=\"" + fixed(bottom + 18, 2) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" + fixed(v, decimals) +
         "</text>\n";
  }
  s += "<line x1=\"" + fixed(left, 2) + "\" y1=\"" + fixed(bottom, 2) + "\" x2=\"" + fixed(right, 2) + "\" y2=\"" +
       fixed(bottom, 2) + "\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
  s += "<line x1=\"" + fixed(left, 2) + "\" y1=\"" + fixed(top, 2) + "\" x2=\"" + fixed(left, 2) + "\" y2=\"" +
       fixed(bottom, 2) + "\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
  s += "<text x=\"" + fixed((left + right) / 2, 2) + "\" y=\"" + fixed(bottom + 45, 2) +
       "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">" + x_label + "</text>\n";
  s += "<text x=\"20\" y=\"" + fixed((top + bottom) / 2, 2) + "\" font-family=\"sans-serif\" font-size=\"14\" "
       "text-anchor=\"middle\" transform=\"rotate(-90 20 " + fixed((top + bottom) / 2, 2) + ")\">" + y_label +
       "</text>\n";

  for (std::size_t r = 0; r < series.size(); ++r) {
    const Curve& c = *series[r].curve;
    const std::string_view color = kPalette[r % kPalette.size()];
    std::string pts;
    for (std::size_t i = 0; i < c.thresholds.size(); ++i) {
      if (i > 0) pts += ' ';
      pts += fixed(px(c.thresholds[i]), 2) + "," + fixed(py(c.values[i]), 2);
    }
    s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\" points=\"" + pts +
         "\"/>\n";

    const double ly = top + 10 + 22.0 * static_cast<double>(r);
    s += "<line x1=\"580\" y1=\"" + fixed(ly, 2) + "\" x2=\"610\" y2=\"" + fixed(ly, 2) + "\" stroke=\"" +
         std::string(color) + "\" stroke-width=\"3\"/>\n";
    s += "<text x=\"618\" y=\"" + fixed(ly + 4, 2) + "\" font-family=\"sans-serif\" font-size=\"13\">" +
         detail::xml_escape(series[r].name) + " [" + fixed(detail::legend_stat(c), 3) + "]</text>\n";
  }
  s += "</svg>\n";
  return s;
}

inline std::string plot_title(CurveKind kind, std::string_view sequence) {
  const char* base = kind == CurveKind::precision ? "Precision plot"
                     : kind == CurveKind::success ? "Success plot"
                                                  : "Success plot of matching score";
  return std::string(base) + " - " + std::string(sequence);
}

inline std::string render_plot(const EvaluationReport& report, const std::string& sequence, CurveKind kind) {
  if (std::find(report.sequences.begin(), report.sequences.end(), sequence) == report.sequences.end()) {
    throw Error(ErrorCode::UnknownSequence, "'" + sequence + "' is not in the report");
  }
  std::vector<PlotSeries> series;
  for (const auto& t : report.trackers) {
    series.push_back({t, &curve_of(report.per_tracker.at(t).per_sequence.at(sequence), kind)});
  }
  return render_curves_svg(plot_title(kind, sequence), kind, std::move(series));
}

/// Same panel drawn from the macro-averaged curves.
inline std::string render_average_plot(const EvaluationReport& report, CurveKind kind) {
  std::vector<PlotSeries> series;
  for (const auto& t : report.trackers) series.push_back({t, &curve_of(report.per_tracker.at(t).average, kind)});
  return render_curves_svg(plot_title(kind, "average over " + std::to_string(report.sequences.size()) + " sequences"),
                           kind, std::move(series));
}

}  // namespace trackeval
