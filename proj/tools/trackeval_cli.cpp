// trackeval: evaluate rotated-box tracker outputs and render the results.
//
//   trackeval evaluate --dataset D --results R [--trackers a,b] --out report.json
//   trackeval table report.json --metric auc_success [--format markdown] [--out f]
//   trackeval plot report.json (--sequence S | --all | --average) (--kind K | --all-kinds) --out-dir DIR
//   trackeval demo-examples [--angle-mode wrap] [--scaled1 10,10,2,2,1] ...
//
// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 data/format error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trackeval/trackeval.hpp"

namespace fs = std::filesystem;
using namespace trackeval;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitData = 3;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingFile:
      return kExitIo;
    case ErrorCode::UnknownMetric:
    case ErrorCode::UnknownSequence:
    case ErrorCode::ThresholdNotSampled:
    case ErrorCode::DomainError:
      return kExitUsage;
    default:
      return kExitData;
  }
}

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes through a sibling temporary so a failed run leaves no partial file.
void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    out.flush();
    if (!out) throw IoError("cannot write " + path.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot write " + path.string());
  }
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateOptions {
  std::string dataset;
  std::string results;
  std::vector<std::string> trackers;
  std::string out;
  int precision_max = 50;
  int overlap_steps = 101;
  std::string angle_mode = "raw";
  std::string comparison = "strict";
  int jobs = 1;
};

int run_evaluate(const EvaluateOptions& o) {
  EvaluationConfig config;
  config.precision_thresholds = precision_grid(o.precision_max);
  config.overlap_thresholds = overlap_grid(o.overlap_steps);
  config.angle_mode = o.angle_mode == "wrap" ? AngleMode::wrap : AngleMode::raw;
  config.comparison = o.comparison == "inclusive" ? Comparison::inclusive : Comparison::strict;

  const std::vector<std::string> trackers = o.trackers.empty() ? list_trackers(o.results) : o.trackers;
  const EvaluationReport report = evaluate_directories(o.dataset, o.results, trackers, config, o.jobs);

  for (const auto& t : report.trackers) {
    for (const auto& s : report.sequences) {
      const auto& summary = report.per_tracker.at(t).per_sequence.at(s).summary;
      if (summary.n_failures > 0) {
        std::cerr << "trackeval: " << t << "/" << s << ": " << summary.n_failures << " of " << summary.n_frames
                  << " frames without prediction\n";
      }
    }
  }
  write_text(o.out, to_json(report));
  std::cerr << "trackeval: wrote " << o.out << " (" << report.trackers.size() << " trackers x "
            << report.sequences.size() << " sequences)\n";
  return 0;
}

// ---------------------------------------------------------------------------
// table / plot

int run_table(const std::string& report_path, const std::string& metric_name, const std::string& format_name,
              const std::string& out) {
  const TableMetric metric = parse_table_metric(metric_name);
  const auto format = parse_table_format(format_name);
  if (!format) throw Error(ErrorCode::UnknownMetric, "unknown table format '" + format_name + "'");
  const EvaluationReport report = from_json(read_text(report_path));
  const std::string text = render_table(report, metric, *format);
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text(out, text);
  }
  return 0;
}

struct PlotOptions {
  std::string report;
  std::string sequence;
  bool all = false;
  bool average = false;
  std::string kind;
  bool all_kinds = false;
  std::string out_dir = ".";
};

int run_plot(const PlotOptions& o) {
  std::vector<CurveKind> kinds;
  if (o.all_kinds) {
    kinds = {CurveKind::precision, CurveKind::success, CurveKind::matching};
  } else {
    const auto k = parse_curve_kind(o.kind);
    if (!k) throw CLI::ValidationError("--kind", "expected precision, success or matching");
    kinds = {*k};
  }
  const EvaluationReport report = from_json(read_text(o.report));

  std::vector<std::string> sequences;
  if (o.all) {
    sequences = report.sequences;
  } else if (!o.sequence.empty()) {
    sequences = {o.sequence};
  }
  // render everything first so an unknown sequence writes nothing
  std::vector<std::pair<fs::path, std::string>> files;
  for (const auto& s : sequences) {
    for (CurveKind k : kinds) {
      files.emplace_back(fs::path(o.out_dir) / (s + "_" + std::string(to_string(k)) + ".svg"),
                         render_plot(report, s, k));
    }
  }
  if (o.average) {
    for (CurveKind k : kinds) {
      files.emplace_back(fs::path(o.out_dir) / ("average_" + std::string(to_string(k)) + ".svg"),
                         render_average_plot(report, k));
    }
  }
  for (const auto& [path, svg] : files) write_text(path, svg);
  std::cerr << "trackeval: wrote " << files.size() << " plot(s) to " << o.out_dir << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// demo-examples

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5f", v);
  return buf;
}

// lower_is_better: center error; otherwise larger wins.
std::string verdict(double alg1, double alg2, bool lower_is_better) {
  if (std::abs(alg1 - alg2) <= 1e-9) return "tie";
  const bool first = lower_is_better ? alg1 < alg2 : alg1 > alg2;
  return first ? "Alg1 better" : "Alg2 better";
}

std::string box_text(const RotatedBox& b) {
  return "center (" + num(b.cx()) + ", " + num(b.cy()) + ") size " + num(b.w()) + " x " + num(b.h()) +
         " angle " + num(b.theta());
}

void print_scenario(const scenarios::ScenarioResult& r, const std::string& params) {
  std::cout << "== " << r.description << " ==\n";
  std::cout << "parameters: " << params << "\n";
  std::cout << "  ground truth: " << box_text(r.gt) << "\n";
  std::cout << "  Alg1:         " << box_text(r.pred_alg1) << "\n";
  std::cout << "  Alg2:         " << box_text(r.pred_alg2) << "\n";
  std::cout << "                 closed form    computed\n";
  auto line = [](const char* label, double a, double b) {
    std::cout << "  " << label << "  " << num(a) << "      " << num(b) << "\n";
  };
  line("E_A  Alg1 ", r.closed_form.e_a1, r.computed.e_a1);
  line("E_A  Alg2 ", r.closed_form.e_a2, r.computed.e_a2);
  line("E_C  Alg1 ", r.closed_form.e_c1, r.computed.e_c1);
  line("E_C  Alg2 ", r.closed_form.e_c2, r.computed.e_c2);
  std::cout << "  matching score: Alg1 " << num(r.e_ms1) << "  Alg2 " << num(r.e_ms2) << "\n";
  std::cout << "  verdict by center error:   " << verdict(r.computed.e_c1, r.computed.e_c2, true) << "\n";
  std::cout << "  verdict by area overlap:   " << verdict(r.computed.e_a1, r.computed.e_a2, false) << "\n";
  std::cout << "  verdict by matching score: " << verdict(r.e_ms1, r.e_ms2, false) << "\n\n";
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    std::ostringstream os;
    os << v[i];
    s += os.str();
  }
  return s;
}

struct DemoOptions {
  std::string angle_mode = "raw";
  std::vector<double> scaled1 = {10, 10, 2, 2, 1};
  std::vector<double> scaled2 = {10, 10, 2, 2};
  std::vector<double> oriented2 = {4, 2};
  std::vector<double> scaled_oriented1 = {10, 20, 2, 4};
};

int run_demo(const DemoOptions& o) {
  const AngleMode mode = o.angle_mode == "wrap" ? AngleMode::wrap : AngleMode::raw;
  std::cout << "angle mode: " << o.angle_mode << "\n\n";
  const auto& a = o.scaled1;
  print_scenario(scenarios::scaled_example_1(a[0], a[1], a[2], a[3], a[4], mode),
                 "w_g,h_g,w,h,alpha = " + join(a));
  const auto& b = o.scaled2;
  print_scenario(scenarios::scaled_example_2(b[0], b[1], b[2], b[3], mode), "w_g,h_g,w,h = " + join(b));
  const auto& c = o.oriented2;
  print_scenario(scenarios::oriented_example_2(c[0], c[1], mode), "w_g,h_g = " + join(c));
  const auto& d = o.scaled_oriented1;
  print_scenario(scenarios::scaled_oriented_example_1(d[0], d[1], d[2], d[3], mode),
                 "w_gt,h_gt,w_off,h_off = " + join(d));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate single-object trackers against rotated-box ground truth"};
  app.require_subcommand(1);

  EvaluateOptions eval;
  auto* evaluate = app.add_subcommand("evaluate", "Score tracker result files and write a JSON report");
  app.set_config("--config", "", "INI/TOML file; options go under an [evaluate] section, flags take precedence");
  evaluate->fallthrough();
  evaluate->add_option("--dataset", eval.dataset, "Dataset root holding list.txt and <seq>/groundtruth.txt")
      ->required();
  evaluate->add_option("--results", eval.results, "Results root holding <tracker>/<seq>.txt")->required();
  evaluate->add_option("--trackers", eval.trackers, "Tracker names (default: every results subdirectory)")
      ->delimiter(',');
  evaluate->add_option("--out", eval.out, "Report path")->required();
  evaluate->add_option("--precision-max", eval.precision_max, "Largest precision threshold, px")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  evaluate->add_option("--overlap-steps", eval.overlap_steps, "Samples of the [0,1] threshold grid")
      ->check(CLI::Range(2, 100001))
      ->capture_default_str();
  evaluate->add_option("--angle-mode", eval.angle_mode, "Orientation error: raw or wrap")
      ->check(CLI::IsMember({"raw", "wrap"}))
      ->capture_default_str();
  evaluate->add_option("--comparison", eval.comparison, "Success test: strict (>) or inclusive (>=)")
      ->check(CLI::IsMember({"strict", "inclusive"}))
      ->capture_default_str();
  evaluate->add_option("--jobs", eval.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();

  std::string table_report, table_metric, table_format = "markdown", table_out;
  auto* table = app.add_subcommand("table", "Render a per-sequence table from a report");
  table->add_option("report", table_report, "Report JSON")->required();
  table->add_option("--metric", table_metric,
                    "auc_success | auc_matching | precision@T | success@T | matching@T")
      ->required();
  table->add_option("--format", table_format, "markdown | csv | latex")->capture_default_str();
  table->add_option("--out", table_out, "Output file (default: stdout)");

  PlotOptions plot_opts;
  auto* plot = app.add_subcommand("plot", "Render SVG curve panels from a report");
  plot->add_option("report", plot_opts.report, "Report JSON")->required();
  auto* seq_opt = plot->add_option("--sequence", plot_opts.sequence, "Sequence to plot");
  auto* all_opt = plot->add_flag("--all", plot_opts.all, "Plot every sequence");
  plot->add_flag("--average", plot_opts.average, "Plot the macro-averaged curves");
  auto* kind_opt = plot->add_option("--kind", plot_opts.kind, "precision | success | matching");
  auto* kinds_opt = plot->add_flag("--all-kinds", plot_opts.all_kinds, "Plot all three kinds");
  plot->add_option("--out-dir", plot_opts.out_dir, "Output directory")->capture_default_str();
  seq_opt->excludes(all_opt);
  kind_opt->excludes(kinds_opt);

  DemoOptions demo;
  auto* demo_cmd = app.add_subcommand("demo-examples", "Replay the worked ambiguity examples");
  demo_cmd->add_option("--angle-mode", demo.angle_mode, "raw | wrap")
      ->check(CLI::IsMember({"raw", "wrap"}))
      ->capture_default_str();
  demo_cmd->add_option("--scaled1", demo.scaled1, "w_g,h_g,w,h,alpha")->delimiter(',')->expected(5);
  demo_cmd->add_option("--scaled2", demo.scaled2, "w_g,h_g,w,h")->delimiter(',')->expected(4);
  demo_cmd->add_option("--oriented2", demo.oriented2, "w_g,h_g")->delimiter(',')->expected(2);
  demo_cmd->add_option("--scaled-oriented1", demo.scaled_oriented1, "w_gt,h_gt,w_off,h_off")
      ->delimiter(',')
      ->expected(4);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*evaluate) return run_evaluate(eval);
    if (*table) return run_table(table_report, table_metric, table_format, table_out);
    if (*plot) {
      if (plot_opts.sequence.empty() && !plot_opts.all && !plot_opts.average) {
        throw CLI::ValidationError("plot", "give --sequence, --all or --average");
      }
      if (plot_opts.kind.empty() && !plot_opts.all_kinds) {
        throw CLI::ValidationError("plot", "give --kind or --all-kinds");
      }
      return run_plot(plot_opts);
    }
    if (*demo_cmd) return run_demo(demo);
  } catch (const CLI::Error& e) {
    std::cerr << "trackeval: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "trackeval: " << e.what() << "\n";
    if (e.code() == ErrorCode::UnknownMetric) std::cerr << table->help();
    return exit_code_for(e.code());
  } catch (const IoError& e) {
    std::cerr << "trackeval: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "trackeval: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
