#include "hiermet/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "hiermet/errors.hpp"

namespace hiermet {

namespace {

using nlohmann::json;

// Display precision per column, matching the published tables: ratios per
// function/file 1 dp, raw items/dir 2 dp, pruned items/dir 1 dp, directory
// and raw exponential depth 1 dp, pruned and corrected depth 2 dp, kLOC as
// whole numbers.
constexpr int kDpPerFunction = 1;
constexpr int kDpPerFile = 1;
constexpr int kDpItemsRaw = 2;
constexpr int kDpItemsPruned = 1;
constexpr int kDpAvgDepth = 1;
constexpr int kDpExpRaw = 1;
constexpr int kDpExpPruned = 2;
constexpr int kDpCorrected = 2;

double round_half_up(double value, int decimals) {
  double scale = 1.0;
  for (int i = 0; i < decimals; ++i) {
    scale *= 10.0;
  }
  return std::floor(value * scale + 0.5) / scale;
}

std::int64_t to_kloc(double loc) {
  return static_cast<std::int64_t>(std::floor(loc / 1000.0 + 0.5));
}

std::string fmt_fixed(double value, int decimals) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(decimals) << value;
  return out.str();
}

std::string fmt_opt(const std::optional<double>& value, int decimals) {
  return value ? fmt_fixed(round_half_up(*value, decimals), decimals) : "n/a";
}

std::string fmt_opt_int(const std::optional<std::int64_t>& value) {
  return value ? std::to_string(*value) : "n/a";
}

std::string fmt_label(const std::optional<RangeLabel>& label) {
  return label ? to_string(*label) : "n/a";
}

json opt_number(const std::optional<double>& value, int decimals) {
  if (!value) {
    return nullptr;
  }
  return round_half_up(*value, decimals);
}

json opt_label(const std::optional<RangeLabel>& label) {
  if (!label) {
    return nullptr;
  }
  return to_string(*label);
}

json report_to_json(const PackageReport& r) {
  json j;
  j["package"] = r.package;
  j["language"] = r.language;
  j["status"] = r.failed ? "failed" : "ok";
  if (r.failed) {
    j["error"] = r.error;
  }
  j["kloc"] = to_kloc(static_cast<double>(r.loc));
  j["functions"] = r.functions;
  j["files"] = r.files;
  j["dirs_raw"] = r.dirs_raw;
  j["dirs_pruned"] = r.dirs_pruned ? json(*r.dirs_pruned) : json(nullptr);
  j["loc_per_function"] = opt_number(r.loc_per_function, kDpPerFunction);
  j["functions_per_file"] = opt_number(r.functions_per_file, kDpPerFile);
  j["items_per_dir_raw"] = opt_number(r.items_per_dir_raw, kDpItemsRaw);
  j["items_per_dir_pruned"] =
      opt_number(r.items_per_dir_pruned, kDpItemsPruned);
  j["denominator_mode"] = to_string(r.mode);
  j["avg_dir_depth"] = opt_number(r.avg_dir_depth, kDpAvgDepth);
  j["exp_depth_raw"] = opt_number(r.exp_depth_raw, kDpExpRaw);
  j["exp_depth_pruned"] = opt_number(r.exp_depth_pruned, kDpExpPruned);
  j["corrected_depth"] = opt_number(r.corrected_depth, kDpCorrected);
  j["reconstructed_kloc"] =
      r.reconstructed_loc ? json(to_kloc(*r.reconstructed_loc))
                          : json(nullptr);
  j["range_labels"] = {
      {"loc_per_function", opt_label(r.label_loc_per_function)},
      {"functions_per_file", opt_label(r.label_functions_per_file)},
      {"items_per_dir_raw", opt_label(r.label_items_per_dir_raw)},
      {"items_per_dir_pruned", opt_label(r.label_items_per_dir_pruned)},
      {"corrected_depth", opt_label(r.label_corrected_depth)},
  };
  json histogram = json::object();
  for (const auto& [depth, count] : r.depth_histogram) {
    histogram[std::to_string(depth)] = count;
  }
  j["depth_histogram"] = std::move(histogram);
  return j;
}

// Fixed-width table writer: pads every column to its widest cell.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header)
      : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row) {
    rows_.push_back(std::move(row));
  }

  void write(std::ostream& out) const {
    std::vector<std::size_t> widths(header_.size());
    for (std::size_t i = 0; i < header_.size(); ++i) {
      widths[i] = header_[i].size();
    }
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        widths[i] = std::max(widths[i], row[i].size());
      }
    }
    write_row(out, header_, widths);
    std::size_t rule = 0;
    for (std::size_t i = 0; i < widths.size(); ++i) {
      rule += widths[i] + (i ? 2 : 0);
    }
    out << std::string(rule, '-') << '\n';
    for (const auto& row : rows_) {
      write_row(out, row, widths);
    }
  }

 private:
  static void write_row(std::ostream& out, const std::vector<std::string>& row,
                        const std::vector<std::size_t>& widths) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) {
        out << "  ";
      }
      // left-align the first column, right-align numbers
      if (i == 0) {
        out << std::left << std::setw(static_cast<int>(widths[i])) << row[i]
            << std::right;
      } else {
        out << std::setw(static_cast<int>(widths[i])) << row[i];
      }
    }
    out << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string render_text(const std::vector<PackageReport>& reports) {
  std::ostringstream out;
  const bool any_pruned =
      std::any_of(reports.begin(), reports.end(),
                  [](const PackageReport& r) { return r.dirs_pruned.has_value(); });

  TextTable counts({"package", "language", "kLOC", "functions", "files",
                    "directories"});
  TextTable basic({"package", "LOC/function", "functions/file",
                   "items/directory", "range"});
  TextTable depth({"package", "directory", "exponential"});
  TextTable pruned({"package", "directories", "items/directory", "depth"});
  TextTable levels({"package", "level 0", "level 1", "level >1", "depth",
                    "size kLOC", "range"});

  for (const auto& r : reports) {
    if (r.failed) {
      counts.add_row({r.package, r.language, "FAILED: " + r.error});
      continue;
    }
    counts.add_row({r.package, r.language,
                    std::to_string(to_kloc(static_cast<double>(r.loc))),
                    std::to_string(r.functions), std::to_string(r.files),
                    std::to_string(r.dirs_raw)});
    basic.add_row({r.package, fmt_opt(r.loc_per_function, kDpPerFunction),
                   fmt_opt(r.functions_per_file, kDpPerFile),
                   fmt_opt(r.items_per_dir_raw, kDpItemsRaw),
                   fmt_label(r.label_items_per_dir_raw)});
    depth.add_row({r.package, fmt_opt(r.avg_dir_depth, kDpAvgDepth),
                   fmt_opt(r.exp_depth_raw, kDpExpRaw)});
    if (any_pruned) {
      pruned.add_row({r.package, fmt_opt_int(r.dirs_pruned),
                      fmt_opt(r.items_per_dir_pruned, kDpItemsPruned),
                      fmt_opt(r.exp_depth_pruned, kDpExpPruned)});
    }
    const auto& effective_items =
        r.dirs_pruned ? r.items_per_dir_pruned : r.items_per_dir_raw;
    const auto& effective_label = r.dirs_pruned ? r.label_items_per_dir_pruned
                                                : r.label_items_per_dir_raw;
    levels.add_row(
        {r.package, fmt_opt(r.loc_per_function, kDpPerFunction),
         fmt_opt(r.functions_per_file, kDpPerFile),
         fmt_opt(effective_items,
                 r.dirs_pruned ? kDpItemsPruned : kDpItemsRaw),
         fmt_opt(r.corrected_depth, kDpCorrected),
         r.reconstructed_loc
             ? std::to_string(to_kloc(*r.reconstructed_loc))
             : "n/a",
         fmt_label(effective_label)});
  }

  out << "Lines of code\n";
  counts.write(out);
  out << "\nComplexity metrics\n";
  basic.write(out);
  out << "\nAverage depth\n";
  depth.write(out);
  if (any_pruned) {
    out << "\nAfter pruning\n";
    pruned.write(out);
  }
  out << "\nComplexity per level\n";
  levels.write(out);
  return std::move(out).str();
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns = {
      "package",
      "language",
      "status",
      "kloc",
      "functions",
      "files",
      "dirs_raw",
      "dirs_pruned",
      "loc_per_function",
      "functions_per_file",
      "items_per_dir_raw",
      "items_per_dir_pruned",
      "denominator_mode",
      "avg_dir_depth",
      "exp_depth_raw",
      "exp_depth_pruned",
      "corrected_depth",
      "reconstructed_kloc",
      "range_loc_per_function",
      "range_functions_per_file",
      "range_items_per_dir_raw",
      "range_items_per_dir_pruned",
      "range_corrected_depth",
  };
  return columns;
}

std::string render_csv(const std::vector<PackageReport>& reports) {
  std::ostringstream out;
  const auto& columns = csv_columns();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out << (i ? "," : "") << columns[i];
  }
  out << '\n';
  for (const auto& r : reports) {
    std::vector<std::string> row;
    row.push_back(r.package);
    row.push_back(r.language);
    row.push_back(r.failed ? "failed" : "ok");
    if (r.failed) {
      row.resize(columns.size(), "n/a");
    } else {
      row.push_back(std::to_string(to_kloc(static_cast<double>(r.loc))));
      row.push_back(std::to_string(r.functions));
      row.push_back(std::to_string(r.files));
      row.push_back(std::to_string(r.dirs_raw));
      row.push_back(fmt_opt_int(r.dirs_pruned));
      row.push_back(fmt_opt(r.loc_per_function, kDpPerFunction));
      row.push_back(fmt_opt(r.functions_per_file, kDpPerFile));
      row.push_back(fmt_opt(r.items_per_dir_raw, kDpItemsRaw));
      row.push_back(fmt_opt(r.items_per_dir_pruned, kDpItemsPruned));
      row.push_back(to_string(r.mode));
      row.push_back(fmt_opt(r.avg_dir_depth, kDpAvgDepth));
      row.push_back(fmt_opt(r.exp_depth_raw, kDpExpRaw));
      row.push_back(fmt_opt(r.exp_depth_pruned, kDpExpPruned));
      row.push_back(fmt_opt(r.corrected_depth, kDpCorrected));
      row.push_back(r.reconstructed_loc
                        ? std::to_string(to_kloc(*r.reconstructed_loc))
                        : "n/a");
      row.push_back(fmt_label(r.label_loc_per_function));
      row.push_back(fmt_label(r.label_functions_per_file));
      row.push_back(fmt_label(r.label_items_per_dir_raw));
      row.push_back(fmt_label(r.label_items_per_dir_pruned));
      row.push_back(fmt_label(r.label_corrected_depth));
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << row[i];
    }
    out << '\n';
  }
  return std::move(out).str();
}

}  // namespace

std::string to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::kText:
      return "text";
    case OutputFormat::kJson:
      return "json";
    case OutputFormat::kCsv:
      return "csv";
  }
  return "?";
}

OutputFormat parse_output_format(std::string_view text) {
  if (text == "text") {
    return OutputFormat::kText;
  }
  if (text == "json") {
    return OutputFormat::kJson;
  }
  if (text == "csv") {
    return OutputFormat::kCsv;
  }
  throw UsageError("unknown output format: " + std::string(text));
}

PackageReport failed_package_report(std::string package, std::string language,
                                    std::string error) {
  PackageReport report;
  report.package = std::move(package);
  report.language = std::move(language);
  report.failed = true;
  report.error = std::move(error);
  return report;
}

PackageReport build_package_report(const PackageInputs& in) {
  PackageReport r;
  r.package = in.package;
  r.language = in.language;
  r.loc = in.loc;
  r.functions = in.functions;
  r.files = in.files;
  r.dirs_raw = in.dirs_raw;
  r.dirs_pruned = in.dirs_pruned;
  r.mode = in.mode;
  r.depth_histogram = in.depth_histogram;

  const auto try_metric = [](auto&& fn) -> std::optional<double> {
    try {
      return fn();
    } catch (const MetricError&) {
      return std::nullopt;
    }
  };

  r.items_per_dir_raw = try_metric(
      [&] { return items_per_directory(in.files, in.dirs_raw, in.mode); });
  if (r.items_per_dir_raw) {
    r.exp_depth_raw = try_metric(
        [&] { return exponential_depth(in.files, *r.items_per_dir_raw); });
    r.label_items_per_dir_raw = classify_magic_range(*r.items_per_dir_raw);
  }
  if (in.dirs_pruned) {
    r.items_per_dir_pruned = try_metric([&] {
      return items_per_directory(in.files, *in.dirs_pruned, in.mode);
    });
    if (r.items_per_dir_pruned) {
      r.exp_depth_pruned = try_metric([&] {
        return exponential_depth(in.files, *r.items_per_dir_pruned);
      });
      r.label_items_per_dir_pruned =
          classify_magic_range(*r.items_per_dir_pruned);
    }
  }
  const auto& effective_depth =
      in.dirs_pruned ? r.exp_depth_pruned : r.exp_depth_raw;
  if (effective_depth) {
    r.corrected_depth = corrected_depth(*effective_depth);
  }
  if (!in.depth_histogram.empty()) {
    r.avg_dir_depth = average_directory_depth(in.depth_histogram);
  }

  const LevelComplexityReport level = level_complexity(
      in.loc, in.functions, in.files,
      in.dirs_pruned ? r.items_per_dir_pruned : r.items_per_dir_raw,
      r.corrected_depth);
  r.loc_per_function = level.c0_loc_per_function;
  r.functions_per_file = level.c1_functions_per_file;
  r.reconstructed_loc = level.reconstructed_size_loc;
  r.label_loc_per_function = level.c0_label;
  r.label_functions_per_file = level.c1_label;
  r.label_corrected_depth = level.depth_label;
  return r;
}

std::string render_report(const PackageReport& report, OutputFormat format) {
  if (format == OutputFormat::kJson) {
    return report_to_json(report).dump(2) + "\n";
  }
  return render_reports({report}, format);
}

std::string render_reports(const std::vector<PackageReport>& reports,
                           OutputFormat format) {
  switch (format) {
    case OutputFormat::kJson: {
      json array = json::array();
      for (const auto& r : reports) {
        array.push_back(report_to_json(r));
      }
      return array.dump(2) + "\n";
    }
    case OutputFormat::kCsv:
      return render_csv(reports);
    case OutputFormat::kText:
      return render_text(reports);
  }
  throw UsageError("unknown output format");
}

std::string histogram_export(const DepthHistogram& histogram,
                             const std::optional<NormalFit>& fit) {
  std::ostringstream out;
  out << "depth\tcount\tfit\n";
  std::int64_t total = 0;
  for (const auto& [depth, count] : histogram) {
    total += count;
  }
  const bool usable_fit = fit && fit->stddev > 0.0;
  for (const auto& [depth, count] : histogram) {
    out << depth << '\t' << count << '\t';
    if (usable_fit) {
      constexpr double kTwoPi = 6.283185307179586;
      const double z = (static_cast<double>(depth) - fit->mean) / fit->stddev;
      const double density =
          std::exp(-0.5 * z * z) / (fit->stddev * std::sqrt(kTwoPi));
      out << fmt_fixed(static_cast<double>(total) * density, 6);
    } else {
      out << "n/a";
    }
    out << '\n';
  }
  return std::move(out).str();
}

std::string render_theory_table(const TheoryTable& table) {
  std::ostringstream out;
  out << "branching " << table.branching << " per level\n";
  TextTable t({"depth", "LOC", "scaled"});
  for (const auto& row : table.rows) {
    t.add_row({std::to_string(row.depth), std::to_string(row.loc),
               format_loc_scaled(row.loc)});
  }
  t.write(out);
  return std::move(out).str();
}

}  // namespace hiermet
