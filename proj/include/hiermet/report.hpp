#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hiermet/metrics.hpp"

namespace hiermet {

enum class OutputFormat { kText, kJson, kCsv };

std::string to_string(OutputFormat format);
OutputFormat parse_output_format(std::string_view text);  // throws UsageError

/// Measured totals for one package, either from a scan or fed directly
/// from known counts.
struct PackageInputs {
  std::string package;
  std::string language;
  std::int64_t loc = 0;
  std::int64_t functions = 0;
  std::int64_t files = 0;
  std::int64_t dirs_raw = 0;
  std::optional<std::int64_t> dirs_pruned;  // unset = pruning disabled
  DepthHistogram depth_histogram;           // may be empty when fed counts
  DenominatorMode mode = DenominatorMode::kPlainRatio;
};

/// One package's full result row. Optional fields are metrics that are
/// undefined for the inputs; they are rendered as "n/a" (text, CSV) or
/// null (JSON), never as silent zeros. Values are kept at full precision;
/// rounding happens at render time.
struct PackageReport {
  std::string package;
  std::string language;
  bool failed = false;
  std::string error;  // set when failed

  std::int64_t loc = 0;
  std::int64_t functions = 0;
  std::int64_t files = 0;
  std::int64_t dirs_raw = 0;
  std::optional<std::int64_t> dirs_pruned;
  DenominatorMode mode = DenominatorMode::kPlainRatio;

  std::optional<double> loc_per_function;
  std::optional<double> functions_per_file;
  std::optional<double> items_per_dir_raw;
  std::optional<double> items_per_dir_pruned;
  std::optional<double> avg_dir_depth;
  std::optional<double> exp_depth_raw;
  std::optional<double> exp_depth_pruned;
  std::optional<double> corrected_depth;   // from the pruned depth when available
  std::optional<double> reconstructed_loc;

  std::optional<RangeLabel> label_loc_per_function;
  std::optional<RangeLabel> label_functions_per_file;
  std::optional<RangeLabel> label_items_per_dir_raw;
  std::optional<RangeLabel> label_items_per_dir_pruned;
  std::optional<RangeLabel> label_corrected_depth;

  DepthHistogram depth_histogram;
};

/// Placeholder row for a batch entry that could not be analyzed.
PackageReport failed_package_report(std::string package, std::string language,
                                    std::string error);

PackageReport build_package_report(const PackageInputs& inputs);

/// Render one report (JSON: a single object).
std::string render_report(const PackageReport& report, OutputFormat format);

/// Render a batch (JSON: an array; text/CSV: one row per package, in input
/// order).
std::string render_reports(const std::vector<PackageReport>& reports,
                           OutputFormat format);

/// Tab-separated depth/count records plus, when a usable fit is given,
/// a fitted-curve sample at each listed depth. Empty histogram yields the
/// header line only.
std::string histogram_export(const DepthHistogram& histogram,
                             const std::optional<NormalFit>& fit);

/// Text rendering of a theory table (depth, exact LOC, scaled form).
std::string render_theory_table(const TheoryTable& table);

}  // namespace hiermet
