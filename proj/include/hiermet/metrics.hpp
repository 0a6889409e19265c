#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hiermet/scanner.hpp"

namespace hiermet {

/// Denominator used for items per directory.
/// kRootCounted: a = (T+D)/(D+1), counting the package root.
/// kPlainRatio:  a = (T+D)/D, the form that reproduces published
/// measurement tables.
enum class DenominatorMode { kRootCounted, kPlainRatio };

std::string to_string(DenominatorMode mode);  // "eq2" / "paper"
DenominatorMode parse_denominator_mode(std::string_view text);

/// Position of a value relative to the 7+-2 range; 5 and 9 are inside.
enum class RangeLabel { kBelow, kWithin, kAbove };

std::string to_string(RangeLabel label);

/// depth -> number of files at that depth. A file directly inside the
/// package root has depth 1.
using DepthHistogram = std::map<int, std::int64_t>;

/// Average number of items (files + directories) per directory.
/// Throws MetricError when files < 1, or when dirs == 0 in kPlainRatio
/// mode.
double items_per_directory(std::int64_t files, std::int64_t dirs,
                           DenominatorMode mode);

/// ln(T)/ln(a): the depth an ideal constant-branching tree would need to
/// hold `files` leaves at `items_per_dir` items per directory. Fractional
/// results are expected. Throws MetricError when files < 1 or
/// items_per_dir <= 1.
double exponential_depth(std::int64_t files, double items_per_dir);

DepthHistogram depth_distribution(const SourceTree& tree);

/// File-count-weighted mean depth. Throws MetricError on an empty
/// histogram.
double average_directory_depth(const DepthHistogram& histogram);

struct NormalFit {
  double mean = 0.0;
  double stddev = 0.0;
  bool degenerate = false;  // all mass at a single depth
};

/// Weighted sample mean / standard deviation of the depth distribution.
/// Throws MetricError when fewer than two files are present.
NormalFit normal_fit(const DepthHistogram& histogram);

/// Hierarchy depth including the function level inside files: l + 1.
double corrected_depth(double exp_depth);

/// Exact size recovery: c0 * c1 * T.
double reconstruct_size(double loc_per_function, double functions_per_file,
                        std::int64_t files);

/// a^(d-1): file-count estimate of an ideal constant-branching tree of
/// corrected depth d.
double exponential_file_estimate(double items_per_dir, double corrected_depth);

/// Approximate size recovery: c0 * c1 * a^(d-1).
double reconstruct_size_exponential(double loc_per_function,
                                    double functions_per_file,
                                    double items_per_dir,
                                    double corrected_depth);

RangeLabel classify_magic_range(double value);

/// Theoretical sizes for a constant branching factor: one row per depth in
/// [3, max_depth], each exactly branching^(depth+1) LOC.
struct TheoryTable {
  struct Row {
    int depth = 0;
    std::uint64_t loc = 0;
  };
  std::int64_t branching = 0;
  std::vector<Row> rows;
};

/// Throws MetricError when branching < 1 or a row overflows 64 bits
/// (overflow is never silently wrapped).
TheoryTable theory_table(std::int64_t branching, int max_depth);

/// Scaled rendering of a LOC count: kLOC below 10^7, MLOC from there up.
/// Values below 20 in the chosen unit keep one decimal. kLOC values round
/// half-up; MLOC values truncate, matching the published size table.
std::string format_loc_scaled(std::uint64_t loc);

/// Whole-tree metric bundle; fields that are mathematically undefined for
/// the tree stay unset. corrected_depth_d is exactly exp_depth_l + 1.
struct TreeMetrics {
  std::optional<double> items_per_dir_a;
  std::optional<double> exp_depth_l;
  std::optional<double> corrected_depth_d;
  std::optional<double> avg_dir_depth;
  DepthHistogram depth_histogram;
  DenominatorMode denominator_mode = DenominatorMode::kPlainRatio;
};

TreeMetrics compute_tree_metrics(const SourceTree& tree, DenominatorMode mode);

/// Elements per component at each level: c(0) = LOC per function,
/// c(1) = functions per file, everything above = items per directory.
struct LevelComplexityReport {
  std::optional<double> c0_loc_per_function;
  std::optional<double> c1_functions_per_file;
  std::optional<double> c_high_items_per_dir;
  std::optional<double> depth_d;
  std::optional<double> reconstructed_size_loc;  // c0 * c1 * T
  std::optional<RangeLabel> c0_label;
  std::optional<RangeLabel> c1_label;
  std::optional<RangeLabel> c_high_label;
  std::optional<RangeLabel> depth_label;
};

LevelComplexityReport level_complexity(std::int64_t loc,
                                       std::int64_t functions,
                                       std::int64_t files,
                                       std::optional<double> items_per_dir,
                                       std::optional<double> depth);

}  // namespace hiermet
