#include "hiermet/metrics.hpp"

#include <cmath>
#include <sstream>

#include "hiermet/errors.hpp"

namespace hiermet {

namespace {

void collect_depths(const DirEntry& dir, int depth, DepthHistogram& out) {
  // `depth` is the number of directories containing a file found directly
  // here; the package root counts as one of them.
  if (!dir.files.empty()) {
    out[depth] += static_cast<std::int64_t>(dir.files.size());
  }
  for (const auto& sub : dir.subdirs) {
    collect_depths(sub, depth + 1, out);
  }
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, int depth) {
  std::uint64_t result = 0;
  if (__builtin_mul_overflow(a, b, &result)) {
    std::ostringstream msg;
    msg << "theory table overflows 64-bit LOC count at depth " << depth;
    throw MetricError(msg.str());
  }
  return result;
}

}  // namespace

std::string to_string(DenominatorMode mode) {
  return mode == DenominatorMode::kRootCounted ? "eq2" : "paper";
}

DenominatorMode parse_denominator_mode(std::string_view text) {
  if (text == "eq2") {
    return DenominatorMode::kRootCounted;
  }
  if (text == "paper") {
    return DenominatorMode::kPlainRatio;
  }
  throw ConfigError("unknown denominator mode: " + std::string(text));
}

std::string to_string(RangeLabel label) {
  switch (label) {
    case RangeLabel::kBelow:
      return "below";
    case RangeLabel::kWithin:
      return "within";
    case RangeLabel::kAbove:
      return "above";
  }
  return "?";
}

double items_per_directory(std::int64_t files, std::int64_t dirs,
                           DenominatorMode mode) {
  if (files < 1) {
    throw MetricError("items per directory is undefined without files");
  }
  if (dirs < 0) {
    throw MetricError("negative directory count");
  }
  if (mode == DenominatorMode::kPlainRatio && dirs == 0) {
    throw MetricError(
        "items per directory is undefined without directories in plain-ratio "
        "mode");
  }
  const auto numerator = static_cast<double>(files + dirs);
  const auto denominator = static_cast<double>(
      mode == DenominatorMode::kRootCounted ? dirs + 1 : dirs);
  return numerator / denominator;
}

double exponential_depth(std::int64_t files, double items_per_dir) {
  if (files < 1) {
    throw MetricError("exponential depth is undefined without files");
  }
  if (!(items_per_dir > 1.0)) {
    throw MetricError(
        "exponential depth is undefined for items per directory <= 1");
  }
  return std::log(static_cast<double>(files)) / std::log(items_per_dir);
}

DepthHistogram depth_distribution(const SourceTree& tree) {
  DepthHistogram histogram;
  collect_depths(tree.root(), 1, histogram);
  return histogram;
}

double average_directory_depth(const DepthHistogram& histogram) {
  std::int64_t total = 0;
  std::int64_t weighted = 0;
  for (const auto& [depth, count] : histogram) {
    total += count;
    weighted += static_cast<std::int64_t>(depth) * count;
  }
  if (total == 0) {
    throw MetricError("average depth is undefined for an empty histogram");
  }
  return static_cast<double>(weighted) / static_cast<double>(total);
}

NormalFit normal_fit(const DepthHistogram& histogram) {
  std::int64_t total = 0;
  for (const auto& [depth, count] : histogram) {
    total += count;
  }
  if (total < 2) {
    throw MetricError("normal fit needs at least two files");
  }
  const double mean = average_directory_depth(histogram);
  double sum_sq = 0.0;
  for (const auto& [depth, count] : histogram) {
    const double delta = static_cast<double>(depth) - mean;
    sum_sq += static_cast<double>(count) * delta * delta;
  }
  NormalFit fit;
  fit.mean = mean;
  fit.stddev = std::sqrt(sum_sq / static_cast<double>(total - 1));
  fit.degenerate = fit.stddev == 0.0;
  return fit;
}

double corrected_depth(double exp_depth) { return exp_depth + 1.0; }

double reconstruct_size(double loc_per_function, double functions_per_file,
                        std::int64_t files) {
  return loc_per_function * functions_per_file * static_cast<double>(files);
}

double exponential_file_estimate(double items_per_dir,
                                 double corrected_depth) {
  return std::pow(items_per_dir, corrected_depth - 1.0);
}

double reconstruct_size_exponential(double loc_per_function,
                                    double functions_per_file,
                                    double items_per_dir,
                                    double corrected_depth) {
  return loc_per_function * functions_per_file *
         exponential_file_estimate(items_per_dir, corrected_depth);
}

RangeLabel classify_magic_range(double value) {
  if (value < 5.0) {
    return RangeLabel::kBelow;
  }
  if (value <= 9.0) {
    return RangeLabel::kWithin;
  }
  return RangeLabel::kAbove;
}

TheoryTable theory_table(std::int64_t branching, int max_depth) {
  if (branching < 1) {
    throw MetricError("branching factor must be at least 1");
  }
  if (max_depth < 1) {
    throw MetricError("max depth must be at least 1");
  }
  TheoryTable table;
  table.branching = branching;
  const auto b = static_cast<std::uint64_t>(branching);
  std::uint64_t power = 1;  // b^(depth+1), built incrementally
  int exponent = 0;
  for (int depth = 3; depth <= max_depth; ++depth) {
    while (exponent < depth + 1) {
      power = checked_mul(power, b, depth);
      ++exponent;
    }
    table.rows.push_back({depth, power});
  }
  return table;
}

std::string format_loc_scaled(std::uint64_t loc) {
  // Integer arithmetic throughout so half-up rounding is exact. Published
  // size tables round kLOC cells half-up but truncate MLOC cells; both are
  // matched here.
  const bool mega = loc >= 10'000'000ULL;
  const std::uint64_t unit = mega ? 1'000'000ULL : 1'000ULL;
  const char* suffix = mega ? " MLOC" : " kLOC";
  std::ostringstream out;
  if (loc < 20 * unit) {
    // one decimal place
    const std::uint64_t tenths =
        mega ? loc / (unit / 10) : (loc + unit / 20) / (unit / 10);
    out << tenths / 10 << '.' << tenths % 10 << suffix;
  } else {
    const std::uint64_t whole = mega ? loc / unit : (loc + unit / 2) / unit;
    out << whole << suffix;
  }
  return out.str();
}

TreeMetrics compute_tree_metrics(const SourceTree& tree,
                                 DenominatorMode mode) {
  TreeMetrics metrics;
  metrics.denominator_mode = mode;
  metrics.depth_histogram = depth_distribution(tree);
  const TreeCounts counts = count_entities(tree);
  try {
    metrics.items_per_dir_a =
        items_per_directory(counts.files_T, counts.dirs_D, mode);
    metrics.exp_depth_l =
        exponential_depth(counts.files_T, *metrics.items_per_dir_a);
    metrics.corrected_depth_d = corrected_depth(*metrics.exp_depth_l);
  } catch (const MetricError&) {
    // leave the undefined tail unset
  }
  if (!metrics.depth_histogram.empty()) {
    metrics.avg_dir_depth = average_directory_depth(metrics.depth_histogram);
  }
  return metrics;
}

LevelComplexityReport level_complexity(std::int64_t loc,
                                       std::int64_t functions,
                                       std::int64_t files,
                                       std::optional<double> items_per_dir,
                                       std::optional<double> depth) {
  LevelComplexityReport report;
  if (functions > 0) {
    report.c0_loc_per_function =
        static_cast<double>(loc) / static_cast<double>(functions);
    report.c0_label = classify_magic_range(*report.c0_loc_per_function);
  }
  if (files > 0) {
    report.c1_functions_per_file =
        static_cast<double>(functions) / static_cast<double>(files);
    report.c1_label = classify_magic_range(*report.c1_functions_per_file);
  }
  if (items_per_dir) {
    report.c_high_items_per_dir = items_per_dir;
    report.c_high_label = classify_magic_range(*items_per_dir);
  }
  if (depth) {
    report.depth_d = depth;
    report.depth_label = classify_magic_range(*depth);
  }
  if (report.c0_loc_per_function && report.c1_functions_per_file) {
    report.reconstructed_size_loc =
        reconstruct_size(*report.c0_loc_per_function,
                         *report.c1_functions_per_file, files);
  }
  return report;
}

}  // namespace hiermet
