#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hiermet/metrics.hpp"
#include "hiermet/report.hpp"

namespace hiermet {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kPartialFailure = 1;
inline constexpr int kUsage = 2;
inline constexpr int kInput = 3;
}  // namespace exit_code

/// Everything one invocation needs: exactly one of target_path (analyze)
/// or manifest_path (batch) is set.
struct RunConfig {
  std::optional<std::filesystem::path> target_path;
  std::optional<std::filesystem::path> manifest_path;
  std::string language;
  DenominatorMode denominator = DenominatorMode::kPlainRatio;
  std::optional<ClassifierMode> classifier;  // unset = profile default
  bool prune = true;
  OutputFormat format = OutputFormat::kText;
  std::vector<std::string> ignore_patterns;  // from flags; beat config
  std::optional<std::filesystem::path> config_path;
};

/// Analyze a single tree and write the rendered report to `out`;
/// diagnostics go to `err` only.
int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Analyze every manifest entry (name<TAB>path<TAB>language per line),
/// isolating per-entry failures, and render the combined table in
/// manifest order.
int cmd_batch(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Emit the theoretical size table for a branching factor.
int cmd_theory(std::int64_t branching, int max_depth, std::ostream& out,
               std::ostream& err);

/// Full command-line entry point. Returns the process exit code:
/// 0 success, 1 partial batch failure, 2 usage error, 3 input error.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace hiermet
