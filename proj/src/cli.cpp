#include "hiermet/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "hiermet/config.hpp"
#include "hiermet/errors.hpp"
#include "hiermet/scanner.hpp"

namespace fs = std::filesystem;

namespace hiermet {

namespace {

constexpr const char* kConfigEnvVar = "HIERMET_CONFIG";
constexpr const char* kConventionalConfig = ".hiermet.json";

// --config flag beats the environment variable, which beats the
// conventional file in the working directory.
ToolConfig effective_config(const std::optional<fs::path>& flag_path) {
  if (flag_path) {
    return load_config(*flag_path);
  }
  if (const char* env = std::getenv(kConfigEnvVar); env && *env) {
    return load_config(env);
  }
  std::error_code ec;
  if (fs::exists(kConventionalConfig, ec) && !ec) {
    return load_config(kConventionalConfig);
  }
  return {};
}

ScanOptions scan_options(const RunConfig& run, const ToolConfig& config) {
  ScanOptions options;
  // Defaults always apply; explicit flags beat the config list.
  const auto& extra =
      run.ignore_patterns.empty() ? config.ignore_patterns
                                  : run.ignore_patterns;
  options.ignore_patterns.insert(options.ignore_patterns.end(), extra.begin(),
                                 extra.end());
  return options;
}

std::int64_t total_loc(const DirEntry& dir) {
  std::int64_t loc = 0;
  for (const auto& file : dir.files) {
    loc += file.metrics.loc;
  }
  for (const auto& sub : dir.subdirs) {
    loc += total_loc(sub);
  }
  return loc;
}

std::int64_t total_functions(const DirEntry& dir) {
  std::int64_t functions = 0;
  for (const auto& file : dir.files) {
    functions += file.metrics.functions;
  }
  for (const auto& sub : dir.subdirs) {
    functions += total_functions(sub);
  }
  return functions;
}

std::string package_name(const fs::path& path) {
  std::error_code ec;
  fs::path normal = fs::weakly_canonical(path, ec);
  if (ec) {
    normal = path;
  }
  const std::string name = normal.filename().string();
  return name.empty() ? normal.string() : name;
}

PackageReport analyze_package(const std::string& name, const fs::path& path,
                              const std::string& language,
                              const RunConfig& run, const ToolConfig& config,
                              std::ostream& err) {
  const auto profiles = effective_profiles(config);
  LanguageProfile profile = resolve_profile(profiles, language);
  if (run.classifier) {
    profile = profile.with_classifier_mode(*run.classifier);
  }

  const SourceTree tree = scan_tree(path, profile, scan_options(run, config));
  const TreeCounts counts = count_entities(tree);
  if (counts.files_T == 0) {
    err << "warning: no " << profile.name() << " source files under "
        << path.string() << "\n";
  }

  PackageInputs inputs;
  inputs.package = name;
  inputs.language = profile.name();
  inputs.loc = total_loc(tree.root());
  inputs.functions = total_functions(tree.root());
  inputs.files = counts.files_T;
  inputs.dirs_raw = counts.dirs_D;
  if (run.prune) {
    inputs.dirs_pruned = counts.pruned_dirs;
  }
  inputs.depth_histogram = depth_distribution(tree);
  inputs.mode = run.denominator;
  return build_package_report(inputs);
}

struct ManifestEntry {
  std::string name;
  std::string path;
  std::string language;
  std::string parse_error;  // set when the line is malformed
};

std::vector<ManifestEntry> read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in.is_open()) {
    throw UsageError("cannot read manifest: " + path.string());
  }
  std::vector<ManifestEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty() || line.front() == '#') {
      continue;
    }
    ManifestEntry entry;
    const auto first_tab = line.find('\t');
    const auto second_tab = first_tab == std::string::npos
                                ? std::string::npos
                                : line.find('\t', first_tab + 1);
    if (first_tab == std::string::npos || second_tab == std::string::npos) {
      entry.name = "line " + std::to_string(line_no);
      entry.parse_error =
          "malformed manifest line (expected name<TAB>path<TAB>language)";
    } else {
      entry.name = line.substr(0, first_tab);
      entry.path = line.substr(first_tab + 1, second_tab - first_tab - 1);
      entry.language = line.substr(second_tab + 1);
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

}  // namespace

int cmd_analyze(const RunConfig& run, std::ostream& out, std::ostream& err) {
  const ToolConfig config = effective_config(run.config_path);
  const fs::path& path = *run.target_path;
  const PackageReport report = analyze_package(
      package_name(path), path, run.language, run, config, err);
  out << render_report(report, run.format);
  return exit_code::kOk;
}

int cmd_batch(const RunConfig& run, std::ostream& out, std::ostream& err) {
  const ToolConfig config = effective_config(run.config_path);
  const fs::path manifest = *run.manifest_path;
  const auto entries = read_manifest(manifest);
  const fs::path base = manifest.parent_path();

  std::vector<PackageReport> reports;
  bool any_failed = false;
  for (const auto& entry : entries) {
    if (!entry.parse_error.empty()) {
      any_failed = true;
      err << "error: " << entry.name << ": " << entry.parse_error << "\n";
      reports.push_back(
          failed_package_report(entry.name, entry.language, entry.parse_error));
      continue;
    }
    // relative manifest entries resolve against the manifest's directory
    fs::path target(entry.path);
    if (target.is_relative()) {
      target = base / target;
    }
    try {
      reports.push_back(analyze_package(entry.name, target, entry.language,
                                        run, config, err));
    } catch (const std::runtime_error& e) {
      any_failed = true;
      err << "error: " << entry.name << ": " << e.what() << "\n";
      reports.push_back(
          failed_package_report(entry.name, entry.language, e.what()));
    }
  }
  out << render_reports(reports, run.format);
  return any_failed ? exit_code::kPartialFailure : exit_code::kOk;
}

int cmd_theory(std::int64_t branching, int max_depth, std::ostream& out,
               std::ostream& err) {
  try {
    out << render_theory_table(theory_table(branching, max_depth));
  } catch (const MetricError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInput;
  }
  return exit_code::kOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"hiermet - hierarchical modularity metrics for source trees"};
  app.require_subcommand(1);

  RunConfig run;
  std::string denominator = "paper";
  std::string classifier;
  std::string format = "text";
  std::string config_flag;
  std::string target;
  std::string manifest;

  const auto add_shared_flags = [&](CLI::App* cmd) {
    cmd->add_option("--denominator", denominator,
                    "items/directory denominator: eq2 ((T+D)/(D+1)) or "
                    "paper ((T+D)/D)")
        ->default_str("paper");
    cmd->add_option("--classifier", classifier,
                    "line classifier: accurate or paper-grep");
    cmd->add_flag("--prune,!--no-prune", run.prune,
                  "discount trivial directories (default on)");
    cmd->add_option("--format", format, "output format: text, json or csv")
        ->default_str("text");
    cmd->add_option("--ignore", run.ignore_patterns,
                    "glob of names to skip (repeatable; replaces config "
                    "ignores, VCS defaults always apply)");
    cmd->add_option("--config", config_flag,
                    "config file (JSON) with profile overrides and ignore "
                    "patterns");
  };

  CLI::App* analyze =
      app.add_subcommand("analyze", "measure one source tree");
  analyze->add_option("path", target, "package root directory")->required();
  analyze->add_option("--lang", run.language,
                      "language id (c, cpp, java, lisp, perl, or one "
                      "defined in the config)")
      ->required();
  add_shared_flags(analyze);

  CLI::App* theory = app.add_subcommand(
      "theory", "theoretical size table for a constant branching factor");
  std::int64_t branching = 0;
  int max_depth = 0;
  theory->add_option("--branching", branching, "items per component")
      ->required()
      ->check(CLI::Range(1, 99));
  theory->add_option("--max-depth", max_depth, "deepest level to tabulate")
      ->required()
      ->check(CLI::Range(3, 12));

  CLI::App* batch = app.add_subcommand(
      "batch", "measure every package listed in a manifest");
  batch->add_option("manifest", manifest,
                    "manifest file: name<TAB>path<TAB>language per line")
      ->required();
  add_shared_flags(batch);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const auto parsed = app.get_subcommands();
    out << (parsed.empty() ? app.help() : parsed.front()->help());
    return exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kUsage;
  }

  try {
    run.denominator = parse_denominator_mode(denominator);
    run.format = parse_output_format(format);
    if (!classifier.empty()) {
      run.classifier = parse_classifier_mode(classifier);
    }
    if (!config_flag.empty()) {
      run.config_path = fs::path(config_flag);
    }

    if (app.got_subcommand(theory)) {
      return cmd_theory(branching, max_depth, out, err);
    }
    if (app.got_subcommand(analyze)) {
      run.target_path = fs::path(target);
      return cmd_analyze(run, out, err);
    }
    run.manifest_path = fs::path(manifest);
    return cmd_batch(run, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_code::kInput;
  }
}

}  // namespace hiermet
