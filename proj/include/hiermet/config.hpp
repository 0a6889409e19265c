#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hiermet/language.hpp"

namespace hiermet {

/// One profile entry from a config file. Fields that are present replace
/// the matching built-in profile's fields; a name with no built-in
/// counterpart defines a new language and must carry at least extensions
/// and a function pattern.
struct ProfileOverride {
  std::string name;
  std::optional<std::vector<std::string>> extensions;
  std::optional<std::vector<std::string>> line_comment_markers;
  std::optional<std::pair<std::string, std::string>> block_comment;
  bool clear_block_comment = false;  // "block_comments": null
  std::optional<std::string> function_pattern;
  std::optional<ClassifierMode> classifier_mode;
};

struct ToolConfig {
  std::vector<std::string> ignore_patterns;
  std::vector<ProfileOverride> profile_overrides;
};

/// Parse a JSON config file. Throws ConfigError on unreadable files or
/// malformed content.
ToolConfig load_config(const std::filesystem::path& path);

/// Built-in profiles with config overrides applied.
std::vector<LanguageProfile> effective_profiles(const ToolConfig& config);

/// Find a profile by id in an effective profile list.
/// Throws ConfigError for unknown ids.
const LanguageProfile& resolve_profile(
    const std::vector<LanguageProfile>& profiles, std::string_view id);

}  // namespace hiermet
