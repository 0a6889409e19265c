#include "hiermet/config.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "hiermet/errors.hpp"

namespace hiermet {

namespace {

using nlohmann::json;

std::vector<std::string> string_list(const json& value,
                                     const std::string& where) {
  if (!value.is_array()) {
    throw ConfigError(where + " must be an array of strings");
  }
  std::vector<std::string> out;
  for (const auto& item : value) {
    if (!item.is_string()) {
      throw ConfigError(where + " must contain only strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

ProfileOverride parse_profile(const std::string& name, const json& body) {
  if (!body.is_object()) {
    throw ConfigError("profile '" + name + "' must be an object");
  }
  ProfileOverride entry;
  entry.name = normalize_language_id(name);
  for (const auto& [key, value] : body.items()) {
    if (key == "extensions") {
      entry.extensions = string_list(value, "profile '" + name +
                                                   "' extensions");
    } else if (key == "line_comments") {
      entry.line_comment_markers =
          string_list(value, "profile '" + name + "' line_comments");
    } else if (key == "block_comments") {
      if (value.is_null()) {
        entry.clear_block_comment = true;
      } else {
        const auto pair = string_list(value, "profile '" + name +
                                                 "' block_comments");
        if (pair.size() != 2) {
          throw ConfigError("profile '" + name +
                            "' block_comments must be [open, close]");
        }
        entry.block_comment = std::make_pair(pair[0], pair[1]);
      }
    } else if (key == "function_pattern") {
      if (!value.is_string()) {
        throw ConfigError("profile '" + name +
                          "' function_pattern must be a string");
      }
      entry.function_pattern = value.get<std::string>();
    } else if (key == "classifier") {
      if (!value.is_string()) {
        throw ConfigError("profile '" + name +
                          "' classifier must be a string");
      }
      entry.classifier_mode =
          parse_classifier_mode(value.get<std::string>());
    } else {
      throw ConfigError("profile '" + name + "': unknown key '" + key + "'");
    }
  }
  return entry;
}

}  // namespace

ToolConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in.is_open()) {
    throw ConfigError("cannot read config file: " + path.string());
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config file " + path.string() +
                      ": top level must be an object");
  }

  ToolConfig config;
  for (const auto& [key, value] : doc.items()) {
    if (key == "ignore") {
      config.ignore_patterns = string_list(value, "ignore");
    } else if (key == "profiles") {
      if (!value.is_object()) {
        throw ConfigError("profiles must be an object keyed by language id");
      }
      for (const auto& [name, body] : value.items()) {
        config.profile_overrides.push_back(parse_profile(name, body));
      }
    } else {
      throw ConfigError("config file: unknown key '" + key + "'");
    }
  }
  return config;
}

std::vector<LanguageProfile> effective_profiles(const ToolConfig& config) {
  std::vector<LanguageProfile> profiles = builtin_profiles();
  for (const auto& entry : config.profile_overrides) {
    auto existing = std::find_if(
        profiles.begin(), profiles.end(), [&](const LanguageProfile& p) {
          return p.name() == entry.name;
        });

    std::vector<std::string> extensions;
    std::vector<std::string> markers;
    std::optional<std::pair<std::string, std::string>> block;
    std::string pattern;
    ClassifierMode mode = ClassifierMode::kAccurate;
    if (existing != profiles.end()) {
      extensions = existing->extensions();
      markers = existing->line_comment_markers();
      block = existing->block_comment();
      pattern = existing->function_pattern();
      mode = existing->classifier_mode();
    } else {
      if (!entry.extensions || !entry.function_pattern) {
        throw ConfigError("new profile '" + entry.name +
                          "' needs extensions and function_pattern");
      }
    }
    if (entry.extensions) {
      extensions = *entry.extensions;
    }
    if (entry.line_comment_markers) {
      markers = *entry.line_comment_markers;
    }
    if (entry.clear_block_comment) {
      block = std::nullopt;
    } else if (entry.block_comment) {
      block = entry.block_comment;
    }
    if (entry.function_pattern) {
      pattern = *entry.function_pattern;
    }
    if (entry.classifier_mode) {
      mode = *entry.classifier_mode;
    }

    LanguageProfile merged = LanguageProfile::make(
        entry.name, std::move(extensions), std::move(markers),
        std::move(block), std::move(pattern), mode);
    if (existing != profiles.end()) {
      *existing = std::move(merged);
    } else {
      profiles.push_back(std::move(merged));
    }
  }
  return profiles;
}

const LanguageProfile& resolve_profile(
    const std::vector<LanguageProfile>& profiles, std::string_view id) {
  const std::string wanted = normalize_language_id(id);
  for (const auto& profile : profiles) {
    if (profile.name() == wanted) {
      return profile;
    }
  }
  throw ConfigError("unknown language: " + std::string(id));
}

}  // namespace hiermet
