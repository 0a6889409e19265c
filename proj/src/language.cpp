#include "hiermet/language.hpp"

#include <algorithm>
#include <cctype>

#include "hiermet/errors.hpp"

namespace hiermet {

namespace {

constexpr std::string_view kSpaceChars = " \t\r\v\f";

bool is_blank(std::string_view line) {
  return line.find_first_not_of(kSpaceChars) == std::string_view::npos;
}

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(kSpaceChars);
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = text.find_last_not_of(kSpaceChars);
  return text.substr(first, last - first + 1);
}

bool is_lone_brace(std::string_view text) {
  const auto t = trim(text);
  return t == "{" || t == "}";
}

// Calls fn once per physical line, with any trailing '\r' removed. A file
// without a final newline still yields its last line; empty content yields
// no lines.
template <typename Fn>
void for_each_line(std::string_view content, Fn&& fn) {
  std::size_t pos = 0;
  while (pos < content.size()) {
    const auto nl = content.find('\n', pos);
    auto line = nl == std::string_view::npos
                    ? content.substr(pos)
                    : content.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    fn(line);
    if (nl == std::string_view::npos) {
      break;
    }
    pos = nl + 1;
  }
}

// Content of `line` outside comments. `in_block` carries block-comment
// state between lines.
std::string strip_comments(std::string_view line, const LanguageProfile& p,
                           bool& in_block) {
  std::string code;
  const auto& block = p.block_comment();
  std::size_t i = 0;
  while (i < line.size()) {
    if (in_block) {
      const auto close = line.find(block->second, i);
      if (close == std::string_view::npos) {
        i = line.size();
      } else {
        i = close + block->second.size();
        in_block = false;
      }
      continue;
    }
    // Earliest comment token from here; ties go to the longer token.
    std::size_t next = std::string_view::npos;
    std::size_t token_len = 0;
    bool next_is_block = false;
    for (const auto& marker : p.line_comment_markers()) {
      const auto at = line.find(marker, i);
      if (at < next || (at == next && marker.size() > token_len)) {
        next = at;
        token_len = marker.size();
        next_is_block = false;
      }
    }
    if (block) {
      const auto at = line.find(block->first, i);
      if (at < next || (at == next && block->first.size() > token_len)) {
        next = at;
        token_len = block->first.size();
        next_is_block = true;
      }
    }
    if (next == std::string_view::npos) {
      code.append(line.substr(i));
      break;
    }
    code.append(line.substr(i, next - i));
    if (!next_is_block) {
      break;  // line comment: rest of the line is gone
    }
    i = next + token_len;
    in_block = true;
  }
  return code;
}

LineClass classify_accurate(std::string_view line, const LanguageProfile& p,
                            bool& in_block) {
  if (is_blank(line)) {
    return LineClass::kBlank;
  }
  const std::string code = strip_comments(line, p, in_block);
  if (is_blank(code)) {
    return LineClass::kComment;
  }
  if (is_lone_brace(code)) {
    return LineClass::kBraceOnly;
  }
  return LineClass::kCode;
}

bool starts_with_marker(std::string_view line, const LanguageProfile& p) {
  const auto t = trim(line);
  for (const auto& marker : p.line_comment_markers()) {
    if (t.substr(0, marker.size()) == marker) {
      return true;
    }
  }
  return false;
}

LineClass classify_grep_chain(std::string_view line,
                              const LanguageProfile& p) {
  if (is_blank(line)) {
    return LineClass::kBlank;
  }
  const auto t = trim(line);
  if (p.block_comment() && !t.empty() && t.front() == '*') {
    return LineClass::kComment;
  }
  if (starts_with_marker(line, p)) {
    return LineClass::kComment;
  }
  if (is_lone_brace(line)) {
    return LineClass::kBraceOnly;
  }
  return LineClass::kCode;
}

}  // namespace

std::string to_string(ClassifierMode mode) {
  return mode == ClassifierMode::kAccurate ? "accurate" : "paper-grep";
}

ClassifierMode parse_classifier_mode(std::string_view text) {
  if (text == "accurate") {
    return ClassifierMode::kAccurate;
  }
  if (text == "paper-grep") {
    return ClassifierMode::kGrepChain;
  }
  throw ConfigError("unknown classifier mode: " + std::string(text));
}

LanguageProfile LanguageProfile::make(
    std::string name, std::vector<std::string> extensions,
    std::vector<std::string> line_comment_markers,
    std::optional<std::pair<std::string, std::string>> block_comment,
    std::string function_pattern, ClassifierMode mode) {
  if (name.empty()) {
    throw ConfigError("profile name must not be empty");
  }
  if (extensions.empty()) {
    throw ConfigError("profile '" + name + "' has no extensions");
  }
  for (const auto& ext : extensions) {
    if (ext.size() < 2 || ext.front() != '.') {
      throw ConfigError("profile '" + name + "': extension '" + ext +
                        "' must begin with '.'");
    }
  }
  for (const auto& marker : line_comment_markers) {
    if (marker.empty()) {
      throw ConfigError("profile '" + name + "': empty line-comment marker");
    }
  }
  if (block_comment &&
      (block_comment->first.empty() || block_comment->second.empty())) {
    throw ConfigError("profile '" + name +
                      "': block comment delimiters must be non-empty");
  }

  LanguageProfile profile;
  profile.name_ = std::move(name);
  profile.extensions_ = std::move(extensions);
  profile.line_comment_markers_ = std::move(line_comment_markers);
  profile.block_comment_ = std::move(block_comment);
  profile.function_pattern_ = std::move(function_pattern);
  profile.mode_ = mode;
  try {
    profile.compiled_ = boost::regex(profile.function_pattern_,
                                     boost::regex::perl);
  } catch (const boost::regex_error& e) {
    throw ConfigError("profile '" + profile.name_ +
                      "': invalid function pattern: " + e.what());
  }
  return profile;
}

LanguageProfile LanguageProfile::with_classifier_mode(
    ClassifierMode mode) const {
  LanguageProfile copy = *this;
  copy.mode_ = mode;
  return copy;
}

std::vector<LineClass> classify_line_classes(std::string_view content,
                                             const LanguageProfile& profile) {
  std::vector<LineClass> classes;
  bool in_block = false;
  for_each_line(content, [&](std::string_view line) {
    if (profile.classifier_mode() == ClassifierMode::kAccurate) {
      classes.push_back(classify_accurate(line, profile, in_block));
    } else {
      classes.push_back(classify_grep_chain(line, profile));
    }
  });
  return classes;
}

FileMetrics classify_lines(std::string_view content,
                           const LanguageProfile& profile) {
  FileMetrics m;
  for (const LineClass c : classify_line_classes(content, profile)) {
    ++m.total_lines;
    switch (c) {
      case LineClass::kBlank:
        ++m.blank_lines;
        break;
      case LineClass::kComment:
        ++m.comment_lines;
        break;
      case LineClass::kBraceOnly:
        ++m.brace_only_lines;
        break;
      case LineClass::kCode:
        ++m.loc;
        break;
    }
  }
  return m;
}

std::int64_t count_functions(std::string_view content,
                             const LanguageProfile& profile) {
  std::int64_t count = 0;
  boost::cregex_iterator it(content.data(), content.data() + content.size(),
                            profile.compiled_pattern());
  const boost::cregex_iterator end;
  for (; it != end; ++it) {
    ++count;
  }
  return count;
}

FileMetrics analyze_content(std::string_view content,
                            const LanguageProfile& profile) {
  FileMetrics m = classify_lines(content, profile);
  m.functions = count_functions(content, profile);
  return m;
}

const std::vector<LanguageProfile>& builtin_profiles() {
  static const std::vector<LanguageProfile> profiles = [] {
    // C-family definitions end in "{"; the declaration-shaped variants that
    // end in ";" can be restored through a config override.
    const std::string c_pattern = R"((\w+)\s*\(([\w\s,\[\]&*]*)\)\s*\{)";
    const std::string java_pattern =
        R"((\w+)\s*\(([\w.\s,\[\]]*)\)\s*(?:throws\s+\w+(?:\s*,\s*\w+)*)?\s*\{)";
    std::vector<LanguageProfile> v;
    v.push_back(LanguageProfile::make(
        "c", {".c"}, {"//"}, {{"/*", "*/"}}, c_pattern));
    v.push_back(LanguageProfile::make(
        "cpp", {".cpp", ".cxx", ".cc"}, {"//"}, {{"/*", "*/"}}, c_pattern));
    v.push_back(LanguageProfile::make(
        "java", {".java"}, {"//"}, {{"/*", "*/"}}, java_pattern));
    v.push_back(LanguageProfile::make(
        "lisp", {".el"}, {";"}, std::nullopt,
        R"(\(def(?:un|macro|subst|alias)\s+[^\s()]+)"));
    v.push_back(LanguageProfile::make(
        "perl", {".pl", ".plx", ".pm"}, {"#"}, std::nullopt,
        R"(sub\s+(\w+)\s*\{)"));
    return v;
  }();
  return profiles;
}

std::string normalize_language_id(std::string_view id) {
  std::string lower(id);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "c++") {
    return "cpp";
  }
  if (lower == "elisp" || lower == "emacs-lisp") {
    return "lisp";
  }
  return lower;
}

const LanguageProfile& find_builtin_profile(std::string_view id) {
  const std::string wanted = normalize_language_id(id);
  for (const auto& profile : builtin_profiles()) {
    if (profile.name() == wanted) {
      return profile;
    }
  }
  throw ConfigError("unknown language: " + std::string(id));
}

}  // namespace hiermet
