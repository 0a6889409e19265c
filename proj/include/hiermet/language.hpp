#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/regex.hpp>

namespace hiermet {

/// How lines are assigned to classes.
///
/// kAccurate tracks block-comment state across lines and strips comments
/// before deciding what a line is; a line mixing code and a comment counts
/// as code. kGrepChain is a stateless per-line filter chain kept for
/// compatibility with grep-based counting: blank lines, lines whose first
/// non-space character is '*' (when the language has block comments), lines
/// starting with a line-comment marker, and lone-brace lines are dropped;
/// everything else is code.
enum class ClassifierMode { kAccurate, kGrepChain };

std::string to_string(ClassifierMode mode);
ClassifierMode parse_classifier_mode(std::string_view text);

enum class LineClass { kBlank, kComment, kBraceOnly, kCode };

/// Per-file counts. Every physical line lands in exactly one of
/// loc / blank / comment / brace_only, so those four always sum to
/// total_lines.
struct FileMetrics {
  std::int64_t total_lines = 0;
  std::int64_t loc = 0;
  std::int64_t blank_lines = 0;
  std::int64_t comment_lines = 0;
  std::int64_t brace_only_lines = 0;
  std::int64_t functions = 0;

  friend bool operator==(const FileMetrics&, const FileMetrics&) = default;
};

/// Lexical rules for one language: which file extensions belong to it, how
/// comments are written, and what a function definition looks like.
///
/// Profiles are immutable once built. The function pattern is compiled at
/// construction time; an invalid pattern raises ConfigError there rather
/// than during counting.
class LanguageProfile {
 public:
  static LanguageProfile make(
      std::string name, std::vector<std::string> extensions,
      std::vector<std::string> line_comment_markers,
      std::optional<std::pair<std::string, std::string>> block_comment,
      std::string function_pattern,
      ClassifierMode mode = ClassifierMode::kAccurate);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& extensions() const { return extensions_; }
  const std::vector<std::string>& line_comment_markers() const {
    return line_comment_markers_;
  }
  const std::optional<std::pair<std::string, std::string>>& block_comment()
      const {
    return block_comment_;
  }
  const std::string& function_pattern() const { return function_pattern_; }
  const boost::regex& compiled_pattern() const { return compiled_; }
  ClassifierMode classifier_mode() const { return mode_; }

  /// Copy of this profile with a different classifier mode.
  LanguageProfile with_classifier_mode(ClassifierMode mode) const;

 private:
  LanguageProfile() = default;

  std::string name_;
  std::vector<std::string> extensions_;
  std::vector<std::string> line_comment_markers_;
  std::optional<std::pair<std::string, std::string>> block_comment_;
  std::string function_pattern_;
  boost::regex compiled_;
  ClassifierMode mode_ = ClassifierMode::kAccurate;
};

/// Class of each physical line of `content`, in file order.
std::vector<LineClass> classify_line_classes(std::string_view content,
                                             const LanguageProfile& profile);

/// Line counts for `content` (functions left at zero).
FileMetrics classify_lines(std::string_view content,
                           const LanguageProfile& profile);

/// Number of non-overlapping function-pattern matches over the whole
/// content; the pattern may span lines.
std::int64_t count_functions(std::string_view content,
                             const LanguageProfile& profile);

/// classify_lines plus count_functions in one call.
FileMetrics analyze_content(std::string_view content,
                            const LanguageProfile& profile);

/// Built-in profiles: c, cpp, java, lisp, perl.
const std::vector<LanguageProfile>& builtin_profiles();

/// Look up a built-in profile by id ("c++" is accepted for "cpp").
/// Throws ConfigError for unknown ids.
const LanguageProfile& find_builtin_profile(std::string_view id);

/// Lower-cased id with aliases folded ("c++" -> "cpp").
std::string normalize_language_id(std::string_view id);

}  // namespace hiermet
