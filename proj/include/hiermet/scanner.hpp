#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hiermet/language.hpp"

namespace hiermet {

struct FileEntry {
  std::string name;      // file name
  std::string rel_path;  // '/'-separated path relative to the scan root
  FileMetrics metrics;

  friend bool operator==(const FileEntry&, const FileEntry&) = default;
};

struct DirEntry {
  std::string name;
  std::string rel_path;  // "" for the root
  std::vector<DirEntry> subdirs;  // sorted by rel_path
  std::vector<FileEntry> files;   // sorted by rel_path

  friend bool operator==(const DirEntry&, const DirEntry&) = default;
};

/// Immutable model of one language's source files on disk.
///
/// Holds only directories that contain at least one source file at some
/// depth; every leaf is a file of the active language. Queries are
/// read-only, so a tree can be shared freely across threads. Pruning
/// produces a new tree, it never mutates this one.
class SourceTree {
 public:
  SourceTree() = default;

  /// Takes ownership of a fully built root. Throws std::invalid_argument
  /// if any non-root directory has no descendant source file.
  explicit SourceTree(DirEntry root);

  const DirEntry& root() const { return root_; }
  bool empty() const { return root_.subdirs.empty() && root_.files.empty(); }

  friend bool operator==(const SourceTree&, const SourceTree&) = default;

 private:
  DirEntry root_;
};

/// T, D and the directory count that remains after pruning. The root is
/// never part of dirs_D or pruned_dirs; file count is identical before and
/// after pruning.
struct TreeCounts {
  std::int64_t files_T = 0;
  std::int64_t dirs_D = 0;
  std::int64_t pruned_dirs = 0;
};

/// Names excluded from scans by default (VCS metadata).
std::vector<std::string> default_ignore_patterns();

struct ScanOptions {
  std::vector<std::string> ignore_patterns = default_ignore_patterns();
  bool case_insensitive_extensions = false;
};

/// Minimal glob match (supports '*' and '?') against a single path
/// component.
bool matches_glob(std::string_view pattern, std::string_view name);

/// Walk `root`, keep files whose extension is in `profile`, drop
/// directories without any source file below them, and fill per-file
/// counts via the language module. Symbolic links are never followed.
/// The result does not depend on directory enumeration order.
///
/// Throws InputError if root is missing, not a directory, or unreadable.
/// A directory with zero matching files yields an empty tree, not an
/// error.
SourceTree scan_tree(const std::filesystem::path& root,
                     const LanguageProfile& profile,
                     const ScanOptions& options = {});

TreeCounts count_entities(const SourceTree& tree);

/// Collapsed view of the tree in which every trivial directory -- one
/// holding exactly one item (a single source file or a single
/// subdirectory) -- is spliced out. Evaluated bottom-up; the file set is
/// unchanged and the result is a fixpoint.
SourceTree prune_trivial(const SourceTree& tree);

}  // namespace hiermet
