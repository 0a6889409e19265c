#include "hiermet/scanner.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "hiermet/errors.hpp"

namespace fs = std::filesystem;

namespace hiermet {

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) {
    throw InputError("cannot read file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw InputError("error while reading file: " + path.string());
  }
  return std::move(buffer).str();
}

std::string to_lower(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return text;
}

bool extension_matches(const fs::path& path, const LanguageProfile& profile,
                       const ScanOptions& options) {
  std::string ext = path.extension().string();
  if (options.case_insensitive_extensions) {
    ext = to_lower(ext);
  }
  for (const auto& wanted : profile.extensions()) {
    const std::string wanted_ext =
        options.case_insensitive_extensions ? to_lower(wanted) : wanted;
    if (ext == wanted_ext) {
      return true;
    }
  }
  return false;
}

bool is_ignored(const std::string& name, const ScanOptions& options) {
  for (const auto& pattern : options.ignore_patterns) {
    if (matches_glob(pattern, name)) {
      return true;
    }
  }
  return false;
}

std::string join_rel(const std::string& parent, const std::string& name) {
  return parent.empty() ? name : parent + "/" + name;
}

void sort_children(DirEntry& dir) {
  std::sort(dir.subdirs.begin(), dir.subdirs.end(),
            [](const DirEntry& a, const DirEntry& b) {
              return a.rel_path < b.rel_path;
            });
  std::sort(dir.files.begin(), dir.files.end(),
            [](const FileEntry& a, const FileEntry& b) {
              return a.rel_path < b.rel_path;
            });
}

// Builds the subtree rooted at `dir`. Returns false when no source file
// lives anywhere below it, in which case `out` is left untouched.
bool scan_dir(const fs::path& dir, const std::string& rel,
              const std::string& name, const LanguageProfile& profile,
              const ScanOptions& options, DirEntry& out) {
  DirEntry entry;
  entry.name = name;
  entry.rel_path = rel;

  std::error_code ec;
  fs::directory_iterator it(dir, ec);
  if (ec) {
    throw InputError("cannot read directory: " + dir.string() + " (" +
                     ec.message() + ")");
  }
  for (const fs::directory_entry& item : it) {
    const std::string item_name = item.path().filename().string();
    if (is_ignored(item_name, options)) {
      continue;
    }
    std::error_code sec;
    const fs::file_status status = item.symlink_status(sec);
    if (sec || fs::is_symlink(status)) {
      continue;  // links are never followed
    }
    if (fs::is_directory(status)) {
      DirEntry child;
      if (scan_dir(item.path(), join_rel(rel, item_name), item_name, profile,
                   options, child)) {
        entry.subdirs.push_back(std::move(child));
      }
    } else if (fs::is_regular_file(status) &&
               extension_matches(item.path(), profile, options)) {
      FileEntry file;
      file.name = item_name;
      file.rel_path = join_rel(rel, item_name);
      file.metrics = analyze_content(read_file(item.path()), profile);
      entry.files.push_back(std::move(file));
    }
  }

  if (entry.subdirs.empty() && entry.files.empty()) {
    return false;
  }
  sort_children(entry);
  out = std::move(entry);
  return true;
}

void count_dir(const DirEntry& dir, bool is_root, std::int64_t& files,
               std::int64_t& dirs) {
  if (!is_root) {
    ++dirs;
  }
  files += static_cast<std::int64_t>(dir.files.size());
  for (const auto& sub : dir.subdirs) {
    count_dir(sub, false, files, dirs);
  }
}

bool has_descendant_file(const DirEntry& dir) {
  if (!dir.files.empty()) {
    return true;
  }
  for (const auto& sub : dir.subdirs) {
    if (has_descendant_file(sub)) {
      return true;
    }
  }
  return false;
}

void validate_meaningful(const DirEntry& dir, bool is_root) {
  if (!is_root && !has_descendant_file(dir)) {
    throw std::invalid_argument("directory without source files in tree: " +
                                dir.rel_path);
  }
  for (const auto& sub : dir.subdirs) {
    validate_meaningful(sub, false);
  }
}

// The pruned replacement of `dir` inside its parent: either the directory
// itself (with pruned children) or, when it holds exactly one item, the
// pruned contents spliced upward. Triviality uses the original child
// counts; splicing never changes any other directory's count, so one
// bottom-up pass reaches the fixpoint.
void prune_dir(const DirEntry& dir, std::vector<DirEntry>& out_dirs,
               std::vector<FileEntry>& out_files) {
  std::vector<DirEntry> kept_dirs;
  std::vector<FileEntry> kept_files = dir.files;
  for (const auto& sub : dir.subdirs) {
    prune_dir(sub, kept_dirs, kept_files);
  }
  if (dir.subdirs.size() + dir.files.size() == 1) {
    // trivial: the single item (already pruned) moves into the parent
    std::move(kept_dirs.begin(), kept_dirs.end(),
              std::back_inserter(out_dirs));
    std::move(kept_files.begin(), kept_files.end(),
              std::back_inserter(out_files));
    return;
  }
  DirEntry kept;
  kept.name = dir.name;
  kept.rel_path = dir.rel_path;
  kept.subdirs = std::move(kept_dirs);
  kept.files = std::move(kept_files);
  sort_children(kept);
  out_dirs.push_back(std::move(kept));
}

}  // namespace

SourceTree::SourceTree(DirEntry root) : root_(std::move(root)) {
  validate_meaningful(root_, true);
}

std::vector<std::string> default_ignore_patterns() {
  return {".git", ".hg", ".svn", ".bzr", "CVS"};
}

bool matches_glob(std::string_view pattern, std::string_view name) {
  std::size_t p = 0;
  std::size_t n = 0;
  std::size_t star = std::string_view::npos;
  std::size_t restart = 0;
  while (n < name.size()) {
    if (p < pattern.size() &&
        (pattern[p] == '?' || pattern[p] == name[n])) {
      ++p;
      ++n;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      restart = n;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      n = ++restart;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') {
    ++p;
  }
  return p == pattern.size();
}

SourceTree scan_tree(const fs::path& root, const LanguageProfile& profile,
                     const ScanOptions& options) {
  std::error_code ec;
  const fs::file_status status = fs::symlink_status(root, ec);
  if (ec || !fs::exists(status)) {
    throw InputError("path does not exist: " + root.string());
  }
  if (!fs::is_directory(status)) {
    throw InputError("not a directory: " + root.string());
  }

  const std::string root_name = root.filename().string().empty()
                                    ? root.string()
                                    : root.filename().string();
  DirEntry top;
  if (!scan_dir(root, "", root_name, profile, options, top)) {
    top.name = root_name;  // no matching files: empty tree
  }
  return SourceTree(std::move(top));
}

TreeCounts count_entities(const SourceTree& tree) {
  TreeCounts counts;
  count_dir(tree.root(), true, counts.files_T, counts.dirs_D);
  const SourceTree pruned = prune_trivial(tree);
  std::int64_t pruned_files = 0;
  count_dir(pruned.root(), true, pruned_files, counts.pruned_dirs);
  return counts;
}

SourceTree prune_trivial(const SourceTree& tree) {
  const DirEntry& root = tree.root();
  DirEntry new_root;
  new_root.name = root.name;
  new_root.rel_path = root.rel_path;
  new_root.files = root.files;
  for (const auto& sub : root.subdirs) {
    prune_dir(sub, new_root.subdirs, new_root.files);
  }
  sort_children(new_root);
  return SourceTree(std::move(new_root));
}

}  // namespace hiermet
