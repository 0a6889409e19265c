#include "hiermet/cli.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "hiermet/config.hpp"
#include "hiermet/errors.hpp"
#include "support/temp_dir.hpp"

using namespace hiermet;
using hiermet::test::TempDir;
using nlohmann::json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("hiermet");
  for (const auto& arg : args) {
    argv.push_back(arg.c_str());
  }
  std::ostringstream out;
  std::ostringstream err;
  const int code =
      run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const char* kSmallC = "int f(void) {\n  return 1;\n}\n";

// 3 items per directory, 2 levels: 9 files, 3 directories
void write_exponential_fixture(const TempDir& tmp) {
  for (int d = 0; d < 3; ++d) {
    for (int f = 0; f < 3; ++f) {
      tmp.write_file("d" + std::to_string(d) + "/f" + std::to_string(f) +
                         ".c",
                     kSmallC);
    }
  }
}

// Runs the installed binary (integration smoke); returns exit code.
int run_binary(const std::string& args, std::string* stdout_text = nullptr) {
  const char* bin = std::getenv("HIERMET_BIN");
  if (!bin) {
    return -1;
  }
  const std::string command = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string captured;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    captured.append(buffer, n);
  }
  const int status = pclose(pipe);
  if (stdout_text) {
    *stdout_text = captured;
  }
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == exit_code::kUsage);
  CHECK(run({"analyze"}).code == exit_code::kUsage);  // missing path/--lang
  CHECK(run({"frobnicate"}).code == exit_code::kUsage);
  CHECK(run({"analyze", ".", "--lang", "c", "--format", "xml"}).code ==
        exit_code::kUsage);
  CHECK(run({"analyze", ".", "--lang", "c", "--denominator", "eq3"}).code ==
        exit_code::kUsage);
  CHECK(run({"analyze", ".", "--lang", "c", "--classifier", "guess"}).code ==
        exit_code::kUsage);
  CHECK(run({"analyze", ".", "--lang", "c", "--bogus"}).code ==
        exit_code::kUsage);
  CHECK(run({"theory", "--branching", "0", "--max-depth", "5"}).code ==
        exit_code::kUsage);
  CHECK(run({"theory", "--branching", "7", "--max-depth", "55"}).code ==
        exit_code::kUsage);
}

TEST_CASE("input errors exit with 3") {
  const CliResult result =
      run({"analyze", "/nonexistent/path/here", "--lang", "c"});
  CHECK(result.code == exit_code::kInput);
  CHECK(result.err.find("error:") != std::string::npos);
  CHECK(result.out.empty());
}

TEST_CASE("unknown language is a usage problem") {
  TempDir tmp;
  CHECK(run({"analyze", tmp.path().string(), "--lang", "fortran"}).code ==
        exit_code::kUsage);
}

TEST_CASE("empty tree analyzes to an all-undefined report with a warning") {
  TempDir tmp;
  const CliResult result =
      run({"analyze", tmp.path().string(), "--lang", "c", "--format", "json"});
  CHECK(result.code == exit_code::kOk);
  CHECK(result.err.find("warning") != std::string::npos);
  const json j = json::parse(result.out);
  CHECK(j["files"] == 0);
  CHECK(j["items_per_dir_raw"].is_null());
}

TEST_CASE("analyze an ideal fixture tree") {
  TempDir tmp;
  write_exponential_fixture(tmp);
  const CliResult result =
      run({"analyze", tmp.path().string(), "--lang", "c", "--denominator",
           "eq2", "--format", "json"});
  REQUIRE(result.code == exit_code::kOk);
  const json j = json::parse(result.out);
  CHECK(j["files"] == 9);
  CHECK(j["dirs_raw"] == 3);
  CHECK(j["items_per_dir_raw"] == 3.0);
  CHECK(j["exp_depth_raw"] == 2.0);
  CHECK(j["denominator_mode"] == "eq2");
  CHECK(j["functions"] == 9);
  CHECK(j["depth_histogram"]["2"] == 9);
}

TEST_CASE("prune flag changes only pruned-derived fields") {
  TempDir tmp;
  tmp.write_file("src/a/f1.c", kSmallC);
  tmp.write_file("src/a/f2.c", kSmallC);
  tmp.write_file("src/b/f3.c", kSmallC);

  const auto with = json::parse(
      run({"analyze", tmp.path().string(), "--lang", "c", "--format", "json",
           "--prune"})
          .out);
  const auto without = json::parse(
      run({"analyze", tmp.path().string(), "--lang", "c", "--format", "json",
           "--no-prune"})
          .out);

  for (const auto* key :
       {"kloc", "functions", "files", "dirs_raw", "loc_per_function",
        "functions_per_file", "items_per_dir_raw", "avg_dir_depth",
        "exp_depth_raw"}) {
    CAPTURE(key);
    CHECK(with[key] == without[key]);
  }
  CHECK(without["dirs_pruned"].is_null());
  CHECK(without["items_per_dir_pruned"].is_null());
  CHECK_FALSE(with["dirs_pruned"].is_null());
  CHECK(with["dirs_pruned"] == 2);  // b holds one file and is trivial
}

TEST_CASE("json output is byte-identical across runs") {
  TempDir tmp;
  write_exponential_fixture(tmp);
  const std::vector<std::string> args = {"analyze", tmp.path().string(),
                                         "--lang", "c", "--format", "json"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("csv output from the cli") {
  TempDir tmp;
  write_exponential_fixture(tmp);
  const CliResult result = run(
      {"analyze", tmp.path().string(), "--lang", "c", "--format", "csv"});
  CHECK(result.code == exit_code::kOk);
  CHECK(std::count(result.out.begin(), result.out.end(), '\n') == 2);
}

TEST_CASE("theory subcommand") {
  const CliResult result =
      run({"theory", "--branching", "7", "--max-depth", "6"});
  CHECK(result.code == exit_code::kOk);
  CHECK(result.out.find("823543") != std::string::npos);
  CHECK(result.out.find("824 kLOC") != std::string::npos);

  // in-range arguments whose powers overflow are reported, not wrapped
  const CliResult overflow =
      run({"theory", "--branching", "99", "--max-depth", "12"});
  CHECK(overflow.code == exit_code::kInput);
}

TEST_CASE("batch manifest drives multi-package analysis") {
  TempDir tmp;
  tmp.write_file("pkg_a/src/a.c", kSmallC);
  tmp.write_file("pkg_b/one.c", kSmallC);
  tmp.write_file("pkg_c/x/y.c", kSmallC);

  SUBCASE("rows come back in manifest order") {
    tmp.write_file("list.tsv",
                   "zeta\tpkg_c\tc\nalpha\tpkg_a\tc\nmid\tpkg_b\tc\n");
    const CliResult result = run({"batch", (tmp.path() / "list.tsv").string(),
                                  "--format", "json"});
    CHECK(result.code == exit_code::kOk);
    const json j = json::parse(result.out);
    REQUIRE(j.size() == 3);
    CHECK(j[0]["package"] == "zeta");
    CHECK(j[1]["package"] == "alpha");
    CHECK(j[2]["package"] == "mid");
  }

  SUBCASE("a missing entry fails its row only") {
    tmp.write_file("list.tsv", "good\tpkg_a\tc\nbad\tmissing_dir\tc\n");
    const CliResult result = run({"batch", (tmp.path() / "list.tsv").string(),
                                  "--format", "json"});
    CHECK(result.code == exit_code::kPartialFailure);
    const json j = json::parse(result.out);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["status"] == "ok");
    CHECK(j[1]["status"] == "failed");
    CHECK(j[1].contains("error"));
  }

  SUBCASE("malformed lines are isolated failures") {
    tmp.write_file("list.tsv", "good\tpkg_a\tc\nnot a manifest line\n");
    const CliResult result = run({"batch", (tmp.path() / "list.tsv").string(),
                                  "--format", "json"});
    CHECK(result.code == exit_code::kPartialFailure);
  }

  SUBCASE("unreadable manifest is a usage error") {
    CHECK(run({"batch", (tmp.path() / "nope.tsv").string()}).code ==
          exit_code::kUsage);
  }

  SUBCASE("comment and blank lines are skipped") {
    tmp.write_file("list.tsv", "# comment\n\ngood\tpkg_a\tc\n");
    const CliResult result = run({"batch", (tmp.path() / "list.tsv").string(),
                                  "--format", "csv"});
    CHECK(result.code == exit_code::kOk);
    CHECK(std::count(result.out.begin(), result.out.end(), '\n') == 2);
  }
}

TEST_CASE("config file overrides profiles and ignore patterns") {
  TempDir tmp;
  tmp.write_file("pkg/main.xyz", "int f() {\n}\nint g() {\n}\n");
  tmp.write_file("pkg/skipme/other.xyz", "int h() {\n}\n");
  tmp.write_file(
      "conf.json",
      R"({
        "ignore": ["skipme"],
        "profiles": {
          "xyz": {
            "extensions": [".xyz"],
            "line_comments": ["//"],
            "block_comments": ["/*", "*/"],
            "function_pattern": "(\\w+)\\s*\\(([\\w\\s,]*)\\)\\s*\\{"
          }
        }
      })");

  SUBCASE("via --config") {
    const CliResult result =
        run({"analyze", (tmp.path() / "pkg").string(), "--lang", "xyz",
             "--config", (tmp.path() / "conf.json").string(), "--format",
             "json"});
    REQUIRE(result.code == exit_code::kOk);
    const json j = json::parse(result.out);
    CHECK(j["files"] == 1);  // skipme excluded by the config ignore list
    CHECK(j["functions"] == 2);
    CHECK(j["language"] == "xyz");
  }

  SUBCASE("via environment variable") {
    setenv("HIERMET_CONFIG", (tmp.path() / "conf.json").string().c_str(), 1);
    const CliResult result = run({"analyze", (tmp.path() / "pkg").string(),
                                  "--lang", "xyz", "--format", "json"});
    unsetenv("HIERMET_CONFIG");
    REQUIRE(result.code == exit_code::kOk);
    CHECK(json::parse(result.out)["files"] == 1);
  }

  SUBCASE("--ignore flags beat the config list") {
    const CliResult result =
        run({"analyze", (tmp.path() / "pkg").string(), "--lang", "xyz",
             "--config", (tmp.path() / "conf.json").string(), "--format",
             "json", "--ignore", "nothing-matches-this"});
    REQUIRE(result.code == exit_code::kOk);
    CHECK(json::parse(result.out)["files"] == 2);  // skipme is back
  }

  SUBCASE("broken config is a usage error") {
    tmp.write_file("broken.json", "{ not json");
    CHECK(run({"analyze", (tmp.path() / "pkg").string(), "--lang", "c",
               "--config", (tmp.path() / "broken.json").string()})
              .code == exit_code::kUsage);
  }
}

TEST_CASE("config merging keeps unmentioned profile fields") {
  TempDir tmp;
  tmp.write_file(
      "c.json",
      R"({"profiles": {"c": {"block_comments": null,
                             "line_comments": ["//", "#"]}}})");
  const ToolConfig cfg = load_config(tmp.path() / "c.json");
  const auto profiles = effective_profiles(cfg);
  const auto& c = resolve_profile(profiles, "c");
  CHECK_FALSE(c.block_comment());
  CHECK(c.line_comment_markers().size() == 2);
  CHECK(c.extensions() == std::vector<std::string>{".c"});
  CHECK_THROWS_AS(resolve_profile(profiles, "nope"), ConfigError);

  tmp.write_file("bad.json",
                 R"({"profiles": {"newlang": {"line_comments": ["//"]}}})");
  CHECK_THROWS_AS(effective_profiles(load_config(tmp.path() / "bad.json")),
                  ConfigError);

  tmp.write_file("weird.json", R"({"wat": 1})");
  CHECK_THROWS_AS(load_config(tmp.path() / "weird.json"), ConfigError);
}

TEST_CASE("paper-grep classifier flag changes loc counting") {
  TempDir tmp;
  // block-opener lines survive the grep chain but not the accurate
  // scanner; enough of them moves kloc
  std::string content;
  for (int i = 0; i < 600; ++i) {
    content += "/* opener line\n";
  }
  tmp.write_file("a.c", content);
  const auto accurate = json::parse(
      run({"analyze", tmp.path().string(), "--lang", "c", "--format", "json",
           "--classifier", "accurate"})
          .out);
  const auto chain = json::parse(
      run({"analyze", tmp.path().string(), "--lang", "c", "--format", "json",
           "--classifier", "paper-grep"})
          .out);
  CHECK(accurate["files"] == chain["files"]);
  CHECK(accurate["kloc"] == 0);  // all lines are one unterminated comment
  CHECK(chain["kloc"] == 1);     // every line survives the chain
}

TEST_CASE("installed binary smoke") {
  std::string out;
  const int help_code = run_binary("--help", &out);
  if (help_code == -1) {
    WARN("HIERMET_BIN not set; skipping binary smoke test");
    return;
  }
  CHECK(help_code == 0);
  CHECK(out.find("analyze") != std::string::npos);

  TempDir tmp;
  write_exponential_fixture(tmp);
  std::string json_text;
  CHECK(run_binary("analyze " + tmp.path().string() +
                       " --lang c --format json",
                   &json_text) == 0);
  CHECK(json::parse(json_text)["files"] == 9);

  CHECK(run_binary("analyze /does/not/exist --lang c") == exit_code::kInput);
  CHECK(run_binary("analyze --nope") == exit_code::kUsage);
}
