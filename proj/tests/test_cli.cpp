#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "halcece/metrics.hpp"
#include "halcece/report_io.hpp"

// End-to-end checks against the installed command-line binary; every run
// uses the checked-in fixture hierarchy so results are stable.

namespace {

namespace fs = std::filesystem;
using halcece::ReportFormat;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "halcece-cli-test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

// `prefix` lands before the binary, so tests can pin environment variables.
Outcome run_cli(const std::string& args, const std::string& prefix = "") {
  static int serial = 0;
  const fs::path out = scratch_dir() / ("stdout." + std::to_string(serial));
  const fs::path err = scratch_dir() / ("stderr." + std::to_string(serial));
  ++serial;
  const std::string command = prefix + HALCECE_CLI_BIN " " + args + " >" +
                              out.string() + " 2>" + err.string();
  const int status = std::system(command.c_str());
  Outcome result;
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_file(out);
  result.err = read_file(err);
  return result;
}

constexpr const char* kFixtureArgs =
    "--wordnet fixtures/wndb --dataset fixtures/datasets/small.jsonl";

}  // namespace

TEST_CASE("evaluate writes reports plus aggregate and reruns are identical") {
  const fs::path out = scratch_dir() / "small.csv";
  const std::string args =
      std::string(kFixtureArgs) + " --out " + out.string();

  const Outcome first = run_cli(args);
  CHECK(first.code == 0);
  CHECK(first.err.empty());
  CHECK(first.out.find("wrote 3 instance reports to") != std::string::npos);
  CHECK(first.out.find("instances: 3") != std::string::npos);
  const std::string report = read_file(out);
  const std::string agg = read_file(out.string() + ".aggregate");
  CHECK_FALSE(fs::exists(out.string() + ".tmp"));

  const Outcome second = run_cli(args);
  CHECK(second.code == 0);
  CHECK(second.out == first.out);
  CHECK(read_file(out) == report);
  CHECK(read_file(out.string() + ".aggregate") == agg);

  // Re-reading the per-instance file and aggregating again must land on the
  // exact bytes of the aggregate file.
  const auto reports = halcece::parse_instance_reports(report, ReportFormat::Csv);
  REQUIRE(reports.size() == 3);
  CHECK(halcece::render_aggregate_row(halcece::aggregate(reports),
                                      ReportFormat::Csv) == agg);
}

TEST_CASE("json-lines output round-trips the same way") {
  const fs::path out = scratch_dir() / "small.jsonl";
  const Outcome run = run_cli(std::string(kFixtureArgs) +
                              " --format json-lines --out " + out.string());
  REQUIRE(run.code == 0);
  const std::string report = read_file(out);
  const auto reports =
      halcece::parse_instance_reports(report, ReportFormat::JsonLines);
  REQUIRE(reports.size() == 3);
  CHECK(halcece::render_instance_reports(reports, ReportFormat::JsonLines) ==
        report);
  CHECK(halcece::render_aggregate_row(halcece::aggregate(reports),
                                      ReportFormat::JsonLines) ==
        read_file(out.string() + ".aggregate"));

  const auto agg = nlohmann::json::parse(read_file(out.string() + ".aggregate"));
  CHECK(agg.at("instances").get<int>() == 3);
}

TEST_CASE("objects mode leaves role columns out of the table") {
  const fs::path out = scratch_dir() / "objects-only.csv";
  const Outcome run = run_cli(std::string(kFixtureArgs) +
                              " --mode objects --out " + out.string());
  REQUIRE(run.code == 0);
  const std::string report = read_file(out);
  const std::string header = report.substr(0, report.find('\n'));
  CHECK(header.find("role") == std::string::npos);
  CHECK(header.find("rouge1") != std::string::npos);
}

TEST_CASE("strict mode refuses malformed records without writing anything") {
  const fs::path out = scratch_dir() / "strict.csv";
  const Outcome strict = run_cli(
      "--wordnet fixtures/wndb --dataset fixtures/datasets/malformed.jsonl "
      "--strict --out " +
      out.string());
  CHECK(strict.code == 2);
  CHECK(strict.err.find("error:") != std::string::npos);
  CHECK_FALSE(fs::exists(out));
  CHECK_FALSE(fs::exists(out.string() + ".aggregate"));

  const Outcome lenient = run_cli(
      "--wordnet fixtures/wndb --dataset fixtures/datasets/malformed.jsonl "
      "--out " +
      out.string());
  CHECK(lenient.code == 0);
  CHECK(lenient.err.find("warning:") != std::string::npos);
  CHECK(lenient.out.find("wrote 1 instance reports") != std::string::npos);
  CHECK(fs::exists(out));
}

TEST_CASE("taxonomy queries print the relation between two lemmas") {
  const Outcome ok = run_cli("--wordnet fixtures/wndb --taxonomy girl,woman");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("wu-palmer: 0.8888888888888888") != std::string::npos);
  CHECK(ok.out.find("over-specification, O") != std::string::npos);

  const Outcome down = run_cli("--wordnet fixtures/wndb --taxonomy food,pizza");
  CHECK(down.code == 0);
  CHECK(down.out.find("under-specification, U") != std::string::npos);

  const Outcome missing =
      run_cli("--wordnet fixtures/wndb --taxonomy flibbertigibbet,dog");
  CHECK(missing.code == 1);
  CHECK(missing.err.find("unmapped lemma") != std::string::npos);
}

TEST_CASE("configuration mistakes exit with code 2") {
  const fs::path out = scratch_dir() / "unused.csv";
  CHECK(run_cli(std::string(kFixtureArgs) + " --explain no-such-id").code == 2);
  CHECK(run_cli(std::string(kFixtureArgs) + " --mode sideways --out " +
                out.string())
            .code == 2);
  CHECK(run_cli(std::string(kFixtureArgs) + " --format yaml --out " +
                out.string())
            .code == 2);
  CHECK(run_cli("--wordnet fixtures/wndb --out " + out.string()).code == 2);
  CHECK(run_cli(std::string(kFixtureArgs)).code == 2);  // no --out
  CHECK(run_cli("--no-such-flag").code == 2);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("the wordnet directory falls back to the environment") {
  const Outcome from_env = run_cli("--taxonomy dog,cat",
                                   "HALCECE_WORDNET_DIR=fixtures/wndb ");
  CHECK(from_env.code == 0);
  CHECK(from_env.out.find("wu-palmer:") != std::string::npos);

  const Outcome nowhere =
      run_cli("--taxonomy dog,cat", "HALCECE_WORDNET_DIR= ");
  CHECK(nowhere.code == 2);
  CHECK(nowhere.err.find("no WordNet directory") != std::string::npos);
}
