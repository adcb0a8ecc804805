#include <doctest.h>
#include <filesystem>
#include <fstream>

#include "sdq/cli.hpp"
#include "sdq/config_io.hpp"
#include "sdq/csv.hpp"
#include "sdq/cs_pipeline.hpp"
#include "sdq/filter_design.hpp"
#include "sdq/frame_pipeline.hpp"
#include "sdq/linalg.hpp"

using namespace sdq;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("sdq_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t pos = text.find('\n', start);
    if (pos == std::string::npos) break;
    lines.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return lines;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli({"no-such-command"}) == kExitUsage);
  CHECK(run_cli({"singvals", "--m", "8", "--r", "1", "--frobnicate"}) == kExitUsage);
  CHECK(run_cli({"singvals"}) == kExitUsage);  // missing required flags
  CHECK(run_cli({}) == kExitUsage);
}

TEST_CASE("singvals emits the sandwich table") {
  TempDir tmp;
  const auto out = tmp.file("sv.csv");
  REQUIRE(run_cli({"singvals", "--m", "16", "--r", "2", "--out", out}) == kExitOk);
  const auto lines = csv_lines(read_text_file(out));
  REQUIRE(lines.size() == 17);
  CHECK(lines[0] == "j,sigma,lower,upper,pass");
  const auto sv = singular_values(inverse_difference_power(16, 2));
  for (std::size_t j = 1; j <= 16; ++j) {
    const auto fields = split_csv_row(lines[j]);
    REQUIRE(fields.size() == 5);
    CHECK(parse_u64(fields[0]) == j);
    CHECK(parse_double(fields[1]) == sv[j - 1]);
    CHECK(fields[4] == "1");
  }
}

TEST_CASE("config errors exit with code 3, filesystem errors with 4") {
  TempDir tmp;
  const auto cfg = tmp.file("bad.json");
  write_text_file(cfg, "{ not json");
  CHECK(run_cli({"frame-sweep", "--config", cfg}) == kExitConfig);

  write_text_file(cfg, "{\"k\": 4}");
  CHECK(run_cli({"frame-sweep", "--config", cfg}) == kExitConfig);  // missing keys

  FrameSweepConfig ok;
  ok.k = 2;
  ok.lambdas = {2};
  ok.trials = 1;
  ok.scheme = Scheme::greedy;
  ok.order = 1;
  ok.levels = 8;
  ok.step = 0.5;
  ok.seed = 1;
  auto j = to_json(ok);
  j["mystery"] = true;
  write_text_file(cfg, j.dump());
  CHECK(run_cli({"frame-sweep", "--config", cfg}) == kExitConfig);  // unknown key

  CHECK(run_cli({"frame-sweep", "--config", tmp.file("absent.json")}) == kExitFilesystem);

  write_text_file(cfg, to_json(ok).dump());
  CHECK(run_cli({"frame-sweep", "--config", cfg, "--out",
                 "/nonexistent_dir_sdq/x.csv"}) == kExitFilesystem);
}

TEST_CASE("frame-sweep writes deterministic, parseable CSV") {
  TempDir tmp;
  FrameSweepConfig cfg;
  cfg.k = 3;
  cfg.lambdas = {4, 8};
  cfg.trials = 4;
  cfg.scheme = Scheme::greedy;
  cfg.order = 1;
  cfg.levels = 8;
  cfg.step = 0.25;
  cfg.family = Family::bernoulli;
  cfg.normalization = Normalization::one_over_sqrt_m;
  cfg.seed = 77;
  const auto cfg_path = tmp.file("cfg.json");
  write_text_file(cfg_path, to_json(cfg).dump(2));

  const auto out1 = tmp.file("a.csv"), out2 = tmp.file("b.csv"), out3 = tmp.file("c.csv");
  REQUIRE(run_cli({"frame-sweep", "--config", cfg_path, "--out", out1}) == kExitOk);
  REQUIRE(run_cli({"frame-sweep", "--config", cfg_path, "--out", out2}) == kExitOk);
  REQUIRE(run_cli({"frame-sweep", "--config", cfg_path, "--out", out3, "--jobs", "4"}) ==
          kExitOk);
  const auto text = read_text_file(out1);
  CHECK(text == read_text_file(out2));
  CHECK(text == read_text_file(out3));

  const auto lines = csv_lines(text);
  REQUIRE(lines.size() == 1 + 2 * 4);
  CHECK(lines[0] == kFrameCsvHeader);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto rec = frame_result_from_csv_row(lines[i]);
    CHECK(rec.error_l2 >= 0.0);
  }

  const auto shifted = tmp.file("d.csv");
  REQUIRE(run_cli({"frame-sweep", "--config", cfg_path, "--out", shifted, "--seed-offset",
                   "5"}) == kExitOk);
  CHECK(read_text_file(shifted) != text);
}

TEST_CASE("cs-sweep writes parseable rows") {
  TempDir tmp;
  CsSweepConfig cfg;
  cfg.n = 48;
  cfg.k = 2;
  cfg.r = 1;
  cfg.lambdas = {6};
  cfg.trials = 5;
  cfg.step = 0.02;
  cfg.min_magnitude = 0.3;
  cfg.max_magnitude = 0.6;
  cfg.seed = 11;
  cfg.out = tmp.file("cs.csv");
  const auto cfg_path = tmp.file("cs.json");
  write_text_file(cfg_path, to_json(cfg).dump(2));
  REQUIRE(run_cli({"cs-sweep", "--config", cfg_path}) == kExitOk);  // out from config
  const auto lines = csv_lines(read_text_file(cfg.out));
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == kCsCsvHeader);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto rec = cs_result_from_csv_row(lines[i]);
    CHECK(rec.n == 48);
  }
}

TEST_CASE("stability and filter-design commands") {
  TempDir tmp;
  const auto out = tmp.file("st.csv");
  CHECK(run_cli({"stability", "--scheme", "greedy", "--r", "2", "--levels", "13", "--step",
                 "0.25", "--input-bound", "1.0", "--trials", "50", "--length", "64",
                 "--seed", "3", "--out", out}) == kExitOk);
  const auto lines = csv_lines(read_text_file(out));
  REQUIRE(lines.size() == 51);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_csv_row(lines[i]);
    REQUIRE(fields.size() == 10);
    CHECK(fields[9] == "1");
  }

  CHECK(run_cli({"stability", "--scheme", "coarse", "--r", "2", "--levels", "4", "--step",
                 "0.5", "--gamma", "4.0", "--trials", "30", "--length", "64", "--seed",
                 "4", "--out", tmp.file("st2.csv")}) == kExitOk);

  const auto fd = tmp.file("filter.json");
  CHECK(run_cli({"filter-design", "--r", "3", "--gamma", "5.0", "--out", fd}) == kExitOk);
  const auto f = filter_from_json(parse_json_text(read_text_file(fd)));
  CHECK(f.r == 3);
  CHECK(norm_l1(f.h) <= 5.0 + 1e-9);
}

TEST_CASE("verify succeeds") { CHECK(run_cli({"verify"}) == kExitOk); }

TEST_SUITE_END();
