#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("nurs_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

int run_cli(const std::string& args, const std::string& stdout_file = "") {
  std::string cmd = std::string(NURS_CLI_PATH) + " " + args;
  if (stdout_file.empty()) {
    cmd += " >/dev/null 2>/dev/null";
  } else {
    cmd += " >" + stdout_file + " 2>/dev/null";
  }
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("sample row count and determinism") {
  const std::string out1 = (work_dir() / "a.csv").string();
  const std::string out2 = (work_dir() / "b.csv").string();
  const std::string base =
      "sample --n 30 --distance hamming --beta 1.0 --direction local:7 --eps 0.01 "
      "--max-doublings 7 --iters 500 --burnin 100 --seed 42 --out ";
  CHECK(run_cli(base + out1) == 0);
  CHECK(run_cli(base + out2) == 0);
  const std::string text1 = slurp(out1);
  CHECK(text1 == slurp(out2));  // byte-identical for identical config+seed
  CHECK(data_lines(text1).size() == 401);  // header + 400 retained rows

  const std::string out3 = (work_dir() / "c.csv").string();
  CHECK(run_cli("sample --n 30 --distance hamming --beta 1.0 --direction local:7 --eps 0.01 "
                "--max-doublings 7 --iters 500 --burnin 100 --seed 43 --out " +
                out3) == 0);
  CHECK(slurp(out3) != text1);
}

TEST_CASE("sample at beta zero fills every 128-length window") {
  const std::string out = (work_dir() / "b0.csv").string();
  CHECK(run_cli("sample --n 40 --distance kendall --beta 0 --direction uniform --iters 300 "
                "--burnin 0 --seed 7 --out " +
                out) == 0);
  const auto lines = data_lines(slurp(out));
  REQUIRE(lines.size() == 301);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i]);
    std::string cell;
    std::getline(row, cell, ',');  // iter
    std::getline(row, cell, ',');  // signed_index
    std::getline(row, cell, ',');  // orbit_len
    CHECK(cell == "128");
  }
}

TEST_CASE("sample with chains writes suffixed files") {
  const std::string out = (work_dir() / "multi.csv").string();
  CHECK(run_cli("sample --n 10 --distance cayley --beta 0.2 --direction uniform --iters 50 "
                "--burnin 10 --seed 5 --chains 2 --out " +
                out) == 0);
  CHECK(fs::exists(out + ".0"));
  CHECK(fs::exists(out + ".1"));
  CHECK(slurp(out + ".0") != slurp(out + ".1"));
}

TEST_CASE("verify exit codes") {
  const std::string json_out = (work_dir() / "verify.json").string();
  CHECK(run_cli("verify --n 4 --distance cayley --beta 0.7 --direction uniform --eps 0.25 "
                "--max-doublings 2",
                json_out) == 0);
  const json report = json::parse(slurp(json_out));
  CHECK(report["pass"] == true);
  CHECK(report["detailed_balance_residual"].get<double>() <= 1e-12);
  CHECK(report["stationarity_residual"].get<double>() <= 1e-12);

  CHECK(run_cli("verify --n 4 --distance cayley --beta 0.7 --direction uniform --eps 0.25 "
                "--max-doublings 2 --perturb") == 1);
  CHECK(run_cli("verify --n 6 --distance cayley --beta 0.7 --direction transposition --eps 0.25 "
                "--max-doublings 2") == 2);
  CHECK(run_cli("verify --n 4 --distance nowhere --beta 0.7 --direction uniform") == 2);
  CHECK(run_cli("verify --distance cayley") == 2);  // missing required --n
}

TEST_CASE("mix emits a curve dominated by its envelope") {
  const std::string out = (work_dir() / "mix.csv").string();
  CHECK(run_cli("mix --n 5 --distance cayley --beta 0.01 --t-max 100 --out " + out) == 0);
  const auto lines = data_lines(slurp(out));
  REQUIRE(lines.size() == 101);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i]);
    std::string t, tv, env;
    std::getline(row, t, ',');
    std::getline(row, tv, ',');
    std::getline(row, env, ',');
    CHECK(std::stod(tv) <= std::stod(env));
  }
  CHECK(run_cli("mix --n 6 --distance cayley --beta 0.01 --out " + out) == 2);
}

TEST_CASE("couple emits parseable reports with both jump constants") {
  const std::string out = (work_dir() / "couple.jsonl").string();
  CHECK(run_cli("couple --n 4 --distance cayley --beta 0.05 --samples 2000 --seed 9 --out " +
                out) == 0);
  const auto lines = data_lines(slurp(out));
  REQUIRE(lines.size() == 6);  // one report per edge of S_4
  for (const std::string& line : lines) {
    const json rep = json::parse(line);
    CHECK(rep.contains("empirical_mean_dist"));
    CHECK(rep.contains("std_error"));
    CHECK(rep.contains("l_e_table"));
    CHECK(rep.contains("l_e_brute"));
    CHECK(rep["samples"] == 2000);
    CHECK(rep["delta_bound"].get<double>() > 0);
  }
  CHECK(run_cli("couple --n 9 --distance cayley --beta 0.05 --samples 10") == 2);
}

TEST_CASE("stats reports") {
  const std::string trace = (work_dir() / "trace.csv").string();
  REQUIRE(run_cli("sample --n 30 --distance cayley --beta 0.5 --direction local:7 --iters 2000 "
                  "--burnin 500 --seed 11 --out " +
                  trace) == 0);
  {
    const std::string out = (work_dir() / "fp.csv").string();
    CHECK(run_cli("stats --in " + trace + " --report fixed_points --ref poisson:1.6487 --out " +
                  out) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("k,count,empirical_p,reference_p") != std::string::npos);
    CHECK(text.find("empirical_tv=") != std::string::npos);
  }
  {
    const std::string out = (work_dir() / "idx.csv").string();
    CHECK(run_cli("stats --in " + trace + " --report index --ref triangular:7:derived --out " +
                  out) == 0);
    CHECK(slurp(out).find("reference_p") != std::string::npos);
  }
  {
    const std::string out = (work_dir() / "acf.csv").string();
    CHECK(run_cli("stats --in " + trace + " --report acf --column lis --max-lag 50 --out " + out) ==
          0);
    const std::string text = slurp(out);
    CHECK(text.find("ess=") != std::string::npos);
    CHECK(data_lines(text).size() == 52);  // header + lags 0..50
  }
  const std::string out = (work_dir() / "x.csv").string();
  CHECK(run_cli("stats --in " + trace + " --report bogus --out " + out) == 2);
  CHECK(run_cli("stats --in " + trace + " --report index --ref triangular:7:odd --out " + out) == 2);
  CHECK(run_cli("stats --in /nonexistent/trace.csv --report index --out " + out) == 3);
  const std::string empty = (work_dir() / "empty.csv").string();
  std::ofstream(empty).close();
  CHECK(run_cli("stats --in " + empty + " --report index --out " + out) == 3);
}
