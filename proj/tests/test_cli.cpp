#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "noisetol/dataset.hpp"

#ifndef NOISETOL_CLI_PATH
#error "NOISETOL_CLI_PATH must be defined by the build"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(NOISETOL_CLI_PATH) + " " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.stdout_text.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         ("noisetol_cli_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("verify --scope bogus").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("").exit_code == 2);
  CHECK(run("iris --trials 0").exit_code == 2);
  CHECK(run("iris --format yaml").exit_code == 2);
  CHECK(run("iris --algorithms bogus").exit_code == 2);
  CHECK(run("iris --noise uniform:0.6").exit_code == 2);  // bad rate
  CHECK(run("analyze --positive x").exit_code == 2);  // missing required
}

TEST_CASE("help exits cleanly") {
  const RunResult r = run("--help");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("verify") != std::string::npos);
  CHECK(r.stdout_text.find("iris") != std::string::npos);
  CHECK(r.stdout_text.find("analyze") != std::string::npos);
}

TEST_CASE("verify: examples scope passes and is byte-deterministic") {
  const RunResult a = run("verify --scope examples");
  CHECK(a.exit_code == 0);
  CHECK(a.stdout_text.find("[PASS] example1/") != std::string::npos);
  CHECK(a.stdout_text.find("example5/") != std::string::npos);
  CHECK(a.stdout_text.find("[FAIL]") == std::string::npos);

  const RunResult b = run("verify --scope examples");
  CHECK(a.stdout_text == b.stdout_text);
}

TEST_CASE("verify: full scope with a fixed seed is byte-deterministic") {
  const std::string args = "verify --scope all --seed 7 --instances 5";
  const RunResult a = run(args);
  const RunResult b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.stdout_text == b.stdout_text);
  CHECK(a.stdout_text.find("zero-one/uniform-affine-identity") != std::string::npos);
}

TEST_CASE("iris: csv format, determinism and --out") {
  const std::string base =
      "iris --trials 2 --seed 11 --noise none --noise uniform:0.2 "
      "--algorithms least-squares,fld --format csv";
  const RunResult a = run(base);
  CHECK(a.exit_code == 0);
  CHECK(a.stdout_text.rfind("noise,algorithm,mean,std,trials\n", 0) == 0);
  CHECK(a.stdout_text.find("uniform:0.2,fld,") != std::string::npos);

  const RunResult b = run(base);
  CHECK(a.stdout_text == b.stdout_text);

  const auto out = temp_path("iris.csv");
  const RunResult c = run(base + " --out " + out.string());
  CHECK(c.exit_code == 0);
  std::ifstream in(out, std::ios::binary);
  std::string file_text((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
  CHECK(file_text == a.stdout_text);
  std::filesystem::remove(out);

  CHECK(run(base + " --out /nonexistent-dir/x/y.csv").exit_code == 1);
}

TEST_CASE("iris: table format carries the run parameters") {
  const RunResult r = run(
      "iris --trials 1 --seed 4 --noise none --algorithms least-squares");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("trials: 1  seed: 4") != std::string::npos);
  CHECK(r.stdout_text.find("0.9267") != std::string::npos);
}

TEST_CASE("analyze reproduces the iris pipeline on the bundled bytes") {
  const auto csv = temp_path("iris_copy.csv");
  {
    std::ofstream out(csv, std::ios::binary);
    out << noisetol::iris_csv_text();
  }
  const std::string common =
      " --trials 2 --seed 11 --noise none --noise uniform:0.2 "
      "--algorithms least-squares,fld --format csv";
  const RunResult iris = run("iris" + common);
  const RunResult analyze = run(
      "analyze --data " + csv.string() +
      " --label-column species --positive Iris-virginica "
      "--negative Iris-setosa --negative Iris-versicolor" +
      common);
  CHECK(analyze.exit_code == 0);
  CHECK(analyze.stdout_text == iris.stdout_text);
  std::filesystem::remove(csv);
}

TEST_CASE("analyze rejects a non-binary label column without --negative") {
  const auto csv = temp_path("iris_copy2.csv");
  {
    std::ofstream out(csv, std::ios::binary);
    out << noisetol::iris_csv_text();
  }
  const RunResult r = run("analyze --data " + csv.string() +
                              " --label-column species --positive Iris-setosa",
                          true);
  CHECK(r.exit_code == 1);
  CHECK(r.stdout_text.find("Iris-versicolor") != std::string::npos);
  CHECK(r.stdout_text.find("Iris-virginica") != std::string::npos);
  std::filesystem::remove(csv);
}

TEST_CASE("analyze with a two-label column infers the negative class") {
  const auto csv = temp_path("two_label.csv");
  {
    std::ofstream out(csv, std::ios::binary);
    out << "f1,f2,kind\n";
    out << "1.0,1.0,up\n2.0,1.5,up\n-1.0,-1.0,down\n-2.0,-0.5,down\n";
  }
  const RunResult r = run("analyze --data " + csv.string() +
                          " --label-column kind --positive up --trials 1 "
                          "--seed 1 --noise none --noise cccn:0.1,0.3 "
                          "--algorithms least-squares --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("none,least-squares,1.000000") !=
        std::string::npos);
  // the noise spec text becomes the report row label
  CHECK(r.stdout_text.find("cccn:0.1,0.3,least-squares,") !=
        std::string::npos);
  std::filesystem::remove(csv);
}

TEST_CASE("config file values are overridden by flags") {
  const auto cfg = temp_path("cli.cfg");
  {
    std::ofstream out(cfg);
    out << "[iris]\ntrials = 1\nseed = 11\nformat = csv\n";
    out << "noise = none\nalgorithms = least-squares\n";
  }
  const RunResult from_file =
      run("iris --config " + cfg.string());
  CHECK(from_file.exit_code == 0);
  CHECK(from_file.stdout_text.find("none,least-squares,") !=
        std::string::npos);

  // the flag wins over the file value
  const RunResult overridden =
      run("iris --config " + cfg.string() + " --format table");
  CHECK(overridden.exit_code == 0);
  CHECK(overridden.stdout_text.find("trials: 1  seed: 11") !=
        std::string::npos);
  std::filesystem::remove(cfg);
}

TEST_CASE("trial records dump") {
  const auto out = temp_path("trials.csv");
  const RunResult r = run(
      "iris --trials 2 --seed 11 --noise none --algorithms least-squares "
      "--format csv --dump-trials " +
      out.string());
  CHECK(r.exit_code == 0);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "noise,algorithm,trial,seed,accuracy");
  std::string line;
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 2);
  std::filesystem::remove(out);
}
