#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "noisetol/dataset.hpp"
#include "noisetol/experiments.hpp"
#include "noisetol/noise.hpp"

namespace {

using namespace noisetol;

// Exit codes: 0 success / all checks pass, 1 runtime or check failure,
// 2 usage error.
constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

// Prints to stdout and, when requested, into the output file.
int emit(const std::string& text, const std::string& out_path) {
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open output path '" << out_path << "'\n";
      return kFailure;
    }
    out << text;
    if (!out) {
      std::cerr << "error: failed writing '" << out_path << "'\n";
      return kFailure;
    }
  }
  return kOk;
}

struct ExperimentFlags {
  std::size_t trials = 10;
  std::uint64_t seed = 42;
  std::vector<std::string> noise_texts;
  std::vector<std::string> algorithm_names;
  std::string out_path;
  std::string format = "table";
  std::string trials_out;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& flags) {
  cmd->add_option("--trials", flags.trials, "noisy training sets per row")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", flags.seed, "master seed; all randomness derives from it")
      ->capture_default_str();
  cmd->add_option("--noise", flags.noise_texts,
                  "noise row (repeatable): none | uniform:R | cccn:RP,RN | "
                  "quadrant:R1,R2,R3,R4[,auto|,CX,CY] | perpoint:PATH");
  cmd->add_option("--algorithms", flags.algorithm_names,
                  "subset of zero-one,hinge,least-squares,log,fld")
      ->delimiter(',');
  cmd->add_option("--out", flags.out_path, "also write the report here");
  cmd->add_option("--format", flags.format, "report format")
      ->check(CLI::IsMember({"table", "csv"}))
      ->capture_default_str();
  cmd->add_option("--dump-trials", flags.trials_out,
                  "write per-trial records as CSV here");
}

int run_report(const ExperimentFlags& flags, const Dataset& data,
               const std::string& name, const std::string& positive) {
  std::vector<NoiseSpec> noise_list;
  if (flags.noise_texts.empty()) {
    noise_list = default_noise_rows();
  } else {
    for (const auto& t : flags.noise_texts) {
      try {
        noise_list.push_back(parse_noise_spec(t));
      } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError("--noise", e.what());
      }
    }
  }
  std::vector<Algorithm> algorithms;
  if (flags.algorithm_names.empty()) {
    algorithms = all_algorithms();
  } else {
    for (const auto& n : flags.algorithm_names) {
      const auto a = parse_algorithm(n);
      if (!a) throw CLI::ValidationError("--algorithms", "unknown algorithm '" + n + "'");
      algorithms.push_back(*a);
    }
  }

  const ExperimentReport rep =
      run_experiment(data, name, positive, flags.trials, flags.seed,
                     noise_list, algorithms, SolverConfig{});
  if (!flags.trials_out.empty()) {
    std::ofstream out(flags.trials_out, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open output path '" << flags.trials_out
                << "'\n";
      return kFailure;
    }
    out << rep.trials_to_csv();
  }
  return emit(flags.format == "csv" ? rep.to_csv() : rep.to_table(),
              flags.out_path);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

// Scans the label column and returns every value other than the positive
// one, requiring the column to be binary.
std::set<std::string> infer_negative_labels(const std::string& path,
                                            const std::string& label_column,
                                            const std::string& positive) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CsvError(path + ": cannot open file");
  std::string line;
  if (!std::getline(in, line)) throw CsvError(path + ": empty file");
  const std::vector<std::string> cols = split_row(line);
  std::size_t label_idx = cols.size();
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (cols[j] == label_column) label_idx = j;
  if (label_idx == cols.size())
    throw CsvError(path + ": label column '" + label_column +
                   "' not found in header");
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_row(line);
    if (label_idx < fields.size()) seen.insert(fields[label_idx]);
  }
  seen.erase(positive);
  if (seen.size() != 1) {
    std::string msg = path + ": label column is not binary under --positive '" +
                      positive + "'; other values:";
    for (const auto& s : seen) msg += " '" + s + "'";
    msg += "; list the negative class explicitly with --negative";
    throw CsvError(msg);
  }
  return seen;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "noisetol: linear-classifier risk minimization under label noise"};
  app.require_subcommand(1);
  app.set_config("--config")->description(
      "plain key = value file; command-line flags take precedence");

  // verify ------------------------------------------------------------
  std::string scope = "all";
  std::uint64_t verify_seed = 42;
  std::string verify_out;
  std::size_t verify_instances = 20;
  auto* verify = app.add_subcommand(
      "verify", "run the golden-example and identity check suites");
  verify->fallthrough();
  verify->add_option("--scope", scope, "examples, theorems or all")
      ->check(CLI::IsMember({"examples", "theorems", "all"}))
      ->capture_default_str();
  verify->add_option("--seed", verify_seed, "seed for the randomized suites")
      ->capture_default_str();
  verify->add_option("--instances", verify_instances,
                     "random instances per identity check")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--out", verify_out, "also write the report here");

  // iris ----------------------------------------------------------------
  ExperimentFlags iris_flags;
  auto* iris = app.add_subcommand(
      "iris", "noise-injection benchmark on the bundled Iris data");
  iris->fallthrough();
  add_experiment_flags(iris, iris_flags);

  // analyze -------------------------------------------------------------
  ExperimentFlags analyze_flags;
  std::string data_path, label_column, positive_label;
  std::vector<std::string> negative_labels;
  auto* analyze = app.add_subcommand(
      "analyze", "same noise-injection pipeline on a user CSV dataset");
  analyze->fallthrough();
  analyze->add_option("--data", data_path, "CSV file with a header row")
      ->required();
  analyze->add_option("--label-column", label_column, "name of the label column")
      ->required();
  analyze->add_option("--positive", positive_label,
                      "raw label mapped to the +1 class")
      ->required();
  analyze->add_option("--negative", negative_labels,
                      "raw label(s) mapped to the -1 class (repeatable); "
                      "default: every other observed value, which must be "
                      "a single one");
  add_experiment_flags(analyze, analyze_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (verify->parsed()) {
      CheckReport rep;
      if (scope == "examples" || scope == "all") {
        const CheckReport ex = verify_examples();
        rep.checks.insert(rep.checks.end(), ex.checks.begin(),
                          ex.checks.end());
      }
      if (scope == "theorems" || scope == "all") {
        SolverConfig config;
        config.seed = verify_seed;
        const CheckReport th = verify_theorems(config, verify_instances);
        rep.checks.insert(rep.checks.end(), th.checks.begin(),
                          th.checks.end());
      }
      const int rc = emit(rep.to_table(), verify_out);
      if (rc != kOk) return rc;
      return rep.all_pass() ? kOk : kFailure;
    }

    if (iris->parsed()) {
      return run_report(iris_flags, iris_dataset("Iris-virginica"), "iris",
                        "Iris-virginica");
    }

    if (analyze->parsed()) {
      LabelMapping mapping;
      mapping.positive_value = positive_label;
      if (negative_labels.empty()) {
        mapping.negative_values =
            infer_negative_labels(data_path, label_column, positive_label);
      } else {
        mapping.negative_values.insert(negative_labels.begin(),
                                       negative_labels.end());
      }
      const Dataset data = load_csv(data_path, label_column, mapping);
      return run_report(analyze_flags, data, data_path, positive_label);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
