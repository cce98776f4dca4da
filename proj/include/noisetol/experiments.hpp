#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "noisetol/dataset.hpp"
#include "noisetol/minimizers.hpp"
#include "noisetol/noise.hpp"

namespace noisetol {

// ---------------------------------------------------------------------------
// Check reports (golden examples, identity suites)
// ---------------------------------------------------------------------------

struct CheckResult {
  std::string section;
  std::string name;
  std::string computed;
  std::string expected;
  bool pass = false;
};

struct CheckReport {
  std::vector<CheckResult> checks;

  bool all_pass() const;
  std::string to_table() const;
};

// Golden checks for the five worked examples (reference minimizers, risk
// values and misclassification patterns).
CheckReport verify_examples();

// Randomized identity suites: the uniform-noise affine identity for 0-1
// risk, tolerance of the exact 0-1 minimizer, the (1-2*eta) least-squares
// scaling and Fisher-direction invariance under expected-label-noise mean
// mixtures.
CheckReport verify_theorems(const SolverConfig& config,
                            std::size_t num_random_instances = 20);

// ---------------------------------------------------------------------------
// Noise-injection experiment harness
// ---------------------------------------------------------------------------

enum class Algorithm { ZeroOne, Hinge, LeastSquares, LogLoss, Fld };

const char* algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(const std::string& name);
std::vector<Algorithm> all_algorithms();

struct TrialRecord {
  Algorithm algorithm;
  std::string noise_text;
  std::uint64_t trial_seed = 0;
  double clean_accuracy = 0.0;  // in [0, 1]
};

struct CellStats {
  double mean = 0.0;
  double std_dev = 0.0;  // sample std over trials, 0 when fewer than 2
  std::size_t trials = 0;
  std::vector<std::string> errors;  // per-trial solver failures, if any
};

struct ExperimentReport {
  std::string dataset_name;
  std::string positive_label;
  std::vector<std::string> noise_labels;
  std::vector<Algorithm> algorithms;
  std::vector<std::vector<CellStats>> cells;  // [noise][algorithm]
  std::vector<TrialRecord> trials;
  std::uint64_t master_seed = 0;
  std::size_t trials_requested = 0;

  // One row per cell: noise,algorithm,mean,std,trials
  std::string to_csv() const;
  // Aligned human-readable table.
  std::string to_table() const;
  // One row per trial: noise,algorithm,trial,seed,accuracy
  std::string trials_to_csv() const;
};

// Protocol: for every noise setting and trial, flip labels on the full
// training set (substream (master_seed, noise index, trial index)), fit
// every algorithm on the noisy labels, and score on the original clean
// labels.  Trials are aggregated into mean and sample standard deviation.
ExperimentReport run_experiment(const Dataset& data,
                                const std::string& dataset_name,
                                const std::string& positive_label,
                                std::size_t trials, std::uint64_t master_seed,
                                const std::vector<NoiseSpec>& noise_list,
                                const std::vector<Algorithm>& algorithms,
                                const SolverConfig& config = {});

// The six standard rows: none, uniform 10/20/30%, and the two quadrant
// quadruples (15,20,25,30)% and (30,25,20,15)%.
std::vector<NoiseSpec> default_noise_rows();

// Bundled benchmark.  The reference accuracy table this harness reproduces
// corresponds to separating Iris-virginica from the other two species, so
// that is the task it runs.
ExperimentReport run_iris(std::size_t trials, std::uint64_t master_seed,
                          const std::vector<NoiseSpec>& noise_list,
                          const std::vector<Algorithm>& algorithms,
                          const SolverConfig& config = {});

}  // namespace noisetol
