#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "noisetol/classifier.hpp"
#include "noisetol/dataset.hpp"
#include "noisetol/risk.hpp"

namespace noisetol {

// Objective unbounded below / infimum not attained (all effective labels on
// one side with an exponential-family loss).
struct UnboundedObjectiveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverConfig {
  std::size_t max_iters = 20000;
  double tol = 1e-8;
  std::size_t restarts = 5;
  std::uint64_t seed = 0;
  double anneal_initial_temp = 1.0;
  double anneal_decay = 0.995;

  void validate() const;
};

// Squared-loss minimizer via the normal equations.  Empty 'etas' means
// noise-free; otherwise the right-hand side carries the (1 - 2 eta_i)
// attenuation.  fit_bias=false restricts to classifiers through the origin.
LinearClassifier least_squares(const Dataset& data, bool fit_bias = true,
                               std::span<const double> etas = {});

// Class statistics feeding the Fisher discriminant: means, pooled
// within-class scatter and the grand mean, all weighted by the dataset's
// probability masses.
struct ClassMoments {
  std::vector<double> mean_pos;
  std::vector<double> mean_neg;
  std::vector<std::vector<double>> within_scatter;
  std::vector<double> grand_mean;
  double mass_pos = 0.0;
  double mass_neg = 0.0;
};
ClassMoments class_moments(const Dataset& data);

// Unit-norm solution of  S_W d = mean_pos - mean_neg.  The orientation is
// kept as produced by the solve, so positively scaled right-hand sides give
// the identical direction; use it for direction-invariance comparisons.
std::vector<double> fld_direction(const ClassMoments& moments);

// Fisher linear discriminant: unit direction S_W^{-1}(mu_pos - mu_neg) with
// the threshold at the grand-mean projection (b = -w . mu).
LinearClassifier fld(const Dataset& data);

// Fisher direction with the threshold instead chosen to minimize the
// training 0-1 risk of the projected points.  This is the variant used in
// the experiment harness, where the grand-mean cut is badly off-center for
// imbalanced classes.
LinearClassifier fld_min_error_threshold(const Dataset& data);

// Minimizes the (expected noisy) risk for the exponential or log loss.
// With fix_w the search is over the bias alone and uses derivative
// bisection; otherwise damped Newton over (w, b).  Throws
// UnboundedObjectiveError when the infimum is not attained and
// ConvergenceError past max_iters.
LinearClassifier minimize_smooth_convex(
    const Dataset& data, LossKind kind, std::span<const double> etas = {},
    std::optional<std::vector<double>> fix_w = std::nullopt,
    const SolverConfig& config = {});

// Expected-noisy-hinge minimizer via the equivalent linear program over
// (w, b, xi_i, zeta_i).  The optimum is generally a non-unique face; any
// LP-optimal vertex is returned together with the objective value.
struct HingeSolution {
  LinearClassifier classifier;
  double objective = 0.0;
};
HingeSolution minimize_hinge(const Dataset& data,
                             std::span<const double> etas = {});

// Exact 0-1 risk minimizer by enumeration of point-incident hyperplanes
// (all d-subsets, offset and tilt perturbed by +-1e-6, both orientations,
// plus axis-aligned thresholds and the constant classifiers).  Guarded to
// d <= 3 and N <= 200.  Ties are broken by smaller ||w||, then
// lexicographically.
struct ZeroOneSolution {
  LinearClassifier classifier;
  double risk = 0.0;
};
ZeroOneSolution minimize_zero_one_exact(const Dataset& data,
                                        std::span<const double> etas = {});

// Stochastic 0-1 risk minimizer: best-of-restarts simulated annealing on
// the unit sphere of (w, b) with Gaussian proposals of scale equal to the
// current temperature and Metropolis acceptance on the empirical 0-1 risk.
// Deterministic for a fixed config.seed; restart r uses the substream
// (seed, r) and the best classifier visited is returned.
LinearClassifier minimize_zero_one_stochastic(const Dataset& data,
                                              const SolverConfig& config = {});

}  // namespace noisetol
