#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "noisetol/classifier.hpp"
#include "noisetol/dataset.hpp"

namespace noisetol {

enum class LossKind { ZeroOne, Squared, Exponential, Log, Hinge };

const char* loss_name(LossKind kind);

// Pointwise loss L(score, label) with label in {-1, +1}.
//   ZeroOne      1{sign(score) != label}          (sign(0) == +1)
//   Squared      (score - label)^2
//   Exponential  exp(-label * score)              (exponent clamped at 700)
//   Log          ln(1 + exp(-label * score))      (softplus form, no overflow)
//   Hinge        max(0, 1 - label * score)
double loss(LossKind kind, double score, int label);

// Weighted empirical risk  sum_i w_i L(f(x_i), y_i).
double empirical_risk(const LinearClassifier& f, const Dataset& data,
                      LossKind kind);

// Probability mass of correctly classified points.
double accuracy(const LinearClassifier& f, const Dataset& data);

// 0-based indices of points with sign(f(x_i)) != y_i.
std::vector<std::size_t> misclassified_indices(const LinearClassifier& f,
                                               const Dataset& data);

// Risk averaged over independent label flips with per-point rates eta_i:
//   sum_i w_i [ (1 - eta_i) L(f(x_i), y_i) + eta_i L(f(x_i), -y_i) ].
double expected_noisy_risk(const LinearClassifier& f, const Dataset& data,
                           std::span<const double> etas, LossKind kind);

// Splits the expected noisy 0-1 risk into the classifier-independent floor
// and the excess paid on the mistake set:
//   base   = sum_i w_i eta_i
//   excess = sum_{i in S(f)} w_i (1 - 2 eta_i)
// base + excess equals expected_noisy_risk(f, data, etas, ZeroOne).
struct ZeroOneDecomposition {
  double base = 0.0;
  double excess = 0.0;
};
ZeroOneDecomposition zero_one_noisy_decomposition(const LinearClassifier& f,
                                                  const Dataset& data,
                                                  std::span<const double> etas);

// Expected noisy 0-1 risk difference R^eta(f1) - R^eta(f2), computed from
// the symmetric difference of the two mistake sets.
double risk_difference(const LinearClassifier& f1, const LinearClassifier& f2,
                       const Dataset& data, std::span<const double> etas);

}  // namespace noisetol
