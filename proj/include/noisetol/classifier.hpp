#pragma once

#include <span>
#include <vector>

namespace noisetol {

// Sign convention used everywhere in the project: sign(0) == +1.
inline int sign_label(double v) { return v >= 0.0 ? +1 : -1; }

// Affine scorer over feature vectors; the predicted class is the sign of
// the score.
struct LinearClassifier {
  std::vector<double> weights;
  double bias = 0.0;

  double score(std::span<const double> x) const {
    double s = bias;
    for (std::size_t j = 0; j < weights.size(); ++j) s += weights[j] * x[j];
    return s;
  }

  int predict(std::span<const double> x) const { return sign_label(score(x)); }
};

}  // namespace noisetol
