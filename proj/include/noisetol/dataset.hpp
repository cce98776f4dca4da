#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "noisetol/classifier.hpp"

namespace noisetol {

// Raised on malformed CSV input.  The message identifies the offending row
// and column where possible.
struct CsvError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two-class sample with an explicit probability mass per point.  Labels are
// exactly -1/+1 and the weights form a probability distribution; the
// constructor rejects anything else.
class Dataset {
 public:
  Dataset(std::vector<double> features, std::vector<int> labels,
          std::vector<double> weights, std::size_t dim);

  // Convenience constructor for the common uniform 1/N weighting.
  static Dataset with_uniform_weights(std::vector<double> features,
                                      std::vector<int> labels,
                                      std::size_t dim);

  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const { return dim_; }

  std::span<const double> point(std::size_t i) const {
    return {features_.data() + i * dim_, dim_};
  }
  int label(std::size_t i) const { return labels_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

  const std::vector<int>& labels() const { return labels_; }
  const std::vector<double>& weights() const { return weights_; }

  // Same points and weights, different labels (used to realize noisy
  // training sets).
  Dataset with_labels(std::vector<int> labels) const;

 private:
  std::vector<double> features_;  // row-major, size() * dim()
  std::vector<int> labels_;
  std::vector<double> weights_;
  std::size_t dim_;
};

// Maps raw label strings to the two classes.  Every raw value seen in the
// file must be covered.
struct LabelMapping {
  std::string positive_value;
  std::set<std::string> negative_values;
};

// Loads a comma-separated file with a header row.  All non-label columns
// must parse as finite reals; the resulting dataset carries uniform weights.
Dataset load_csv(const std::string& path, const std::string& label_column,
                 const LabelMapping& mapping);

// Same parser over an in-memory buffer ('name' is used in error messages).
Dataset parse_csv(const std::string& text, const std::string& name,
                  const std::string& label_column, const LabelMapping& mapping);

// 36 unit-circle points at angles (2i-1)*pi/36, first half labeled +1.
Dataset example2_dataset();

// One-dimensional three-point set {(5,-1), (10,-1), (11,+1)}.
Dataset example3_dataset();

// A 16-point planar configuration labeled by the quadratic rule
// y = sign(x1^2 + x2), built so that two fixed linear classifiers make
// known sets of mistakes.  The coordinates are synthetic; only the
// misclassification pattern and the quadratic labeling are contractual.
struct Example1 {
  Dataset data;
  LinearClassifier clean_classifier;  //  x2 + 5
  LinearClassifier noisy_classifier;  //  15.5*x1 + 8*x2 + 10
  std::vector<std::size_t> clean_misclassified;  // 0-based {8, 9}
  std::vector<std::size_t> noisy_misclassified;  // 0-based {2, 4, 6, 9}
};
Example1 example1_dataset();

// Bundled Iris measurements (UCI distribution of the data, including its
// two historical transcription quirks in rows 35 and 38).
const std::string& iris_csv_text();

// Iris loaded with the given positive species; the remaining two species
// form the negative class.
Dataset iris_dataset(const std::string& positive_species = "Iris-setosa");

}  // namespace noisetol
