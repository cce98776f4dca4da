#include "noisetol/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace noisetol {

namespace {

std::string ordinal(std::size_t i) { return std::to_string(i); }

}  // namespace

Dataset::Dataset(std::vector<double> features, std::vector<int> labels,
                 std::vector<double> weights, std::size_t dim)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      weights_(std::move(weights)),
      dim_(dim) {
  const std::size_t n = labels_.size();
  if (n == 0) throw std::invalid_argument("dataset: empty");
  if (dim_ == 0) throw std::invalid_argument("dataset: dimension must be >= 1");
  if (features_.size() != n * dim_)
    throw std::invalid_argument("dataset: feature buffer size mismatch");
  if (weights_.size() != n)
    throw std::invalid_argument("dataset: weight count mismatch");
  for (double v : features_)
    if (!std::isfinite(v))
      throw std::invalid_argument("dataset: non-finite feature value");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels_[i] != 1 && labels_[i] != -1)
      throw std::invalid_argument("dataset: label must be -1 or +1 (point " +
                                  ordinal(i) + ")");
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i]))
      throw std::invalid_argument("dataset: weight must be positive (point " +
                                  ordinal(i) + ")");
    total += weights_[i];
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("dataset: weights must sum to 1");
}

Dataset Dataset::with_uniform_weights(std::vector<double> features,
                                      std::vector<int> labels,
                                      std::size_t dim) {
  const std::size_t n = labels.size();
  if (n == 0) throw std::invalid_argument("dataset: empty");
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  return Dataset(std::move(features), std::move(labels), std::move(w), dim);
}

Dataset Dataset::with_labels(std::vector<int> labels) const {
  return Dataset(features_, std::move(labels), weights_, dim_);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
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

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

Dataset parse_csv(const std::string& text, const std::string& name,
                  const std::string& label_column,
                  const LabelMapping& mapping) {
  if (mapping.negative_values.count(mapping.positive_value) > 0)
    throw std::invalid_argument(
        "label mapping: positive value also listed as negative");

  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw CsvError(name + ": empty file");

  const std::vector<std::string> header = split_fields(line);
  std::size_t label_idx = header.size();
  for (std::size_t j = 0; j < header.size(); ++j)
    if (trim(header[j]) == label_column) label_idx = j;
  if (label_idx == header.size())
    throw CsvError(name + ": label column '" + label_column +
                   "' not found in header");

  std::vector<std::string> feature_names;
  for (std::size_t j = 0; j < header.size(); ++j)
    if (j != label_idx) feature_names.push_back(trim(header[j]));
  const std::size_t dim = feature_names.size();
  if (dim == 0) throw CsvError(name + ": no feature columns");

  std::vector<double> features;
  std::vector<int> labels;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != header.size())
      throw CsvError(name + ": row " + ordinal(row) + " has " +
                     std::to_string(fields.size()) + " fields, expected " +
                     std::to_string(header.size()));
    for (std::size_t j = 0; j < fields.size(); ++j) {
      const std::string cell = trim(fields[j]);
      if (j == label_idx) {
        if (cell == mapping.positive_value) {
          labels.push_back(+1);
        } else if (mapping.negative_values.count(cell) > 0) {
          labels.push_back(-1);
        } else {
          throw CsvError(name + ": row " + ordinal(row) + ", column '" +
                         label_column + "': label '" + cell +
                         "' not covered by the mapping");
        }
      } else {
        double v = 0.0;
        const char* b = cell.data();
        const char* e = b + cell.size();
        auto res = std::from_chars(b, e, v);
        if (res.ec != std::errc() || res.ptr != e || !std::isfinite(v))
          throw CsvError(name + ": row " + ordinal(row) + ", column '" +
                         trim(header[j]) + "': cannot parse '" + cell +
                         "' as a real number");
        features.push_back(v);
      }
    }
  }
  if (labels.empty()) throw CsvError(name + ": no data rows");
  return Dataset::with_uniform_weights(std::move(features), std::move(labels),
                                       dim);
}

Dataset load_csv(const std::string& path, const std::string& label_column,
                 const LabelMapping& mapping) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CsvError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), path, label_column, mapping);
}

Dataset example2_dataset() {
  constexpr double kPi = 3.141592653589793238462643383279502884;
  std::vector<double> features;
  std::vector<int> labels;
  features.reserve(72);
  for (int i = 1; i <= 36; ++i) {
    const double theta = (2.0 * i - 1.0) * kPi / 36.0;
    features.push_back(std::cos(theta));
    features.push_back(std::sin(theta));
    labels.push_back(i <= 18 ? +1 : -1);
  }
  return Dataset::with_uniform_weights(std::move(features), std::move(labels),
                                       2);
}

Dataset example3_dataset() {
  return Dataset::with_uniform_weights({5.0, 10.0, 11.0}, {-1, -1, +1}, 1);
}

Example1 example1_dataset() {
  // Coordinates chosen so that y = sign(x1^2 + x2) everywhere, the
  // horizontal cut x2 + 5 fails exactly on points 9 and 10 and the steep
  // cut 15.5*x1 + 8*x2 + 10 fails exactly on points 3, 5, 7 and 10
  // (1-based).
  const std::vector<std::array<double, 2>> pts = {
      {0.0, 3.0},    {1.0, 2.0},   {2.3, -5.5},  {2.0, 1.0},
      {2.25, -5.3},  {-1.0, 2.0},  {2.2, -5.2},  {0.5, 4.0},
      {3.0, -6.0},   {-3.0, -6.0}, {0.0, -6.0},  {1.0, -7.0},
      {-1.0, -7.0},  {-2.0, -8.0}, {2.0, -9.0},  {-0.5, -5.5}};

  std::vector<double> features;
  std::vector<int> labels;
  for (const auto& p : pts) {
    features.push_back(p[0]);
    features.push_back(p[1]);
    labels.push_back(sign_label(p[0] * p[0] + p[1]));
  }

  Example1 out{
      Dataset::with_uniform_weights(std::move(features), std::move(labels), 2),
      LinearClassifier{{0.0, 1.0}, 5.0},
      LinearClassifier{{15.5, 8.0}, 10.0},
      {8, 9},
      {2, 4, 6, 9}};

  // The reference pattern is part of the contract; fail loudly if the
  // construction ever drifts.
  auto expect_mistakes = [&](const LinearClassifier& f,
                             const std::vector<std::size_t>& want) {
    std::vector<std::size_t> got;
    for (std::size_t i = 0; i < out.data.size(); ++i)
      if (sign_label(f.score(out.data.point(i))) != out.data.label(i))
        got.push_back(i);
    if (got != want)
      throw std::logic_error("example1_dataset: misclassification pattern "
                             "does not match the reference sets");
  };
  expect_mistakes(out.clean_classifier, out.clean_misclassified);
  expect_mistakes(out.noisy_classifier, out.noisy_misclassified);
  return out;
}

Dataset iris_dataset(const std::string& positive_species) {
  static const std::vector<std::string> kSpecies = {
      "Iris-setosa", "Iris-versicolor", "Iris-virginica"};
  LabelMapping mapping;
  mapping.positive_value = positive_species;
  bool known = false;
  for (const auto& s : kSpecies) {
    if (s == positive_species) {
      known = true;
    } else {
      mapping.negative_values.insert(s);
    }
  }
  if (!known)
    throw std::invalid_argument("iris_dataset: unknown species '" +
                                positive_species + "'");
  return parse_csv(iris_csv_text(), "iris(builtin)", "species", mapping);
}

}  // namespace noisetol
