#include "noisetol/risk.hpp"

#include <cmath>

namespace noisetol {

const char* loss_name(LossKind kind) {
  switch (kind) {
    case LossKind::ZeroOne: return "zero-one";
    case LossKind::Squared: return "squared";
    case LossKind::Exponential: return "exponential";
    case LossKind::Log: return "log";
    case LossKind::Hinge: return "hinge";
  }
  return "?";
}

double loss(LossKind kind, double score, int label) {
  const double m = static_cast<double>(label) * score;  // margin
  switch (kind) {
    case LossKind::ZeroOne:
      return sign_label(score) != label ? 1.0 : 0.0;
    case LossKind::Squared: {
      const double d = score - static_cast<double>(label);
      return d * d;
    }
    case LossKind::Exponential:
      // Clamp keeps the value finite for |score| beyond the double range of
      // exp; monotonicity in the margin is preserved.
      return std::exp(std::min(-m, 700.0));
    case LossKind::Log: {
      // softplus(-m) = max(-m, 0) + log1p(exp(-| -m |))
      const double z = -m;
      return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
    }
    case LossKind::Hinge:
      return std::max(0.0, 1.0 - m);
  }
  return 0.0;
}

namespace {

void check_dims(const LinearClassifier& f, const Dataset& data) {
  if (f.weights.size() != data.dim())
    throw std::invalid_argument("classifier dimension " +
                                std::to_string(f.weights.size()) +
                                " does not match data dimension " +
                                std::to_string(data.dim()));
}

void check_etas(const Dataset& data, std::span<const double> etas) {
  if (etas.size() != data.size())
    throw std::invalid_argument("eta list has " + std::to_string(etas.size()) +
                                " entries for " + std::to_string(data.size()) +
                                " points");
  for (double e : etas)
    if (!(e >= 0.0) || !(e < 0.5))
      throw std::invalid_argument("eta out of [0, 0.5)");
}

}  // namespace

double empirical_risk(const LinearClassifier& f, const Dataset& data,
                      LossKind kind) {
  check_dims(f, data);
  double r = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i)
    r += data.weight(i) * loss(kind, f.score(data.point(i)), data.label(i));
  return r;
}

double accuracy(const LinearClassifier& f, const Dataset& data) {
  check_dims(f, data);
  double a = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i)
    if (sign_label(f.score(data.point(i))) == data.label(i))
      a += data.weight(i);
  return a;
}

std::vector<std::size_t> misclassified_indices(const LinearClassifier& f,
                                               const Dataset& data) {
  check_dims(f, data);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < data.size(); ++i)
    if (sign_label(f.score(data.point(i))) != data.label(i)) out.push_back(i);
  return out;
}

double expected_noisy_risk(const LinearClassifier& f, const Dataset& data,
                           std::span<const double> etas, LossKind kind) {
  check_dims(f, data);
  check_etas(data, etas);
  double r = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double s = f.score(data.point(i));
    const int y = data.label(i);
    r += data.weight(i) * ((1.0 - etas[i]) * loss(kind, s, y) +
                           etas[i] * loss(kind, s, -y));
  }
  return r;
}

ZeroOneDecomposition zero_one_noisy_decomposition(
    const LinearClassifier& f, const Dataset& data,
    std::span<const double> etas) {
  check_dims(f, data);
  check_etas(data, etas);
  ZeroOneDecomposition d;
  for (std::size_t i = 0; i < data.size(); ++i) {
    d.base += data.weight(i) * etas[i];
    if (sign_label(f.score(data.point(i))) != data.label(i))
      d.excess += data.weight(i) * (1.0 - 2.0 * etas[i]);
  }
  return d;
}

double risk_difference(const LinearClassifier& f1, const LinearClassifier& f2,
                       const Dataset& data, std::span<const double> etas) {
  check_dims(f1, data);
  check_dims(f2, data);
  check_etas(data, etas);
  double diff = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const int y = data.label(i);
    const bool miss1 = sign_label(f1.score(data.point(i))) != y;
    const bool miss2 = sign_label(f2.score(data.point(i))) != y;
    if (miss1 && !miss2)
      diff += data.weight(i) * (1.0 - 2.0 * etas[i]);
    else if (miss2 && !miss1)
      diff -= data.weight(i) * (1.0 - 2.0 * etas[i]);
  }
  return diff;
}

}  // namespace noisetol
