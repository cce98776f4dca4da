#include <algorithm>
#include <cmath>

#include "noisetol/linalg.hpp"
#include "noisetol/minimizers.hpp"

namespace noisetol {

void SolverConfig::validate() const {
  if (max_iters == 0) throw std::invalid_argument("config: max_iters == 0");
  if (!(tol > 0.0)) throw std::invalid_argument("config: tol must be > 0");
  if (restarts == 0) throw std::invalid_argument("config: restarts must be >= 1");
  if (!(anneal_initial_temp > 0.0))
    throw std::invalid_argument("config: initial temperature must be > 0");
  if (!(anneal_decay > 0.0) || !(anneal_decay < 1.0))
    throw std::invalid_argument("config: decay must lie in (0, 1)");
}

namespace {

void check_etas(const Dataset& data, std::span<const double> etas) {
  if (etas.empty()) return;
  if (etas.size() != data.size())
    throw std::invalid_argument("eta list length does not match dataset");
  for (double e : etas)
    if (!(e >= 0.0) || !(e < 0.5))
      throw std::invalid_argument("eta out of [0, 0.5)");
}

}  // namespace

LinearClassifier least_squares(const Dataset& data, bool fit_bias,
                               std::span<const double> etas) {
  check_etas(data, etas);
  const std::size_t d = data.dim();
  const std::size_t m = fit_bias ? d + 1 : d;

  std::vector<std::vector<double>> a(m, std::vector<double>(m, 0.0));
  std::vector<double> rhs(m, 0.0);
  std::vector<double> xt(m, 1.0);  // augmented point, trailing 1 when biased
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto p = data.point(i);
    for (std::size_t j = 0; j < d; ++j) xt[j] = p[j];
    const double w = data.weight(i);
    const double att = etas.empty() ? 1.0 : 1.0 - 2.0 * etas[i];
    const double y = static_cast<double>(data.label(i));
    for (std::size_t j = 0; j < m; ++j) {
      rhs[j] += w * att * y * xt[j];
      for (std::size_t k = j; k < m; ++k) a[j][k] += w * xt[j] * xt[k];
    }
  }
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < j; ++k) a[j][k] = a[k][j];

  std::vector<double> sol = solve_linear_system(std::move(a), std::move(rhs));
  LinearClassifier f;
  f.weights.assign(sol.begin(), sol.begin() + d);
  f.bias = fit_bias ? sol[d] : 0.0;
  return f;
}

ClassMoments class_moments(const Dataset& data) {
  const std::size_t d = data.dim();
  ClassMoments m;
  m.mean_pos.assign(d, 0.0);
  m.mean_neg.assign(d, 0.0);
  m.grand_mean.assign(d, 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto p = data.point(i);
    const double w = data.weight(i);
    auto& mean = data.label(i) == +1 ? m.mean_pos : m.mean_neg;
    (data.label(i) == +1 ? m.mass_pos : m.mass_neg) += w;
    for (std::size_t j = 0; j < d; ++j) {
      mean[j] += w * p[j];
      m.grand_mean[j] += w * p[j];
    }
  }
  if (m.mass_pos == 0.0 || m.mass_neg == 0.0)
    throw std::invalid_argument("fld: both classes must be nonempty");
  for (std::size_t j = 0; j < d; ++j) {
    m.mean_pos[j] /= m.mass_pos;
    m.mean_neg[j] /= m.mass_neg;
  }

  m.within_scatter.assign(d, std::vector<double>(d, 0.0));
  std::vector<double> c(d);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto p = data.point(i);
    const auto& mean = data.label(i) == +1 ? m.mean_pos : m.mean_neg;
    for (std::size_t j = 0; j < d; ++j) c[j] = p[j] - mean[j];
    const double w = data.weight(i);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = j; k < d; ++k)
        m.within_scatter[j][k] += w * c[j] * c[k];
  }
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < j; ++k)
      m.within_scatter[j][k] = m.within_scatter[k][j];
  return m;
}

std::vector<double> fld_direction(const ClassMoments& moments) {
  const std::size_t d = moments.grand_mean.size();
  std::vector<double> delta(d);
  for (std::size_t j = 0; j < d; ++j)
    delta[j] = moments.mean_pos[j] - moments.mean_neg[j];
  std::vector<double> w =
      solve_linear_system(moments.within_scatter, std::move(delta));
  double norm = 0.0;
  for (double v : w) norm += v * v;
  norm = std::sqrt(norm);
  if (!(norm > 0.0))
    throw std::invalid_argument("fld: class means coincide");
  for (double& v : w) v /= norm;
  return w;
}

LinearClassifier fld(const Dataset& data) {
  const ClassMoments m = class_moments(data);
  std::vector<double> w = fld_direction(m);
  double b = 0.0;
  for (std::size_t j = 0; j < data.dim(); ++j) b -= w[j] * m.grand_mean[j];
  return LinearClassifier{std::move(w), b};
}

namespace {

// Minimum-risk cut over sorted projections, both orientations.  Covers the
// datasets too large for the enumeration oracle.
LinearClassifier scan_threshold(const std::vector<double>& proj,
                                const Dataset& data) {
  std::vector<double> sorted = proj;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> cuts = {sorted.front() - 1.0, sorted.back() + 1.0};
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    cuts.push_back(0.5 * (sorted[i] + sorted[i + 1]));

  double best_risk = 2.0;
  double best_w = 1.0, best_b = 0.0;
  for (double c : cuts) {
    for (double orient : {1.0, -1.0}) {
      double r = 0.0;
      for (std::size_t i = 0; i < proj.size(); ++i)
        if (sign_label(orient * (proj[i] - c)) != data.label(i))
          r += data.weight(i);
      if (r < best_risk - 1e-15) {
        best_risk = r;
        best_w = orient;
        best_b = -orient * c;
      }
    }
  }
  return LinearClassifier{{best_w}, best_b};
}

}  // namespace

LinearClassifier fld_min_error_threshold(const Dataset& data) {
  const ClassMoments m = class_moments(data);
  std::vector<double> w = fld_direction(m);

  // Exact 1-d 0-1 minimization over the projections.
  std::vector<double> proj(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto p = data.point(i);
    double s = 0.0;
    for (std::size_t j = 0; j < data.dim(); ++j) s += w[j] * p[j];
    proj[i] = s;
  }
  LinearClassifier cut;
  if (data.size() <= 200) {
    const Dataset line(proj, data.labels(), data.weights(), 1);
    cut = minimize_zero_one_exact(line).classifier;
  } else {
    cut = scan_threshold(proj, data);
  }

  LinearClassifier f;
  f.weights.resize(data.dim());
  const double scale = cut.weights[0];
  for (std::size_t j = 0; j < data.dim(); ++j) f.weights[j] = scale * w[j];
  f.bias = cut.bias;
  return f;
}

}  // namespace noisetol
