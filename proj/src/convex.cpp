#include <cmath>

#include "noisetol/linalg.hpp"
#include "noisetol/minimizers.hpp"

namespace noisetol {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// dL/ds at margin m = y*s.
double loss_deriv(LossKind kind, double s, int label) {
  const double m = static_cast<double>(label) * s;
  if (kind == LossKind::Exponential)
    return -static_cast<double>(label) * std::exp(std::min(-m, 700.0));
  return -static_cast<double>(label) * sigmoid(-m);  // log loss
}

// d2L/ds2; label-independent for the log loss.
double loss_curv(LossKind kind, double s, int label) {
  const double m = static_cast<double>(label) * s;
  if (kind == LossKind::Exponential) return std::exp(std::min(-m, 700.0));
  return sigmoid(m) * sigmoid(-m);
}

void check_etas(const Dataset& data, std::span<const double> etas) {
  if (etas.empty()) return;
  if (etas.size() != data.size())
    throw std::invalid_argument("eta list length does not match dataset");
  for (double e : etas)
    if (!(e >= 0.0) || !(e < 0.5))
      throw std::invalid_argument("eta out of [0, 0.5)");
}

double eta_at(std::span<const double> etas, std::size_t i) {
  return etas.empty() ? 0.0 : etas[i];
}

}  // namespace

LinearClassifier minimize_smooth_convex(const Dataset& data, LossKind kind,
                                        std::span<const double> etas,
                                        std::optional<std::vector<double>> fix_w,
                                        const SolverConfig& config) {
  if (kind != LossKind::Exponential && kind != LossKind::Log)
    throw std::invalid_argument(
        "minimize_smooth_convex: loss must be exponential or log");
  config.validate();
  check_etas(data, etas);
  const std::size_t d = data.dim();
  if (fix_w && fix_w->size() != d)
    throw std::invalid_argument("fix_w dimension mismatch");

  // The infimum is attained only when both effective label masses are
  // positive; otherwise pushing the score to infinity drives the risk to
  // its unreached infimum.
  double pos_mass = 0.0, neg_mass = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double e = eta_at(etas, i);
    if (data.label(i) == +1) {
      pos_mass += data.weight(i) * (1.0 - e);
      neg_mass += data.weight(i) * e;
    } else {
      neg_mass += data.weight(i) * (1.0 - e);
      pos_mass += data.weight(i) * e;
    }
  }
  if (pos_mass <= 0.0 || neg_mass <= 0.0)
    throw UnboundedObjectiveError(
        "risk infimum not attained: all effective labels have one sign");

  if (fix_w) {
    // Bias-only minimization by bisection on the derivative, which is
    // strictly increasing in b.
    std::vector<double> base(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      const auto p = data.point(i);
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += (*fix_w)[j] * p[j];
      base[i] = s;
    }
    auto deriv = [&](double b) {
      double g = 0.0;
      for (std::size_t i = 0; i < data.size(); ++i) {
        const double e = eta_at(etas, i);
        const int y = data.label(i);
        g += data.weight(i) * ((1.0 - e) * loss_deriv(kind, base[i] + b, y) +
                               e * loss_deriv(kind, base[i] + b, -y));
      }
      return g;
    };

    double lo = 0.0, hi = 0.0, step = 1.0;
    while (deriv(lo) > 0.0) {
      lo -= step;
      step *= 2.0;
      if (lo < -1e9)
        throw ConvergenceError("bias bisection: no lower bracket found");
    }
    step = 1.0;
    while (deriv(hi) < 0.0) {
      hi += step;
      step *= 2.0;
      if (hi > 1e9)
        throw ConvergenceError("bias bisection: no upper bracket found");
    }
    for (std::size_t it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double g = deriv(mid);
      if (std::abs(g) <= config.tol ||
          hi - lo <= 1e-15 * std::max(1.0, std::abs(mid)))
        break;
      (g < 0.0 ? lo : hi) = mid;
    }
    return LinearClassifier{*fix_w, 0.5 * (lo + hi)};
  }

  // Damped Newton over (w, b).
  const std::size_t n = d + 1;
  std::vector<double> theta(n, 0.0);
  std::vector<double> xt(n, 1.0);

  auto objective = [&](const std::vector<double>& th) {
    double r = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const auto p = data.point(i);
      double s = th[d];
      for (std::size_t j = 0; j < d; ++j) s += th[j] * p[j];
      const double e = eta_at(etas, i);
      const int y = data.label(i);
      r += data.weight(i) *
           ((1.0 - e) * loss(kind, s, y) + e * loss(kind, s, -y));
    }
    return r;
  };

  double risk = objective(theta);
  for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
    std::vector<double> grad(n, 0.0);
    std::vector<std::vector<double>> hess(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < data.size(); ++i) {
      const auto p = data.point(i);
      for (std::size_t j = 0; j < d; ++j) xt[j] = p[j];
      double s = theta[d];
      for (std::size_t j = 0; j < d; ++j) s += theta[j] * p[j];
      const double e = eta_at(etas, i);
      const int y = data.label(i);
      const double w = data.weight(i);
      const double g = (1.0 - e) * loss_deriv(kind, s, y) +
                       e * loss_deriv(kind, s, -y);
      const double h =
          (1.0 - e) * loss_curv(kind, s, y) + e * loss_curv(kind, s, -y);
      for (std::size_t j = 0; j < n; ++j) {
        grad[j] += w * g * xt[j];
        for (std::size_t k = j; k < n; ++k) hess[j][k] += w * h * xt[j] * xt[k];
      }
    }
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < j; ++k) hess[j][k] = hess[k][j];

    double gnorm = 0.0;
    for (double g : grad) gnorm += g * g;
    gnorm = std::sqrt(gnorm);
    if (gnorm <= config.tol)
      return LinearClassifier{{theta.begin(), theta.begin() + d}, theta[d]};

    // Newton direction, with a ridge fallback for flat Hessians.
    std::vector<double> step;
    double ridge = 0.0;
    for (int attempt = 0; attempt < 6; ++attempt) {
      auto h = hess;
      if (ridge > 0.0)
        for (std::size_t j = 0; j < n; ++j) h[j][j] += ridge;
      try {
        step = solve_linear_system(std::move(h), grad);
        break;
      } catch (const SingularMatrixError&) {
        ridge = ridge == 0.0 ? 1e-10 : ridge * 100.0;
      }
    }
    if (step.empty()) step = grad;  // steepest descent as a last resort

    double descent = 0.0;
    for (std::size_t j = 0; j < n; ++j) descent += grad[j] * step[j];
    if (descent <= 0.0) {
      step = grad;
      descent = gnorm * gnorm;
    }

    double t = 1.0;
    std::vector<double> trial(n);
    for (;;) {
      for (std::size_t j = 0; j < n; ++j) trial[j] = theta[j] - t * step[j];
      const double r = objective(trial);
      if (r <= risk - 1e-4 * t * descent || t < 1e-14) {
        theta = trial;
        risk = r;
        break;
      }
      t *= 0.5;
    }
  }
  throw ConvergenceError("newton: no convergence within max_iters");
}

}  // namespace noisetol
