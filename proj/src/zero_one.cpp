#include <array>
#include <cmath>

#include "noisetol/linalg.hpp"
#include "noisetol/minimizers.hpp"
#include "noisetol/rng.hpp"

namespace noisetol {

namespace {

constexpr double kOffset = 1e-6;  // offset / tilt perturbation size

void check_etas(const Dataset& data, std::span<const double> etas) {
  if (etas.empty()) return;
  if (etas.size() != data.size())
    throw std::invalid_argument("eta list length does not match dataset");
  for (double e : etas)
    if (!(e >= 0.0) || !(e < 0.5))
      throw std::invalid_argument("eta out of [0, 0.5)");
}

// Expected noisy 0-1 risk of (w, b); with empty etas this is the plain
// empirical risk.
double candidate_risk(const Dataset& data, std::span<const double> etas,
                      std::span<const double> w, double b) {
  double r = 0.0;
  const std::size_t d = data.dim();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto p = data.point(i);
    double s = b;
    for (std::size_t j = 0; j < d; ++j) s += w[j] * p[j];
    const bool miss = sign_label(s) != data.label(i);
    const double e = etas.empty() ? 0.0 : etas[i];
    r += data.weight(i) * (miss ? 1.0 - e : e);
  }
  return r;
}

struct BestTracker {
  double risk = 2.0;
  std::vector<double> w;
  double b = 0.0;

  void offer(const Dataset& data, std::span<const double> etas,
             std::span<const double> wc, double bc) {
    const double r = candidate_risk(data, etas, wc, bc);
    if (r < risk - 1e-12) {
      take(wc, bc, r);
      return;
    }
    if (r > risk + 1e-12) return;
    // tie: smaller ||w||, then lexicographic (w, b)
    double n_new = 0.0, n_old = 0.0;
    for (double v : wc) n_new += v * v;
    for (double v : w) n_old += v * v;
    if (n_new < n_old - 1e-15) {
      take(wc, bc, r);
      return;
    }
    if (n_new > n_old + 1e-15) return;
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (wc[j] < w[j]) {
        take(wc, bc, r);
        return;
      }
      if (wc[j] > w[j]) return;
    }
    if (bc < b) take(wc, bc, r);
  }

  void take(std::span<const double> wc, double bc, double r) {
    risk = r;
    w.assign(wc.begin(), wc.end());
    b = bc;
  }
};

// Normalizes (w, b) to unit ||w|| in place; returns false for a vanishing
// direction.
bool normalize(std::vector<double>& w, double& b) {
  double n = 0.0;
  for (double v : w) n += v * v;
  n = std::sqrt(n);
  if (!(n > 1e-300)) return false;
  for (double& v : w) v /= n;
  b /= n;
  return true;
}

void offer_with_variants(BestTracker& best, const Dataset& data,
                         std::span<const double> etas, std::vector<double> w,
                         double b) {
  if (!normalize(w, b)) return;
  std::vector<double> neg(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) neg[j] = -w[j];
  for (double delta : {-kOffset, 0.0, kOffset}) {
    best.offer(data, etas, w, b + delta);
    best.offer(data, etas, neg, -(b + delta));
  }
}

void offer_oriented(BestTracker& best, const Dataset& data,
                    std::span<const double> etas, std::vector<double> w,
                    double b) {
  if (!normalize(w, b)) return;
  std::vector<double> neg(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) neg[j] = -w[j];
  best.offer(data, etas, w, b);
  best.offer(data, etas, neg, -b);
}

}  // namespace

ZeroOneSolution minimize_zero_one_exact(const Dataset& data,
                                        std::span<const double> etas) {
  const std::size_t d = data.dim();
  const std::size_t n = data.size();
  if (d > 3 || n > 200)
    throw std::invalid_argument(
        "minimize_zero_one_exact: guarded to d <= 3 and N <= 200");
  check_etas(data, etas);

  BestTracker best;

  // Constant classifiers.
  best.offer(data, etas, std::vector<double>(d, 0.0), 1.0);
  best.offer(data, etas, std::vector<double>(d, 0.0), -1.0);

  // Axis-aligned thresholds through every point.
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<double> w(d, 0.0);
    w[k] = 1.0;
    for (std::size_t i = 0; i < n; ++i)
      offer_with_variants(best, data, etas, w, -data.point(i)[k]);
  }

  if (d == 2) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto pi = data.point(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto pj = data.point(j);
        std::array<double, 2> u = {pj[0] - pi[0], pj[1] - pi[1]};
        double un = std::hypot(u[0], u[1]);
        if (un < 1e-12) {  // coincident points: jittered stand-in direction
          u = {kOffset, kOffset};
          un = std::hypot(u[0], u[1]);
        }
        const std::vector<double> w0 = {-u[1] / un, u[0] / un};
        const double b0 = -(w0[0] * pi[0] + w0[1] * pi[1]);
        offer_with_variants(best, data, etas, w0, b0);

        // Tilts placing the two incident points on opposite sides.
        const double uu = u[0] * u[0] + u[1] * u[1];
        for (int si : {+1, -1}) {
          const int sj = -si;
          const double coef = kOffset * (2.0 * sj - si) / uu;
          std::vector<double> wt = {w0[0] + coef * u[0], w0[1] + coef * u[1]};
          const double bt =
              -(wt[0] * pi[0] + wt[1] * pi[1]) + si * kOffset;
          offer_oriented(best, data, etas, std::move(wt), bt);
        }
      }
    }
  } else if (d == 3) {
    auto cross = [](const std::array<double, 3>& a,
                    const std::array<double, 3>& b) {
      return std::array<double, 3>{a[1] * b[2] - a[2] * b[1],
                                   a[2] * b[0] - a[0] * b[2],
                                   a[0] * b[1] - a[1] * b[0]};
    };
    for (std::size_t i = 0; i < n; ++i) {
      const auto pi = data.point(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto pj = data.point(j);
        for (std::size_t k = j + 1; k < n; ++k) {
          const auto pk = data.point(k);
          std::array<double, 3> u = {pj[0] - pi[0], pj[1] - pi[1],
                                     pj[2] - pi[2]};
          std::array<double, 3> v = {pk[0] - pi[0], pk[1] - pi[1],
                                     pk[2] - pi[2]};
          std::array<double, 3> c = cross(u, v);
          double cn = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
          if (cn < 1e-12) {  // affinely dependent: jitter one edge
            v = {v[0] + kOffset, v[1] + 2 * kOffset, v[2] + 3 * kOffset};
            c = cross(u, v);
            cn = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
            if (cn < 1e-12) continue;
          }
          const std::vector<double> w0 = {c[0] / cn, c[1] / cn, c[2] / cn};
          const double b0 = -(w0[0] * pi[0] + w0[1] * pi[1] + w0[2] * pi[2]);
          offer_with_variants(best, data, etas, w0, b0);

          // Tilts realizing every mixed sign pattern on the three incident
          // points: solve for delta with delta.u, delta.v prescribed and
          // delta orthogonal to the base normal.
          for (int s1 : {+1, -1})
            for (int s2 : {+1, -1})
              for (int s3 : {+1, -1}) {
                if (s1 == s2 && s2 == s3) continue;
                std::vector<std::vector<double>> mat = {
                    {u[0], u[1], u[2]},
                    {v[0], v[1], v[2]},
                    {w0[0], w0[1], w0[2]}};
                std::vector<double> rhs = {kOffset * (2.0 * s2 - s1),
                                           kOffset * (2.0 * s3 - s1), 0.0};
                std::vector<double> delta;
                try {
                  delta = solve_linear_system(std::move(mat), std::move(rhs));
                } catch (const SingularMatrixError&) {
                  continue;
                }
                std::vector<double> wt = {w0[0] + delta[0], w0[1] + delta[1],
                                          w0[2] + delta[2]};
                const double bt =
                    -(wt[0] * pi[0] + wt[1] * pi[1] + wt[2] * pi[2]) +
                    s1 * kOffset;
                offer_oriented(best, data, etas, std::move(wt), bt);
              }
        }
      }
    }
  }

  return ZeroOneSolution{LinearClassifier{best.w, best.b}, best.risk};
}

LinearClassifier minimize_zero_one_stochastic(const Dataset& data,
                                              const SolverConfig& config) {
  config.validate();
  const std::size_t d = data.dim();
  const std::size_t n = d + 1;

  auto risk_of = [&](const std::vector<double>& th) {
    double r = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const auto p = data.point(i);
      double s = th[d];
      for (std::size_t j = 0; j < d; ++j) s += th[j] * p[j];
      if (sign_label(s) != data.label(i)) r += data.weight(i);
    }
    return r;
  };

  std::vector<double> global_theta;
  double global_risk = 2.0;

  for (std::size_t restart = 0; restart < config.restarts; ++restart) {
    rng::Stream stream = rng::Stream::derived(config.seed, {restart});

    std::vector<double> theta(n);
    double norm = 0.0;
    do {
      norm = 0.0;
      for (auto& v : theta) {
        v = stream.normal01();
        norm += v * v;
      }
      norm = std::sqrt(norm);
    } while (!(norm > 1e-12));
    for (auto& v : theta) v /= norm;

    double cur = risk_of(theta);
    std::vector<double> best_theta = theta;
    double best_risk = cur;

    double temp = config.anneal_initial_temp;
    std::vector<double> prop(n);
    for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
      norm = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        prop[j] = theta[j] + temp * stream.normal01();
        norm += prop[j] * prop[j];
      }
      norm = std::sqrt(norm);
      if (norm > 1e-12) {
        for (auto& v : prop) v /= norm;
        const double r = risk_of(prop);
        const double delta = r - cur;
        if (delta <= 0.0 ||
            stream.uniform01() < std::exp(-delta / std::max(temp, 1e-300))) {
          theta = prop;
          cur = r;
          if (r < best_risk) {
            best_risk = r;
            best_theta = prop;
          }
        }
      }
      temp *= config.anneal_decay;
    }

    if (best_risk < global_risk) {
      global_risk = best_risk;
      global_theta = best_theta;
    }
  }

  return LinearClassifier{{global_theta.begin(), global_theta.begin() + d},
                          global_theta[d]};
}

}  // namespace noisetol
