#include "noisetol/minimizers.hpp"
#include "noisetol/simplex.hpp"

namespace noisetol {

// Expected noisy hinge risk as a linear program.  Variables are laid out
// as [w_1..w_d, b, xi_1..xi_N, zeta_1..zeta_N] with (w, b) free:
//   minimize   sum_i w_i [ (1-eta_i) xi_i + eta_i zeta_i ]
//   subject to xi_i   >= 1 - y_i (w.x_i + b)
//              zeta_i >= 1 + y_i (w.x_i + b)
//              xi_i, zeta_i >= 0
HingeSolution minimize_hinge(const Dataset& data,
                             std::span<const double> etas) {
  if (!etas.empty()) {
    if (etas.size() != data.size())
      throw std::invalid_argument("eta list length does not match dataset");
    for (double e : etas)
      if (!(e >= 0.0) || !(e < 0.5))
        throw std::invalid_argument("eta out of [0, 0.5)");
  }
  const std::size_t d = data.dim();
  const std::size_t n = data.size();
  const std::size_t nv = d + 1 + 2 * n;

  LPProblem lp;
  lp.objective.assign(nv, 0.0);
  lp.lower.assign(nv, std::optional<double>{});
  for (std::size_t i = 0; i < n; ++i) {
    const double e = etas.empty() ? 0.0 : etas[i];
    lp.objective[d + 1 + i] = data.weight(i) * (1.0 - e);
    lp.objective[d + 1 + n + i] = data.weight(i) * e;
    lp.lower[d + 1 + i] = 0.0;
    lp.lower[d + 1 + n + i] = 0.0;
  }

  lp.lhs.assign(2 * n, std::vector<double>(nv, 0.0));
  lp.rhs.assign(2 * n, -1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = data.point(i);
    const double y = static_cast<double>(data.label(i));
    // -y (w.x + b) - xi <= -1
    auto& row1 = lp.lhs[2 * i];
    for (std::size_t j = 0; j < d; ++j) row1[j] = -y * p[j];
    row1[d] = -y;
    row1[d + 1 + i] = -1.0;
    //  y (w.x + b) - zeta <= -1
    auto& row2 = lp.lhs[2 * i + 1];
    for (std::size_t j = 0; j < d; ++j) row2[j] = y * p[j];
    row2[d] = y;
    row2[d + 1 + n + i] = -1.0;
  }

  const LPSolution sol = simplex_solve(lp);
  HingeSolution out;
  out.classifier.weights.assign(sol.x.begin(), sol.x.begin() + d);
  out.classifier.bias = sol.x[d];
  out.objective = sol.objective;
  return out;
}

}  // namespace noisetol
