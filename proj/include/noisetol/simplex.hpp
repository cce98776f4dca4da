#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

namespace noisetol {

struct LpInfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LpUnboundedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// minimize  c^T x
// subject   A x <= b
//           x_j >= lower[j]           (nullopt -> free, split internally)
struct LPProblem {
  std::vector<double> objective;
  std::vector<std::vector<double>> lhs;
  std::vector<double> rhs;
  std::vector<std::optional<double>> lower;
};

struct LPSolution {
  std::vector<double> x;
  double objective = 0.0;
};

// Dense two-phase simplex.  Pricing is most-negative reduced cost with a
// Bland's-rule fallback after a stall, which prevents cycling on the
// degenerate hinge programs.
LPSolution simplex_solve(const LPProblem& lp);

}  // namespace noisetol
