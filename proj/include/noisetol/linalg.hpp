#pragma once

#include <stdexcept>
#include <vector>

namespace noisetol {

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Solves A x = b by Gaussian elimination with partial pivoting.  A pivot
// smaller than 1e-12 relative to the largest entry of A is treated as
// singular.  Residual contract: ||Ax - b||_inf <= 1e-9 * max(1, ||b||_inf)
// for well-conditioned systems.
std::vector<double> solve_linear_system(std::vector<std::vector<double>> a,
                                        std::vector<double> b);

}  // namespace noisetol
