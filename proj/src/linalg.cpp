#include "noisetol/linalg.hpp"

#include <cmath>

namespace noisetol {

std::vector<double> solve_linear_system(std::vector<std::vector<double>> a,
                                        std::vector<double> b) {
  const std::size_t n = b.size();
  if (a.size() != n)
    throw std::invalid_argument("solve_linear_system: A is not square");
  double scale = 0.0;
  for (const auto& row : a) {
    if (row.size() != n)
      throw std::invalid_argument("solve_linear_system: A is not square");
    for (double v : row) {
      if (!std::isfinite(v))
        throw std::invalid_argument("solve_linear_system: non-finite entry");
      scale = std::max(scale, std::abs(v));
    }
  }
  const double pivot_floor = 1e-12 * std::max(scale, 1e-300);

  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[perm[i]][k]) > std::abs(a[perm[best]][k])) best = i;
    std::swap(perm[k], perm[best]);
    const double pivot = a[perm[k]][k];
    if (std::abs(pivot) < pivot_floor)
      throw SingularMatrixError(
          "solve_linear_system: matrix is singular to tolerance");
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = a[perm[i]][k] / pivot;
      if (factor == 0.0) continue;
      a[perm[i]][k] = 0.0;
      for (std::size_t j = k + 1; j < n; ++j)
        a[perm[i]][j] -= factor * a[perm[k]][j];
      b[perm[i]] -= factor * b[perm[k]];
    }
  }

  std::vector<double> x(n, 0.0);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[perm[k]];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[perm[k]][j] * x[j];
    x[k] = s / a[perm[k]][k];
  }
  return x;
}

}  // namespace noisetol
