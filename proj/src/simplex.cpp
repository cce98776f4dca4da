#include "noisetol/simplex.hpp"

#include <cmath>
#include <limits>

namespace noisetol {

namespace {

constexpr double kEps = 1e-9;

// Dense tableau with an explicit cost row.  Column layout:
//   [ structural columns | slacks | artificials ]  + rhs.
struct Tableau {
  std::size_t m = 0;       // constraint rows
  std::size_t cols = 0;    // total columns excluding rhs
  std::size_t width = 0;   // cols + 1
  std::vector<double> a;   // m x width
  std::vector<double> cost;  // width entries; cost[cols] = -objective
  std::vector<std::size_t> basis;
  std::vector<bool> row_active;

  double* row(std::size_t i) { return a.data() + i * width; }
  double rhs(std::size_t i) const { return a[i * width + cols]; }

  void pivot(std::size_t r, std::size_t j) {
    double* pr = row(r);
    const double p = pr[j];
    for (std::size_t k = 0; k < width; ++k) pr[k] /= p;
    pr[j] = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || !row_active[i]) continue;
      double* ri = row(i);
      const double f = ri[j];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < width; ++k) ri[k] -= f * pr[k];
      ri[j] = 0.0;
    }
    const double f = cost[j];
    if (f != 0.0) {
      for (std::size_t k = 0; k < width; ++k) cost[k] -= f * pr[k];
      cost[j] = 0.0;
    }
    basis[r] = j;
  }

  // Runs the simplex loop on the current cost row.  'usable' masks columns
  // allowed to enter the basis.  Returns false when an unbounded ray is
  // found.
  bool iterate(const std::vector<bool>& usable) {
    const std::size_t pivot_limit = 2000 + 200 * (m + cols);
    const std::size_t stall_limit = 2 * (m + cols) + 100;
    bool bland = false;
    std::size_t stall = 0;
    double last_obj = -cost[cols];
    for (std::size_t it = 0; it < pivot_limit; ++it) {
      // entering column
      std::size_t enter = cols;
      if (bland) {
        for (std::size_t j = 0; j < cols; ++j)
          if (usable[j] && cost[j] < -kEps) {
            enter = j;
            break;
          }
      } else {
        double best = -kEps;
        for (std::size_t j = 0; j < cols; ++j)
          if (usable[j] && cost[j] < best) {
            best = cost[j];
            enter = j;
          }
      }
      if (enter == cols) return true;  // optimal

      // ratio test; ties go to the smallest basis index (Bland-compatible)
      std::size_t leave = m;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i) {
        if (!row_active[i]) continue;
        const double aij = a[i * width + enter];
        if (aij <= kEps) continue;
        const double ratio = rhs(i) / aij;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && leave != m &&
             basis[i] < basis[leave])) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (leave == m) return false;  // unbounded

      pivot(leave, enter);

      const double obj = -cost[cols];
      if (obj < last_obj - 1e-12) {
        stall = 0;
        last_obj = obj;
      } else if (++stall > stall_limit) {
        bland = true;  // anti-cycling
      }
    }
    throw std::runtime_error("simplex: pivot limit exceeded");
  }
};

}  // namespace

LPSolution simplex_solve(const LPProblem& lp) {
  const std::size_t nvars = lp.objective.size();
  const std::size_t m = lp.lhs.size();
  if (lp.rhs.size() != m)
    throw std::invalid_argument("simplex: rhs size mismatch");
  if (lp.lower.size() != nvars)
    throw std::invalid_argument("simplex: bound list size mismatch");
  for (const auto& row : lp.lhs)
    if (row.size() != nvars)
      throw std::invalid_argument("simplex: constraint row size mismatch");

  // Column mapping: shifted variable for finite lower bounds, a split pair
  // for free variables.
  std::vector<std::size_t> pos_col(nvars), neg_col(nvars, SIZE_MAX);
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < nvars; ++j) {
    pos_col[j] = ncols++;
    if (!lp.lower[j]) neg_col[j] = ncols++;
  }
  const std::size_t struct_cols = ncols;

  // Shifted rhs: b_i - sum_j a_ij * lower_j over bounded variables.
  std::vector<double> b(m);
  for (std::size_t i = 0; i < m; ++i) {
    double v = lp.rhs[i];
    for (std::size_t j = 0; j < nvars; ++j)
      if (lp.lower[j]) v -= lp.lhs[i][j] * *lp.lower[j];
    b[i] = v;
  }

  std::size_t n_art = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (b[i] < 0.0) ++n_art;

  Tableau t;
  t.m = m;
  t.cols = struct_cols + m + n_art;
  t.width = t.cols + 1;
  t.a.assign(t.m * t.width, 0.0);
  t.cost.assign(t.width, 0.0);
  t.basis.assign(m, 0);
  t.row_active.assign(m, true);

  std::size_t art = struct_cols + m;
  for (std::size_t i = 0; i < m; ++i) {
    double* r = t.row(i);
    const double s = b[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < nvars; ++j) {
      const double v = s * lp.lhs[i][j];
      r[pos_col[j]] = v;
      if (neg_col[j] != SIZE_MAX) r[neg_col[j]] = -v;
    }
    r[struct_cols + i] = s;  // slack
    r[t.cols] = s * b[i];
    if (b[i] < 0.0) {
      r[art] = 1.0;
      t.basis[i] = art++;
    } else {
      t.basis[i] = struct_cols + i;
    }
  }

  std::vector<bool> usable(t.cols, true);

  // Phase 1: minimize the artificial sum.
  if (n_art > 0) {
    for (std::size_t j = struct_cols + m; j < t.cols; ++j) t.cost[j] = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis[i] < struct_cols + m) continue;
      double* r = t.row(i);
      for (std::size_t k = 0; k < t.width; ++k) t.cost[k] -= r[k];
    }
    if (!t.iterate(usable))
      throw std::runtime_error("simplex: phase 1 unbounded");
    if (-t.cost[t.cols] > 1e-7)
      throw LpInfeasibleError("simplex: problem is infeasible");

    // Drive leftover artificials out of the basis; rows that cannot be
    // pivoted are redundant constraints.
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis[i] < struct_cols + m) continue;
      double* r = t.row(i);
      std::size_t j = t.cols;
      for (std::size_t k = 0; k < struct_cols + m; ++k)
        if (std::abs(r[k]) > kEps) {
          j = k;
          break;
        }
      if (j == t.cols) {
        t.row_active[i] = false;
      } else {
        t.pivot(i, j);
      }
    }
    for (std::size_t j = struct_cols + m; j < t.cols; ++j) usable[j] = false;
  }

  // Phase 2: original objective over the structural columns.
  std::fill(t.cost.begin(), t.cost.end(), 0.0);
  for (std::size_t j = 0; j < nvars; ++j) {
    t.cost[pos_col[j]] = lp.objective[j];
    if (neg_col[j] != SIZE_MAX) t.cost[neg_col[j]] = -lp.objective[j];
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!t.row_active[i]) continue;
    const double f = t.cost[t.basis[i]];
    if (f == 0.0) continue;
    double* r = t.row(i);
    for (std::size_t k = 0; k < t.width; ++k) t.cost[k] -= f * r[k];
  }
  if (!t.iterate(usable))
    throw LpUnboundedError("simplex: objective is unbounded below");

  // Extract the solution in the original variable space.
  std::vector<double> shifted(t.cols, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (t.row_active[i]) shifted[t.basis[i]] = t.rhs(i);
  LPSolution sol;
  sol.x.assign(nvars, 0.0);
  for (std::size_t j = 0; j < nvars; ++j) {
    double v = shifted[pos_col[j]];
    if (neg_col[j] != SIZE_MAX)
      v -= shifted[neg_col[j]];
    else
      v += *lp.lower[j];
    sol.x[j] = v;
  }
  sol.objective = 0.0;
  for (std::size_t j = 0; j < nvars; ++j)
    sol.objective += lp.objective[j] * sol.x[j];
  return sol;
}

}  // namespace noisetol
