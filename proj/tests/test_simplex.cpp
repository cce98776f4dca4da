#include <doctest.h>

#include <cmath>

#include "noisetol/minimizers.hpp"
#include "noisetol/risk.hpp"
#include "noisetol/rng.hpp"
#include "noisetol/simplex.hpp"

using namespace noisetol;

TEST_CASE("one-variable programs") {
  // min x  s.t. x >= 3
  LPProblem lp;
  lp.objective = {1.0};
  lp.lower = {3.0};
  const auto sol = simplex_solve(lp);
  CHECK(sol.x[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(sol.objective == doctest::Approx(3.0).epsilon(1e-12));

  // same optimum expressed with a constraint instead of a bound
  LPProblem lp2;
  lp2.objective = {1.0};
  lp2.lower = {0.0};
  lp2.lhs = {{-1.0}};
  lp2.rhs = {-3.0};
  CHECK(simplex_solve(lp2).objective == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("infeasible and unbounded programs are reported distinctly") {
  LPProblem bad;  // x <= 0 and x >= 1
  bad.objective = {1.0};
  bad.lower = {0.0};
  bad.lhs = {{1.0}, {-1.0}};
  bad.rhs = {0.0, -1.0};
  CHECK_THROWS_AS(simplex_solve(bad), LpInfeasibleError);

  LPProblem open;  // min -x, x >= 0
  open.objective = {-1.0};
  open.lower = {0.0};
  CHECK_THROWS_AS(simplex_solve(open), LpUnboundedError);

  LPProblem open_free;  // min x, x free
  open_free.objective = {1.0};
  open_free.lower = {std::nullopt};
  CHECK_THROWS_AS(simplex_solve(open_free), LpUnboundedError);
}

TEST_CASE("small polytope optimum") {
  // min -x - y  s.t. x + y <= 1, x, y >= 0
  LPProblem lp;
  lp.objective = {-1.0, -1.0};
  lp.lower = {0.0, 0.0};
  lp.lhs = {{1.0, 1.0}};
  lp.rhs = {1.0};
  const auto sol = simplex_solve(lp);
  CHECK(sol.objective == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("free variable via splitting: absolute deviation") {
  // min t  s.t. t >= x - 5, t >= 5 - x, x free, t >= 0  -> x = 5, t = 0
  LPProblem lp;
  lp.objective = {0.0, 1.0};
  lp.lower = {std::nullopt, 0.0};
  lp.lhs = {{1.0, -1.0}, {-1.0, -1.0}};
  lp.rhs = {5.0, -5.0};
  const auto sol = simplex_solve(lp);
  CHECK(sol.objective == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(sol.x[0] == doctest::Approx(5.0).epsilon(1e-7));
}

TEST_CASE("feasibility and probe-optimality on random bounded programs") {
  rng::Stream stream(23);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + stream.below(2);
    const std::size_t m = 2 + stream.below(3);
    LPProblem lp;
    lp.objective.resize(n);
    for (auto& c : lp.objective) c = stream.uniform(-2.0, 2.0);
    lp.lower.assign(n, 0.0);
    lp.lhs.assign(m + 1, std::vector<double>(n, 0.0));
    lp.rhs.assign(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      for (auto& a : lp.lhs[i]) a = stream.uniform(-1.0, 1.0);
      lp.rhs[i] = stream.uniform(0.5, 3.0);  // keeps the origin feasible
    }
    // bounding box row keeps every instance bounded
    for (auto& a : lp.lhs[m]) a = 1.0;
    lp.rhs[m] = 10.0;

    const auto sol = simplex_solve(lp);
    for (std::size_t i = 0; i <= m; ++i) {
      double ax = 0.0;
      for (std::size_t j = 0; j < n; ++j) ax += lp.lhs[i][j] * sol.x[j];
      CHECK(ax <= lp.rhs[i] + 1e-8);
    }
    for (double v : sol.x) CHECK(v >= -1e-9);

    // random feasible probes never beat the reported optimum
    for (int p = 0; p < 200; ++p) {
      std::vector<double> x(n);
      for (auto& v : x) v = stream.uniform(0.0, 3.0);
      bool feasible = true;
      for (std::size_t i = 0; i <= m && feasible; ++i) {
        double ax = 0.0;
        for (std::size_t j = 0; j < n; ++j) ax += lp.lhs[i][j] * x[j];
        feasible = ax <= lp.rhs[i];
      }
      if (!feasible) continue;
      double val = 0.0;
      for (std::size_t j = 0; j < n; ++j) val += lp.objective[j] * x[j];
      CHECK(sol.objective <= val + 1e-8);
    }
  }
}

// --------------------------------------------------------------------------
// hinge-risk minimization through the LP
// --------------------------------------------------------------------------

TEST_CASE("noise-free hinge program separates the three-point line") {
  const Dataset d = example3_dataset();
  const HingeSolution sol = minimize_hinge(d);
  CHECK(std::abs(sol.objective) <= 1e-9);
  CHECK(misclassified_indices(sol.classifier, d).empty());
  // the reference optimum attains the same objective
  const LinearClassifier ref{{54.7738}, -571.221};
  CHECK(sol.objective <= empirical_risk(ref, d, LossKind::Hinge) + 1e-9);
}

TEST_CASE("noisy hinge program reproduces the reference optimum") {
  const Dataset d = example3_dataset();
  const std::vector<double> etas(3, 0.3);
  const HingeSolution sol = minimize_hinge(d, etas);
  CHECK(misclassified_indices(sol.classifier, d) ==
        std::vector<std::size_t>{1});
  CHECK(sol.objective == doctest::Approx(37.0 / 45.0).epsilon(1e-9));
  // never above the quoted solution point, evaluated by direct substitution
  const LinearClassifier ref{{1.0 / 3.0}, -8.0 / 3.0};
  const double ref_value =
      expected_noisy_risk(ref, d, etas, LossKind::Hinge);
  CHECK(sol.objective <= ref_value + 1e-9);
  // and the LP objective equals the expected noisy hinge risk of its output
  CHECK(sol.objective ==
        doctest::Approx(
            expected_noisy_risk(sol.classifier, d, etas, LossKind::Hinge))
            .epsilon(1e-9));
}

TEST_CASE("hinge LP objective is never above random probes") {
  rng::Stream stream(41);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 10 + stream.below(10);
    std::vector<double> f(2 * n);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      f[2 * i] = stream.uniform(-2.0, 2.0);
      f[2 * i + 1] = stream.uniform(-2.0, 2.0);
      y[i] = stream.uniform01() < 0.5 ? +1 : -1;
    }
    const Dataset d =
        Dataset::with_uniform_weights(std::move(f), std::move(y), 2);
    std::vector<double> etas(n);
    for (auto& e : etas) e = stream.uniform(0.0, 0.45);
    const HingeSolution sol = minimize_hinge(d, etas);
    for (int p = 0; p < 100; ++p) {
      const LinearClassifier probe{
          {stream.normal01(), stream.normal01()}, stream.normal01()};
      CHECK(sol.objective <=
            expected_noisy_risk(probe, d, etas, LossKind::Hinge) + 1e-8);
    }
  }
}
