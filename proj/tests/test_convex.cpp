#include <doctest.h>

#include <cmath>

#include "noisetol/minimizers.hpp"
#include "noisetol/risk.hpp"
#include "noisetol/rng.hpp"

using namespace noisetol;

TEST_CASE("exponential bias optimum on the three-point line") {
  const Dataset d = example3_dataset();
  const LinearClassifier clean = minimize_smooth_convex(
      d, LossKind::Exponential, {}, std::vector<double>{1.0});
  // closed form: b* = 0.5 ln(e^-11 / (e^5 + e^10))
  const double closed =
      0.5 * std::log(std::exp(-11.0) / (std::exp(5.0) + std::exp(10.0)));
  CHECK(std::abs(clean.bias - closed) <= 1e-6);
  CHECK(std::abs(clean.bias - (-10.5034)) <= 1e-3);
  CHECK(misclassified_indices(clean, d).empty());

  const std::vector<double> etas(3, 0.3);
  const LinearClassifier noisy = minimize_smooth_convex(
      d, LossKind::Exponential, etas, std::vector<double>{1.0});
  const double closed_noisy =
      0.5 * std::log((0.7 * std::exp(-11.0) +
                      0.3 * (std::exp(-5.0) + std::exp(-10.0))) /
                     (0.7 * (std::exp(5.0) + std::exp(10.0)) +
                      0.3 * std::exp(11.0)));
  CHECK(std::abs(noisy.bias - closed_noisy) <= 1e-6);
  CHECK(std::abs(noisy.bias - (-8.3052)) <= 1e-3);
  CHECK(misclassified_indices(noisy, d) == std::vector<std::size_t>{1});
}

TEST_CASE("log-loss bias optimum on the three-point line") {
  const Dataset d = example3_dataset();
  const LinearClassifier clean =
      minimize_smooth_convex(d, LossKind::Log, {}, std::vector<double>{1.0});
  CHECK(std::abs(clean.bias - (-10.5086)) <= 1e-3);
  CHECK(misclassified_indices(clean, d).empty());

  const std::vector<double> etas(3, 0.3);
  const LinearClassifier noisy =
      minimize_smooth_convex(d, LossKind::Log, etas, std::vector<double>{1.0});
  CHECK(std::abs(noisy.bias - (-9.8607)) <= 1e-3);
  CHECK(misclassified_indices(noisy, d) == std::vector<std::size_t>{1});

  // independent optimality witness: the risk derivative vanishes at b*
  auto deriv = [&](double b, double eta) {
    auto sig = [](double z) { return 1.0 / (1.0 + std::exp(-z)); };
    double g = 0.0;
    const double xs[3] = {5.0, 10.0, 11.0};
    const int ys[3] = {-1, -1, +1};
    for (int i = 0; i < 3; ++i) {
      g += (1.0 - eta) * (-ys[i]) * sig(-ys[i] * (xs[i] + b)) / 3.0;
      g += eta * (ys[i]) * sig(ys[i] * (xs[i] + b)) / 3.0;
    }
    return g;
  };
  CHECK(std::abs(deriv(clean.bias, 0.0)) <= 1e-6);
  CHECK(std::abs(deriv(noisy.bias, 0.3)) <= 1e-6);
}

TEST_CASE("symmetric data puts the bias optimum at zero") {
  const Dataset d({-1.0, 1.0}, {-1, +1}, {0.5, 0.5}, 1);
  for (LossKind kind : {LossKind::Exponential, LossKind::Log}) {
    const LinearClassifier f =
        minimize_smooth_convex(d, kind, {}, std::vector<double>{1.0});
    CHECK(std::abs(f.bias) <= 1e-7);
  }
}

TEST_CASE("single-sign effective labels are rejected as unbounded") {
  const Dataset d({1.0, 2.0}, {+1, +1}, {0.5, 0.5}, 1);
  CHECK_THROWS_AS(minimize_smooth_convex(d, LossKind::Exponential, {},
                                         std::vector<double>{1.0}),
                  UnboundedObjectiveError);
  CHECK_THROWS_AS(minimize_smooth_convex(d, LossKind::Log),
                  UnboundedObjectiveError);
  // any positive noise restores both effective signs
  const std::vector<double> etas(2, 0.2);
  CHECK_NOTHROW(minimize_smooth_convex(d, LossKind::Exponential, etas,
                                       std::vector<double>{1.0}));
}

TEST_CASE("squared loss is not accepted by the smooth-convex solver") {
  const Dataset d = example3_dataset();
  CHECK_THROWS_AS(minimize_smooth_convex(d, LossKind::Squared),
                  std::invalid_argument);
}

namespace {

// random two-class sample that provably attains its risk infimum: it
// contains one duplicated point carrying both labels
Dataset non_separable_sample(rng::Stream& stream, std::size_t n,
                             std::size_t d) {
  std::vector<double> f;
  std::vector<int> y;
  std::vector<double> dup(d);
  for (auto& v : dup) v = stream.uniform(-2.0, 2.0);
  for (int copy = 0; copy < 2; ++copy) {
    f.insert(f.end(), dup.begin(), dup.end());
    y.push_back(copy == 0 ? +1 : -1);
  }
  while (y.size() < n) {
    for (std::size_t j = 0; j < d; ++j) f.push_back(stream.uniform(-2.0, 2.0));
    y.push_back(stream.uniform01() < 0.5 ? +1 : -1);
  }
  return Dataset::with_uniform_weights(std::move(f), std::move(y), d);
}

double objective_at(const Dataset& d, LossKind kind,
                    std::span<const double> etas, const LinearClassifier& f) {
  return etas.empty() ? empirical_risk(f, d, kind)
                      : expected_noisy_risk(f, d, etas, kind);
}

}  // namespace

TEST_CASE("newton path: optimality against random probes") {
  rng::Stream stream(61);
  for (LossKind kind : {LossKind::Exponential, LossKind::Log}) {
    for (int t = 0; t < 5; ++t) {
      const Dataset d = non_separable_sample(stream, 20, 2);
      std::vector<double> etas;
      if (t % 2 == 1) {
        etas.assign(d.size(), 0.0);
        for (auto& e : etas) e = stream.uniform(0.0, 0.4);
      }
      const LinearClassifier f = minimize_smooth_convex(d, kind, etas);
      const double opt = objective_at(d, kind, etas, f);
      for (int p = 0; p < 100; ++p) {
        const LinearClassifier probe{
            {stream.normal01(), stream.normal01()}, stream.normal01()};
        CHECK(opt <= objective_at(d, kind, etas, probe) + 1e-9);
      }
      // gradient norm at the solution is below tol
      double g0 = 0.0, g1 = 0.0, gb = 0.0;
      for (std::size_t i = 0; i < d.size(); ++i) {
        const auto p = d.point(i);
        const double s = f.score(p);
        const int y = d.label(i);
        const double e = etas.empty() ? 0.0 : etas[i];
        auto dl = [&](int lab) {
          const double mm = lab * s;
          if (kind == LossKind::Exponential)
            return -lab * std::exp(std::min(-mm, 700.0));
          return -lab / (1.0 + std::exp(mm));
        };
        const double g = d.weight(i) * ((1.0 - e) * dl(y) + e * dl(-y));
        g0 += g * p[0];
        g1 += g * p[1];
        gb += g;
      }
      CHECK(std::sqrt(g0 * g0 + g1 * g1 + gb * gb) <= 1e-8);
    }
  }
}

TEST_CASE("newton path handles separable data by flattening out") {
  const Dataset d = example3_dataset();
  for (LossKind kind : {LossKind::Exponential, LossKind::Log}) {
    const LinearClassifier f = minimize_smooth_convex(d, kind);
    CHECK(misclassified_indices(f, d).empty());
  }
}
