#include <doctest.h>

#include <cmath>

#include "noisetol/noise.hpp"
#include "noisetol/risk.hpp"
#include "noisetol/rng.hpp"

using namespace noisetol;

TEST_CASE("pointwise losses match their definitions") {
  CHECK(loss(LossKind::Hinge, 2.0, +1) == 0.0);
  CHECK(loss(LossKind::Hinge, 0.5, +1) == doctest::Approx(0.5));
  CHECK(loss(LossKind::Exponential, 0.0, +1) == 1.0);
  CHECK(loss(LossKind::Exponential, 0.0, -1) == 1.0);
  CHECK(loss(LossKind::Squared, 0.5, +1) == doctest::Approx(0.25));
  CHECK(loss(LossKind::ZeroOne, -0.1, +1) == 1.0);
  // sign(0) == +1
  CHECK(loss(LossKind::ZeroOne, 0.0, +1) == 0.0);
  CHECK(loss(LossKind::ZeroOne, 0.0, -1) == 1.0);
  CHECK(loss(LossKind::Log, 0.0, +1) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("log and exponential losses stay finite at extreme scores") {
  CHECK(std::isfinite(loss(LossKind::Log, -1000.0, +1)));
  CHECK(loss(LossKind::Log, -1000.0, +1) == doctest::Approx(1000.0));
  CHECK(loss(LossKind::Log, 1000.0, +1) == 0.0);
  CHECK(std::isfinite(loss(LossKind::Exponential, -1000.0, +1)));
  CHECK(loss(LossKind::Exponential, 1000.0, +1) == 0.0);
}

TEST_CASE("all losses except zero-one are midpoint convex in the score") {
  rng::Stream stream(31);
  for (LossKind kind : {LossKind::Squared, LossKind::Exponential,
                        LossKind::Log, LossKind::Hinge}) {
    for (int t = 0; t < 400; ++t) {
      const double s1 = stream.uniform(-30.0, 30.0);
      const double s2 = stream.uniform(-30.0, 30.0);
      const int y = stream.uniform01() < 0.5 ? +1 : -1;
      const double mid = loss(kind, 0.5 * (s1 + s2), y);
      const double avg = 0.5 * (loss(kind, s1, y) + loss(kind, s2, y));
      CHECK(mid <= avg + 1e-12 * std::max(1.0, avg));
    }
  }
}

TEST_CASE("empirical risk on the three-point line") {
  const Dataset d = example3_dataset();
  CHECK(empirical_risk({{1.0}, -10.5}, d, LossKind::ZeroOne) == 0.0);

  // frozen reference: direct evaluation of the exponential risk formula
  const double b = -10.5034;
  const double expect =
      (std::exp(5.0 + b) + std::exp(10.0 + b) + std::exp(-11.0 - b)) / 3.0;
  CHECK(empirical_risk({{1.0}, b}, d, LossKind::Exponential) ==
        doctest::Approx(expect).epsilon(1e-12));

  // single correctly classified point at margin 1 has zero hinge risk
  const Dataset one({2.0}, {+1}, {1.0}, 1);
  CHECK(empirical_risk({{1.0}, -1.0}, one, LossKind::Hinge) == 0.0);

  CHECK_THROWS_AS(empirical_risk({{1.0, 2.0}, 0.0}, d, LossKind::ZeroOne),
                  std::invalid_argument);
}

TEST_CASE("accuracy on the circle data") {
  const Dataset d = example2_dataset();
  CHECK(accuracy({{0.0, 1.27}, 0.0}, d) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(accuracy({{-0.342, 0.988}, 0.0}, d) ==
        doctest::Approx(8.0 / 9.0).epsilon(1e-12));
  CHECK(misclassified_indices({{-0.342, 0.988}, 0.0}, d) ==
        std::vector<std::size_t>{0, 1, 18, 19});

  // flipping every label turns a perfect classifier into an all-wrong one
  std::vector<int> flipped = d.labels();
  for (auto& y : flipped) y = -y;
  CHECK(accuracy({{0.0, 1.27}, 0.0}, d.with_labels(flipped)) == 0.0);
}

TEST_CASE("expected noisy risk reduces to empirical risk at eta = 0") {
  const Dataset d = example3_dataset();
  const std::vector<double> zeros(3, 0.0);
  const LinearClassifier f{{1.0}, -9.7};
  for (LossKind kind : {LossKind::ZeroOne, LossKind::Squared,
                        LossKind::Exponential, LossKind::Log,
                        LossKind::Hinge}) {
    CHECK(expected_noisy_risk(f, d, zeros, kind) ==
          doctest::Approx(empirical_risk(f, d, kind)).epsilon(1e-15));
  }
}

TEST_CASE("expected noisy exponential risk matches the mixture formula") {
  const Dataset d = example3_dataset();
  const std::vector<double> etas(3, 0.3);
  for (double b : {-9.0, -8.3052, -11.5}) {
    const double expect =
        (0.7 / 3.0) *
            (std::exp(5.0 + b) + std::exp(10.0 + b) + std::exp(-11.0 - b)) +
        (0.3 / 3.0) *
            (std::exp(-5.0 - b) + std::exp(-10.0 - b) + std::exp(11.0 + b));
    CHECK(expected_noisy_risk({{1.0}, b}, d, etas, LossKind::Exponential) ==
          doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("eta validation") {
  const Dataset d = example3_dataset();
  const LinearClassifier f{{1.0}, 0.0};
  CHECK_THROWS_AS(
      expected_noisy_risk(f, d, std::vector<double>{0.1}, LossKind::ZeroOne),
      std::invalid_argument);
  CHECK_THROWS_AS(expected_noisy_risk(f, d, std::vector<double>{0.1, 0.5, 0.1},
                                      LossKind::ZeroOne),
                  std::invalid_argument);
}

namespace {

Dataset make_dataset(rng::Stream& stream, std::size_t n) {
  std::vector<double> f(n * 2);
  std::vector<int> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[2 * i] = stream.uniform(-3.0, 3.0);
    f[2 * i + 1] = stream.uniform(-3.0, 3.0);
    y[i] = stream.uniform01() < 0.5 ? +1 : -1;
  }
  return Dataset::with_uniform_weights(std::move(f), std::move(y), 2);
}

LinearClassifier random_f(rng::Stream& stream) {
  return {{stream.normal01(), stream.normal01()}, stream.normal01()};
}

}  // namespace

TEST_CASE("uniform-noise affine identity for the 0-1 loss") {
  rng::Stream stream(7);
  for (int t = 0; t < 100; ++t) {
    const Dataset d = make_dataset(stream, 5 + stream.below(20));
    const LinearClassifier f = random_f(stream);
    const double eta = stream.uniform(0.0, 0.4999);
    const std::vector<double> etas(d.size(), eta);
    const double lhs = expected_noisy_risk(f, d, etas, LossKind::ZeroOne);
    const double rhs =
        eta + (1.0 - 2.0 * eta) * empirical_risk(f, d, LossKind::ZeroOne);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("uniform noise preserves the 0-1 risk ordering") {
  rng::Stream stream(11);
  for (int t = 0; t < 200; ++t) {
    const Dataset d = make_dataset(stream, 12);
    const LinearClassifier f1 = random_f(stream);
    const LinearClassifier f2 = random_f(stream);
    const double eta = stream.uniform(0.01, 0.49);
    const std::vector<double> etas(d.size(), eta);
    const double r1 = empirical_risk(f1, d, LossKind::ZeroOne);
    const double r2 = empirical_risk(f2, d, LossKind::ZeroOne);
    const double n1 = expected_noisy_risk(f1, d, etas, LossKind::ZeroOne);
    const double n2 = expected_noisy_risk(f2, d, etas, LossKind::ZeroOne);
    if (r1 < r2 - 1e-12) CHECK(n1 < n2 + 1e-12);
    if (r2 < r1 - 1e-12) CHECK(n2 < n1 + 1e-12);
  }
}

TEST_CASE("zero-one decomposition identity") {
  rng::Stream stream(13);
  for (int t = 0; t < 100; ++t) {
    const Dataset d = make_dataset(stream, 6 + stream.below(14));
    const LinearClassifier f = random_f(stream);
    std::vector<double> etas(d.size());
    for (auto& e : etas) e = stream.uniform(0.0, 0.4999);
    const auto dec = zero_one_noisy_decomposition(f, d, etas);
    const double full = expected_noisy_risk(f, d, etas, LossKind::ZeroOne);
    CHECK(std::abs(dec.base + dec.excess - full) <= 1e-12);
  }

  // eta = 0: base vanishes, excess is the empirical risk
  const Dataset d = example3_dataset();
  const std::vector<double> zeros(3, 0.0);
  const LinearClassifier f{{1.0}, -10.2};
  const auto dec = zero_one_noisy_decomposition(f, d, zeros);
  CHECK(dec.base == 0.0);
  CHECK(dec.excess ==
        doctest::Approx(empirical_risk(f, d, LossKind::ZeroOne)));

  // empty mistake set: excess 0
  const auto dec2 =
      zero_one_noisy_decomposition({{1.0}, -10.5}, d,
                                   std::vector<double>{0.1, 0.2, 0.3});
  CHECK(dec2.excess == 0.0);
}

TEST_CASE("risk difference from the mistake-set symmetric difference") {
  const Dataset circle = example2_dataset();
  const std::vector<double> etas(36, 0.2);
  const LinearClassifier perfect{{0.0, 1.0}, 0.0};
  CHECK(risk_difference(perfect, perfect, circle, etas) == 0.0);

  // f2 makes exactly 4 mistakes of weight 1/36 each
  const LinearClassifier f2{{-0.342, 0.988}, 0.0};
  CHECK(risk_difference(perfect, f2, circle, etas) ==
        doctest::Approx(-(1.0 - 2.0 * 0.2) * 4.0 / 36.0).epsilon(1e-12));

  // consistency with the expected noisy risks
  rng::Stream stream(17);
  for (int t = 0; t < 50; ++t) {
    const Dataset d = make_dataset(stream, 15);
    const LinearClassifier a = random_f(stream);
    const LinearClassifier b = random_f(stream);
    std::vector<double> e(d.size());
    for (auto& v : e) v = stream.uniform(0.0, 0.4999);
    const double direct = risk_difference(a, b, d, e);
    const double via = expected_noisy_risk(a, d, e, LossKind::ZeroOne) -
                       expected_noisy_risk(b, d, e, LossKind::ZeroOne);
    CHECK(std::abs(direct - via) <= 1e-12);
  }
}

TEST_CASE("expected noisy risk agrees with Monte Carlo injection") {
  const Dataset d = example3_dataset();
  const std::vector<double> etas = {0.1, 0.3, 0.2};
  const LinearClassifier f{{1.0}, -9.0};
  const std::size_t m = 2000;
  for (LossKind kind : {LossKind::ZeroOne, LossKind::Squared,
                        LossKind::Exponential, LossKind::Log,
                        LossKind::Hinge}) {
    const double expect = expected_noisy_risk(f, d, etas, kind);
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t s = 0; s < m; ++s) {
      const NoisyDataset n = inject(d, PerPointNoise{etas}, 31337 + s);
      const double r = empirical_risk(f, n.realized(), kind);
      sum += r;
      sumsq += r * r;
    }
    const double mean = sum / m;
    const double var = (sumsq / m - mean * mean) * m / (m - 1.0);
    const double se = std::sqrt(var / m);
    CHECK(std::abs(mean - expect) <= 5.0 * se + 1e-15);
  }
}
