#include "noisetol/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>

#include "noisetol/risk.hpp"
#include "noisetol/rng.hpp"

namespace noisetol {

namespace {

std::string strprintf(const char* format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

std::string indices_1based(const std::vector<std::size_t>& idx) {
  std::string s = "{";
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k) s += ",";
    s += "x" + std::to_string(idx[k] + 1);
  }
  return s + "}";
}

}  // namespace

// ---------------------------------------------------------------------------
// Check reports
// ---------------------------------------------------------------------------

bool CheckReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string CheckReport::to_table() const {
  std::size_t name_width = 0;
  for (const auto& c : checks)
    name_width = std::max(name_width, c.section.size() + c.name.size() + 1);
  std::string out;
  for (const auto& c : checks) {
    std::string label = c.section + "/" + c.name;
    label.resize(std::max(label.size(), name_width), ' ');
    out += std::string(c.pass ? "[PASS] " : "[FAIL] ") + label +
           "  computed=" + c.computed + "  expected=" + c.expected + "\n";
  }
  std::size_t passed = 0;
  for (const auto& c : checks) passed += c.pass ? 1 : 0;
  out += strprintf("%zu/%zu checks passed\n", passed, checks.size());
  return out;
}

// ---------------------------------------------------------------------------
// verify_examples
// ---------------------------------------------------------------------------

namespace {

void check_value(CheckReport& rep, const std::string& section,
                 const std::string& name, double computed, double expected,
                 double tol) {
  rep.checks.push_back({section, name, strprintf("%.10g", computed),
                        strprintf("%.10g (tol %.1g)", expected, tol),
                        std::abs(computed - expected) <= tol});
}

void check_sets(CheckReport& rep, const std::string& section,
                const std::string& name, const std::vector<std::size_t>& got,
                const std::vector<std::size_t>& want) {
  rep.checks.push_back({section, name, indices_1based(got),
                        indices_1based(want), got == want});
}

void check_flag(CheckReport& rep, const std::string& section,
                const std::string& name, bool ok, const std::string& computed,
                const std::string& expected) {
  rep.checks.push_back({section, name, computed, expected, ok});
}

std::vector<double> example1_etas() {
  std::vector<double> etas(16, 0.2);
  etas[8] = 0.125;                     // x9
  etas[2] = etas[4] = etas[6] = 0.4;   // x3, x5, x7
  return etas;
}

// Rates used in the circle counter-example.  The reference minimizer
// [-0.342, 0.988] is the exact normal-equations solution for rate 0.35 on
// the two arcs; 0.4 yields [-0.391, 0.947] with the same mistakes.
std::vector<double> example2_etas(double rate) {
  std::vector<double> etas(36, 0.0);
  for (std::size_t i = 1; i <= 6; ++i) etas[i] = rate;     // x2..x7
  for (std::size_t i = 19; i <= 24; ++i) etas[i] = rate;   // x20..x25
  return etas;
}

}  // namespace

CheckReport verify_examples() {
  CheckReport rep;

  {  // --- example 1: 0-1 risk difference under non-uniform noise ---
    const Example1 ex = example1_dataset();
    check_sets(rep, "example1", "clean-mistake-set",
               misclassified_indices(ex.clean_classifier, ex.data),
               ex.clean_misclassified);
    check_sets(rep, "example1", "noisy-mistake-set",
               misclassified_indices(ex.noisy_classifier, ex.data),
               ex.noisy_misclassified);
    bool quadratic = true;
    for (std::size_t i = 0; i < ex.data.size(); ++i) {
      const auto p = ex.data.point(i);
      if (sign_label(p[0] * p[0] + p[1]) != ex.data.label(i)) quadratic = false;
    }
    check_flag(rep, "example1", "quadratic-labels", quadratic,
               quadratic ? "all 16 match sign(x1^2+x2)" : "mismatch",
               "y = sign(x1^2+x2)");
    check_flag(rep, "example1", "synthetic-coordinates", true,
               "coordinates are synthetic",
               "constrained only by the reference mistake sets");

    const std::vector<double> etas = example1_etas();
    check_value(rep, "example1", "risk-difference",
                risk_difference(ex.clean_classifier, ex.noisy_classifier,
                                ex.data, etas),
                0.15 / 16.0, 1e-12);
    const auto dc = zero_one_noisy_decomposition(ex.clean_classifier, ex.data,
                                                 etas);
    const auto dn = zero_one_noisy_decomposition(ex.noisy_classifier, ex.data,
                                                 etas);
    check_value(rep, "example1", "excess-difference", dc.excess - dn.excess,
                0.15 / 16.0, 1e-12);
    check_value(
        rep, "example1", "decomposition-identity",
        std::abs(dc.base + dc.excess -
                 expected_noisy_risk(ex.clean_classifier, ex.data, etas,
                                     LossKind::ZeroOne)) +
            std::abs(dn.base + dn.excess -
                     expected_noisy_risk(ex.noisy_classifier, ex.data, etas,
                                         LossKind::ZeroOne)),
        0.0, 1e-12);
  }

  {  // --- example 2: least squares under non-uniform noise ---
    const Dataset circle = example2_dataset();
    const LinearClassifier clean = least_squares(circle, false);
    check_value(rep, "example2", "ls-clean-w1", clean.weights[0], 0.0, 5e-3);
    check_value(rep, "example2", "ls-clean-w2", clean.weights[1], 1.2748,
                5e-3);
    check_value(rep, "example2", "ls-clean-accuracy", accuracy(clean, circle),
                1.0, 1e-12);

    const LinearClassifier noisy =
        least_squares(circle, false, example2_etas(0.35));
    check_value(rep, "example2", "ls-noisy-w1", noisy.weights[0], -0.342,
                5e-3);
    check_value(rep, "example2", "ls-noisy-w2", noisy.weights[1], 0.988, 5e-3);
    check_value(rep, "example2", "ls-noisy-accuracy", accuracy(noisy, circle),
                8.0 / 9.0, 1e-12);
    check_sets(rep, "example2", "ls-noisy-mistake-set",
               misclassified_indices(noisy, circle), {0, 1, 18, 19});

    // The same qualitative failure at the rate 0.4.
    const LinearClassifier noisy4 =
        least_squares(circle, false, example2_etas(0.4));
    check_value(rep, "example2", "ls-noisy-accuracy-rate0.4",
                accuracy(noisy4, circle), 8.0 / 9.0, 1e-12);

    // Uniform-noise scaling of the minimizer.
    const std::vector<double> uni(36, 0.3);
    const LinearClassifier scaled = least_squares(circle, false, uni);
    check_value(rep, "example2", "uniform-scaling",
                std::abs(scaled.weights[0] - 0.4 * clean.weights[0]) +
                    std::abs(scaled.weights[1] - 0.4 * clean.weights[1]),
                0.0, 1e-10);
  }

  const Dataset line = example3_dataset();
  const std::vector<double> uni3(3, 0.3);

  {  // --- example 3: exponential loss, bias-only family sign(x + b) ---
    const LinearClassifier clean = minimize_smooth_convex(
        line, LossKind::Exponential, {}, std::vector<double>{1.0});
    check_value(rep, "example3", "exp-bias-clean", clean.bias, -10.5034, 1e-3);
    check_sets(rep, "example3", "exp-clean-mistake-set",
               misclassified_indices(clean, line), {});
    const LinearClassifier noisy = minimize_smooth_convex(
        line, LossKind::Exponential, uni3, std::vector<double>{1.0});
    check_value(rep, "example3", "exp-bias-noisy", noisy.bias, -8.3052, 1e-3);
    check_sets(rep, "example3", "exp-noisy-mistake-set",
               misclassified_indices(noisy, line), {1});
  }

  {  // --- example 4: log loss on the same data ---
    const LinearClassifier clean = minimize_smooth_convex(
        line, LossKind::Log, {}, std::vector<double>{1.0});
    check_value(rep, "example4", "log-bias-clean", clean.bias, -10.5086, 1e-3);
    const LinearClassifier noisy = minimize_smooth_convex(
        line, LossKind::Log, uni3, std::vector<double>{1.0});
    check_value(rep, "example4", "log-bias-noisy", noisy.bias, -9.8607, 1e-3);
    check_sets(rep, "example4", "log-noisy-mistake-set",
               misclassified_indices(noisy, line), {1});
  }

  {  // --- example 5: hinge loss via the linear program ---
    const HingeSolution clean = minimize_hinge(line);
    check_value(rep, "example5", "hinge-clean-objective", clean.objective, 0.0,
                1e-9);
    check_sets(rep, "example5", "hinge-clean-mistake-set",
               misclassified_indices(clean.classifier, line), {});
    // The reference optimum (54.7738, -571.221) also attains objective 0.
    const LinearClassifier ref_clean{{54.7738}, -571.221};
    check_flag(rep, "example5", "hinge-clean-not-above-reference",
               clean.objective <=
                   empirical_risk(ref_clean, line, LossKind::Hinge) + 1e-9,
               strprintf("%.12g", clean.objective),
               strprintf("<= %.12g", empirical_risk(ref_clean, line,
                                                    LossKind::Hinge)));

    const HingeSolution noisy = minimize_hinge(line, uni3);
    check_sets(rep, "example5", "hinge-noisy-mistake-set",
               misclassified_indices(noisy.classifier, line), {1});
    check_value(rep, "example5", "hinge-noisy-objective", noisy.objective,
                37.0 / 45.0, 1e-6);
    const LinearClassifier ref_noisy{{0.3333}, -2.6667};
    const double ref_value =
        expected_noisy_risk(ref_noisy, line, uni3, LossKind::Hinge);
    check_flag(rep, "example5", "hinge-noisy-not-above-reference",
               noisy.objective <= ref_value + 1e-9,
               strprintf("%.12g", noisy.objective),
               strprintf("<= %.12g", ref_value));
  }

  return rep;
}

// ---------------------------------------------------------------------------
// verify_theorems
// ---------------------------------------------------------------------------

namespace {

Dataset random_dataset(rng::Stream& stream, std::size_t n, std::size_t d,
                       bool random_weights) {
  std::vector<double> features(n * d);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j)
      features[i * d + j] = stream.uniform(-3.0, 3.0);
    labels[i] = stream.uniform01() < 0.5 ? +1 : -1;
  }
  if (!random_weights)
    return Dataset::with_uniform_weights(std::move(features),
                                         std::move(labels), d);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& v : w) {
    v = 0.1 + stream.uniform01();
    total += v;
  }
  for (auto& v : w) v /= total;
  // renormalize the tail so the masses sum to 1 exactly enough
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) sum += w[i];
  w[n - 1] = 1.0 - sum;
  return Dataset(std::move(features), std::move(labels), std::move(w), d);
}

// Random linearly separable sample with a margin floor, labeled by a random
// hyperplane.
Dataset random_separable_dataset(rng::Stream& stream, std::size_t n,
                                 std::size_t d, double margin) {
  std::vector<double> w(d);
  double norm = 0.0;
  for (auto& v : w) {
    v = stream.normal01();
    norm += v * v;
  }
  norm = std::sqrt(std::max(norm, 1e-12));
  for (auto& v : w) v /= norm;
  const double b = stream.uniform(-0.5, 0.5);

  std::vector<double> features;
  std::vector<int> labels;
  std::size_t pos = 0, neg = 0;
  while (labels.size() < n) {
    std::vector<double> p(d);
    double s = b;
    for (std::size_t j = 0; j < d; ++j) {
      p[j] = stream.uniform(-2.0, 2.0);
      s += w[j] * p[j];
    }
    if (std::abs(s) < margin) continue;
    // keep both classes populated
    if (labels.size() + 2 >= n && ((s >= 0 && neg == 0) || (s < 0 && pos == 0)))
      continue;
    features.insert(features.end(), p.begin(), p.end());
    labels.push_back(sign_label(s));
    (s >= 0 ? pos : neg) += 1;
  }
  return Dataset::with_uniform_weights(std::move(features), std::move(labels),
                                       d);
}

LinearClassifier random_classifier(rng::Stream& stream, std::size_t d) {
  LinearClassifier f;
  f.weights.resize(d);
  for (auto& v : f.weights) v = stream.normal01();
  f.bias = stream.normal01();
  return f;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    ab += a[j] * b[j];
    aa += a[j] * a[j];
    bb += b[j] * b[j];
  }
  return ab / std::sqrt(aa * bb);
}

// Two Gaussian-ish clouds for the Fisher-direction checks.
Dataset random_two_cloud_dataset(rng::Stream& stream, std::size_t n,
                                 std::size_t d) {
  std::vector<double> features;
  std::vector<int> labels;
  std::vector<double> mu1(d), mu2(d);
  for (std::size_t j = 0; j < d; ++j) {
    mu1[j] = stream.uniform(-2.0, 2.0);
    mu2[j] = stream.uniform(-2.0, 2.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const bool first = i < n / 2;
    for (std::size_t j = 0; j < d; ++j)
      features.push_back((first ? mu1[j] : mu2[j]) + 0.7 * stream.normal01());
    labels.push_back(first ? +1 : -1);
  }
  return Dataset::with_uniform_weights(std::move(features), std::move(labels),
                                       d);
}

ClassMoments mixed_moments(const ClassMoments& m, double eta_pos,
                           double eta_neg) {
  ClassMoments out = m;
  for (std::size_t j = 0; j < m.grand_mean.size(); ++j) {
    out.mean_pos[j] =
        (1.0 - eta_pos) * m.mean_pos[j] + eta_pos * m.mean_neg[j];
    out.mean_neg[j] =
        (1.0 - eta_neg) * m.mean_neg[j] + eta_neg * m.mean_pos[j];
  }
  return out;
}

}  // namespace

CheckReport verify_theorems(const SolverConfig& config,
                            std::size_t num_random_instances) {
  if (num_random_instances == 0)
    throw std::invalid_argument("verify_theorems: need at least one instance");
  CheckReport rep;
  const std::size_t m = num_random_instances;

  {  // (a) R^eta(f) = eta + (1-2 eta) R(f) for the 0-1 loss, uniform noise
    rng::Stream stream = rng::Stream::derived(config.seed, {101});
    double max_dev = 0.0;
    const std::size_t cases = std::max<std::size_t>(100, m);
    for (std::size_t t = 0; t < cases; ++t) {
      const Dataset data =
          random_dataset(stream, 5 + stream.below(26), 2, t % 2 == 1);
      const LinearClassifier f = random_classifier(stream, 2);
      const double eta = stream.uniform(0.0, 0.4999);
      const std::vector<double> etas(data.size(), eta);
      const double lhs =
          expected_noisy_risk(f, data, etas, LossKind::ZeroOne);
      const double rhs =
          eta + (1.0 - 2.0 * eta) * empirical_risk(f, data, LossKind::ZeroOne);
      max_dev = std::max(max_dev, std::abs(lhs - rhs));
    }
    check_value(rep, "zero-one", "uniform-affine-identity", max_dev, 0.0,
                1e-12);
  }

  {  // (b) uniform noise leaves the exact 0-1 minimizer's accuracy unchanged
    rng::Stream stream = rng::Stream::derived(config.seed, {102});
    double max_dev = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
      const Dataset data =
          random_dataset(stream, 8 + stream.below(13), 2, false);
      const double eta = stream.uniform(0.05, 0.45);
      const std::vector<double> etas(data.size(), eta);
      const auto clean = minimize_zero_one_exact(data);
      const auto noisy = minimize_zero_one_exact(data, etas);
      max_dev = std::max(max_dev,
                         std::abs(accuracy(clean.classifier, data) -
                                  accuracy(noisy.classifier, data)));
    }
    check_value(rep, "zero-one", "uniform-minimizer-accuracy-gap", max_dev,
                0.0, 1e-12);
  }

  {  // (c) zero clean risk: tolerant even under non-uniform noise
    rng::Stream stream = rng::Stream::derived(config.seed, {103});
    double min_acc = 1.0;
    for (std::size_t t = 0; t < m; ++t) {
      const Dataset data =
          random_separable_dataset(stream, 16 + stream.below(17), 2, 0.05);
      std::vector<double> etas(data.size());
      for (auto& e : etas) e = stream.uniform(0.0, 0.49);
      const auto noisy = minimize_zero_one_exact(data, etas);
      min_acc = std::min(min_acc, accuracy(noisy.classifier, data));
    }
    check_value(rep, "zero-one", "separable-nonuniform-accuracy", min_acc,
                1.0, 1e-12);
  }

  {  // (c') the circle data with its reference arc noise pattern
    const Dataset circle = example2_dataset();
    std::vector<double> etas(36, 0.0);
    for (std::size_t i = 1; i <= 6; ++i) etas[i] = 0.4;
    for (std::size_t i = 19; i <= 24; ++i) etas[i] = 0.4;
    const auto sol = minimize_zero_one_exact(circle, etas);
    double floor = 0.0;
    for (std::size_t i = 0; i < circle.size(); ++i)
      floor += circle.weight(i) * etas[i];
    check_value(rep, "zero-one", "circle-noisy-risk-floor",
                sol.risk - floor, 0.0, 1e-12);
    check_value(rep, "zero-one", "circle-clean-accuracy",
                accuracy(sol.classifier, circle), 1.0, 1e-12);
  }

  {  // (d) least-squares (1 - 2 eta) scaling with identical predictions
    rng::Stream stream = rng::Stream::derived(config.seed, {104});
    double max_dev = 0.0;
    bool signs_equal = true;
    for (std::size_t t = 0; t < m; ++t) {
      const std::size_t d = 2 + stream.below(2);
      const Dataset data =
          random_dataset(stream, 8 + stream.below(33), d, t % 2 == 0);
      LinearClassifier base;
      try {
        base = least_squares(data, true);
      } catch (const std::exception&) {
        continue;  // singular moment matrix; skip degenerate draw
      }
      for (double eta : {0.1, 0.25, 0.4}) {
        const std::vector<double> etas(data.size(), eta);
        const LinearClassifier noisy = least_squares(data, true, etas);
        const double factor = 1.0 - 2.0 * eta;
        for (std::size_t j = 0; j < d; ++j)
          max_dev = std::max(
              max_dev, std::abs(noisy.weights[j] - factor * base.weights[j]));
        max_dev = std::max(max_dev, std::abs(noisy.bias - factor * base.bias));
        for (std::size_t i = 0; i < data.size(); ++i)
          if (sign_label(base.score(data.point(i))) !=
              sign_label(noisy.score(data.point(i))))
            signs_equal = false;
      }
    }
    check_value(rep, "least-squares", "scaling-max-deviation", max_dev, 0.0,
                1e-10);
    check_flag(rep, "least-squares", "scaling-identical-predictions",
               signs_equal, signs_equal ? "identical" : "diverged",
               "identical sign predictions");
  }

  {  // (e) Fisher direction invariance under expected mean mixtures
    rng::Stream stream = rng::Stream::derived(config.seed, {105});
    double min_cos_uniform = 1.0, min_cos_cccn = 1.0;
    for (std::size_t t = 0; t < m; ++t) {
      const std::size_t d = 2 + stream.below(3);
      const Dataset data =
          random_two_cloud_dataset(stream, 20 + stream.below(21), d);
      const ClassMoments moments = class_moments(data);
      const std::vector<double> base = fld_direction(moments);

      const double eta = stream.uniform(0.05, 0.45);
      min_cos_uniform = std::min(
          min_cos_uniform,
          cosine(base, fld_direction(mixed_moments(moments, eta, eta))));

      const double eta1 = stream.uniform(0.05, 0.45);
      const double eta2 = stream.uniform(0.05, 0.45);
      min_cos_cccn = std::min(
          min_cos_cccn,
          cosine(base, fld_direction(mixed_moments(moments, eta1, eta2))));
    }
    check_value(rep, "fld", "uniform-direction-cosine",
                min_cos_uniform, 1.0, 1e-10);
    check_value(rep, "fld", "cccn-direction-cosine", min_cos_cccn,
                1.0, 1e-10);
  }

  return rep;
}

// ---------------------------------------------------------------------------
// Experiment harness
// ---------------------------------------------------------------------------

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::ZeroOne: return "zero-one";
    case Algorithm::Hinge: return "hinge";
    case Algorithm::LeastSquares: return "least-squares";
    case Algorithm::LogLoss: return "log";
    case Algorithm::Fld: return "fld";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
  for (Algorithm a : all_algorithms())
    if (name == algorithm_name(a)) return a;
  return std::nullopt;
}

std::vector<Algorithm> all_algorithms() {
  return {Algorithm::ZeroOne, Algorithm::Hinge, Algorithm::LeastSquares,
          Algorithm::LogLoss, Algorithm::Fld};
}

namespace {

LinearClassifier train(Algorithm algo, const Dataset& noisy_train,
                       const SolverConfig& base_config,
                       std::uint64_t trial_seed, std::size_t algo_index) {
  switch (algo) {
    case Algorithm::ZeroOne: {
      SolverConfig cfg = base_config;
      cfg.seed = rng::derive_seed(trial_seed, {1000 + algo_index});
      return minimize_zero_one_stochastic(noisy_train, cfg);
    }
    case Algorithm::Hinge:
      return minimize_hinge(noisy_train).classifier;
    case Algorithm::LeastSquares:
      return least_squares(noisy_train, true);
    case Algorithm::LogLoss:
      return minimize_smooth_convex(noisy_train, LossKind::Log, {},
                                    std::nullopt, base_config);
    case Algorithm::Fld:
      return fld_min_error_threshold(noisy_train);
  }
  throw std::logic_error("unknown algorithm");
}

}  // namespace

ExperimentReport run_experiment(const Dataset& data,
                                const std::string& dataset_name,
                                const std::string& positive_label,
                                std::size_t trials, std::uint64_t master_seed,
                                const std::vector<NoiseSpec>& noise_list,
                                const std::vector<Algorithm>& algorithms,
                                const SolverConfig& config) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (noise_list.empty())
    throw std::invalid_argument("noise list must be nonempty");
  if (algorithms.empty())
    throw std::invalid_argument("algorithm list must be nonempty");
  config.validate();

  ExperimentReport rep;
  rep.dataset_name = dataset_name;
  rep.positive_label = positive_label;
  rep.algorithms = algorithms;
  rep.master_seed = master_seed;
  rep.trials_requested = trials;
  for (const auto& spec : noise_list) rep.noise_labels.push_back(to_text(spec));
  rep.cells.assign(noise_list.size(),
                   std::vector<CellStats>(algorithms.size()));

  std::vector<std::vector<std::vector<double>>> accs(
      noise_list.size(), std::vector<std::vector<double>>(algorithms.size()));

  for (std::size_t ni = 0; ni < noise_list.size(); ++ni) {
    for (std::size_t ti = 0; ti < trials; ++ti) {
      const std::uint64_t trial_seed = rng::derive_seed(master_seed, {ni, ti});
      const NoisyDataset noisy = inject(data, noise_list[ni], trial_seed);
      const Dataset noisy_train = noisy.realized();
      for (std::size_t ai = 0; ai < algorithms.size(); ++ai) {
        try {
          const LinearClassifier f =
              train(algorithms[ai], noisy_train, config, trial_seed, ai);
          const double acc = accuracy(f, data);
          accs[ni][ai].push_back(acc);
          rep.trials.push_back({algorithms[ai], rep.noise_labels[ni],
                                trial_seed, acc});
        } catch (const std::exception& e) {
          rep.cells[ni][ai].errors.push_back(
              strprintf("trial %zu: %s", ti, e.what()));
        }
      }
    }
  }

  for (std::size_t ni = 0; ni < noise_list.size(); ++ni) {
    for (std::size_t ai = 0; ai < algorithms.size(); ++ai) {
      auto& cell = rep.cells[ni][ai];
      const auto& v = accs[ni][ai];
      cell.trials = v.size();
      if (v.empty()) continue;
      double mean = 0.0;
      for (double a : v) mean += a;
      mean /= static_cast<double>(v.size());
      double var = 0.0;
      for (double a : v) var += (a - mean) * (a - mean);
      cell.mean = mean;
      cell.std_dev =
          v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1))
                       : 0.0;
    }
  }
  return rep;
}

std::string ExperimentReport::to_csv() const {
  std::string out = "noise,algorithm,mean,std,trials\n";
  for (std::size_t ni = 0; ni < noise_labels.size(); ++ni) {
    for (std::size_t ai = 0; ai < algorithms.size(); ++ai) {
      const auto& c = cells[ni][ai];
      out += noise_labels[ni];
      out += ",";
      out += algorithm_name(algorithms[ai]);
      if (c.trials > 0) {
        out += strprintf(",%.6f,%.6f,%zu\n", c.mean, c.std_dev, c.trials);
      } else {
        out += strprintf(",,,%zu\n", c.trials);
      }
    }
  }
  return out;
}

std::string ExperimentReport::to_table() const {
  std::string out;
  out += strprintf("dataset: %s (positive class: %s)\n", dataset_name.c_str(),
                   positive_label.c_str());
  out += strprintf("trials: %zu  seed: %llu\n", trials_requested,
                   static_cast<unsigned long long>(master_seed));
  out += "clean-data accuracy, mean+-std over trials\n\n";

  std::size_t label_w = 5;
  for (const auto& l : noise_labels) label_w = std::max(label_w, l.size());
  const std::size_t cell_w = 16;

  std::string header(label_w, ' ');
  std::copy_n("noise", 5, header.begin());
  for (Algorithm a : algorithms) {
    std::string name = algorithm_name(a);
    header += std::string(cell_w - std::min(cell_w - 1, name.size()), ' ') +
              name.substr(0, cell_w - 1);
  }
  out += header + "\n";

  for (std::size_t ni = 0; ni < noise_labels.size(); ++ni) {
    std::string row = noise_labels[ni];
    row.resize(label_w, ' ');
    for (std::size_t ai = 0; ai < algorithms.size(); ++ai) {
      const auto& c = cells[ni][ai];
      std::string cell =
          c.trials > 0 ? strprintf("%.4f+-%.4f", c.mean, c.std_dev)
                       : std::string("err");
      if (!c.errors.empty()) cell += "!";
      row += std::string(cell_w - std::min(cell_w - 1, cell.size()), ' ') +
             cell.substr(0, cell_w - 1);
    }
    out += row + "\n";
  }

  bool any_errors = false;
  for (const auto& row : cells)
    for (const auto& c : row)
      if (!c.errors.empty()) any_errors = true;
  if (any_errors) {
    out += "\nerrors:\n";
    for (std::size_t ni = 0; ni < noise_labels.size(); ++ni)
      for (std::size_t ai = 0; ai < algorithms.size(); ++ai)
        for (const auto& e : cells[ni][ai].errors)
          out += strprintf("  %s/%s: %s\n", noise_labels[ni].c_str(),
                           algorithm_name(algorithms[ai]), e.c_str());
  }
  return out;
}

std::string ExperimentReport::trials_to_csv() const {
  std::string out = "noise,algorithm,trial,seed,accuracy\n";
  std::map<std::pair<std::string, Algorithm>, std::size_t> counters;
  for (const auto& t : trials) {
    const std::size_t idx = counters[{t.noise_text, t.algorithm}]++;
    out += strprintf("%s,%s,%zu,%llu,%.10f\n", t.noise_text.c_str(),
                     algorithm_name(t.algorithm), idx,
                     static_cast<unsigned long long>(t.trial_seed),
                     t.clean_accuracy);
  }
  return out;
}

std::vector<NoiseSpec> default_noise_rows() {
  return {UniformNoise{0.0},
          UniformNoise{0.1},
          UniformNoise{0.2},
          UniformNoise{0.3},
          QuadrantNoise{{0.15, 0.20, 0.25, 0.30}, std::nullopt},
          QuadrantNoise{{0.30, 0.25, 0.20, 0.15}, std::nullopt}};
}

ExperimentReport run_iris(std::size_t trials, std::uint64_t master_seed,
                          const std::vector<NoiseSpec>& noise_list,
                          const std::vector<Algorithm>& algorithms,
                          const SolverConfig& config) {
  const Dataset data = iris_dataset("Iris-virginica");
  return run_experiment(data, "iris", "Iris-virginica", trials, master_seed,
                        noise_list, algorithms, config);
}

}  // namespace noisetol
