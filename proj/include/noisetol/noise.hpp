#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "noisetol/dataset.hpp"

namespace noisetol {

// Label-noise structures.  Every rate must lie in [0, 0.5); 0 is allowed as
// the degenerate no-noise case.

struct UniformNoise {
  double rate = 0.0;
};

struct PerPointNoise {
  std::vector<double> rates;  // one per point, checked at use time
};

struct ClassConditionalNoise {
  double rate_positive = 0.0;
  double rate_negative = 0.0;
};

// Rate chosen by the quadrant of (x1 - c1, x2 - c2), counter-clockwise:
// (+,+) -> rates[0], (-,+) -> rates[1], (-,-) -> rates[2], (+,-) -> rates[3].
// Coordinates exactly on a boundary count as positive.  Without an explicit
// center the per-dataset mean of the first two features is used.
struct QuadrantNoise {
  std::array<double, 4> rates{};
  std::optional<std::array<double, 2>> center;  // nullopt = auto
};

using NoiseSpec =
    std::variant<UniformNoise, PerPointNoise, ClassConditionalNoise,
                 QuadrantNoise>;

// A noise realization.  noisy_labels[i] == base.label(i) * (flipped[i] ? -1 : +1).
struct NoisyDataset {
  Dataset base;
  std::vector<int> noisy_labels;
  std::vector<bool> flipped;
  std::uint64_t seed = 0;

  Dataset realized() const { return base.with_labels(noisy_labels); }
};

// Component-wise mean of the first two features.
std::array<double, 2> auto_center(const Dataset& data);

// Per-point flip probabilities for the given spec.  Throws
// std::invalid_argument when the spec does not fit the dataset (rate out of
// range, per-point length mismatch, quadrant noise on d < 2).
std::vector<double> flip_probabilities(const Dataset& data,
                                       const NoiseSpec& spec);

// Draws the flip mask with independent Bernoulli(eta_i) coins from a
// deterministic stream seeded by 'seed'; identical inputs give identical
// output.
NoisyDataset inject(const Dataset& data, const NoiseSpec& spec,
                    std::uint64_t seed);

// Textual form used by the CLI and in report row labels:
//   none | uniform:R | cccn:RP,RN | quadrant:R1,R2,R3,R4[,auto|,CX,CY]
//   perpoint:PATH
NoiseSpec parse_noise_spec(const std::string& text);
std::string to_text(const NoiseSpec& spec);

}  // namespace noisetol
