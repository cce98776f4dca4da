#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace noisetol::rng {

// SplitMix64 step (Steele et al.), used to hash seeds and derive substreams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent substream seed from (seed, path).  The rule is
// fixed: fold each path element into the state with SplitMix64.  All
// randomness in the project flows through this function, so a run is fully
// determined by one master seed.
inline std::uint64_t derive_seed(std::uint64_t seed,
                                 std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = splitmix64(seed);
  for (std::uint64_t id : path) {
    s = splitmix64(s ^ splitmix64(id + 0x9e3779b97f4a7c15ULL));
  }
  return s;
}

// Deterministic random stream: mt19937_64 with hand-rolled canonical
// conversions.  std::uniform_real_distribution and friends are
// implementation-defined, so we avoid them to keep byte-identical output
// across standard libraries.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  static Stream derived(std::uint64_t seed,
                        std::initializer_list<std::uint64_t> path) {
    return Stream(derive_seed(seed, path));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller.  No caching of the spare value; two
  // uniform draws per call keeps the stream position predictable.
  double normal01() {
    double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
  }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(uniform01() * static_cast<double>(n)) %
           n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace noisetol::rng
