#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "blochkit/common.hpp"

namespace blochkit::detail {

// Engines are fully specified by the standard; the distributions are not, so
// uniform/normal are derived by hand to keep samples bit-identical across
// standard libraries. Every sample point gets its own engine, so the engine
// must be cheap to seed: ranlux48_base has a 12-word state (mt19937_64 needs a
// 312-word twist per point). (seed, index, stream) is folded into the engine
// seed with the splitmix64 finaliser.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t index, std::uint32_t stream = 0)
      : gen_(mix(mix(mix(seed) ^ index) ^ stream)) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_()) * 0x1.0p-48; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int index(int n) { return static_cast<int>(uniform() * n) % n; }

  /// Standard complex Gaussian (Box-Muller), E|w|^2 = 2.
  cplx complex_normal() {
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

  cplx unit_phase() {
    double t = 2.0 * std::numbers::pi * uniform();
    return {std::cos(t), std::sin(t)};
  }

  /// Uniform point in the closed unit disk of C.
  cplx in_disk(double radius = 1.0) { return radius * std::sqrt(uniform()) * unit_phase(); }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::ranlux48_base gen_;
};

}  // namespace blochkit::detail
