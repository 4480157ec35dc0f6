#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "blochkit/domain.hpp"

namespace blochkit {

/// Sampling configuration shared by every sup-estimating operation.
struct SamplingConfig {
  int samples = 20000;
  std::uint64_t seed = 42;
  std::vector<double> shells = kDefaultShells;
  /// Golden-section steps per coordinate line search.
  int refine_iters = 50;
  /// Number of best samples used as local-search starts.
  int restarts = 5;
  /// Coordinate sweeps per start.
  int sweeps = 2;
};

struct SupResult {
  double value = 0.0;
  Point argmax;
};

/// Max of `objective` over the stratified interior sample, followed by
/// coordinatewise golden-section ascent (over the real and imaginary part of
/// every coordinate) from the `restarts` best samples. Points where the
/// objective throws NumericalDomainError count as -inf.
SupResult sampled_supremum(const DomainDescriptor& d, const std::function<double(const Point&)>& objective,
                           const SamplingConfig& cfg);

/// Coordinatewise golden-section ascent from `start`; never returns a value
/// below objective(start).
SupResult refine_local_max(const DomainDescriptor& d, const std::function<double(const Point&)>& objective,
                           const Point& start, int iters, int sweeps);

}  // namespace blochkit
