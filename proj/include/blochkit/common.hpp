#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace blochkit {

using cplx = std::complex<double>;

/// A point of the ambient space C^n. Matrix domains are flattened row-major
/// over their independent entries (see domain.hpp).
using Point = Eigen::VectorXcd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad descriptor, wrong point length, malformed input.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The operation has no implementation for this kind of domain.
class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

/// The Bergman metric (and everything built on it) is only available on
/// disks, balls, polydisks and their products.
class UnsupportedMetric : public UnsupportedOperation {
 public:
  using UnsupportedOperation::UnsupportedOperation;
};

/// Point outside the domain, branch-cut proximity, path leaving the domain.
class NumericalDomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

enum class EstimateMode { Exact, SampledLower, AnalyticBounds };

std::string to_string(EstimateMode mode);

/// A numeric quantity reported as [lower, upper]. `upper` may be +inf when no
/// certified upper bound is known.
struct EstimateInterval {
  double lower = 0.0;
  double upper = 0.0;
  EstimateMode mode = EstimateMode::Exact;
  long samples = 0;
  std::uint64_t seed = 0;
  std::optional<Point> argmax;

  static EstimateInterval exact(double v) { return {v, v, EstimateMode::Exact, 0, 0, {}}; }
  static EstimateInterval sampled(double lower, long samples, std::uint64_t seed,
                                  double upper = kInf) {
    return {lower, upper, EstimateMode::SampledLower, samples, seed, {}};
  }
  static EstimateInterval bounds(double lower, double upper) {
    return {lower, upper, EstimateMode::AnalyticBounds, 0, 0, {}};
  }

  bool well_formed() const {
    if (!(lower <= upper)) return false;
    return mode != EstimateMode::Exact || lower == upper;
  }
  bool has_upper() const { return upper < kInf; }
};

}  // namespace blochkit
