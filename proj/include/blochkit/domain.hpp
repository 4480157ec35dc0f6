#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "blochkit/common.hpp"

namespace blochkit {

enum class DomainKind {
  Disk,
  Ball,
  Polydisk,
  CartanI,
  CartanII,
  CartanIII,
  CartanIV,
  Exceptional1,
  Exceptional2,
  Product
};

/// Which bounded symmetric domain, with its dimensions.
///
/// Point layout:
///   Ball(n), Polydisk(n), CartanIV(n): n coordinates.
///   CartanI(m,n): the m x n matrix, row-major (m*n coordinates).
///   CartanII(n): symmetric n x n, entries z_ij with i <= j, row-major.
///   CartanIII(n): antisymmetric n x n, entries z_ij with i < j, row-major.
///   Exceptional1 / Exceptional2: 16 / 27 coordinates (no membership test).
///   Product: factors concatenated in order.
class DomainDescriptor {
 public:
  static DomainDescriptor disk();
  static DomainDescriptor ball(int n);
  static DomainDescriptor polydisk(int n);
  static DomainDescriptor cartan_i(int m, int n);
  static DomainDescriptor cartan_ii(int n);
  static DomainDescriptor cartan_iii(int n);
  static DomainDescriptor cartan_iv(int n);
  static DomainDescriptor exceptional1();
  static DomainDescriptor exceptional2();
  /// Nested products are flattened; at least two factors are required.
  static DomainDescriptor product(std::vector<DomainDescriptor> factors);

  DomainKind kind() const { return kind_; }
  const std::vector<int>& dims() const { return dims_; }
  const std::vector<DomainDescriptor>& factors() const { return factors_; }

  int ambient_dimension() const;
  /// Disjointness restrictions of the Cartan classification (R_II: n >= 2,
  /// R_III and R_IV: n >= 5), applied to every factor.
  bool canonical() const;
  /// Canonical string form, e.g. "product(ball:2,polydisk:1)".
  std::string to_string() const;

  bool operator==(const DomainDescriptor&) const = default;

 private:
  DomainDescriptor(DomainKind kind, std::vector<int> dims) : kind_(kind), dims_(std::move(dims)) {}

  DomainKind kind_ = DomainKind::Disk;
  std::vector<int> dims_;
  std::vector<DomainDescriptor> factors_;
};

/// Parses `disk`, `ball:n`, `polydisk:n`, `cartan1:m,n`, `cartan2:n`,
/// `cartan3:n`, `cartan4:n`, `exc1`, `exc2`, `product(a,b,...)`,
/// case-insensitively.
DomainDescriptor parse_domain(std::string_view text);

/// An irreducible piece of a domain together with its coordinate slice.
/// Polydisk(n) contributes n disk atoms.
struct DomainAtom {
  DomainDescriptor descriptor;
  int offset = 0;
  int dim = 0;
};

std::vector<DomainAtom> atoms(const DomainDescriptor& d);

/// True when the Bergman metric is implemented (disk, ball, polydisk and
/// products of those).
bool metric_supported(const DomainDescriptor& d);

bool contains(const DomainDescriptor& d, const Point& z);

/// Minkowski gauge: z / gauge(z) lies on the topological boundary.
/// Unsupported for the exceptional domains.
double gauge(const DomainDescriptor& d, const Point& z);

struct HermitianMetric {
  Eigen::MatrixXcd matrix;
  Point point;
};

HermitianMetric bergman_metric(const DomainDescriptor& d, const Point& z);

/// H_z(u, conj u) without forming the matrix.
double metric_form(const DomainDescriptor& d, const Point& z, const Point& u);

/// c^* H_z^{-1} c in closed form, per atom.
double inverse_metric_form(const DomainDescriptor& d, const Point& z, const Point& c);

struct PiecewisePath {
  std::vector<Point> nodes;
};

inline constexpr double kPathTolerance = 1e-8;

/// Length of a piecewise-linear path in the Bergman metric, adaptive Simpson
/// to absolute tolerance `tol`.
double path_length(const DomainDescriptor& d, const PiecewisePath& p, double tol = kPathTolerance);

/// Bounds on the Bergman distance from the origin. Disk and ball: exact
/// arctanh(|z|). Otherwise [max over factors of the factor distance,
/// straight-segment length + tol]; `tighten` runs a Nelder-Mead search over
/// 8 intermediate nodes (200 iterations) and keeps the shorter path.
EstimateInterval rho_from_origin(const DomainDescriptor& d, const Point& z, bool tighten = false);

/// A certified upper bound on rho(z, w): closed form on the disk and ball,
/// straight-segment length otherwise.
double distance_upper(const DomainDescriptor& d, const Point& z, const Point& w);

/// Shell radii used by the interior sampler.
inline const std::vector<double> kDefaultShells{0.0, 0.5, 0.9, 0.99, 0.999};

/// Reproducible stratified interior sample: point i lands in shell i % S with
/// gauge drawn from [shell_i, shell_{i+1}) (the last shell runs to 1). The first
/// point of every shell sits exactly on its radius, so point 0 is the origin.
/// Each point depends only on (seed, i), so a longer list extends a shorter one.
std::vector<Point> sample_interior(const DomainDescriptor& d, int count, std::uint64_t seed,
                                   const std::vector<double>& shells = kDefaultShells);

/// Points of gauge exactly r (0 <= r < 1).
std::vector<Point> sample_at_gauge(const DomainDescriptor& d, int count, double r,
                                   std::uint64_t seed);

/// Ball factors: |z| = 1 - eps. Disk factors: |z_k| = 1 - eps.
std::vector<Point> sample_near_distinguished_boundary(const DomainDescriptor& d, int count,
                                                      double eps, std::uint64_t seed);

}  // namespace blochkit
