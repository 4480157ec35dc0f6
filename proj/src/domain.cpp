#include "blochkit/domain.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "rng.hpp"

namespace blochkit {

namespace {

constexpr double kEigenThreshold = 1e-12;
constexpr double kMaxSampleGauge = 1.0 - 1e-9;

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

void check_dimension(const DomainDescriptor& d, const Point& z) {
  if (z.size() != d.ambient_dimension()) {
    std::ostringstream os;
    os << "point has " << z.size() << " coordinates, " << d.to_string() << " needs "
       << d.ambient_dimension();
    throw DomainError(os.str());
  }
}

// Matrix of a Cartan point of type I-III, rebuilt from its flattened entries.
Eigen::MatrixXcd cartan_matrix(const DomainDescriptor& a, const Point& z) {
  switch (a.kind()) {
    case DomainKind::CartanI: {
      int m = a.dims()[0], n = a.dims()[1];
      Eigen::MatrixXcd Z(m, n);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) Z(i, j) = z[i * n + j];
      return Z;
    }
    case DomainKind::CartanII: {
      int n = a.dims()[0];
      Eigen::MatrixXcd Z(n, n);
      int k = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) Z(i, j) = Z(j, i) = z[k++];
      return Z;
    }
    case DomainKind::CartanIII: {
      int n = a.dims()[0];
      Eigen::MatrixXcd Z = Eigen::MatrixXcd::Zero(n, n);
      int k = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          Z(i, j) = z[k];
          Z(j, i) = -z[k];
          ++k;
        }
      return Z;
    }
    default:
      throw DomainError("not a matrix domain: " + a.to_string());
  }
}

double lie_norm(const Point& z) {
  double s = z.squaredNorm();
  double p = std::abs((z.array() * z.array()).sum());
  return std::sqrt(s + std::sqrt(std::max(0.0, s * s - p * p)));
}

bool atom_contains(const DomainDescriptor& a, const Point& z) {
  switch (a.kind()) {
    case DomainKind::Disk:
      return std::norm(z[0]) < 1.0;
    case DomainKind::Ball:
      return z.squaredNorm() < 1.0;
    case DomainKind::CartanI:
    case DomainKind::CartanII:
    case DomainKind::CartanIII: {
      Eigen::MatrixXcd Z = cartan_matrix(a, z);
      Eigen::MatrixXcd M =
          Eigen::MatrixXcd::Identity(Z.rows(), Z.rows()) - Z * Z.adjoint();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M, Eigen::EigenvaluesOnly);
      return es.eigenvalues().minCoeff() > kEigenThreshold;
    }
    case DomainKind::CartanIV: {
      double s = z.squaredNorm();
      double p = std::abs((z.array() * z.array()).sum());
      double A = p * p + 1.0 - 2.0 * s;
      return A > kEigenThreshold && 1.0 - s > kEigenThreshold;
    }
    case DomainKind::Exceptional1:
    case DomainKind::Exceptional2:
      throw UnsupportedOperation("no membership test for exceptional domain " + a.to_string());
    case DomainKind::Product:
    case DomainKind::Polydisk:
      break;
  }
  throw DomainError("atom expected");
}

double atom_gauge(const DomainDescriptor& a, const Point& z) {
  switch (a.kind()) {
    case DomainKind::Disk:
      return std::abs(z[0]);
    case DomainKind::Ball:
      return z.norm();
    case DomainKind::CartanI:
    case DomainKind::CartanII:
    case DomainKind::CartanIII: {
      Eigen::MatrixXcd Z = cartan_matrix(a, z);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Z);
      return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
    }
    case DomainKind::CartanIV:
      return lie_norm(z);
    default:
      throw UnsupportedOperation("no gauge for " + a.to_string());
  }
}

// A random point of gauge one in the atom.
Point atom_direction(const DomainDescriptor& a, detail::Rng& rng) {
  const int dim = a.ambient_dimension();
  if (a.kind() == DomainKind::Disk) {
    Point p(1);
    p[0] = rng.unit_phase();
    return p;
  }
  if (a.kind() == DomainKind::Exceptional1 || a.kind() == DomainKind::Exceptional2)
    throw UnsupportedOperation("cannot sample exceptional domain " + a.to_string());
  for (;;) {
    Point p(dim);
    for (int i = 0; i < dim; ++i) p[i] = rng.complex_normal();
    double g = atom_gauge(a, p);
    if (g > 1e-300) return p / g;
  }
}

Point segment_point(const Point& a, const Point& b, double t) { return a + t * (b - a); }

template <class F>
double simpson_recursive(const F& f, double a, double b, double fa, double fm, double fb,
                         double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  // The relative floor stops refinement once rounding in the panel sums
  // dominates the requested tolerance.
  if (depth <= 0 || std::abs(delta) <= 15.0 * std::max(tol, 1e-10 * std::abs(left + right)))
    return left + right + delta / 15.0;
  return simpson_recursive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recursive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  constexpr int kPanels = 8;
  double h = (b - a) / kPanels;
  double total = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    double x0 = a + i * h, x1 = x0 + h, xm = 0.5 * (x0 + x1);
    double f0 = f(x0), fm = f(xm), f1 = f(x1);
    double whole = h / 6.0 * (f0 + 4.0 * fm + f1);
    total += simpson_recursive(f, x0, x1, f0, fm, f1, whole, tol / kPanels, 48);
  }
  return total;
}

// Downhill simplex on R^p.
std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                std::vector<double> x0, double step, int iterations) {
  const std::size_t p = x0.size();
  std::vector<std::vector<double>> simplex(p + 1, x0);
  for (std::size_t i = 0; i < p; ++i) simplex[i + 1][i] += step;
  std::vector<double> val(p + 1);
  for (std::size_t i = 0; i <= p; ++i) val[i] = f(simplex[i]);

  std::vector<std::size_t> order(p + 1);
  for (int it = 0; it < iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return val[a] < val[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[p - 1];

    std::vector<double> centroid(p, 0.0);
    for (std::size_t i = 0; i <= p; ++i)
      if (i != worst)
        for (std::size_t k = 0; k < p; ++k) centroid[k] += simplex[i][k] / p;

    auto along = [&](double t) {
      std::vector<double> x(p);
      for (std::size_t k = 0; k < p; ++k) x[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
      return x;
    };
    auto xr = along(-1.0);
    double fr = f(xr);
    if (fr < val[best]) {
      auto xe = along(-2.0);
      double fe = f(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        val[worst] = fe;
      } else {
        simplex[worst] = xr;
        val[worst] = fr;
      }
    } else if (fr < val[second]) {
      simplex[worst] = xr;
      val[worst] = fr;
    } else {
      auto xc = along(fr < val[worst] ? -0.5 : 0.5);
      double fc = f(xc);
      if (fc < std::min(fr, val[worst])) {
        simplex[worst] = xc;
        val[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= p; ++i) {
          if (i == best) continue;
          for (std::size_t k = 0; k < p; ++k)
            simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
          val[i] = f(simplex[i]);
        }
      }
    }
  }
  auto it = std::min_element(val.begin(), val.end());
  return simplex[static_cast<std::size_t>(it - val.begin())];
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<int> parse_ints(const std::string& s, const std::string& whole) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty() || !std::all_of(item.begin(), item.end(), ::isdigit) || item.size() > 6)
      throw DomainError("bad dimension list in domain string '" + whole + "'");
    out.push_back(std::stoi(item));
  }
  return out;
}

// Splits "a,b(c,d),e" at top-level commas.
std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

// Splits product factors: a dimension list after ':' may itself contain a
// comma (cartan1:3,2), so a piece that is only digits joins the previous one.
std::vector<std::string> split_factors(const std::string& inner) {
  std::vector<std::string> raw = split_top_level(inner), out;
  for (auto& piece : raw) {
    bool digits = !piece.empty() && std::all_of(piece.begin(), piece.end(), ::isdigit);
    if (digits && !out.empty() && out.back().find(':') != std::string::npos)
      out.back() += "," + piece;
    else
      out.push_back(piece);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// DomainDescriptor

DomainDescriptor DomainDescriptor::disk() { return {DomainKind::Disk, {1}}; }

DomainDescriptor DomainDescriptor::ball(int n) {
  require(n >= 1, "ball dimension must be >= 1");
  return {DomainKind::Ball, {n}};
}

DomainDescriptor DomainDescriptor::polydisk(int n) {
  require(n >= 1, "polydisk dimension must be >= 1");
  return {DomainKind::Polydisk, {n}};
}

DomainDescriptor DomainDescriptor::cartan_i(int m, int n) {
  require(m >= n && n >= 1, "cartan1 requires m >= n >= 1");
  return {DomainKind::CartanI, {m, n}};
}

DomainDescriptor DomainDescriptor::cartan_ii(int n) {
  require(n >= 1, "cartan2 requires n >= 1");
  return {DomainKind::CartanII, {n}};
}

DomainDescriptor DomainDescriptor::cartan_iii(int n) {
  require(n >= 2, "cartan3 requires n >= 2");
  return {DomainKind::CartanIII, {n}};
}

DomainDescriptor DomainDescriptor::cartan_iv(int n) {
  require(n >= 1 && n != 2, "cartan4 requires n >= 1 and n != 2");
  return {DomainKind::CartanIV, {n}};
}

DomainDescriptor DomainDescriptor::exceptional1() { return {DomainKind::Exceptional1, {16}}; }
DomainDescriptor DomainDescriptor::exceptional2() { return {DomainKind::Exceptional2, {27}}; }

DomainDescriptor DomainDescriptor::product(std::vector<DomainDescriptor> factors) {
  DomainDescriptor d{DomainKind::Product, {}};
  for (auto& f : factors) {
    if (f.kind() == DomainKind::Product)
      d.factors_.insert(d.factors_.end(), f.factors_.begin(), f.factors_.end());
    else
      d.factors_.push_back(std::move(f));
  }
  require(d.factors_.size() >= 2, "a product needs at least two factors");
  return d;
}

int DomainDescriptor::ambient_dimension() const {
  switch (kind_) {
    case DomainKind::Disk:
      return 1;
    case DomainKind::Ball:
    case DomainKind::Polydisk:
    case DomainKind::CartanIV:
      return dims_[0];
    case DomainKind::CartanI:
      return dims_[0] * dims_[1];
    case DomainKind::CartanII:
      return dims_[0] * (dims_[0] + 1) / 2;
    case DomainKind::CartanIII:
      return dims_[0] * (dims_[0] - 1) / 2;
    case DomainKind::Exceptional1:
      return 16;
    case DomainKind::Exceptional2:
      return 27;
    case DomainKind::Product: {
      int total = 0;
      for (const auto& f : factors_) total += f.ambient_dimension();
      return total;
    }
  }
  return 0;
}

bool DomainDescriptor::canonical() const {
  switch (kind_) {
    case DomainKind::CartanII:
      return dims_[0] >= 2;
    case DomainKind::CartanIII:
    case DomainKind::CartanIV:
      return dims_[0] >= 5;
    case DomainKind::Product:
      return std::all_of(factors_.begin(), factors_.end(), [](auto& f) { return f.canonical(); });
    default:
      return true;
  }
}

std::string DomainDescriptor::to_string() const {
  switch (kind_) {
    case DomainKind::Disk:
      return "disk";
    case DomainKind::Ball:
      return "ball:" + std::to_string(dims_[0]);
    case DomainKind::Polydisk:
      return "polydisk:" + std::to_string(dims_[0]);
    case DomainKind::CartanI:
      return "cartan1:" + std::to_string(dims_[0]) + "," + std::to_string(dims_[1]);
    case DomainKind::CartanII:
      return "cartan2:" + std::to_string(dims_[0]);
    case DomainKind::CartanIII:
      return "cartan3:" + std::to_string(dims_[0]);
    case DomainKind::CartanIV:
      return "cartan4:" + std::to_string(dims_[0]);
    case DomainKind::Exceptional1:
      return "exc1";
    case DomainKind::Exceptional2:
      return "exc2";
    case DomainKind::Product: {
      std::string s = "product(";
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += ",";
        s += factors_[i].to_string();
      }
      return s + ")";
    }
  }
  return "?";
}

DomainDescriptor parse_domain(std::string_view text) {
  const std::string whole(text);
  std::string s = lower(trim(text));
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  if (s.rfind("product(", 0) == 0) {
    if (s.back() != ')') throw DomainError("unbalanced parentheses in domain string '" + whole + "'");
    std::vector<DomainDescriptor> factors;
    for (const auto& part : split_factors(s.substr(8, s.size() - 9))) factors.push_back(parse_domain(part));
    return DomainDescriptor::product(std::move(factors));
  }
  std::string name = s, args;
  if (auto colon = s.find(':'); colon != std::string::npos) {
    name = s.substr(0, colon);
    args = s.substr(colon + 1);
  }
  auto dims = args.empty() ? std::vector<int>{} : parse_ints(args, whole);
  auto want = [&](std::size_t n) {
    if (dims.size() != n)
      throw DomainError("domain '" + name + "' takes " + std::to_string(n) + " dimension(s)");
  };
  if (name == "disk") return want(0), DomainDescriptor::disk();
  if (name == "exc1") return want(0), DomainDescriptor::exceptional1();
  if (name == "exc2") return want(0), DomainDescriptor::exceptional2();
  if (name == "ball") return want(1), DomainDescriptor::ball(dims[0]);
  if (name == "polydisk") return want(1), DomainDescriptor::polydisk(dims[0]);
  if (name == "cartan1") return want(2), DomainDescriptor::cartan_i(dims[0], dims[1]);
  if (name == "cartan2") return want(1), DomainDescriptor::cartan_ii(dims[0]);
  if (name == "cartan3") return want(1), DomainDescriptor::cartan_iii(dims[0]);
  if (name == "cartan4") return want(1), DomainDescriptor::cartan_iv(dims[0]);
  throw DomainError("unknown domain string '" + whole + "'");
}

std::vector<DomainAtom> atoms(const DomainDescriptor& d) {
  std::vector<DomainAtom> out;
  int offset = 0;
  std::function<void(const DomainDescriptor&)> add = [&](const DomainDescriptor& f) {
    if (f.kind() == DomainKind::Product) {
      for (const auto& g : f.factors()) add(g);
    } else if (f.kind() == DomainKind::Polydisk) {
      for (int k = 0; k < f.dims()[0]; ++k) out.push_back({DomainDescriptor::disk(), offset++, 1});
    } else {
      int dim = f.ambient_dimension();
      out.push_back({f, offset, dim});
      offset += dim;
    }
  };
  add(d);
  return out;
}

bool metric_supported(const DomainDescriptor& d) {
  for (const auto& a : atoms(d))
    if (a.descriptor.kind() != DomainKind::Disk && a.descriptor.kind() != DomainKind::Ball)
      return false;
  return true;
}

bool contains(const DomainDescriptor& d, const Point& z) {
  check_dimension(d, z);
  for (const auto& a : atoms(d))
    if (!atom_contains(a.descriptor, z.segment(a.offset, a.dim))) return false;
  return true;
}

double gauge(const DomainDescriptor& d, const Point& z) {
  check_dimension(d, z);
  double g = 0.0;
  for (const auto& a : atoms(d)) g = std::max(g, atom_gauge(a.descriptor, z.segment(a.offset, a.dim)));
  return g;
}

// ---------------------------------------------------------------------------
// Metric

namespace {

void require_metric(const DomainDescriptor& d) {
  if (!metric_supported(d))
    throw UnsupportedMetric("Bergman metric not implemented for " + d.to_string());
}

void require_interior(const DomainDescriptor& d, const Point& z) {
  if (!contains(d, z)) throw NumericalDomainError("point outside " + d.to_string());
}

}  // namespace

HermitianMetric bergman_metric(const DomainDescriptor& d, const Point& z) {
  require_metric(d);
  require_interior(d, z);
  const int n = d.ambient_dimension();
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& a : atoms(d)) {
    Point w = z.segment(a.offset, a.dim);
    double s = 1.0 - w.squaredNorm();
    if (a.descriptor.kind() == DomainKind::Disk) {
      H(a.offset, a.offset) = 1.0 / (s * s);
    } else {
      Eigen::MatrixXcd block = s * Eigen::MatrixXcd::Identity(a.dim, a.dim) + w * w.adjoint();
      H.block(a.offset, a.offset, a.dim, a.dim) = block / (s * s);
    }
  }
  return {H, z};
}

namespace {

double metric_form_atoms(const std::vector<DomainAtom>& parts, const Point& z, const Point& u) {
  double total = 0.0;
  for (const auto& a : parts) {
    Point w = z.segment(a.offset, a.dim);
    Point v = u.segment(a.offset, a.dim);
    double s = 1.0 - w.squaredNorm();
    if (a.descriptor.kind() == DomainKind::Disk)
      total += std::norm(v[0]) / (s * s);
    else
      total += (s * v.squaredNorm() + std::norm(w.dot(v))) / (s * s);
  }
  return total;
}

}  // namespace

double metric_form(const DomainDescriptor& d, const Point& z, const Point& u) {
  require_metric(d);
  return metric_form_atoms(atoms(d), z, u);
}

double inverse_metric_form(const DomainDescriptor& d, const Point& z, const Point& c) {
  require_metric(d);
  double total = 0.0;
  for (const auto& a : atoms(d)) {
    Point w = z.segment(a.offset, a.dim);
    Point v = c.segment(a.offset, a.dim);
    double s = 1.0 - w.squaredNorm();
    if (a.descriptor.kind() == DomainKind::Disk)
      total += s * s * std::norm(v[0]);
    else
      total += s * std::max(0.0, v.squaredNorm() - std::norm(w.dot(v)));
  }
  return total;
}

double path_length(const DomainDescriptor& d, const PiecewisePath& p, double tol) {
  require_metric(d);
  if (p.nodes.size() < 2) throw DomainError("a path needs at least two nodes");
  const auto parts = atoms(d);
  constexpr int kChecks = 64;
  const std::size_t segments = p.nodes.size() - 1;
  double total = 0.0;
  for (std::size_t s = 0; s < segments; ++s) {
    const Point& a = p.nodes[s];
    const Point& b = p.nodes[s + 1];
    check_dimension(d, a);
    check_dimension(d, b);
    for (int i = 0; i <= kChecks; ++i)
      if (!contains(d, segment_point(a, b, static_cast<double>(i) / kChecks)))
        throw NumericalDomainError("path exits " + d.to_string());
    const Point velocity = b - a;
    if (velocity.squaredNorm() == 0.0) continue;
    auto integrand = [&](double t) {
      return std::sqrt(metric_form_atoms(parts, segment_point(a, b, t), velocity));
    };
    total += adaptive_simpson(integrand, 0.0, 1.0, tol / segments);
  }
  return total;
}

EstimateInterval rho_from_origin(const DomainDescriptor& d, const Point& z, bool tighten) {
  require_metric(d);
  require_interior(d, z);
  if (d.kind() == DomainKind::Disk || d.kind() == DomainKind::Ball)
    return EstimateInterval::exact(std::atanh(z.norm()));
  if (z.squaredNorm() == 0.0) return EstimateInterval::exact(0.0);

  double lower = 0.0;
  std::vector<double> radii;
  for (const auto& a : atoms(d)) {
    radii.push_back(z.segment(a.offset, a.dim).norm());
    lower = std::max(lower, std::atanh(radii.back()));
  }

  // Along t -> t z every factor (disk or ball) contributes
  // H(z, z) = r^2 / (1 - t^2 r^2)^2, so the straight-segment length is a
  // scalar integral; path_length gives the same value, only slower.
  const Point origin = Point::Zero(z.size());
  auto speed = [&](double t) {
    double h = 0.0;
    for (double r : radii) {
      double s = (1.0 - t * r) * (1.0 + t * r);
      h += r * r / (s * s);
    }
    return std::sqrt(h);
  };
  double upper = adaptive_simpson(speed, 0.0, 1.0, kPathTolerance) + kPathTolerance;

  if (tighten) {
    constexpr int kInner = 8;
    const int n = static_cast<int>(z.size());
    auto unpack = [&](const std::vector<double>& x) {
      PiecewisePath path;
      path.nodes.push_back(origin);
      for (int j = 0; j < kInner; ++j) {
        Point node(n);
        for (int k = 0; k < n; ++k) node[k] = {x[2 * (j * n + k)], x[2 * (j * n + k) + 1]};
        path.nodes.push_back(node);
      }
      path.nodes.push_back(z);
      return path;
    };
    std::vector<double> x0;
    for (int j = 1; j <= kInner; ++j) {
      Point node = z * (static_cast<double>(j) / (kInner + 1));
      for (int k = 0; k < n; ++k) {
        x0.push_back(node[k].real());
        x0.push_back(node[k].imag());
      }
    }
    auto objective = [&](const std::vector<double>& x) {
      try {
        return path_length(d, unpack(x), 1e-6);
      } catch (const NumericalDomainError&) {
        return kInf;
      }
    };
    auto best = nelder_mead(objective, x0, 0.02, 200);
    try {
      upper = std::min(upper, path_length(d, unpack(best)) + kPathTolerance);
    } catch (const NumericalDomainError&) {
    }
  }
  return EstimateInterval::bounds(lower, std::max(lower, upper));
}

double distance_upper(const DomainDescriptor& d, const Point& z, const Point& w) {
  require_metric(d);
  require_interior(d, z);
  require_interior(d, w);
  if (d.kind() == DomainKind::Disk || d.kind() == DomainKind::Ball) {
    // |phi_w(z)|^2 = (|z - w|^2 + |<z,w>|^2 - |z|^2 |w|^2) / |1 - <z,w>|^2
    cplx inner = w.dot(z);
    double num = (z - w).squaredNorm() + std::norm(inner) - z.squaredNorm() * w.squaredNorm();
    double den = std::norm(1.0 - inner);
    double phi = std::sqrt(std::clamp(num / den, 0.0, 1.0));
    return std::atanh(std::min(phi, 1.0 - 1e-16));
  }
  return path_length(d, {{z, w}}) + kPathTolerance;
}

// ---------------------------------------------------------------------------
// Samplers

namespace {

Point point_at_gauge(const DomainDescriptor& d, const std::vector<DomainAtom>& parts, double r,
                     detail::Rng& rng) {
  Point z = Point::Zero(d.ambient_dimension());
  if (r == 0.0) return z;
  // One atom (chosen at random) carries the full gauge; the rest get a
  // uniform fraction of it.
  int lead = rng.index(static_cast<int>(parts.size()));
  for (int i = 0; i < static_cast<int>(parts.size()); ++i) {
    double g = i == lead ? 1.0 : rng.uniform();
    z.segment(parts[i].offset, parts[i].dim) = r * g * atom_direction(parts[i].descriptor, rng);
  }
  return z;
}

}  // namespace

std::vector<Point> sample_interior(const DomainDescriptor& d, int count, std::uint64_t seed,
                                   const std::vector<double>& shells) {
  if (count < 1) throw DomainError("sample count must be >= 1");
  if (shells.empty()) throw DomainError("at least one shell is required");
  const auto parts = atoms(d);
  const int S = static_cast<int>(shells.size());
  std::vector<Point> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    detail::Rng rng(seed, static_cast<std::uint64_t>(i), 1);
    const int s = i % S, j = i / S;
    const double lo = shells[s];
    const double hi = s + 1 < S ? shells[s + 1] : 1.0;
    for (;;) {
      double r = j == 0 ? lo : rng.uniform(lo, hi);
      r = std::min(r, kMaxSampleGauge);
      Point z = point_at_gauge(d, parts, r, rng);
      if (contains(d, z)) {
        out.push_back(std::move(z));
        break;
      }
    }
  }
  return out;
}

std::vector<Point> sample_at_gauge(const DomainDescriptor& d, int count, double r,
                                   std::uint64_t seed) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("gauge radius must lie in [0, 1)");
  const auto parts = atoms(d);
  std::vector<Point> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    detail::Rng rng(seed, static_cast<std::uint64_t>(i), 2);
    for (;;) {
      Point z = point_at_gauge(d, parts, r, rng);
      if (contains(d, z)) {
        out.push_back(std::move(z));
        break;
      }
    }
  }
  return out;
}

std::vector<Point> sample_near_distinguished_boundary(const DomainDescriptor& d, int count,
                                                      double eps, std::uint64_t seed) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
  if (!metric_supported(d))
    throw UnsupportedOperation("distinguished-boundary sampling needs a ball/polydisk domain, got " +
                               d.to_string());
  const auto parts = atoms(d);
  std::vector<Point> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    detail::Rng rng(seed, static_cast<std::uint64_t>(i), 3);
    Point z(d.ambient_dimension());
    for (const auto& a : parts) z.segment(a.offset, a.dim) = (1.0 - eps) * atom_direction(a.descriptor, rng);
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace blochkit
