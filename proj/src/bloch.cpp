#include "blochkit/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "rng.hpp"

namespace blochkit {

namespace {

void require_metric(const DomainDescriptor& d) {
  if (!metric_supported(d)) throw UnsupportedMetric("Bergman metric not implemented for " + d.to_string());
}

void require_interior(const DomainDescriptor& d, const Point& z) {
  if (!contains(d, z)) throw NumericalDomainError("point outside " + d.to_string());
}

// Radical-inverse (Halton) coordinate of index i in base b.
double halton(std::uint64_t i, std::uint64_t b) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= static_cast<double>(b);
    r += f * static_cast<double>(i % b);
    i /= b;
  }
  return r;
}

std::vector<std::uint64_t> first_primes(std::size_t n) {
  std::vector<std::uint64_t> p;
  for (std::uint64_t c = 2; p.size() < n; ++c)
    if (std::all_of(p.begin(), p.end(), [&](auto q) { return c % q != 0; })) p.push_back(c);
  return p;
}

// Disk Bloch seminorm of lambda^m: sup_{0<=x<1} (1 - x^2) m x^{m-1}.
double monomial_bloch(int m) {
  if (m == 1) return 1.0;
  double x2 = static_cast<double>(m - 1) / (m + 1);
  return m * (1.0 - x2) * std::pow(x2, 0.5 * (m - 1));
}

}  // namespace

double q_value(const DomainDescriptor& d, const SymbolExpr& f, const Point& z) {
  require_metric(d);
  require_interior(d, z);
  Point c = f.gradient(z).conjugate();
  return std::sqrt(inverse_metric_form(d, z, c));
}

double q_value_oracle(const DomainDescriptor& d, const SymbolExpr& f, const Point& z, int ndirs) {
  if (ndirs < 1) throw DomainError("ndirs must be >= 1");
  const HermitianMetric H = bergman_metric(d, z);
  const Point g = f.gradient(z);
  const int n = static_cast<int>(z.size());
  auto ratio = [&](const Point& u) {
    double h = (u.adjoint() * H.matrix * u)(0, 0).real();
    if (h <= 0.0) return 0.0;
    return std::abs((g.transpose() * u)(0, 0)) / std::sqrt(h);
  };

  double best = 0.0;
  if (n == 1) {
    Point u(1);
    u[0] = 1.0;
    return ratio(u);
  }
  const auto primes = first_primes(static_cast<std::size_t>(2 * n));
  for (int i = 1; i <= ndirs; ++i) {
    Point u(n);
    for (int k = 0; k < n; ++k) {
      double u1 = halton(static_cast<std::uint64_t>(i), primes[2 * k]);
      double u2 = halton(static_cast<std::uint64_t>(i), primes[2 * k + 1]);
      double rad = std::sqrt(-2.0 * std::log(std::max(u1, 1e-300)));
      double th = 2.0 * std::numbers::pi * u2;
      u[k] = cplx(rad * std::cos(th), rad * std::sin(th));
    }
    if (u.norm() == 0.0) continue;
    best = std::max(best, ratio(u.normalized()));
  }
  Point c = g.conjugate();
  if (c.norm() > 0.0) {
    Point u = H.matrix.ldlt().solve(c);
    best = std::max(best, ratio(u.normalized()));
  }
  return best;
}

std::optional<double> certified_beta_upper(const DomainDescriptor& d, const SymbolExpr& f) {
  require_metric(d);
  if (const auto* lf = f.as_log_frac()) {
    // One coordinate of a disk or ball factor: Q <= (1 - |z_k|^2)|f'(z_k)|,
    // which is <= 1 for h forms and <= |w| for fw forms.
    return lf->form == LogFracForm::H ? 1.0 : std::abs(lf->w);
  }
  const auto* p = f.as_polynomial();
  if (!p) return std::nullopt;
  double s = 0.0;
  for (double b : p->derivative_bounds()) s += b * b;
  return std::sqrt(s);
}

EstimateInterval beta_estimate(const DomainDescriptor& d, const SymbolExpr& f, const SamplingConfig& cfg,
                               std::optional<double> certified_upper) {
  require_metric(d);
  if (f.is_constant()) return EstimateInterval::exact(0.0);
  auto best = sampled_supremum(d, [&](const Point& z) { return q_value(d, f, z); }, cfg);
  double upper = certified_upper ? std::max(*certified_upper, best.value) : kInf;
  auto est = EstimateInterval::sampled(best.value, cfg.samples, cfg.seed, upper);
  est.argmax = best.argmax;
  return est;
}

EstimateInterval bloch_norm_estimate(const DomainDescriptor& d, const SymbolExpr& f, const SamplingConfig& cfg,
                                     std::optional<double> certified_beta) {
  const double at0 = std::abs(f.evaluate(Point::Zero(d.ambient_dimension())));
  auto beta = beta_estimate(d, f, cfg, certified_beta);
  beta.lower += at0;
  beta.upper += at0;
  return beta;
}

double lipschitz_beta_estimate(const DomainDescriptor& d, const SymbolExpr& f, int npairs, std::uint64_t seed) {
  require_metric(d);
  if (npairs < 1) throw DomainError("npairs must be >= 1");
  if (f.is_constant()) return 0.0;
  const auto first = sample_interior(d, npairs, seed);
  const auto second = sample_interior(d, npairs, seed ^ 0x9e3779b97f4a7c15ULL);
  double best = 0.0;
  for (int i = 0; i < npairs; ++i) {
    const Point& z = first[i];
    Point w = second[i];
    if (i % 2 == 1) {
      detail::Rng rng(seed, static_cast<std::uint64_t>(i), 7);
      Point dir(z.size());
      for (int k = 0; k < z.size(); ++k) dir[k] = rng.complex_normal();
      double step = 1e-3 * std::max(1e-3, 1.0 - gauge(d, z));
      w = z + step * dir.normalized();
      if (!contains(d, w)) continue;
    }
    double rho = distance_upper(d, z, w);
    if (rho <= 0.0) continue;
    best = std::max(best, std::abs(f.evaluate(z) - f.evaluate(w)) / rho);
  }
  return best;
}

double omega_exact_ball(const Point& z) {
  double r = z.norm();
  if (!(r < 1.0)) throw NumericalDomainError("omega_exact_ball needs |z| < 1");
  return 0.5 * std::log((1.0 + r) / (1.0 - r));
}

EstimateInterval omega_polydisk_bounds(const Point& z) {
  return rho_from_origin(DomainDescriptor::polydisk(static_cast<int>(z.size())), z);
}

EstimateInterval omega_bounds(const DomainDescriptor& d, const Point& z) { return rho_from_origin(d, z); }

// ---------------------------------------------------------------------------
// Test-function family for omega / omega_0

OmegaFamily::OmegaFamily(const DomainDescriptor& d, const OmegaFamilyConfig& cfg) : domain_(d), atoms_(atoms(d)) {
  require_metric(d);
  radii_ = cfg.radii;
  for (int m = 1; m <= cfg.polynomial_degree; ++m) degrees_.push_back(m);
  if (!cfg.star_little) return;

  // Keep only members whose decay profile is consistent with the *-little
  // space on every factor. A member depends on one coordinate (disk factor)
  // or one linear form (ball factor, represented by its first coordinate);
  // the boundary sampler is rotation invariant, so the representative speaks
  // for the whole orbit.
  const int n = d.ambient_dimension();
  std::map<std::string, bool> cache;
  auto admissible = [&](const SymbolExpr& f, const std::string& key) {
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto prof = little_star_membership_diagnostic(d, f, cfg.eps_ladder, cfg.diagnostic_samples, cfg.seed);
    return cache[key] = prof.verdict == DecayVerdict::ConsistentWithMembership;
  };
  std::vector<double> radii;
  std::vector<int> degrees;
  h_admissible_ = true;
  for (double r : cfg.radii) {
    bool ok = true;
    for (const auto& a : atoms_)
      ok = ok && admissible(SymbolExpr::f_form(a.offset, r, n), a.descriptor.to_string() + "/f/" + std::to_string(r));
    if (ok) radii.push_back(r);
  }
  for (int m = 1; m <= cfg.polynomial_degree; ++m) {
    bool ok = true;
    for (const auto& a : atoms_)
      ok = ok && admissible(SymbolExpr::polynomial(Polynomial::variable(a.offset, n).pow(m)),
                            a.descriptor.to_string() + "/p/" + std::to_string(m));
    if (ok) degrees.push_back(m);
  }
  for (const auto& a : atoms_)
    h_admissible_ = h_admissible_ && admissible(SymbolExpr::h_form(a.offset, 1.0, n), a.descriptor.to_string() + "/h");
  radii_ = std::move(radii);
  degrees_ = std::move(degrees);
}

double OmegaFamily::lower(const Point& z) const {
  require_interior(domain_, z);
  const int n = domain_.ambient_dimension();
  double best = 0.0;
  for (const auto& a : atoms_) {
    if (a.descriptor.kind() == DomainKind::Disk) {
      const cplx zk = z[a.offset];
      if (zk == cplx{}) continue;
      const cplx phase = zk / std::abs(zk);
      if (h_admissible_) best = std::max(best, std::abs(SymbolExpr::h_form(a.offset, zk, n).evaluate(z)));
      for (double r : radii_)
        best = std::max(best, std::abs(SymbolExpr::f_form(a.offset, r * phase, n).evaluate(z)) / r);
      for (int m : degrees_) best = std::max(best, std::pow(std::abs(zk), m) / monomial_bloch(m));
    } else {
      // Directional members g(<w, zeta>) with zeta = z_b / |z_b|; their Q is
      // bounded by (1 - |lambda|^2)|g'(lambda)|, the disk Bloch density of g.
      const double lam = z.segment(a.offset, a.dim).norm();
      if (lam == 0.0) continue;
      auto log_frac = [](double x) { return std::abs(0.5 * std::log((1.0 + x) / (1.0 - x))); };
      if (h_admissible_) best = std::max(best, log_frac(lam));
      for (double r : radii_) best = std::max(best, log_frac(r * lam) / r);
      for (int m : degrees_) best = std::max(best, std::pow(lam, m) / monomial_bloch(m));
    }
  }
  return best;
}

double omega_empirical_lower(const DomainDescriptor& d, const Point& z, const OmegaFamilyConfig& cfg) {
  return OmegaFamily(d, cfg).lower(z);
}

// ---------------------------------------------------------------------------

std::string to_string(DecayVerdict v) {
  return v == DecayVerdict::ConsistentWithMembership ? "consistent-with-membership" : "evidence-against";
}

DecayProfile little_star_membership_diagnostic(const DomainDescriptor& d, const SymbolExpr& f,
                                               const std::vector<double>& eps_ladder, int count,
                                               std::uint64_t seed) {
  if (eps_ladder.empty()) throw DomainError("eps ladder is empty");
  for (std::size_t i = 1; i < eps_ladder.size(); ++i)
    if (!(eps_ladder[i] < eps_ladder[i - 1])) throw DomainError("eps ladder must be strictly decreasing");
  DecayProfile prof;
  for (double eps : eps_ladder) {
    double m = 0.0;
    if (!f.is_constant())
      for (const auto& z : sample_near_distinguished_boundary(d, count, eps, seed)) m = std::max(m, q_value(d, f, z));
    prof.ladder.emplace_back(eps, m);
  }
  const double first = prof.ladder.front().second, last = prof.ladder.back().second;
  bool monotone = true;
  for (std::size_t i = 1; i < prof.ladder.size(); ++i)
    monotone = monotone && prof.ladder[i].second <= prof.ladder[i - 1].second * (1.0 + 1e-12);
  bool zero = first == 0.0 && last == 0.0;
  prof.verdict = zero || (monotone && last < 0.25 * first) ? DecayVerdict::ConsistentWithMembership
                                                           : DecayVerdict::EvidenceAgainst;
  return prof;
}

}  // namespace blochkit
