#include "blochkit/mult_operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "blochkit/constants.hpp"
#include "rng.hpp"

namespace blochkit {

namespace {

constexpr double kUnimodularTol = 1e-12;
constexpr double kGrowthFactor = 1.2;
constexpr double kPlateauFactor = 1.05;

void require_metric(const DomainDescriptor& d) {
  if (!metric_supported(d)) throw UnsupportedMetric("Bergman metric not implemented for " + d.to_string());
}

// Sum over factors of log((1 + |z_f|)/(1 - |z_f|)).
double log_gauge_sum(const std::vector<DomainAtom>& parts, const Point& z) {
  double s = 0.0;
  for (const auto& a : parts) {
    double g = z.segment(a.offset, a.dim).norm();
    s += std::log((1.0 + g) / (1.0 - g));
  }
  return s;
}

bool grows(const std::vector<double>& m) {
  if (m.size() < 2) return false;
  for (std::size_t i = 1; i < m.size(); ++i)
    if (!(m[i] > kGrowthFactor * m[i - 1])) return false;
  return true;
}

bool plateaus(const std::vector<double>& m) {
  if (m.size() < 2) return true;
  return m.back() <= kPlateauFactor * m[m.size() - 2] + 1e-300;
}

BoundednessVerdict classify(const std::vector<double>& criterion, const std::vector<double>& sup) {
  if (grows(criterion) || grows(sup)) return BoundednessVerdict::UnboundedEvidence;
  if (plateaus(criterion) && plateaus(sup)) return BoundednessVerdict::BoundedEvidence;
  return BoundednessVerdict::Inconclusive;
}

std::optional<double> certified_norm_upper(const DomainDescriptor& d, const SymbolExpr& f) {
  auto beta = certified_beta_upper(d, f);
  if (!beta) return std::nullopt;
  return *beta + std::abs(f.evaluate(Point::Zero(d.ambient_dimension())));
}

double cross(cplx o, cplx a, cplx b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

double hull_area(std::vector<cplx> pts) {
  std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return 0.0;
  std::vector<cplx> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  double area = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const cplx& a = h[i];
    const cplx& b = h[(i + 1) % h.size()];
    area += a.real() * b.imag() - b.real() * a.imag();
  }
  return 0.5 * std::abs(area);
}

std::string point_string(const Point& z) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < z.size(); ++i) {
    if (i) os << ", ";
    os << z[i].real() << (z[i].imag() < 0 ? "-" : "+") << std::abs(z[i].imag()) << "i";
  }
  os << ")";
  return os.str();
}

}  // namespace

EstimateInterval sup_norm_estimate(const DomainDescriptor& d, const SymbolExpr& psi, const SamplingConfig& cfg) {
  if (auto c = psi.constant_value()) return EstimateInterval::exact(std::abs(*c));
  auto best = sampled_supremum(d, [&](const Point& z) { return std::abs(psi.evaluate(z)); }, cfg);
  double upper = kInf;
  // Every supported domain sits inside the closed unit polydisk.
  if (const auto* p = psi.as_polynomial()) upper = std::max(p->coefficient_sum(), best.value);
  auto est = EstimateInterval::sampled(best.value, cfg.samples, cfg.seed, upper);
  est.argmax = best.argmax;
  return est;
}

EstimateInterval sigma_estimate(const DomainDescriptor& d, const SymbolExpr& psi, const SamplingConfig& cfg,
                                SigmaKind which) {
  require_metric(d);
  if (psi.is_constant()) return EstimateInterval::exact(0.0);

  if (d.kind() == DomainKind::Disk || d.kind() == DomainKind::Ball) {
    // omega_0 = omega here.
    auto best = sampled_supremum(d, [&](const Point& z) { return omega_exact_ball(z) * q_value(d, psi, z); }, cfg);
    auto est = EstimateInterval::sampled(best.value, cfg.samples, cfg.seed);
    est.argmax = best.argmax;
    return est;
  }

  OmegaFamilyConfig fam_cfg;
  fam_cfg.star_little = which == SigmaKind::Sigma0;
  fam_cfg.seed = cfg.seed;
  const OmegaFamily family(d, fam_cfg);
  auto lower_obj = [&](const Point& z) {
    double q = q_value(d, psi, z);
    if (q == 0.0) return 0.0;
    return family.lower(z) * q;
  };
  auto upper_obj = [&](const Point& z) {
    double q = q_value(d, psi, z);
    if (q == 0.0) return 0.0;
    return omega_bounds(d, z).upper * q;
  };
  auto lo = sampled_supremum(d, lower_obj, cfg);
  auto hi = sampled_supremum(d, upper_obj, cfg);
  auto est = EstimateInterval::bounds(lo.value, std::max(lo.value, hi.value));
  est.samples = cfg.samples;
  est.seed = cfg.seed;
  est.argmax = lo.argmax;
  return est;
}

std::string to_string(BoundednessVerdict v) {
  switch (v) {
    case BoundednessVerdict::BoundedEvidence:
      return "bounded-evidence";
    case BoundednessVerdict::UnboundedEvidence:
      return "unbounded-evidence";
    case BoundednessVerdict::Inconclusive:
      break;
  }
  return "inconclusive";
}

BoundednessReport boundedness_verdict(const DomainDescriptor& d, const SymbolExpr& psi, const SamplingConfig& cfg,
                                      int per_shell) {
  require_metric(d);
  if (per_shell < 1) throw DomainError("per_shell must be >= 1");
  const auto parts = atoms(d);
  BoundednessReport rep;
  rep.shells = kBoundednessShells;
  const bool constant = psi.is_constant();
  for (std::size_t s = 0; s < rep.shells.size(); ++s) {
    const double r = rep.shells[s];
    // Objectives are evaluated on the shell itself: any point is pulled back
    // to gauge r, so the local search below never leaves it.
    auto on_shell = [&](const Point& z) {
      const double g = gauge(d, z);
      return g > 0.0 ? Point(z * (r / g)) : z;
    };
    auto crit_at = [&](const Point& z) {
      const Point w = on_shell(z);
      return log_gauge_sum(parts, w) * q_value(d, psi, w);
    };
    auto sup_at = [&](const Point& z) { return std::abs(psi.evaluate(on_shell(z))); };

    SupResult crit{0.0, Point()}, sup{-1.0, Point()};
    for (const auto& z : sample_at_gauge(d, per_shell, r, cfg.seed + s)) {
      if (double v = sup_at(z); v > sup.value) sup = {v, z};
      if (constant) continue;
      if (double v = crit_at(z); v > crit.value || crit.argmax.size() == 0) crit = {v, z};
    }
    // Peaks near the boundary are narrow (width ~ 1 - r); polish the best
    // sample of each shell.
    if (!constant) {
      crit.value = std::max(crit.value, refine_local_max(d, crit_at, crit.argmax, cfg.refine_iters, cfg.sweeps).value);
      sup.value = std::max(sup.value, refine_local_max(d, sup_at, sup.argmax, cfg.refine_iters, cfg.sweeps).value);
    }
    rep.criterion_maxima.push_back(crit.value);
    rep.sup_maxima.push_back(sup.value);
  }
  rep.verdict = classify(rep.criterion_maxima, rep.sup_maxima);
  rep.decay = little_star_membership_diagnostic(d, psi, {0.1, 0.01, 0.001}, 2000, cfg.seed);
  if (rep.decay.verdict == DecayVerdict::EvidenceAgainst)
    rep.little_star_verdict = BoundednessVerdict::UnboundedEvidence;
  else
    rep.little_star_verdict = rep.verdict;
  return rep;
}

NormBounds norm_bounds(const DomainDescriptor& d, const SymbolExpr& psi, const SamplingConfig& cfg) {
  NormBounds nb;
  nb.sup_norm = sup_norm_estimate(d, psi, cfg);
  nb.bloch_norm = bloch_norm_estimate(d, psi, cfg, certified_beta_upper(d, psi));
  nb.sigma = sigma_estimate(d, psi, cfg, SigmaKind::Sigma);
  nb.sigma0 = sigma_estimate(d, psi, cfg, SigmaKind::Sigma0);
  nb.lower = std::max(nb.bloch_norm.lower, nb.sup_norm.lower);
  // Interval modes carry an analytic upper end; sampled modes only a lower one.
  auto best = [](const EstimateInterval& e) { return e.mode == EstimateMode::SampledLower ? e.lower : e.upper; };
  nb.upper_estimate = std::max(nb.bloch_norm.lower, nb.sup_norm.lower + best(nb.sigma));
  nb.upper_estimate_star = std::max(nb.bloch_norm.lower, nb.sup_norm.lower + best(nb.sigma0));
  if (nb.sigma.mode == EstimateMode::Exact && nb.sup_norm.has_upper() && nb.bloch_norm.has_upper())
    nb.upper_certified = std::max(nb.bloch_norm.upper, nb.sup_norm.upper + nb.sigma.upper);
  return nb;
}

std::vector<SymbolExpr> default_battery(const DomainDescriptor& d, std::uint64_t seed, int random_members) {
  const int n = d.ambient_dimension();
  std::vector<SymbolExpr> out;
  out.push_back(SymbolExpr::constant(1.0, n));
  for (int j = 0; j < n; ++j) {
    Polynomial zj = Polynomial::variable(j, n);
    out.push_back(SymbolExpr::polynomial(zj));
    out.push_back(SymbolExpr::polynomial(Polynomial::constant(1.0, n) + zj.scaled(0.5)));
    // Unbounded members with ||f||_B <= 1, singular at four boundary pairs.
    for (double t : {0.0, 0.25, 0.5, 0.75})
      out.push_back(SymbolExpr::h_form(j, std::polar(1.0, t * std::numbers::pi), n));
  }
  for (int i = 0; i < random_members; ++i) {
    detail::Rng rng(seed, static_cast<std::uint64_t>(i), 11);
    Polynomial p = Polynomial::constant(rng.in_disk(), n);
    for (int j = 0; j < n; ++j) {
      Polynomial zj = Polynomial::variable(j, n);
      p = p + zj.scaled(0.5 * rng.in_disk()) + zj.pow(2).scaled(0.25 * rng.in_disk());
    }
    out.push_back(SymbolExpr::polynomial(p));
  }
  return out;
}

OpnormLower empirical_opnorm_lower(const DomainDescriptor& d, const SymbolExpr& psi,
                                   const std::vector<SymbolExpr>& battery, const SamplingConfig& cfg) {
  require_metric(d);
  OpnormLower best;
  for (std::size_t i = 0; i < battery.size(); ++i) {
    const auto& f = battery[i];
    auto fnorm = certified_norm_upper(d, f);
    if (!fnorm || *fnorm <= 0.0) continue;
    const SymbolExpr g = psi * f;
    double num = bloch_norm_estimate(d, g, cfg, certified_beta_upper(d, g)).lower;
    double ratio = num / *fnorm;
    if (ratio > best.value) {
      best.value = ratio;
      best.witness = "f = " + f.to_string();
    }
  }
  // ||M_psi||^k >= ||psi^k * 1||_B.
  if (!psi.is_constant()) {
    // The k-th root tends to sup |psi| as k grows.
    for (int k = 2; k <= 256; k *= 2) {
      const SymbolExpr g = power(psi, k);
      double ratio = std::pow(bloch_norm_estimate(d, g, cfg).lower, 1.0 / k);
      if (!std::isfinite(ratio)) break;
      if (ratio > best.value) {
        best.value = ratio;
        best.witness = "psi^" + std::to_string(k) + " applied to 1, k-th root";
      }
    }
  }
  return best;
}

double SpectrumCloud::distance(cplx lambda) const {
  double best = kInf;
  for (const auto& p : points) best = std::min(best, std::abs(p - lambda));
  return best;
}

std::optional<double> SpectrumCloud::resolvent_scale(cplx lambda, double sigma) const {
  const double alpha = distance(lambda);
  if (!(alpha > 0.0)) return std::nullopt;
  return sigma / (alpha * alpha);
}

SpectrumCloud spectrum_cloud(const DomainDescriptor& d, const SymbolExpr& psi, int nsamples, std::uint64_t seed) {
  if (nsamples < 1) throw DomainError("nsamples must be >= 1");
  SpectrumCloud cloud;
  if (auto c = psi.constant_value()) {
    cloud.points.push_back(*c);
  } else {
    for (const auto& z : sample_interior(d, nsamples, seed)) cloud.points.push_back(psi.evaluate(z));
  }
  cloud.re_min = cloud.im_min = kInf;
  cloud.re_max = cloud.im_max = -kInf;
  for (const auto& p : cloud.points) {
    cloud.re_min = std::min(cloud.re_min, p.real());
    cloud.re_max = std::max(cloud.re_max, p.real());
    cloud.im_min = std::min(cloud.im_min, p.imag());
    cloud.im_max = std::max(cloud.im_max, p.imag());
    cloud.max_modulus = std::max(cloud.max_modulus, std::abs(p));
  }
  cloud.hull_area = hull_area(cloud.points);
  return cloud;
}

CompactnessResult compactness_verdict(const DomainDescriptor& d, const SymbolExpr& psi, const SamplingConfig& cfg) {
  const int n = d.ambient_dimension();
  CompactnessResult res;
  const Point origin = Point::Zero(n);

  if (const auto* p = psi.as_polynomial()) {
    res.symbolic = true;
    res.compact = p->is_zero();
  } else if (auto c = psi.constant_value()) {
    res.symbolic = true;
    res.compact = *c == cplx{};
  }
  if (res.compact) {
    res.reason = "psi is identically zero";
    return res;
  }

  if (auto c = psi.constant_value()) {
    // Range {c}: M_psi = c I on an infinite-dimensional space.
    res.symbolic = true;
    res.witness_a = std::make_pair(origin, *c);
    res.reason = "psi is the nonzero constant " + SymbolExpr::constant(*c, n).to_string() +
                 "; c times the identity is not compact";
    return res;
  }

  std::vector<Point> candidates{origin};
  for (int j = 0; j < n; ++j) {
    Point e = origin;
    e[j] = 0.5;
    if (contains(d, e)) candidates.push_back(e);
  }
  for (const auto& z : sample_interior(d, cfg.samples, cfg.seed)) candidates.push_back(z);

  double max_abs = 0.0;
  for (const auto& z : candidates) {
    cplx v;
    try {
      v = psi.evaluate(z);
    } catch (const NumericalDomainError&) {
      continue;
    }
    max_abs = std::max(max_abs, std::abs(v));
    if (!res.witness_a) {
      res.witness_a = std::make_pair(z, v);
    } else if (!res.witness_b && std::abs(v - res.witness_a->second) > 1e-12) {
      res.witness_b = std::make_pair(z, v);
    }
    if (res.witness_b && res.symbolic) break;
  }
  if (!res.symbolic && max_abs <= 1e-12) {
    res.compact = true;
    res.reason = "psi vanished on every sample (numerical)";
    res.witness_a.reset();
    return res;
  }
  std::ostringstream os;
  os << "psi is not identically zero";
  if (res.witness_a && res.witness_b)
    os << ": psi" << point_string(res.witness_a->first) << " != psi" << point_string(res.witness_b->first);
  res.reason = os.str();
  return res;
}

std::string to_string(IsometryVerdict v) {
  switch (v) {
    case IsometryVerdict::Isometry:
      return "isometry";
    case IsometryVerdict::NotIsometry:
      return "not-isometry";
    case IsometryVerdict::NotIsometryEvidence:
      return "not-isometry-evidence";
    case IsometryVerdict::Inconclusive:
      break;
  }
  return "inconclusive";
}

IsometryResult isometry_verdict(const DomainDescriptor& d, const SymbolExpr& psi, int K, const SamplingConfig& cfg) {
  if (K < 1) throw DomainError("K must be >= 1");
  const int n = d.ambient_dimension();
  IsometryResult res;
  res.bloch_constant = bloch_constant(d);
  res.class_d = in_class_D(d);
  res.psi0 = psi.evaluate(Point::Zero(n));
  const double a = std::abs(res.psi0);

  const auto c = psi.constant_value();
  if (c && std::abs(std::abs(*c) - 1.0) <= kUnimodularTol) {
    res.verdict = IsometryVerdict::Isometry;
    res.reason = "unimodular constant";
    return res;
  }

  const double threshold = 1.0 - res.bloch_constant;
  double ak = 1.0;
  for (int k = 1; k <= K; ++k) {
    ak *= a;
    res.power_sequence.push_back(ak);
    if (!res.crossing && ak < threshold) res.crossing = k;
  }

  if (metric_supported(d)) {
    for (int k = 1; k <= K; ++k) {
      // Bloch norms in the table normalisation.
      const SymbolExpr g = power(psi, k);
      double beta = g.is_constant() ? 0.0
                                    : sampled_supremum(d, [&](const Point& z) { return registry_q_value(d, g, z); }, cfg).value;
      res.power_beta_lower.push_back(beta);
      res.power_norm_lower.push_back(std::pow(a, k) + beta);
    }
  }

  if (res.class_d) {
    res.verdict = IsometryVerdict::NotIsometry;
    std::ostringstream os;
    os << "c_D = " << res.bloch_constant << " < 1 and psi is not a unimodular constant";
    if (res.crossing) os << "; |psi(0)|^k < 1 - c_D from k = " << *res.crossing;
    res.reason = os.str();
    return res;
  }

  // A disk factor is present: only necessary conditions can be checked.
  constexpr double kTol = 1e-9;
  if (c) {
    res.verdict = IsometryVerdict::NotIsometryEvidence;
    res.reason = "||psi||_B = |c| != 1 for the constant symbol";
    return res;
  }
  for (std::size_t k = 0; k < res.power_norm_lower.size(); ++k) {
    if (res.power_norm_lower[k] > 1.0 + kTol) {
      res.verdict = IsometryVerdict::NotIsometryEvidence;
      res.reason = "||psi^" + std::to_string(k + 1) + "||_B exceeds 1";
      return res;
    }
  }
  if (auto up = certified_norm_upper(d, psi); up && *up < 1.0 - kTol) {
    res.verdict = IsometryVerdict::NotIsometryEvidence;
    res.reason = "||psi||_B is certified below 1";
    return res;
  }
  res.verdict = IsometryVerdict::Inconclusive;
  res.reason = "domain has a disk factor; no necessary condition failed";
  return res;
}

OperatorReport operator_report(const DomainDescriptor& d, const SymbolExpr& psi, const SamplingConfig& cfg) {
  return OperatorReport{psi, d, norm_bounds(d, psi, cfg), boundedness_verdict(d, psi, cfg)};
}

}  // namespace blochkit
