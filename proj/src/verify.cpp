#include "blochkit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "blochkit/bloch.hpp"
#include "blochkit/constants.hpp"
#include "blochkit/mult_operator.hpp"
#include "rng.hpp"

namespace blochkit {

namespace {

CheckResult check(int criterion, std::string name, std::string ref, double measured, double tol, bool pass,
                  std::string detail = {}) {
  return {criterion, std::move(name), std::move(ref), measured, tol, pass, std::move(detail)};
}

const std::vector<DomainDescriptor>& q_domains() {
  static const std::vector<DomainDescriptor> ds{
      DomainDescriptor::disk(),      DomainDescriptor::ball(2),     DomainDescriptor::ball(3),
      DomainDescriptor::ball(4),     DomainDescriptor::polydisk(2), DomainDescriptor::polydisk(3),
      DomainDescriptor::polydisk(4)};
  return ds;
}

Point random_point(const DomainDescriptor& d, double r_max, std::uint64_t seed, std::uint64_t index) {
  detail::Rng rng(seed, index, 41);
  return sample_at_gauge(d, 1, rng.uniform(0.0, r_max), seed ^ (index * 0x9e3779b97f4a7c15ULL))[0];
}

SamplingConfig sampling(const VerifyConfig& cfg, int cap = 0) {
  SamplingConfig s;
  s.seed = cfg.seed;
  s.samples = cap > 0 ? std::min(cfg.samples, cap) : cfg.samples;
  return s;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

Polynomial random_polynomial(int arity, int max_degree, std::uint64_t seed, std::uint64_t index, double scale,
                             bool nonconstant) {
  detail::Rng rng(seed, index, 43);
  Polynomial p = Polynomial::constant(0.0, arity);
  const int terms = 1 + rng.index(6);
  for (int t = 0; t < terms; ++t) {
    const int deg = (t == 0 && nonconstant) ? 1 + rng.index(max_degree) : rng.index(max_degree + 1);
    Polynomial mono = Polynomial::constant(scale * rng.complex_normal(), arity);
    for (int k = 0; k < deg; ++k) mono = mono * Polynomial::variable(rng.index(arity), arity);
    p = p + mono;
  }
  if (nonconstant && p.degree() < 1) p = p + Polynomial::variable(0, arity).scaled(scale);
  return p;
}

std::vector<CheckResult> check_q_oracle(const VerifyConfig& cfg) {
  constexpr int kInstances = 1000;
  constexpr int kDirs = 4096;
  double worst_excess = 0.0, worst_gap = 0.0;
  for (int i = 0; i < kInstances; ++i) {
    detail::Rng rng(cfg.seed, static_cast<std::uint64_t>(i), 101);
    const auto& d = q_domains()[rng.index(static_cast<int>(q_domains().size()))];
    const SymbolExpr f = SymbolExpr::polynomial(random_polynomial(d.ambient_dimension(), 4, cfg.seed, i));
    const Point z = random_point(d, 0.999, cfg.seed, i);
    const double q = q_value(d, f, z);
    const double o = q_value_oracle(d, f, z, kDirs);
    if (q > 0.0) {
      worst_excess = std::max(worst_excess, (o - q) / q);
      worst_gap = std::max(worst_gap, (q - o) / q);
    }
  }
  std::vector<CheckResult> out;
  out.push_back(check(1, "q-oracle: oracle never exceeds closed form", "Q_f definition (sup over directions)",
                      worst_excess, 1e-12, worst_excess <= 1e-12, "max (oracle - Q)/Q over 1000 instances"));
  out.push_back(check(1, "q-oracle: relative gap", "Q_f definition (sup over directions)", worst_gap, 1e-3,
                      worst_gap <= 1e-3, "max (Q - oracle)/Q, 4096 directions"));

  double worst = 0.0;
  const auto disk = DomainDescriptor::disk();
  for (int i = 0; i < kInstances; ++i) {
    const Polynomial p = random_polynomial(1, 4, cfg.seed ^ 0x5bd1e995ULL, i);
    const Point z = random_point(disk, 0.999, cfg.seed ^ 0x5bd1e995ULL, i);
    cplx deriv = 0.0;
    for (const auto& [alpha, c] : p.terms())
      if (alpha[0] > 0) deriv += c * static_cast<double>(alpha[0]) * std::pow(z[0], alpha[0] - 1);
    const double expected = (1.0 - std::norm(z[0])) * std::abs(deriv);
    const double err = std::abs(q_value(disk, SymbolExpr::polynomial(p), z) - expected) / std::max(1.0, expected);
    worst = std::max(worst, err);
  }
  out.push_back(check(2, "disk reduction", "Q_f(z) = (1-|z|^2)|f'(z)| on the disk", worst, 1e-12, worst <= 1e-12,
                      "1000 instances"));
  return out;
}

std::vector<CheckResult> check_omega(const VerifyConfig& cfg) {
  std::vector<CheckResult> out;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double r = 0.999 * (i + 1) / 100.0;
    const int n = 2 + i % 3;
    detail::Rng rng(cfg.seed, static_cast<std::uint64_t>(i), 103);
    Point dir(n);
    for (int k = 0; k < n; ++k) dir[k] = rng.complex_normal();
    const Point z = r * dir.normalized();
    const double len = path_length(DomainDescriptor::ball(n), {{Point::Zero(n), z}});
    worst = std::max(worst, std::abs(len - 0.5 * std::log((1.0 + r) / (1.0 - r))));
  }
  out.push_back(check(3, "omega on the ball: radial path length", "omega(z) = 1/2 log((1+|z|)/(1-|z|)) on the ball",
                      worst, 1e-4, worst <= 1e-4, "100 radii up to 0.999, ball:2..4"));

  const auto ball = DomainDescriptor::ball(2);
  const OmegaFamily family(ball, {});
  double worst_ratio = kInf;
  for (int i = 0; i < 50; ++i) {
    detail::Rng rng(cfg.seed, static_cast<std::uint64_t>(i), 105);
    const Point z = sample_at_gauge(ball, 1, rng.uniform(0.01, 0.999), cfg.seed + 1000 + i)[0];
    worst_ratio = std::min(worst_ratio, family.lower(z) / omega_exact_ball(z));
  }
  out.push_back(check(3, "omega on the ball: test-function lower bound", "omega(z) = 1/2 log((1+|z|)/(1-|z|)) on the ball",
                      worst_ratio, 0.95, worst_ratio >= 0.95, "min empirical/exact over 50 points"));

  double worst_a = -kInf, worst_b = -kInf;
  for (int n = 2; n <= 4; ++n) {
    const auto d = DomainDescriptor::polydisk(n);
    const OmegaFamily fam(d, {});
    const int count = n == 2 ? 168 : 166;
    const auto pts = sample_interior(d, count, cfg.seed + static_cast<std::uint64_t>(n));
    for (const auto& z : pts) {
      double atoms_max = 0.0;
      for (int k = 0; k < n; ++k) atoms_max = std::max(atoms_max, std::atanh(std::abs(z[k])));
      const double emp = fam.lower(z);
      const double up = rho_from_origin(d, z).upper;
      worst_a = std::max(worst_a, atoms_max - emp);
      worst_b = std::max(worst_b, emp - up);
    }
  }
  out.push_back(check(4, "polydisk: max arctanh|z_k| <= omega lower", "omega(z) >= max_k arctanh|z_k| on the polydisk", worst_a, 1e-9,
                      worst_a <= 1e-9, "500 points, polydisk:2..4"));
  out.push_back(check(4, "polydisk: omega lower <= straight-segment length", "omega <= rho <= straight-segment length",
                      worst_b, 0.0, worst_b <= 0.0, "500 points, polydisk:2..4"));
  return out;
}

std::vector<CheckResult> check_product_rule(const VerifyConfig& cfg) {
  double worst = -kInf;
  for (int i = 0; i < 1000; ++i) {
    detail::Rng rng(cfg.seed, static_cast<std::uint64_t>(i), 107);
    const auto& d = q_domains()[rng.index(static_cast<int>(q_domains().size()))];
    const int n = d.ambient_dimension();
    const SymbolExpr psi = SymbolExpr::polynomial(random_polynomial(n, 3, cfg.seed, 2 * i, 0.5, false));
    const SymbolExpr f = SymbolExpr::polynomial(random_polynomial(n, 3, cfg.seed, 2 * i + 1, 0.5, false));
    const Point z = random_point(d, 0.999, cfg.seed ^ 0xabcdefULL, i);
    const double lhs = q_value(d, psi * f, z);
    const double rhs = std::abs(psi.evaluate(z)) * q_value(d, f, z) + std::abs(f.evaluate(z)) * q_value(d, psi, z);
    worst = std::max(worst, lhs - rhs);
  }
  return {check(5, "product rule for Q", "Q_{psi f} <= |psi| Q_f + |f| Q_psi", worst, 1e-12,
                worst <= 1e-12, "max excess over 1000 triples")};
}

std::vector<CheckResult> check_growth_lemma(const VerifyConfig& cfg) {
  const auto ball = DomainDescriptor::ball(2);
  const auto scfg = sampling(cfg);
  double worst = -kInf;
  for (int i = 0; i < 50; ++i) {
    const SymbolExpr f = SymbolExpr::polynomial(random_polynomial(2, 4, cfg.seed ^ 0x77ULL, i, 0.5, true));
    const double beta = beta_estimate(ball, f, scfg).lower;
    const double f0 = std::abs(f.evaluate(Point::Zero(2)));
    for (const auto& z : sample_interior(ball, 20, cfg.seed + 5000 + i))
      worst = std::max(worst, std::abs(f.evaluate(z)) - (f0 + omega_exact_ball(z) * 1.05 * beta));
  }
  return {check(6, "growth lemma on the ball", "|f(z)| <= |f(0)| + omega(z) beta_f", worst, 0.0, worst <= 0.0,
                "max |f(z)| - bound over 1000 pairs, 5% slack on sampled beta")};
}

std::vector<CheckResult> check_norm_sandwich(const VerifyConfig& cfg) {
  const auto scfg = sampling(cfg);
  double worst_upper = -kInf, worst_lower = -kInf;
  std::string where_upper, where_lower;
  for (const auto& d : {DomainDescriptor::ball(2), DomainDescriptor::polydisk(2)}) {
    const auto battery = default_battery(d, cfg.seed);
    for (int i = 0; i < 20; ++i) {
      const SymbolExpr psi = SymbolExpr::polynomial(random_polynomial(2, 3, cfg.seed ^ 0x3141ULL, i, 0.5, true));
      const auto nb = norm_bounds(d, psi, scfg);
      const auto op = empirical_opnorm_lower(d, psi, battery, scfg);
      if (op.value - nb.upper_estimate > worst_upper) {
        worst_upper = op.value - nb.upper_estimate;
        where_upper = d.to_string() + " psi=" + psi.to_string();
      }
      if (nb.lower - op.value > worst_lower) {
        worst_lower = nb.lower - op.value;
        where_lower = d.to_string() + " psi=" + psi.to_string() + " lower=" + fmt(nb.lower) +
                      " opnorm=" + fmt(op.value) + " sup=" + fmt(nb.sup_norm.lower) + " B=" + fmt(nb.bloch_norm.lower);
      }
    }
  }
  return {check(7, "norm sandwich: empirical lower <= upper", "max{|psi|_B, |psi|_inf + sigma} bounds |M_psi|",
                worst_upper, 0.0, worst_upper <= 0.0, "worst: " + where_upper),
          check(7, "norm sandwich: lower <= empirical lower", "max{|psi|_B, |psi|_inf} <= |M_psi|", worst_lower, 1e-9,
                worst_lower <= 1e-9, "worst: " + where_lower)};
}

std::vector<CheckResult> check_spectrum(const VerifyConfig& cfg) {
  const auto ball = DomainDescriptor::ball(2);
  const auto cloud = spectrum_cloud(ball, SymbolExpr::variable(0, 2), 100000, cfg.seed);
  constexpr int kGrid = 20;
  constexpr double kRadius = 0.95;
  std::vector<int> hits(kGrid * kGrid, 0);
  auto cell = [&](double x) { return static_cast<int>(std::floor((x + kRadius) / (2 * kRadius) * kGrid)); };
  for (const auto& p : cloud.points) {
    int i = cell(p.real()), j = cell(p.imag());
    if (i >= 0 && i < kGrid && j >= 0 && j < kGrid) ++hits[i * kGrid + j];
  }
  int empty = 0;
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j) {
      // Cells lying entirely inside the disk of radius 0.95.
      double x0 = -kRadius + 2 * kRadius * i / kGrid, x1 = x0 + 2 * kRadius / kGrid;
      double y0 = -kRadius + 2 * kRadius * j / kGrid, y1 = y0 + 2 * kRadius / kGrid;
      double fx = std::max(std::abs(x0), std::abs(x1)), fy = std::max(std::abs(y0), std::abs(y1));
      if (fx * fx + fy * fy <= kRadius * kRadius && hits[i * kGrid + j] == 0) ++empty;
    }
  const auto single = spectrum_cloud(ball, SymbolExpr::constant(cplx(0.3, -0.2), 2), 1000, cfg.seed);
  const bool single_ok = single.points.size() == 1 && single.points[0] == cplx(0.3, -0.2);
  return {check(8, "spectrum: cloud inside the unit disk", "spectrum of M_psi is the closure of psi(D)",
                cloud.max_modulus, 1.0, cloud.max_modulus < 1.0, "psi = z1 on ball:2, 1e5 samples"),
          check(8, "spectrum: cloud covers radius 0.95", "spectrum of M_psi is the closure of psi(D)", empty, 0.0,
                empty == 0, "empty cells of a 20x20 grid inside the disk"),
          check(8, "spectrum: constant symbol", "spectrum of M_psi is the closure of psi(D)",
                static_cast<double>(single.points.size()), 1.0, single_ok, "psi = 0.3-0.2i")};
}

std::vector<CheckResult> check_compactness(const VerifyConfig& cfg) {
  const std::vector<DomainDescriptor> ds{DomainDescriptor::disk(), DomainDescriptor::ball(2),
                                         DomainDescriptor::polydisk(2), DomainDescriptor::cartan_i(2, 2)};
  const auto scfg = sampling(cfg, 2000);
  int zero_fail = 0;
  for (const auto& d : ds)
    if (!compactness_verdict(d, SymbolExpr::constant(0.0, d.ambient_dimension()), scfg).compact) ++zero_fail;
  int bad = 0;
  for (int i = 0; i < 50; ++i) {
    const auto& d = ds[i % ds.size()];
    const SymbolExpr psi =
        SymbolExpr::polynomial(random_polynomial(d.ambient_dimension(), 3, cfg.seed ^ 0x2718ULL, i, 0.5, true));
    const auto v = compactness_verdict(d, psi, scfg);
    bool ok = !v.compact && v.witness_a && v.witness_b;
    if (ok) {
      const auto& [za, va] = *v.witness_a;
      const auto& [zb, vb] = *v.witness_b;
      ok = contains(d, za) && contains(d, zb) && psi.evaluate(za) == va && psi.evaluate(zb) == vb && va != vb;
    }
    if (!ok) ++bad;
  }
  return {check(9, "compactness: zero symbol", "M_psi compact iff psi = 0", zero_fail, 0.0, zero_fail == 0,
                "disk, ball:2, polydisk:2, cartan1:2,2"),
          check(9, "compactness: nonzero symbols with two-point witnesses", "M_psi compact iff psi = 0", bad, 0.0,
                bad == 0, "50 random polynomials")};
}

std::vector<CheckResult> check_isometry(const VerifyConfig& cfg) {
  std::vector<CheckResult> out;
  int const_fail = 0;
  for (const auto& e : bloch_constant_table())
    for (double t : {0.0, 0.5 * std::numbers::pi, std::numbers::pi, 0.7}) {
      const auto psi = SymbolExpr::constant(std::polar(1.0, t), e.descriptor.ambient_dimension());
      if (isometry_verdict(e.descriptor, psi, 16, sampling(cfg, 200)).verdict != IsometryVerdict::Isometry)
        ++const_fail;
    }
  out.push_back(check(10, "isometry: unimodular constants", "constant of modulus one gives an isometry", const_fail,
                      0.0, const_fail == 0, "every registry domain, 4 phases"));

  constexpr int K = 16;
  const auto scfg = sampling(cfg, 1000);
  int verdict_fail = 0, crossing_fail = 0;
  double worst_z1 = -kInf;
  for (const auto& d : {DomainDescriptor::ball(2), DomainDescriptor::ball(5), DomainDescriptor::cartan_ii(2)}) {
    const int n = d.ambient_dimension();
    const double c_d = bloch_constant(d);
    std::vector<SymbolExpr> symbols{SymbolExpr::variable(0, n)};
    for (int i = 0; i < 20; ++i) {
      detail::Rng rng(cfg.seed, static_cast<std::uint64_t>(i), 109);
      Polynomial p = random_polynomial(n, 3, cfg.seed ^ 0x1618ULL, i, 0.5, true);
      p = p + Polynomial::constant(0.9 * rng.in_disk() - p.coefficient(MultiIndex(n, 0)), n);
      symbols.push_back(SymbolExpr::polynomial(p));
    }
    for (std::size_t s = 0; s < symbols.size(); ++s) {
      const auto res = isometry_verdict(d, symbols[s], K, scfg);
      if (res.verdict != IsometryVerdict::NotIsometry) ++verdict_fail;
      if (!res.crossing || *res.crossing > K) ++crossing_fail;
      if (s == 0 && !res.power_norm_lower.empty())
        worst_z1 = std::max(worst_z1, res.power_norm_lower[0] - c_d * (1.0 + 1e-9));
    }
  }
  out.push_back(check(10, "isometry: non-constant symbols fail on class-D domains",
                      "isometry iff unimodular constant (c_D < 1)", verdict_fail, 0.0, verdict_fail == 0,
                      "z1 and 20 random polynomials on ball:2, ball:5, cartan2:2"));
  out.push_back(check(10, "isometry: |psi(0)|^k crosses 1 - c_D within K = 16",
                      "|psi(0)|^k = 1 - beta_{psi^k} >= 1 - c_D", crossing_fail, 0.0, crossing_fail == 0,
                      "|psi(0)| <= 0.9"));
  out.push_back(check(10, "isometry: ||z1||_B <= c_D < 1 on balls", "beta_psi <= c_D for psi into the disk", worst_z1,
                      0.0, worst_z1 <= 0.0, "sampled, table normalisation"));
  return out;
}

std::vector<CheckResult> check_constants(const VerifyConfig& cfg) {
  int mismatch = 0, total = 0;
  auto expect = [&](const DomainDescriptor& d, double value) {
    ++total;
    if (bloch_constant(d) != value) ++mismatch;
  };
  for (int k = 1; k <= 10; ++k) {
    expect(DomainDescriptor::ball(k), std::sqrt(2.0 / (k + 1)));
    expect(DomainDescriptor::cartan_ii(k), std::sqrt(2.0 / (k + 1)));
    expect(DomainDescriptor::cartan_iii(k + 1), std::sqrt(1.0 / k));
    const int n4 = k == 2 ? 11 : k;
    expect(DomainDescriptor::cartan_iv(n4), n4 == 1 ? 1.0 : std::sqrt(2.0 / n4));
    expect(DomainDescriptor::polydisk(k), 1.0);
  }
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}, {3, 1}, {3, 2}, {3, 3}, {4, 2}, {5, 3}, {6, 1}, {7, 4}})
    expect(DomainDescriptor::cartan_i(m, n), std::sqrt(2.0 / (m + n)));
  expect(DomainDescriptor::exceptional1(), 1.0 / std::sqrt(6.0));
  expect(DomainDescriptor::exceptional2(), 1.0 / 3.0);

  // Factors with an independent disk-factor flag.
  struct Factor {
    DomainDescriptor d;
    double c;
    bool disk;
  };
  const std::vector<Factor> pool{
      {DomainDescriptor::disk(), 1.0, true},
      {DomainDescriptor::ball(1), 1.0, true},
      {DomainDescriptor::ball(2), std::sqrt(2.0 / 3.0), false},
      {DomainDescriptor::ball(4), std::sqrt(2.0 / 5.0), false},
      {DomainDescriptor::cartan_i(1, 1), 1.0, true},
      {DomainDescriptor::cartan_i(3, 2), std::sqrt(2.0 / 5.0), false},
      {DomainDescriptor::cartan_ii(1), 1.0, true},
      {DomainDescriptor::cartan_ii(3), std::sqrt(2.0 / 4.0), false},
      {DomainDescriptor::cartan_iii(2), 1.0, true},
      {DomainDescriptor::cartan_iii(4), std::sqrt(1.0 / 3.0), false},
      {DomainDescriptor::cartan_iv(1), 1.0, true},
      {DomainDescriptor::cartan_iv(5), std::sqrt(2.0 / 5.0), false},
      {DomainDescriptor::exceptional1(), 1.0 / std::sqrt(6.0), false},
      {DomainDescriptor::exceptional2(), 1.0 / 3.0, false},
      {DomainDescriptor::polydisk(2), 1.0, true},
  };
  int product_fail = 0, class_fail = 0;
  for (const auto& f : pool)
    if (in_class_D(f.d) == f.disk) ++class_fail;
  for (int i = 0; i < 50; ++i) {
    detail::Rng rng(cfg.seed, static_cast<std::uint64_t>(i), 113);
    const int k = 2 + rng.index(2);
    std::vector<DomainDescriptor> parts;
    double c = 0.0;
    bool disk = false;
    for (int j = 0; j < k; ++j) {
      const auto& f = pool[rng.index(static_cast<int>(pool.size()))];
      parts.push_back(f.d);
      c = std::max(c, f.c);
      disk = disk || f.disk;
    }
    const auto prod = DomainDescriptor::product(parts);
    if (bloch_constant(prod) != c) ++product_fail;
    if (in_class_D(prod) == disk) ++class_fail;
  }
  return {check(11, "constants: closed forms", "Bloch constants of the Cartan classes and exceptional domains",
                mismatch, 0.0, mismatch == 0, std::to_string(total) + " descriptors"),
          check(11, "constants: product rule", "c_D = max over factors", product_fail, 0.0, product_fail == 0,
                "50 random products"),
          check(11, "constants: class D iff no disk factor", "c_D = 1 iff some factor is the disk", class_fail, 0.0,
                class_fail == 0, "factor pool and 50 random products")};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"q-oracle",    "omega",   "product-rule", "growth-lemma",
                                              "norm-sandwich", "spectrum", "compactness",  "isometry",
                                              "constants"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyConfig& cfg) {
  using Fn = std::vector<CheckResult> (*)(const VerifyConfig&);
  static const std::map<std::string, Fn> table{
      {"q-oracle", check_q_oracle},        {"omega", check_omega},       {"product-rule", check_product_rule},
      {"growth-lemma", check_growth_lemma}, {"norm-sandwich", check_norm_sandwich},
      {"spectrum", check_spectrum},         {"compactness", check_compactness},
      {"isometry", check_isometry},         {"constants", check_constants}};
  if (suite == "all") {
    std::vector<CheckResult> out;
    for (const auto& name : suite_names()) {
      auto part = table.at(name)(cfg);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  auto it = table.find(suite);
  if (it == table.end()) throw DomainError("unknown suite '" + suite + "'");
  return it->second(cfg);
}

}  // namespace blochkit
