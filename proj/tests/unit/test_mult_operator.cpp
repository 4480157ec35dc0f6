#include <doctest.h>

#include <cmath>

#include "blochkit/constants.hpp"
#include "blochkit/mult_operator.hpp"

using namespace blochkit;

namespace {

SamplingConfig small(int n = 4000) {
  SamplingConfig c;
  c.samples = n;
  return c;
}

// max over a uniform r-grid of g(r).
template <class G>
double grid_max(G g, int n) {
  double m = 0.0;
  for (int i = 0; i < n; ++i) m = std::max(m, g((i + 0.5) / n));
  return m;
}

}  // namespace

TEST_SUITE("mult_operator") {

TEST_CASE("sup norm") {
  auto disk = DomainDescriptor::disk();
  auto c = sup_norm_estimate(disk, SymbolExpr::constant({0, 2}, 1), small());
  CHECK(c.mode == EstimateMode::Exact);
  CHECK(c.lower == 2.0);
  auto p = sup_norm_estimate(disk, parse_symbol("z1^2 + 0.5", 1), small());
  CHECK(p.lower <= 1.5);
  CHECK(p.lower >= 1.49);
  CHECK(p.upper == doctest::Approx(1.5));
}

TEST_CASE("sigma on the disk against a radial grid") {
  auto s = sigma_estimate(DomainDescriptor::disk(), SymbolExpr::variable(0, 1), small());
  double oracle = grid_max([](double r) { return std::atanh(r) * (1 - r * r); }, 100000);
  CHECK(s.lower <= oracle + 1e-9);
  CHECK(s.lower >= oracle - 1e-6);
  CHECK(sigma_estimate(DomainDescriptor::disk(), SymbolExpr::constant(3.0, 1), small()).upper == 0.0);
}

TEST_CASE("sigma on ball(2) against a radial grid") {
  // Q_{z1} = sqrt((1-|z|^2)(1-|z1|^2)), largest with z1 = 0 on each sphere.
  auto s = sigma_estimate(DomainDescriptor::ball(2), SymbolExpr::variable(0, 2), small(20000));
  double oracle = grid_max([](double r) { return std::atanh(r) * std::sqrt(1 - r * r); }, 100000);
  CHECK(s.lower <= oracle + 1e-9);
  CHECK(s.lower >= 0.98 * oracle);
}

TEST_CASE("sigma on the polydisk is an interval") {
  auto s = sigma_estimate(DomainDescriptor::polydisk(2), SymbolExpr::variable(0, 2), small());
  CHECK(s.mode == EstimateMode::AnalyticBounds);
  CHECK(s.lower <= s.upper);
  // Along the z1 axis omega is exact, so sigma >= the disk value.
  double disk = grid_max([](double r) { return std::atanh(r) * (1 - r * r); }, 100000);
  CHECK(s.lower >= disk - 1e-6);
  auto s0 = sigma_estimate(DomainDescriptor::polydisk(2), SymbolExpr::variable(0, 2), small(), SigmaKind::Sigma0);
  CHECK(s0.lower <= s.lower + 1e-12);
}

TEST_CASE("boundedness verdicts") {
  auto cfg = small();
  CHECK(boundedness_verdict(DomainDescriptor::ball(2), SymbolExpr::constant(2.0, 2), cfg).verdict ==
        BoundednessVerdict::BoundedEvidence);
  auto z1 = boundedness_verdict(DomainDescriptor::ball(2), SymbolExpr::variable(0, 2), cfg);
  CHECK(z1.verdict == BoundednessVerdict::BoundedEvidence);
  CHECK(z1.little_star_verdict == BoundednessVerdict::BoundedEvidence);
  CHECK(z1.criterion_maxima.back() < z1.criterion_maxima.front());
  CHECK(boundedness_verdict(DomainDescriptor::disk(), parse_symbol("fw(1, 0.999)", 1), cfg).verdict ==
        BoundednessVerdict::BoundedEvidence);
  CHECK(boundedness_verdict(DomainDescriptor::disk(), parse_symbol("h(1, 1)", 1), cfg).verdict ==
        BoundednessVerdict::UnboundedEvidence);
  // sum_k log((1+|z_k|)/(1-|z_k|)) Q grows for every non-constant polynomial on the polydisk.
  CHECK(boundedness_verdict(DomainDescriptor::polydisk(2), parse_symbol("z1*z2", 2), cfg).verdict ==
        BoundednessVerdict::UnboundedEvidence);
  CHECK_THROWS_AS(parse_symbol("fw(1, 1)", 1), Error);
}

TEST_CASE("norm bounds") {
  auto d = DomainDescriptor::ball(2);
  auto one = norm_bounds(d, SymbolExpr::constant(1.0, 2), small());
  CHECK(one.lower == 1.0);
  CHECK(one.upper_estimate == 1.0);
  CHECK(one.upper_certified == 1.0);
  auto c = norm_bounds(d, SymbolExpr::constant({0.3, -0.4}, 2), small());
  CHECK(c.lower == doctest::Approx(0.5));
  CHECK(c.upper_estimate == doctest::Approx(0.5));

  auto z = norm_bounds(DomainDescriptor::disk(), SymbolExpr::variable(0, 1), small());
  CHECK(z.lower == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(z.upper_estimate == doctest::Approx(1.0 + z.sigma.lower));
  CHECK(z.upper_estimate_star <= z.upper_estimate + 1e-12);
}

TEST_CASE("empirical operator norm") {
  auto d = DomainDescriptor::ball(2);
  auto battery = default_battery(d, 42);
  REQUIRE_FALSE(battery.empty());
  CHECK(battery.front().constant_value() == cplx{1.0});
  CHECK(empirical_opnorm_lower(d, SymbolExpr::constant(1.0, 2), battery, small()).value == doctest::Approx(1.0));
  CHECK(empirical_opnorm_lower(d, SymbolExpr::constant({0, -2}, 2), battery, small()).value == doctest::Approx(2.0));
  auto psi = parse_symbol("0.5*z1 + 0.2*z2^2", 2);
  auto op = empirical_opnorm_lower(d, psi, battery, small());
  auto nb = norm_bounds(d, psi, small());
  CHECK(op.value >= nb.bloch_norm.lower - 1e-9);
  CHECK(op.value <= nb.upper_estimate);
  CHECK_FALSE(op.witness.empty());
}

TEST_CASE("spectrum") {
  auto c = spectrum_cloud(DomainDescriptor::ball(2), SymbolExpr::constant({0.5, 0.5}, 2), 100, 1);
  REQUIRE(c.points.size() == 1);
  CHECK(c.points[0] == cplx{0.5, 0.5});
  CHECK(c.hull_area == 0.0);
  CHECK(c.distance({0.5, 0.5}) == 0.0);
  CHECK_FALSE(c.resolvent_scale({0.5, 0.5}, 1.0).has_value());
  CHECK(*c.resolvent_scale({0.5, 1.5}, 2.0) == doctest::Approx(2.0));

  // z^2 on the disk: range is the open disk; the hull approaches pi.
  auto sq = spectrum_cloud(DomainDescriptor::disk(), parse_symbol("z1^2", 1), 20000, 3);
  CHECK(sq.max_modulus < 1.0);
  CHECK(sq.hull_area > 0.95 * M_PI);
  CHECK(sq.hull_area < M_PI);
  CHECK(sq.distance({0.0, 1.2}) == doctest::Approx(0.2).epsilon(0.05));
}

TEST_CASE("compactness") {
  auto d = DomainDescriptor::ball(2);
  auto zero = compactness_verdict(d, SymbolExpr::constant(0.0, 2), small());
  CHECK(zero.compact);
  CHECK(zero.symbolic);
  auto z1 = compactness_verdict(d, SymbolExpr::variable(0, 2), small());
  CHECK_FALSE(z1.compact);
  REQUIRE(z1.witness_a.has_value());
  REQUIRE(z1.witness_b.has_value());
  CHECK(z1.witness_a->second == cplx{0.0});
  CHECK(z1.witness_b->second == cplx{0.5});
  auto five = compactness_verdict(d, SymbolExpr::constant(5.0, 2), small());
  CHECK_FALSE(five.compact);
  CHECK_FALSE(five.reason.empty());
  auto lf = compactness_verdict(DomainDescriptor::disk(), parse_symbol("fw(1, 0.5)", 1), small());
  CHECK_FALSE(lf.compact);
  REQUIRE(lf.witness_b.has_value());
  CHECK(lf.witness_a->second != lf.witness_b->second);
}

TEST_CASE("isometry") {
  auto b2 = DomainDescriptor::ball(2);
  auto cfg = small(2000);
  CHECK(isometry_verdict(b2, SymbolExpr::constant({0, 1}, 2), 16, cfg).verdict == IsometryVerdict::Isometry);
  auto z1 = isometry_verdict(b2, SymbolExpr::variable(0, 2), 16, cfg);
  CHECK(z1.verdict == IsometryVerdict::NotIsometry);
  CHECK(z1.class_d);
  CHECK(z1.bloch_constant == doctest::Approx(std::sqrt(2.0 / 3.0)));
  REQUIRE(z1.power_beta_lower.size() == 16);
  for (double b : z1.power_beta_lower) CHECK(b <= z1.bloch_constant + 1e-9);

  auto half = isometry_verdict(b2, SymbolExpr::constant(0.5, 2), 16, cfg);
  CHECK(half.verdict == IsometryVerdict::NotIsometry);
  REQUIRE(half.crossing.has_value());
  CHECK(*half.crossing == 3);  // 0.125 < 1 - sqrt(2/3) = 0.1835

  // Disk factor: the characterisation is open, constants still fail on norms.
  auto disk = isometry_verdict(DomainDescriptor::disk(), SymbolExpr::constant(0.5, 1), 16, cfg);
  CHECK(disk.verdict == IsometryVerdict::NotIsometryEvidence);
  CHECK(isometry_verdict(DomainDescriptor::disk(), SymbolExpr::constant({0.6, 0.8}, 1), 16, cfg).verdict ==
        IsometryVerdict::Isometry);
  CHECK_THROWS_AS(isometry_verdict(b2, SymbolExpr::variable(0, 2), 0, cfg), DomainError);
}

TEST_CASE("power sequence needs K = 17 at |psi(0)| = 0.9 on ball(2)") {
  // 0.9^16 = 0.1853 sits just above 1 - sqrt(2/3) = 0.1835; 0.9^17 = 0.1668 is below.
  auto b2 = DomainDescriptor::ball(2);
  auto cfg = small(500);
  auto k16 = isometry_verdict(b2, SymbolExpr::constant(0.9, 2), 16, cfg);
  CHECK_FALSE(k16.crossing.has_value());
  CHECK(k16.verdict == IsometryVerdict::NotIsometry);
  auto k17 = isometry_verdict(b2, SymbolExpr::constant(0.9, 2), 17, cfg);
  REQUIRE(k17.crossing.has_value());
  CHECK(*k17.crossing == 17);
}

}  // TEST_SUITE
