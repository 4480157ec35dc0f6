#include <doctest.h>

#include <cmath>

#include "blochkit/bloch.hpp"

using namespace blochkit;

namespace {

Point pt(std::initializer_list<cplx> v) {
  Point z(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (auto c : v) z(i++) = c;
  return z;
}

SamplingConfig small(int n = 4000) {
  SamplingConfig c;
  c.samples = n;
  return c;
}

}  // namespace

TEST_SUITE("bloch") {

TEST_CASE("disk Q is (1-|z|^2)|f'|") {
  auto disk = DomainDescriptor::disk();
  auto f = parse_symbol("z1^3 - (0.5+0.2i)*z1", 1);
  for (const auto& z : sample_interior(disk, 200, 9)) {
    cplx fp = 3.0 * z(0) * z(0) - cplx{0.5, 0.2};
    CHECK(q_value(disk, f, z) == doctest::Approx((1 - std::norm(z(0))) * std::abs(fp)).epsilon(1e-12));
  }
}

TEST_CASE("ball Q for coordinate functions") {
  auto ball = DomainDescriptor::ball(2);
  for (double r : {0.0, 0.3, 0.9}) {
    Point z = pt({r, 0.0});
    // H = diag(1/(1-r^2)^2, 1/(1-r^2)) here.
    CHECK(q_value(ball, SymbolExpr::variable(0, 2), z) == doctest::Approx(1 - r * r).epsilon(1e-13));
    CHECK(q_value(ball, SymbolExpr::variable(1, 2), z) == doctest::Approx(std::sqrt(1 - r * r)).epsilon(1e-13));
  }
}

TEST_CASE("oracle never exceeds the closed form") {
  for (const char* s : {"ball:3", "polydisk:2", "product(ball:2,disk)"}) {
    auto d = parse_domain(s);
    int n = d.ambient_dimension();
    auto f = parse_symbol(n == 3 ? "z1^2*z2 - 0.7*z3 + z2" : "z1*z2^2 + (0.3-0.1i)*z1", n);
    for (const auto& z : sample_interior(d, 40, 4)) {
      double q = q_value(d, f, z), o = q_value_oracle(d, f, z, 512);
      CHECK(o <= q * (1 + 1e-12) + 1e-15);
      CHECK(o >= q * (1 - 1e-9));
    }
  }
  CHECK_THROWS_AS(q_value(DomainDescriptor::cartan_ii(2), SymbolExpr::variable(0, 3), Point::Zero(3)),
                  UnsupportedMetric);
  CHECK_THROWS_AS(q_value(DomainDescriptor::disk(), SymbolExpr::variable(0, 1), pt({2.0})), NumericalDomainError);
}

TEST_CASE("beta of model functions") {
  auto disk = DomainDescriptor::disk();
  auto b = beta_estimate(disk, SymbolExpr::variable(0, 1), small());
  CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-12));  // attained at 0
  CHECK(b.mode == EstimateMode::SampledLower);

  auto h = beta_estimate(disk, SymbolExpr::h_form(0, {0.6, 0.8}, 1), small());
  CHECK(h.lower <= 1.0 + 1e-12);
  CHECK(h.lower >= 0.999);

  auto fw = beta_estimate(disk, SymbolExpr::f_form(0, 0.5, 1), small());
  CHECK(fw.lower <= 0.5 + 1e-12);
  CHECK(fw.lower >= 0.5 - 1e-9);

  auto c = beta_estimate(disk, SymbolExpr::constant(3.0, 1), small());
  CHECK(c.lower == 0.0);
  CHECK(c.upper == 0.0);
}

TEST_CASE("certified upper and Lipschitz estimate bracket the sampled beta") {
  auto ball = DomainDescriptor::ball(2);
  auto f = parse_symbol("z1^2 + (0.5-0.5i)*z1*z2 - z2", 2);
  auto cert = certified_beta_upper(ball, f);
  REQUIRE(cert.has_value());
  auto b = beta_estimate(ball, f, small(), cert);
  CHECK(b.lower <= *cert);
  CHECK(b.upper == *cert);
  CHECK(lipschitz_beta_estimate(ball, f, 2000, 3) <= b.lower * 1.001);
  CHECK(certified_beta_upper(ball, parse_symbol("fw(1, 0.5)", 2)) == 0.5);
  CHECK(certified_beta_upper(ball, parse_symbol("h(2, i)", 2)) == 1.0);
  CHECK_FALSE(certified_beta_upper(ball, parse_symbol("fw(1, 0.5) * z2", 2)).has_value());
  for (const char* s : {"fw(1, 0.9)", "h(1, (0.6+0.8i))", "h(2, -1)"}) {
    auto lf = parse_symbol(s, 2);
    CHECK(beta_estimate(ball, lf, small()).lower <= *certified_beta_upper(ball, lf) + 1e-12);
    CHECK(beta_estimate(DomainDescriptor::polydisk(2), lf, small()).lower <= *certified_beta_upper(ball, lf) + 1e-12);
  }

  auto n = bloch_norm_estimate(ball, parse_symbol("z1 + 2", 2), small());
  CHECK(n.lower == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("omega on the ball and polydisk") {
  Point z = pt({0.6, {0.0, 0.3}});
  double r = z.norm();
  CHECK(omega_exact_ball(z) == doctest::Approx(0.5 * std::log((1 + r) / (1 - r))).epsilon(1e-14));
  CHECK_THROWS_AS(omega_exact_ball(pt({1.0, 0.0})), NumericalDomainError);

  auto pb = omega_polydisk_bounds(pt({0.9, 0.2}));
  CHECK(pb.lower == doctest::Approx(std::atanh(0.9)));
  CHECK(pb.upper >= pb.lower);

  auto ball = DomainDescriptor::ball(2);
  OmegaFamily fam(ball, {});
  for (const auto& w : sample_interior(ball, 50, 21)) {
    double lo = fam.lower(w), ex = omega_exact_ball(w);
    CHECK(lo <= ex + 1e-9);
    CHECK(lo >= 0.95 * ex - 1e-12);
  }
  auto poly = DomainDescriptor::polydisk(3);
  OmegaFamily pf(poly, {});
  for (const auto& w : sample_interior(poly, 50, 21)) {
    auto bounds = omega_bounds(poly, w);
    double lo = pf.lower(w);
    CHECK(lo >= bounds.lower - 1e-9);
    CHECK(lo <= bounds.upper);
  }
}

TEST_CASE("decay diagnostic") {
  auto disk = DomainDescriptor::disk();
  std::vector<double> ladder{0.1, 0.01, 0.001};
  CHECK(little_star_membership_diagnostic(disk, SymbolExpr::variable(0, 1), ladder).verdict ==
        DecayVerdict::ConsistentWithMembership);
  CHECK(little_star_membership_diagnostic(disk, SymbolExpr::h_form(0, 1.0, 1), ladder).verdict ==
        DecayVerdict::EvidenceAgainst);
  CHECK(little_star_membership_diagnostic(disk, SymbolExpr::constant(1.0, 1), ladder).verdict ==
        DecayVerdict::ConsistentWithMembership);
  CHECK_THROWS_AS(little_star_membership_diagnostic(disk, SymbolExpr::variable(0, 1), {}), DomainError);
  CHECK_THROWS_AS(little_star_membership_diagnostic(disk, SymbolExpr::variable(0, 1), {0.01, 0.1}), DomainError);
}

}  // TEST_SUITE
