#include <doctest.h>

#include <cmath>

#include "blochkit/domain.hpp"

using namespace blochkit;

namespace {

Point pt(std::initializer_list<cplx> v) {
  Point z(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (auto c : v) z(i++) = c;
  return z;
}

}  // namespace

TEST_SUITE("domain") {

TEST_CASE("parse round trip") {
  for (const char* s : {"disk", "ball:3", "polydisk:2", "cartan1:3,2", "cartan2:3", "cartan3:5", "cartan4:5",
                        "exc1", "exc2", "product(ball:2,disk)"}) {
    auto d = parse_domain(s);
    CHECK(parse_domain(d.to_string()) == d);
  }
  CHECK(parse_domain("BALL:2") == DomainDescriptor::ball(2));
  CHECK(parse_domain("cartan1:3,2").ambient_dimension() == 6);
  CHECK(parse_domain("cartan2:3").ambient_dimension() == 6);
  CHECK(parse_domain("cartan3:5").ambient_dimension() == 10);
  CHECK(parse_domain("exc1").ambient_dimension() == 16);
  CHECK(parse_domain("exc2").ambient_dimension() == 27);
}

TEST_CASE("nested products flatten") {
  auto d = parse_domain("product(product(disk,ball:2),polydisk:2)");
  CHECK(d.factors().size() == 3);
  CHECK(d.ambient_dimension() == 5);
}

TEST_CASE("bad specs") {
  CHECK_THROWS_AS(parse_domain("ball"), DomainError);
  CHECK_THROWS_AS(parse_domain("ball:x"), DomainError);
  CHECK_THROWS_AS(parse_domain("torus:2"), DomainError);
  CHECK_THROWS_AS(parse_domain("product(disk"), DomainError);
  CHECK_THROWS_AS(parse_domain("ball:0"), DomainError);
}

TEST_CASE("canonical") {
  CHECK(parse_domain("cartan2:2").canonical());
  CHECK_FALSE(parse_domain("cartan2:1").canonical());
  CHECK_FALSE(parse_domain("cartan3:4").canonical());
  CHECK_FALSE(parse_domain("cartan4:3").canonical());
  CHECK(parse_domain("cartan4:5").canonical());
}

TEST_CASE("membership") {
  auto ball = DomainDescriptor::ball(2);
  CHECK(contains(ball, pt({0.6, 0.7})));
  CHECK_FALSE(contains(ball, pt({0.8, 0.7})));
  auto poly = DomainDescriptor::polydisk(2);
  CHECK(contains(poly, pt({0.8, 0.7})));
  CHECK_FALSE(contains(poly, pt({1.0, 0.0})));
  // 2x2 matrix [[0.9, 0], [0, 0.9]] has operator norm 0.9.
  auto c1 = DomainDescriptor::cartan_i(2, 2);
  CHECK(contains(c1, pt({0.9, 0.0, 0.0, 0.9})));
  CHECK_FALSE(contains(c1, pt({0.6, 0.6, 0.6, 0.6})));  // norm 1.2
  CHECK_THROWS_AS(contains(DomainDescriptor::exceptional1(), Point::Zero(16)), UnsupportedOperation);
}

TEST_CASE("gauge puts z / gauge on the boundary") {
  for (const char* s : {"ball:3", "polydisk:3", "cartan1:2,2", "cartan2:2", "cartan4:5", "product(ball:2,disk)"}) {
    auto d = parse_domain(s);
    for (const auto& z : sample_interior(d, 40, 7)) {
      double g = gauge(d, z);
      if (g < 1e-3) continue;
      CHECK(contains(d, z / (g * (1.0 + 1e-6))));
      CHECK_FALSE(contains(d, z / (g * (1.0 - 1e-6))));
    }
  }
}

TEST_CASE("metric matches the closed forms") {
  Point z = pt({{0.3, -0.2}});
  double r2 = std::norm(z(0));
  auto H = bergman_metric(DomainDescriptor::disk(), z).matrix;
  CHECK(H(0, 0).real() == doctest::Approx(1.0 / ((1 - r2) * (1 - r2))).epsilon(1e-14));

  Point w = pt({{0.3, 0.1}, {-0.2, 0.4}});
  double s = 1.0 - w.squaredNorm();
  Eigen::MatrixXcd expect = (s * Eigen::MatrixXcd::Identity(2, 2) + w * w.adjoint()) / (s * s);
  auto Hb = bergman_metric(DomainDescriptor::ball(2), w).matrix;
  CHECK((Hb - expect).norm() < 1e-13);

  Point u = pt({{1.0, 0.5}, {-0.3, 0.2}});
  CHECK(metric_form(DomainDescriptor::ball(2), w, u) ==
        doctest::Approx((u.adjoint() * Hb * u)(0).real()).epsilon(1e-13));

  auto Hp = bergman_metric(DomainDescriptor::polydisk(2), w).matrix;
  CHECK(Hp(0, 1) == cplx{});
  CHECK(Hp(1, 1).real() == doctest::Approx(std::pow(1 - std::norm(w(1)), -2)).epsilon(1e-14));

  CHECK_THROWS_AS(bergman_metric(DomainDescriptor::cartan_ii(2), Point::Zero(3)), UnsupportedOperation);
  CHECK_THROWS_AS(bergman_metric(DomainDescriptor::disk(), pt({1.5})), NumericalDomainError);
}

TEST_CASE("inverse metric form inverts the matrix") {
  for (const char* s : {"ball:3", "polydisk:3", "product(ball:2,disk)"}) {
    auto d = parse_domain(s);
    for (const auto& z : sample_interior(d, 30, 3)) {
      Point c = Point::Ones(z.size()) * cplx{0.4, -0.7};
      Eigen::MatrixXcd H = bergman_metric(d, z).matrix;
      double direct = (c.adjoint() * H.inverse() * c)(0).real();
      CHECK(inverse_metric_form(d, z, c) == doctest::Approx(direct).epsilon(1e-8));
    }
  }
}

TEST_CASE("radial path length is arctanh on the disk and ball") {
  for (double r : {0.1, 0.5, 0.9, 0.999}) {
    auto d = DomainDescriptor::ball(3);
    Point z = pt({r / std::sqrt(2.0), 0.0, {0.0, r / std::sqrt(2.0)}});
    double L = path_length(d, {{Point::Zero(3), z}});
    CHECK(L == doctest::Approx(std::atanh(r)).epsilon(1e-6));
    auto rho = rho_from_origin(d, z);
    CHECK(rho.lower == rho.upper);
    CHECK(rho.lower == doctest::Approx(std::atanh(r)).epsilon(1e-12));
  }
}

TEST_CASE("polydisk distance bounds") {
  auto d = DomainDescriptor::polydisk(2);
  Point z = pt({0.9, 0.5});
  auto rho = rho_from_origin(d, z);
  CHECK(rho.lower == doctest::Approx(std::atanh(0.9)));
  // Straight segment: integrand sqrt(sum r^2 / (1 - t^2 r^2)^2).
  double h = 1e-5, sum = 0.0;
  for (double t = h / 2; t < 1.0; t += h) {
    double a = 0.81 / std::pow(1 - t * t * 0.81, 2), b = 0.25 / std::pow(1 - t * t * 0.25, 2);
    sum += std::sqrt(a + b) * h;
  }
  CHECK(rho.upper == doctest::Approx(sum).epsilon(1e-6));
  auto tight = rho_from_origin(d, z, true);
  CHECK(tight.upper <= rho.upper);
  CHECK(tight.upper >= tight.lower);
  // z on a coordinate axis: the segment is a geodesic.
  auto axis = rho_from_origin(d, pt({0.7, 0.0}));
  CHECK(axis.upper - axis.lower < 1e-7);
}

TEST_CASE("sampler is reproducible and prefix-stable") {
  auto d = DomainDescriptor::polydisk(3);
  auto a = sample_interior(d, 100, 11);
  auto b = sample_interior(d, 250, 11);
  auto c = sample_interior(d, 100, 12);
  CHECK(a[0].norm() == 0.0);
  bool same = true, differs = false;
  for (int i = 0; i < 100; ++i) {
    same = same && a[i] == b[i];
    differs = differs || a[i] != c[i];
    CHECK(contains(d, b[i]));
  }
  CHECK(same);
  CHECK(differs);
  for (const auto& z : sample_at_gauge(d, 50, 0.99, 5)) CHECK(gauge(d, z) == doctest::Approx(0.99).epsilon(1e-12));
  for (const auto& z : sample_near_distinguished_boundary(d, 20, 0.01, 5))
    for (int k = 0; k < 3; ++k) CHECK(std::abs(z(k)) == doctest::Approx(0.99).epsilon(1e-12));
  CHECK_THROWS_AS(sample_interior(d, 0, 1), DomainError);
  CHECK_THROWS_AS(sample_at_gauge(d, 5, 1.0, 1), DomainError);
  CHECK_THROWS_AS(sample_interior(DomainDescriptor::exceptional2(), 5, 1), UnsupportedOperation);
}

}  // TEST_SUITE
