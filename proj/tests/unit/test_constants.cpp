#include <doctest.h>

#include <cmath>
#include <random>

#include "blochkit/bloch.hpp"
#include "blochkit/constants.hpp"

using namespace blochkit;

TEST_SUITE("constants") {

TEST_CASE("closed forms") {
  CHECK(bloch_constant(parse_domain("disk")) == 1.0);
  CHECK(bloch_constant(parse_domain("ball:2")) == doctest::Approx(std::sqrt(2.0 / 3.0)));
  CHECK(bloch_constant(parse_domain("cartan1:3,2")) == doctest::Approx(std::sqrt(2.0 / 5.0)));
  CHECK(bloch_constant(parse_domain("cartan2:3")) == doctest::Approx(std::sqrt(0.5)));
  CHECK(bloch_constant(parse_domain("cartan3:5")) == doctest::Approx(0.5));
  CHECK(bloch_constant(parse_domain("cartan4:8")) == doctest::Approx(0.5));
  CHECK(bloch_constant(parse_domain("exc1")) == doctest::Approx(1 / std::sqrt(6.0)));
  CHECK(bloch_constant(parse_domain("exc2")) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("low dimensions coincide with the disk") {
  for (const char* s : {"ball:1", "cartan1:1,1", "cartan2:1", "cartan3:2", "cartan4:1"}) {
    auto d = parse_domain(s);
    CHECK(bloch_constant(d) == 1.0);
    CHECK(has_disk_factor(d));
    CHECK_FALSE(in_class_D(d));
  }
}

TEST_CASE("products take the max") {
  CHECK(bloch_constant(parse_domain("product(ball:2,disk)")) == 1.0);
  CHECK_FALSE(in_class_D(parse_domain("product(ball:2,disk)")));
  CHECK(bloch_constant(parse_domain("product(ball:2,cartan1:3,2)")) == doctest::Approx(std::sqrt(2.0 / 3.0)));
  CHECK(in_class_D(parse_domain("product(ball:2,cartan4:6)")));
  CHECK(bloch_constant(parse_domain("polydisk:4")) == 1.0);
}

TEST_CASE("every table entry lies in (0, 1]") {
  for (const auto& e : bloch_constant_table()) {
    CHECK(e.value > 0.0);
    CHECK(e.value <= 1.0);
    CHECK_FALSE(e.formula.empty());
  }
}

TEST_CASE("table normalisation of Q") {
  auto ball = DomainDescriptor::ball(2);
  CHECK(registry_metric_factor(ball) == doctest::Approx(1.5));
  CHECK(registry_metric_factor(DomainDescriptor::disk()) == 1.0);
  // beta of z1 in the table normalisation equals c_D exactly (attained at 0).
  Point z0 = Point::Zero(2);
  CHECK(registry_q_value(ball, SymbolExpr::variable(0, 2), z0) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));

  // Maps into the unit disk stay below c_D.
  std::mt19937_64 g(8);
  std::normal_distribution<double> nd;
  const double cD = bloch_constant(ball);
  SamplingConfig cfg;
  cfg.samples = 3000;
  for (int t = 0; t < 20; ++t) {
    Polynomial p(2);
    p.add_term({1, 0}, {nd(g), nd(g)});
    p.add_term({0, 2}, {nd(g), nd(g)});
    p.add_term({1, 1}, {nd(g), nd(g)});
    p = p.scaled(0.99 / p.coefficient_sum());  // |p| < 1 on the ball
    auto f = SymbolExpr::polynomial(p);
    auto s = sampled_supremum(ball, [&](const Point& z) { return registry_q_value(ball, f, z); }, cfg);
    CHECK(s.value <= cD + 0.02);
  }
}

}  // TEST_SUITE
