#include <doctest.h>

#include <cmath>
#include <random>

#include "blochkit/symbols.hpp"

using namespace blochkit;

namespace {

Point random_point(std::mt19937_64& g, int n, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  Point z(n);
  for (int i = 0; i < n; ++i) z(i) = {u(g), u(g)};
  return z;
}

// Central difference of the holomorphic derivative along z_j.
cplx fd_partial(const SymbolExpr& f, Point z, int j) {
  const double h = 1e-6;
  Point a = z, b = z;
  a(j) += h;
  b(j) -= h;
  return (f.evaluate(a) - f.evaluate(b)) / (2 * h);
}

}  // namespace

TEST_SUITE("symbols") {

TEST_CASE("polynomial arithmetic") {
  auto z1 = Polynomial::variable(0, 2), z2 = Polynomial::variable(1, 2);
  auto p = (z1 + z2) * (z1 + z2.scaled(-1.0));  // z1^2 - z2^2
  CHECK(p.degree() == 2);
  CHECK(p.terms().size() == 2);
  CHECK(p.coefficient({2, 0}) == cplx{1.0});
  CHECK(p.coefficient({0, 2}) == cplx{-1.0});
  CHECK(p.coefficient({1, 1}) == cplx{});
  CHECK((z1 + z1.scaled(-1.0)).is_zero());
  CHECK(z1.pow(5).degree() == 5);
  CHECK(Polynomial::constant({0.5, 0.5}, 2).constant_value() == cplx{0.5, 0.5});
  CHECK(p.coefficient_sum() == 2.0);
  CHECK_THROWS_AS(z1.pow(Polynomial::kMaxDegree + 1), DomainError);
  CHECK_THROWS_AS(z1 + Polynomial::variable(0, 3), DomainError);
}

TEST_CASE("parse and evaluate") {
  Point z(2);
  z << cplx{0.3, 0.1}, cplx{-0.2, 0.4};
  CHECK(parse_symbol("z1^2 - 3*z2 + (1-2i)", 2).evaluate(z) ==
        z(0) * z(0) - 3.0 * z(1) + cplx{1, -2});
  CHECK(parse_symbol("-z1*i", 2).evaluate(z) == -z(0) * cplx{0, 1});
  CHECK(std::abs(parse_symbol("(z1+z2)^3", 2).evaluate(z) - std::pow(z(0) + z(1), 3)) < 1e-15);
  auto f = parse_symbol("fw(1, 0.5)", 2);
  CHECK(std::abs(f.evaluate(z) - 0.5 * std::log((1.0 + 0.5 * z(0)) / (1.0 - 0.5 * z(0)))) < 1e-15);
  auto h = parse_symbol("h(2, (0.3+0.4i))", 2);
  cplx b = std::conj(cplx{0.3, 0.4}) / 0.5;
  CHECK(std::abs(h.evaluate(z) - 0.5 * std::log((1.0 + b * z(1)) / (1.0 - b * z(1)))) < 1e-15);
  CHECK(parse_symbol("3", 2).is_constant());
  CHECK(parse_symbol("z1 - z1 + 2", 2).constant_value() == cplx{2.0});
  CHECK_FALSE(parse_symbol("z1*z2", 2).is_constant());
}

TEST_CASE("to_string parses back") {
  for (const char* s : {"z1^2 - 3*z2 + (1-2i)", "(0.25+0.5i)*z1*z2^3", "fw(1, 0.5) * z2", "h(2, i) + z1"}) {
    auto f = parse_symbol(s, 2);
    auto g = parse_symbol(f.to_string(), 2);
    Point z(2);
    z << cplx{0.2, -0.3}, cplx{0.1, 0.5};
    CHECK(std::abs(f.evaluate(z) - g.evaluate(z)) < 1e-12);
  }
}

TEST_CASE("parse errors carry a position") {
  auto pos = [](const char* s) {
    try {
      parse_symbol(s, 2);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1L;
  };
  CHECK(pos("z1 + ") == 5);
  CHECK(pos("z1 $ z2") == 3);
  CHECK(pos("(z1") >= 3);
  CHECK_THROWS_AS(parse_symbol("z3", 2), Error);
  CHECK_THROWS_AS(parse_symbol("fw(1, 1.5)", 2), Error);
  CHECK_THROWS_AS(parse_symbol("h(1, 0)", 2), Error);
  CHECK_THROWS_AS(parse_symbol("z1^100", 2), ParseError);
}

TEST_CASE("gradient matches finite differences") {
  std::mt19937_64 g(5);
  for (const char* s : {"z1^3*z2 - (0.5+i)*z2^2 + 2", "fw(1, (0.3-0.6i)) * z2", "h(2, 0.9) + z1*z2",
                        "(z1 + fw(2, 0.7))^3"}) {
    auto f = parse_symbol(s, 2);
    for (int t = 0; t < 20; ++t) {
      Point z = random_point(g, 2, 0.6);
      Point grad = f.gradient(z);
      for (int j = 0; j < 2; ++j) CHECK(std::abs(grad(j) - fd_partial(f, z, j)) < 1e-6);
    }
  }
}

TEST_CASE("log fraction leaves its domain") {
  auto f = SymbolExpr::h_form(0, 1.0, 1);
  Point z(1);
  z << 1.0;
  CHECK_THROWS_AS(f.evaluate(z), NumericalDomainError);
}

TEST_CASE("combine") {
  auto z1 = SymbolExpr::variable(0, 2), z2 = SymbolExpr::variable(1, 2);
  auto s = z1 + z2;
  CHECK(s.kind() == SymbolKind::Polynomial);
  auto p = power(SymbolExpr::f_form(0, 0.5, 2), 4);
  CHECK(p.kind() == SymbolKind::Power);
  CHECK(p.exponent() == 4);
  Point z(2);
  z << 0.3, 0.2;
  CHECK(std::abs(p.evaluate(z) - std::pow(SymbolExpr::f_form(0, 0.5, 2).evaluate(z), 4)) < 1e-15);
  CHECK_THROWS_AS(combine(CombineOp::Power, std::vector<SymbolExpr>{z1, z2}, 2), DomainError);
  CHECK(power(z1, 0).constant_value() == cplx{1.0});
}

TEST_CASE("points") {
  auto z = parse_point("0.5, (0.1-0.2i), i");
  REQUIRE(z.size() == 3);
  CHECK(z(1) == cplx{0.1, -0.2});
  CHECK(z(2) == cplx{0.0, 1.0});
  CHECK_THROWS_AS(parse_point("0.5,,1"), ParseError);
}

}  // TEST_SUITE
