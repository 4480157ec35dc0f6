#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "blochkit/common.hpp"

namespace blochkit {

using MultiIndex = std::vector<int>;

/// Sparse multivariate polynomial in z_1..z_n. Exactly-zero coefficients are
/// never stored.
class Polynomial {
 public:
  static constexpr int kMaxDegree = 64;

  explicit Polynomial(int arity) : arity_(arity) {}
  static Polynomial constant(cplx c, int arity);
  /// z_{index+1}, index is 0-based.
  static Polynomial variable(int index, int arity);

  int arity() const { return arity_; }
  int degree() const;
  const std::map<MultiIndex, cplx>& terms() const { return terms_; }
  cplx coefficient(const MultiIndex& alpha) const;
  void add_term(const MultiIndex& alpha, cplx c);

  bool is_zero() const { return terms_.empty(); }
  std::optional<cplx> constant_value() const;

  cplx evaluate(const Point& z) const;
  Point gradient(const Point& z) const;

  /// sum |c_alpha|: bounds |p| on any domain inside the closed unit polydisk.
  double coefficient_sum() const;
  /// Entry j bounds sup |d p / d z_j| over the closed unit polydisk.
  std::vector<double> derivative_bounds() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(cplx c) const;
  Polynomial pow(int k) const;

 private:
  int arity_;
  std::map<MultiIndex, cplx> terms_;
};

enum class LogFracForm {
  /// 1/2 Log((1 + conj(w) z_k) / (1 - conj(w) z_k)), |w| < 1.
  F,
  /// 1/2 Log((|w| + z_k conj(w)) / (|w| - z_k conj(w))), w != 0.
  H
};

struct LogFrac {
  int k = 0;  // 0-based coordinate
  cplx w;
  LogFracForm form = LogFracForm::F;
};

enum class SymbolKind { Polynomial, LogFrac, Sum, Product, Power };

/// Immutable holomorphic symbol: a polynomial, a logarithmic test function,
/// or a sum / product / power of symbols.
class SymbolExpr {
 public:
  static SymbolExpr constant(cplx c, int arity);
  static SymbolExpr variable(int index, int arity);
  static SymbolExpr polynomial(Polynomial p);
  static SymbolExpr f_form(int k, cplx w, int arity);
  static SymbolExpr h_form(int k, cplx w, int arity);

  int arity() const;
  SymbolKind kind() const;
  const Polynomial* as_polynomial() const;
  const LogFrac* as_log_frac() const;
  const std::vector<SymbolExpr>& children() const;
  int exponent() const;

  cplx evaluate(const Point& z) const;
  Point gradient(const Point& z) const;

  /// Value when the symbol is constant as a formula (decided symbolically,
  /// never by sampling).
  std::optional<cplx> constant_value() const;
  bool is_constant() const { return constant_value().has_value(); }

  std::string to_string() const;

 private:
  struct Node;
  explicit SymbolExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;

  friend SymbolExpr make_sum(std::vector<SymbolExpr>);
  friend SymbolExpr make_product(std::vector<SymbolExpr>);
  friend SymbolExpr make_power(const SymbolExpr&, int);
};

enum class CombineOp { Sum, Product, Power };

/// Sum and product fold polynomial arguments into a single polynomial; power
/// keeps the factored form so high powers stay cheap to evaluate.
SymbolExpr combine(CombineOp op, std::span<const SymbolExpr> args, int exponent = 1);
SymbolExpr operator+(const SymbolExpr& a, const SymbolExpr& b);
SymbolExpr operator*(const SymbolExpr& a, const SymbolExpr& b);
SymbolExpr power(const SymbolExpr& a, int k);
SymbolExpr scaled(const SymbolExpr& a, cplx c);

/// Grammar:
///   expr   := term (("+"|"-") term)*
///   term   := factor ("*" factor)*
///   factor := base ("^" uint)?
///   base   := complex | "z" uint | "(" expr ")" | "fw(" uint "," complex ")"
///           | "h(" uint "," complex ")" | "-" base
/// Complex literals: `a`, `bi`, `i`, and parenthesised sums such as `(a-bi)`.
SymbolExpr parse_symbol(std::string_view text, int arity);

/// Parses a comma-separated list of complex literals ("0.5,(0.1-0.2i)").
Point parse_point(std::string_view text);

}  // namespace blochkit
