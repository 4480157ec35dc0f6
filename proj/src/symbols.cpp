#include "blochkit/symbols.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

namespace blochkit {

namespace {

std::string format_real(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_complex(cplx c) {
  if (c.imag() == 0.0) return format_real(c.real());
  if (c.real() == 0.0) return format_real(c.imag()) + "i";
  std::string im = format_real(std::abs(c.imag())) + "i";
  return "(" + format_real(c.real()) + (c.imag() < 0 ? "-" : "+") + im + ")";
}

void check_arity(int a, int b) {
  if (a != b)
    throw DomainError("arity mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

// ---------------------------------------------------------------------------
// Polynomial

Polynomial Polynomial::constant(cplx c, int arity) {
  Polynomial p(arity);
  p.add_term(MultiIndex(arity, 0), c);
  return p;
}

Polynomial Polynomial::variable(int index, int arity) {
  if (index < 0 || index >= arity)
    throw DomainError("variable z" + std::to_string(index + 1) + " exceeds arity " +
                      std::to_string(arity));
  Polynomial p(arity);
  MultiIndex alpha(arity, 0);
  alpha[index] = 1;
  p.add_term(alpha, 1.0);
  return p;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [alpha, c] : terms_) d = std::max(d, std::accumulate(alpha.begin(), alpha.end(), 0));
  return d;
}

cplx Polynomial::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? cplx{} : it->second;
}

void Polynomial::add_term(const MultiIndex& alpha, cplx c) {
  if (static_cast<int>(alpha.size()) != arity_) throw DomainError("multi-index length mismatch");
  if (std::accumulate(alpha.begin(), alpha.end(), 0) > kMaxDegree)
    throw DomainError("polynomial degree exceeds " + std::to_string(kMaxDegree));
  cplx& slot = terms_[alpha];
  slot += c;
  if (slot == cplx{}) terms_.erase(alpha);
}

std::optional<cplx> Polynomial::constant_value() const {
  if (terms_.empty()) return cplx{};
  if (terms_.size() == 1 && terms_.begin()->first == MultiIndex(arity_, 0))
    return terms_.begin()->second;
  return std::nullopt;
}

cplx Polynomial::evaluate(const Point& z) const {
  check_arity(static_cast<int>(z.size()), arity_);
  cplx total{};
  for (const auto& [alpha, c] : terms_) {
    cplx t = c;
    for (int j = 0; j < arity_; ++j)
      for (int e = 0; e < alpha[j]; ++e) t *= z[j];
    total += t;
  }
  return total;
}

Point Polynomial::gradient(const Point& z) const {
  check_arity(static_cast<int>(z.size()), arity_);
  Point g = Point::Zero(arity_);
  for (const auto& [alpha, c] : terms_) {
    for (int j = 0; j < arity_; ++j) {
      if (alpha[j] == 0) continue;
      cplx t = c * static_cast<double>(alpha[j]);
      for (int i = 0; i < arity_; ++i) {
        int e = alpha[i] - (i == j ? 1 : 0);
        for (int r = 0; r < e; ++r) t *= z[i];
      }
      g[j] += t;
    }
  }
  return g;
}

double Polynomial::coefficient_sum() const {
  double s = 0.0;
  for (const auto& [alpha, c] : terms_) s += std::abs(c);
  return s;
}

std::vector<double> Polynomial::derivative_bounds() const {
  std::vector<double> b(arity_, 0.0);
  for (const auto& [alpha, c] : terms_)
    for (int j = 0; j < arity_; ++j) b[j] += alpha[j] * std::abs(c);
  return b;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_arity(arity_, o.arity_);
  Polynomial r = *this;
  for (const auto& [alpha, c] : o.terms_) r.add_term(alpha, c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_arity(arity_, o.arity_);
  Polynomial r(arity_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) {
      MultiIndex s(arity_);
      for (int j = 0; j < arity_; ++j) s[j] = a[j] + b[j];
      r.add_term(s, ca * cb);
    }
  return r;
}

Polynomial Polynomial::scaled(cplx c) const {
  Polynomial r(arity_);
  for (const auto& [alpha, v] : terms_) r.add_term(alpha, v * c);
  return r;
}

Polynomial Polynomial::pow(int k) const {
  if (k < 0) throw DomainError("negative exponent");
  Polynomial r = constant(1.0, arity_);
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

// ---------------------------------------------------------------------------
// SymbolExpr

struct SymbolExpr::Node {
  SymbolKind kind = SymbolKind::Polynomial;
  int arity = 0;
  std::optional<Polynomial> poly;
  LogFrac log_frac;
  std::vector<SymbolExpr> children;
  int exponent = 1;
};

SymbolExpr SymbolExpr::polynomial(Polynomial p) {
  auto n = std::make_shared<Node>();
  n->kind = SymbolKind::Polynomial;
  n->arity = p.arity();
  n->poly = std::move(p);
  return SymbolExpr(std::move(n));
}

SymbolExpr SymbolExpr::constant(cplx c, int arity) { return polynomial(Polynomial::constant(c, arity)); }

SymbolExpr SymbolExpr::variable(int index, int arity) {
  return polynomial(Polynomial::variable(index, arity));
}

SymbolExpr SymbolExpr::f_form(int k, cplx w, int arity) {
  if (k < 0 || k >= arity)
    throw DomainError("fw coordinate " + std::to_string(k + 1) + " exceeds arity " +
                      std::to_string(arity));
  if (!(std::abs(w) < 1.0)) throw DomainError("fw parameter must satisfy |w| < 1");
  if (w == cplx{}) return constant(0.0, arity);
  auto n = std::make_shared<Node>();
  n->kind = SymbolKind::LogFrac;
  n->arity = arity;
  n->log_frac = {k, w, LogFracForm::F};
  return SymbolExpr(std::move(n));
}

SymbolExpr SymbolExpr::h_form(int k, cplx w, int arity) {
  if (k < 0 || k >= arity)
    throw DomainError("h coordinate " + std::to_string(k + 1) + " exceeds arity " +
                      std::to_string(arity));
  if (w == cplx{}) throw DomainError("h parameter must be nonzero");
  auto n = std::make_shared<Node>();
  n->kind = SymbolKind::LogFrac;
  n->arity = arity;
  n->log_frac = {k, w, LogFracForm::H};
  return SymbolExpr(std::move(n));
}

int SymbolExpr::arity() const { return node_->arity; }
SymbolKind SymbolExpr::kind() const { return node_->kind; }
const Polynomial* SymbolExpr::as_polynomial() const { return node_->poly ? &*node_->poly : nullptr; }
const LogFrac* SymbolExpr::as_log_frac() const {
  return node_->kind == SymbolKind::LogFrac ? &node_->log_frac : nullptr;
}
const std::vector<SymbolExpr>& SymbolExpr::children() const { return node_->children; }
int SymbolExpr::exponent() const { return node_->exponent; }

namespace {

// Unit multiplier b with value 1/2 Log((1 + b z_k)/(1 - b z_k)).
cplx log_frac_multiplier(const LogFrac& lf) {
  return lf.form == LogFracForm::F ? std::conj(lf.w) : std::conj(lf.w) / std::abs(lf.w);
}

cplx log_frac_argument(const LogFrac& lf, const Point& z) {
  cplx a = log_frac_multiplier(lf) * z[lf.k];
  if (!(std::abs(a) < 1.0))
    throw NumericalDomainError("log-fraction argument leaves the unit disk (|w z_k| >= 1)");
  return a;
}

}  // namespace

cplx SymbolExpr::evaluate(const Point& z) const {
  check_arity(static_cast<int>(z.size()), arity());
  switch (node_->kind) {
    case SymbolKind::Polynomial:
      return node_->poly->evaluate(z);
    case SymbolKind::LogFrac: {
      cplx a = log_frac_argument(node_->log_frac, z);
      cplx ratio = (1.0 + a) / (1.0 - a);
      if (ratio.real() < 0.0 && std::abs(std::abs(std::arg(ratio)) - std::numbers::pi) < 1e-12)
        throw NumericalDomainError("log argument on the branch cut");
      return 0.5 * std::log(ratio);
    }
    case SymbolKind::Sum: {
      cplx s{};
      for (const auto& c : node_->children) s += c.evaluate(z);
      return s;
    }
    case SymbolKind::Product: {
      cplx p = 1.0;
      for (const auto& c : node_->children) p *= c.evaluate(z);
      return p;
    }
    case SymbolKind::Power: {
      cplx b = node_->children[0].evaluate(z), r = 1.0;
      for (int i = 0; i < node_->exponent; ++i) r *= b;
      return r;
    }
  }
  return {};
}

Point SymbolExpr::gradient(const Point& z) const {
  check_arity(static_cast<int>(z.size()), arity());
  switch (node_->kind) {
    case SymbolKind::Polynomial:
      return node_->poly->gradient(z);
    case SymbolKind::LogFrac: {
      const auto& lf = node_->log_frac;
      cplx a = log_frac_argument(lf, z);
      Point g = Point::Zero(arity());
      g[lf.k] = log_frac_multiplier(lf) / (1.0 - a * a);
      return g;
    }
    case SymbolKind::Sum: {
      Point g = Point::Zero(arity());
      for (const auto& c : node_->children) g += c.gradient(z);
      return g;
    }
    case SymbolKind::Product: {
      const auto& ch = node_->children;
      std::vector<cplx> vals(ch.size());
      for (std::size_t i = 0; i < ch.size(); ++i) vals[i] = ch[i].evaluate(z);
      Point g = Point::Zero(arity());
      for (std::size_t i = 0; i < ch.size(); ++i) {
        cplx others = 1.0;
        for (std::size_t j = 0; j < ch.size(); ++j)
          if (j != i) others *= vals[j];
        if (others != cplx{}) g += others * ch[i].gradient(z);
      }
      return g;
    }
    case SymbolKind::Power: {
      const int k = node_->exponent;
      if (k == 0) return Point::Zero(arity());
      cplx b = node_->children[0].evaluate(z), r = 1.0;
      for (int i = 0; i < k - 1; ++i) r *= b;
      return static_cast<double>(k) * r * node_->children[0].gradient(z);
    }
  }
  return Point::Zero(arity());
}

std::optional<cplx> SymbolExpr::constant_value() const {
  switch (node_->kind) {
    case SymbolKind::Polynomial:
      return node_->poly->constant_value();
    case SymbolKind::LogFrac:
      return std::nullopt;
    case SymbolKind::Sum: {
      cplx s{};
      for (const auto& c : node_->children) {
        auto v = c.constant_value();
        if (!v) return std::nullopt;
        s += *v;
      }
      return s;
    }
    case SymbolKind::Product: {
      cplx p = 1.0;
      bool all = true;
      for (const auto& c : node_->children) {
        auto v = c.constant_value();
        if (v && *v == cplx{}) return cplx{};
        if (!v) all = false;
        else p *= *v;
      }
      return all ? std::optional<cplx>(p) : std::nullopt;
    }
    case SymbolKind::Power: {
      if (node_->exponent == 0) return cplx{1.0};
      auto v = node_->children[0].constant_value();
      if (!v) return std::nullopt;
      cplx r = 1.0;
      for (int i = 0; i < node_->exponent; ++i) r *= *v;
      return r;
    }
  }
  return std::nullopt;
}

std::string SymbolExpr::to_string() const {
  switch (node_->kind) {
    case SymbolKind::Polynomial: {
      const auto& terms = node_->poly->terms();
      if (terms.empty()) return "0";
      std::string s;
      // Highest degree first reads more naturally.
      for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const auto& [alpha, c] = *it;
        std::string mono;
        for (int j = 0; j < arity(); ++j) {
          if (alpha[j] == 0) continue;
          if (!mono.empty()) mono += "*";
          mono += "z" + std::to_string(j + 1);
          if (alpha[j] > 1) mono += "^" + std::to_string(alpha[j]);
        }
        std::string term;
        if (mono.empty()) term = format_complex(c);
        else if (c == cplx{1.0}) term = mono;
        else term = format_complex(c) + "*" + mono;
        if (!s.empty()) s += " + ";
        s += term;
      }
      return s;
    }
    case SymbolKind::LogFrac: {
      const auto& lf = node_->log_frac;
      return std::string(lf.form == LogFracForm::F ? "fw(" : "h(") + std::to_string(lf.k + 1) + "," +
             format_complex(lf.w) + ")";
    }
    case SymbolKind::Sum:
    case SymbolKind::Product: {
      std::string sep = node_->kind == SymbolKind::Sum ? " + " : "*";
      std::string s;
      for (const auto& c : node_->children) {
        if (!s.empty()) s += sep;
        s += "(" + c.to_string() + ")";
      }
      return s;
    }
    case SymbolKind::Power:
      return "(" + node_->children[0].to_string() + ")^" + std::to_string(node_->exponent);
  }
  return "?";
}

SymbolExpr make_sum(std::vector<SymbolExpr> args) {
  auto n = std::make_shared<SymbolExpr::Node>();
  n->kind = SymbolKind::Sum;
  n->arity = args.front().arity();
  n->children = std::move(args);
  return SymbolExpr(std::move(n));
}

SymbolExpr make_product(std::vector<SymbolExpr> args) {
  auto n = std::make_shared<SymbolExpr::Node>();
  n->kind = SymbolKind::Product;
  n->arity = args.front().arity();
  n->children = std::move(args);
  return SymbolExpr(std::move(n));
}

SymbolExpr make_power(const SymbolExpr& base, int k) {
  auto n = std::make_shared<SymbolExpr::Node>();
  n->kind = SymbolKind::Power;
  n->arity = base.arity();
  n->children = {base};
  n->exponent = k;
  return SymbolExpr(std::move(n));
}

SymbolExpr combine(CombineOp op, std::span<const SymbolExpr> args, int exponent) {
  if (args.empty()) throw DomainError("combine needs at least one argument");
  const int arity = args.front().arity();
  for (const auto& a : args) check_arity(a.arity(), arity);

  if (op == CombineOp::Power) {
    if (args.size() != 1) throw DomainError("power takes one argument");
    if (exponent < 0) throw DomainError("power exponent must be >= 0");
    if (exponent == 0) return SymbolExpr::constant(1.0, arity);
    if (exponent == 1) return args[0];
    return make_power(args[0], exponent);
  }

  // Fold every polynomial argument into one polynomial, keep the rest.
  const bool sum = op == CombineOp::Sum;
  Polynomial folded = sum ? Polynomial(arity) : Polynomial::constant(1.0, arity);
  std::vector<SymbolExpr> rest;
  for (const auto& a : args) {
    if (const auto* p = a.as_polynomial())
      folded = sum ? folded + *p : folded * *p;
    else
      rest.push_back(a);
  }
  if (rest.empty()) return SymbolExpr::polynomial(std::move(folded));
  if (!sum && folded.is_zero()) return SymbolExpr::constant(0.0, arity);
  bool neutral = sum ? folded.is_zero() : folded.constant_value() == std::optional<cplx>(1.0);
  if (!neutral) rest.insert(rest.begin(), SymbolExpr::polynomial(std::move(folded)));
  if (rest.size() == 1) return rest.front();
  return sum ? make_sum(std::move(rest)) : make_product(std::move(rest));
}

SymbolExpr operator+(const SymbolExpr& a, const SymbolExpr& b) {
  SymbolExpr args[] = {a, b};
  return combine(CombineOp::Sum, args);
}

SymbolExpr operator*(const SymbolExpr& a, const SymbolExpr& b) {
  SymbolExpr args[] = {a, b};
  return combine(CombineOp::Product, args);
}

SymbolExpr power(const SymbolExpr& a, int k) {
  SymbolExpr args[] = {a};
  return combine(CombineOp::Power, args, k);
}

SymbolExpr scaled(const SymbolExpr& a, cplx c) { return SymbolExpr::constant(c, a.arity()) * a; }

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, int arity) : s_(text), arity_(arity) {}

  SymbolExpr parse() {
    auto e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept_word(std::string_view w) {
    skip();
    if (s_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  int uint_literal() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected unsigned integer");
    if (pos_ - start > 6) fail("integer too large");
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }

  SymbolExpr expr() {
    SymbolExpr acc = term();
    for (;;) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc + scaled(term(), -1.0);
      else return acc;
    }
  }

  SymbolExpr term() {
    SymbolExpr acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  SymbolExpr factor() {
    SymbolExpr b = base();
    if (accept('^')) {
      std::size_t at = pos_;
      int k = uint_literal();
      if (const auto* p = b.as_polynomial()) {
        if (static_cast<long>(p->degree()) * k > Polynomial::kMaxDegree) {
          pos_ = at;
          fail("polynomial degree exceeds " + std::to_string(Polynomial::kMaxDegree));
        }
        return SymbolExpr::polynomial(p->pow(k));
      }
      return power(b, k);
    }
    return b;
  }

  cplx constant_argument() {
    std::size_t at = pos_;
    auto e = expr();
    auto v = e.constant_value();
    if (!v) {
      pos_ = at;
      fail("expected a complex constant");
    }
    return *v;
  }

  SymbolExpr log_frac(bool f_form) {
    std::size_t at = pos_;
    int k = uint_literal();
    expect(',');
    cplx w = constant_argument();
    expect(')');
    if (k < 1 || k > arity_) {
      pos_ = at;
      fail("coordinate index " + std::to_string(k) + " exceeds arity " + std::to_string(arity_));
    }
    try {
      return f_form ? SymbolExpr::f_form(k - 1, w, arity_) : SymbolExpr::h_form(k - 1, w, arity_);
    } catch (const DomainError& e) {
      pos_ = at;
      fail(e.what());
    }
  }

  SymbolExpr base() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (accept('-')) return scaled(base(), -1.0);
    if (accept('(')) {
      auto e = expr();
      expect(')');
      return e;
    }
    if (accept_word("fw(")) return log_frac(true);
    if (accept_word("h(")) return log_frac(false);
    char c = s_[pos_];
    if (c == 'z') {
      ++pos_;
      std::size_t at = pos_;
      int j = uint_literal();
      if (j < 1 || j > arity_) {
        pos_ = at;
        fail("variable z" + std::to_string(j) + " exceeds arity " + std::to_string(arity_));
      }
      return SymbolExpr::variable(j - 1, arity_);
    }
    if (c == 'i') {
      ++pos_;
      return SymbolExpr::constant(cplx(0.0, 1.0), arity_);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double x = 0.0;
      auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), x);
      if (ec != std::errc()) fail("bad number");
      pos_ = static_cast<std::size_t>(ptr - s_.data());
      if (pos_ < s_.size() && s_[pos_] == 'i') {
        ++pos_;
        return SymbolExpr::constant(cplx(0.0, x), arity_);
      }
      return SymbolExpr::constant(x, arity_);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  int arity_;
  std::size_t pos_ = 0;
};

}  // namespace

SymbolExpr parse_symbol(std::string_view text, int arity) {
  if (arity < 0) throw DomainError("arity must be >= 0");
  return Parser(text, arity).parse();
}

Point parse_point(std::string_view text) {
  std::vector<cplx> coords;
  int depth = 0;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    auto piece = text.substr(start, end - start);
    auto v = parse_symbol(piece, 0).constant_value();
    coords.push_back(v.value_or(cplx{}));
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == ',' && depth == 0) {
      flush(i);
      start = i + 1;
    }
  }
  flush(text.size());
  Point p(static_cast<Eigen::Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) p[static_cast<Eigen::Index>(i)] = coords[i];
  return p;
}

}  // namespace blochkit
