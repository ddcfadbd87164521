#include "holocontact/kernel_expr.hpp"

#include "holocontact/errors.hpp"
#include "holocontact/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace holocontact {

namespace {

ExprNode leaf(ExprKind kind) {
  ExprNode n;
  n.kind = kind;
  return n;
}

Expr binary(ExprKind kind, const Expr& a, const Expr& b) {
  ExprNode n = leaf(kind);
  n.args = {a, b};
  return Expr::make(std::move(n));
}

Expr unary(ExprKind kind, const Expr& a) {
  ExprNode n = leaf(kind);
  n.args = {a};
  return Expr::make(std::move(n));
}

std::string format_real(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_literal(Complex c) {
  if (c.imag() == 0.0) {
    const std::string s = format_real(c.real());
    return c.real() < 0 ? "(" + s + ")" : s;
  }
  if (c.real() == 0.0) {
    const std::string s = format_real(c.imag()) + "i";
    return c.imag() < 0 ? "(" + s + ")" : s;
  }
  std::string s = "(" + format_real(c.real());
  if (c.imag() >= 0) s += "+";
  return s + format_real(c.imag()) + "i)";
}

}  // namespace

Expr::Expr(Complex value) {
  ExprNode n = leaf(ExprKind::Literal);
  n.literal = value;
  node_ = std::make_shared<const ExprNode>(std::move(n));
}

Expr Expr::make(ExprNode node) { return Expr(std::make_shared<const ExprNode>(std::move(node))); }

Expr Expr::z(std::size_t k) {
  if (k == 0) throw DimensionError("variables are numbered from 1");
  ExprNode n = leaf(ExprKind::Variable);
  n.variable = k - 1;
  return make(std::move(n));
}

Expr Expr::zb(std::size_t k) {
  if (k == 0) throw DimensionError("variables are numbered from 1");
  ExprNode n = leaf(ExprKind::Variable);
  n.variable = k - 1;
  n.conjugate = true;
  return make(std::move(n));
}

std::string Expr::to_string() const {
  const ExprNode& n = node();
  switch (n.kind) {
    case ExprKind::Variable:
      return (n.conjugate ? "zb" : "z") + std::to_string(n.variable + 1);
    case ExprKind::Literal:
      return format_literal(n.literal);
    case ExprKind::Sum:
      return "(" + n.args[0].to_string() + " + " + n.args[1].to_string() + ")";
    case ExprKind::Difference:
      return "(" + n.args[0].to_string() + " - " + n.args[1].to_string() + ")";
    case ExprKind::Product:
      return "(" + n.args[0].to_string() + " * " + n.args[1].to_string() + ")";
    case ExprKind::Quotient:
      return "(" + n.args[0].to_string() + " / " + n.args[1].to_string() + ")";
    case ExprKind::Negate:
      return "(-" + n.args[0].to_string() + ")";
    case ExprKind::IntPower: {
      const std::string e = n.int_exponent < 0 ? "(" + std::to_string(n.int_exponent) + ")"
                                               : std::to_string(n.int_exponent);
      return "(" + n.args[0].to_string() + "^" + e + ")";
    }
    case ExprKind::RealPower:
      return "pow(" + n.args[0].to_string() + ", " + format_real(n.real_exponent) + ")";
    case ExprKind::Exp:
      return "exp(" + n.args[0].to_string() + ")";
    case ExprKind::Log:
      return "log(" + n.args[0].to_string() + ")";
  }
  return {};
}

std::size_t Expr::max_variable() const {
  if (kind() == ExprKind::Variable) return node().variable + 1;
  std::size_t out = 0;
  for (const auto& a : node().args) out = std::max(out, a.max_variable());
  return out;
}

bool Expr::has_conjugate_variables() const {
  if (kind() == ExprKind::Variable) return node().conjugate;
  return std::any_of(node().args.begin(), node().args.end(),
                     [](const Expr& a) { return a.has_conjugate_variables(); });
}

// Builders fold literal arithmetic and drop trivial zeros and ones; the
// symbolic derivative relies on this to stay small.
Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_literal() && b.is_literal()) return Expr(a.node().literal + b.node().literal);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return binary(ExprKind::Sum, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_literal() && b.is_literal()) return Expr(a.node().literal - b.node().literal);
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  return binary(ExprKind::Difference, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_literal() && b.is_literal()) return Expr(a.node().literal * b.node().literal);
  if (a.is_zero() || b.is_zero()) return Expr(0.0);
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  return binary(ExprKind::Product, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw SingularityError("division by literal zero");
  if (a.is_literal() && b.is_literal()) return Expr(a.node().literal / b.node().literal);
  if (a.is_zero()) return Expr(0.0);
  if (b.is_one()) return a;
  return binary(ExprKind::Quotient, a, b);
}

Expr operator-(const Expr& a) {
  if (a.is_literal()) return Expr(-a.node().literal);
  return unary(ExprKind::Negate, a);
}

Expr exp(const Expr& a) {
  if (a.is_literal()) return Expr(std::exp(a.node().literal));
  return unary(ExprKind::Exp, a);
}

Expr log(const Expr& a) { return unary(ExprKind::Log, a); }

Expr ipow(const Expr& a, int n) {
  if (n == 0) return Expr(1.0);
  if (n == 1) return a;
  ExprNode node = leaf(ExprKind::IntPower);
  node.args = {a};
  node.int_exponent = n;
  return Expr::make(std::move(node));
}

Expr pow(const Expr& a, double r) {
  ExprNode node = leaf(ExprKind::RealPower);
  node.args = {a};
  node.real_exponent = r;
  return Expr::make(std::move(node));
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr expression() {
    Expr e = term();
    for (;;) {
      if (accept('+'))
        e = binary(ExprKind::Sum, e, term());
      else if (accept('-'))
        e = binary(ExprKind::Difference, e, term());
      else
        return fold(e);
    }
  }

  Expr term() {
    Expr e = signed_factor();
    for (;;) {
      if (accept('*'))
        e = binary(ExprKind::Product, e, signed_factor());
      else if (accept('/'))
        e = binary(ExprKind::Quotient, e, signed_factor());
      else
        return fold(e);
    }
  }

  Expr signed_factor() {
    if (accept('-')) {
      Expr inner = signed_factor();
      return inner.is_literal() ? Expr(-inner.node().literal) : unary(ExprKind::Negate, inner);
    }
    if (accept('+')) return signed_factor();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!accept('^')) return base;
    const std::size_t at = pos_;
    Expr ex = signed_factor();
    if (!ex.is_literal() || ex.node().literal.imag() != 0.0) {
      pos_ = at;
      fail("exponent after '^' must be a real literal");
    }
    const double r = ex.node().literal.real();
    if (std::nearbyint(r) == r && std::abs(r) < 1e6) {
      ExprNode n = leaf(ExprKind::IntPower);
      n.args = {base};
      n.int_exponent = static_cast<int>(r);
      return Expr::make(std::move(n));
    }
    ExprNode n = leaf(ExprKind::RealPower);
    n.args = {base};
    n.real_exponent = r;
    return Expr::make(std::move(n));
  }

  // Collapse literal-only binary nodes so "1+2i" is a single complex literal.
  static Expr fold(const Expr& e) {
    const ExprNode& n = e.node();
    if (n.args.size() != 2 || !n.args[0].is_literal() || !n.args[1].is_literal()) return e;
    const Complex a = n.args[0].node().literal;
    const Complex b = n.args[1].node().literal;
    switch (n.kind) {
      case ExprKind::Sum: return Expr(a + b);
      case ExprKind::Difference: return Expr(a - b);
      case ExprKind::Product: return Expr(a * b);
      case ExprKind::Quotient:
        if (b == Complex(0.0)) return e;
        return Expr(a / b);
      default: return e;
    }
  }

  double number() {
    skip_space();
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc()) fail("expected a number");
    pos_ += static_cast<std::size_t>(res.ptr - begin);
    return value;
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Expr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expression();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const double v = number();
      if (pos_ < text_.size() && text_[pos_] == 'i' &&
          !(pos_ + 1 < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
        ++pos_;
        return Expr(Complex(0.0, v));
      }
      return Expr(v);
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail(std::string("unexpected character '") + c + "'");
    const std::size_t at = pos_;
    const std::string id = identifier();
    if (id == "i") return Expr(Complex(0.0, 1.0));
    if (id == "exp" || id == "log") {
      expect('(');
      Expr arg = expression();
      if (accept(',')) fail(id + "() takes one argument");
      expect(')');
      return unary(id == "exp" ? ExprKind::Exp : ExprKind::Log, arg);
    }
    if (id == "pow") {
      expect('(');
      Expr base = expression();
      if (!accept(',')) fail("pow() takes two arguments");
      skip_space();
      const std::size_t at_exp = pos_;
      const Expr ex = signed_factor();
      if (!ex.is_literal() || ex.node().literal.imag() != 0.0) {
        pos_ = at_exp;
        fail("pow() exponent must be a real literal");
      }
      const double r = ex.node().literal.real();
      if (accept(',')) fail("pow() takes two arguments");
      expect(')');
      ExprNode n = leaf(ExprKind::RealPower);
      n.args = {base};
      n.real_exponent = r;
      return Expr::make(std::move(n));
    }
    std::size_t digits = 0;
    bool conj = false;
    if (id.rfind("zb", 0) == 0) {
      conj = true;
      digits = 2;
    } else if (id.rfind("z", 0) == 0) {
      digits = 1;
    } else {
      pos_ = at;
      fail("unknown identifier '" + id + "'");
    }
    const std::string tail = id.substr(digits);
    if (tail.empty() || !std::all_of(tail.begin(), tail.end(), ::isdigit) || tail[0] == '0') {
      pos_ = at;
      fail("malformed variable '" + id + "'");
    }
    const std::size_t k = std::stoul(tail);
    return conj ? Expr::zb(k) : Expr::z(k);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_kernel(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------- transforms

Expr conjugate(const Expr& e) {
  ExprNode n = e.node();
  if (n.kind == ExprKind::Variable) {
    n.conjugate = !n.conjugate;
    return Expr::make(std::move(n));
  }
  if (n.kind == ExprKind::Literal) return Expr(std::conj(n.literal));
  for (auto& a : n.args) a = conjugate(a);
  return Expr::make(std::move(n));
}

Expr differentiate(const Expr& e, std::size_t k, bool conj) {
  const ExprNode& n = e.node();
  auto d = [&](const Expr& a) { return differentiate(a, k, conj); };
  switch (n.kind) {
    case ExprKind::Variable:
      return (n.variable + 1 == k && n.conjugate == conj) ? Expr(1.0) : Expr(0.0);
    case ExprKind::Literal:
      return Expr(0.0);
    case ExprKind::Sum:
      return d(n.args[0]) + d(n.args[1]);
    case ExprKind::Difference:
      return d(n.args[0]) - d(n.args[1]);
    case ExprKind::Product:
      return d(n.args[0]) * n.args[1] + n.args[0] * d(n.args[1]);
    case ExprKind::Quotient: {
      const Expr& a = n.args[0];
      const Expr& b = n.args[1];
      return d(a) / b - a * d(b) / ipow(b, 2);
    }
    case ExprKind::Negate:
      return -d(n.args[0]);
    case ExprKind::IntPower:
      return Expr(double(n.int_exponent)) * ipow(n.args[0], n.int_exponent - 1) * d(n.args[0]);
    case ExprKind::RealPower:
      return Expr(n.real_exponent) * pow(n.args[0], n.real_exponent - 1.0) * d(n.args[0]);
    case ExprKind::Exp:
      return e * d(n.args[0]);
    case ExprKind::Log:
      return d(n.args[0]) / n.args[0];
  }
  return Expr(0.0);
}

Complex evaluate(const Expr& e, const Point& z, const Point& zbar) {
  const ExprNode& n = e.node();
  auto ev = [&](const Expr& a) { return evaluate(a, z, zbar); };
  switch (n.kind) {
    case ExprKind::Variable: {
      const Point& src = n.conjugate ? zbar : z;
      if (n.variable >= src.size()) throw TypeError("variable index exceeds point dimension");
      return src[n.variable];
    }
    case ExprKind::Literal: return n.literal;
    case ExprKind::Sum: return ev(n.args[0]) + ev(n.args[1]);
    case ExprKind::Difference: return ev(n.args[0]) - ev(n.args[1]);
    case ExprKind::Product: return ev(n.args[0]) * ev(n.args[1]);
    case ExprKind::Quotient: {
      const Complex b = ev(n.args[1]);
      if (b == Complex(0.0)) throw SingularityError("division by zero");
      return ev(n.args[0]) / b;
    }
    case ExprKind::Negate: return -ev(n.args[0]);
    case ExprKind::IntPower: {
      const Complex b = ev(n.args[0]);
      if (n.int_exponent < 0 && b == Complex(0.0)) throw SingularityError("negative power of zero");
      Complex out = 1.0;
      const int p = std::abs(n.int_exponent);
      for (int i = 0; i < p; ++i) out *= b;
      return n.int_exponent < 0 ? 1.0 / out : out;
    }
    case ExprKind::RealPower: {
      const Complex b = ev(n.args[0]);
      const double r = n.real_exponent;
      if (std::nearbyint(r) == r) {
        if (r < 0 && b == Complex(0.0)) throw SingularityError("negative power of zero");
        return std::pow(b, static_cast<int>(r));
      }
      if (!(b.real() > 0.0)) throw SingularityError("non-integer power off the principal branch");
      return std::pow(b, r);
    }
    case ExprKind::Exp: return std::exp(ev(n.args[0]));
    case ExprKind::Log: {
      const Complex b = ev(n.args[0]);
      if (!(b.real() > 0.0)) throw SingularityError("log off the principal branch");
      return std::log(b);
    }
  }
  return 0.0;
}

Complex evaluate(const Expr& e, const Point& z) {
  Point zbar(z.size());
  std::transform(z.begin(), z.end(), zbar.begin(), [](Complex c) { return std::conj(c); });
  return evaluate(e, z, zbar);
}

HermJet eval_herm_jet(const Expr& e, const Point& center, int p, int q) {
  const ExprNode& n = e.node();
  auto ev = [&](const Expr& a) { return eval_herm_jet(a, center, p, q); };
  switch (n.kind) {
    case ExprKind::Variable:
      if (n.variable >= center.size())
        throw TypeError("variable " + e.to_string() + " exceeds dimension " +
                        std::to_string(center.size()));
      return HermJet::coordinate(center, p, q, n.variable, n.conjugate);
    case ExprKind::Literal:
      return HermJet::constant(center, p, q, Matrix::Constant(1, 1, n.literal));
    case ExprKind::Sum: return ev(n.args[0]) + ev(n.args[1]);
    case ExprKind::Difference: return ev(n.args[0]) - ev(n.args[1]);
    case ExprKind::Product: return jet_mul(ev(n.args[0]), ev(n.args[1]));
    case ExprKind::Quotient: return jet_mul(ev(n.args[0]), jet_inv(ev(n.args[1])));
    case ExprKind::Negate: return -ev(n.args[0]);
    case ExprKind::IntPower: return jet_pow(ev(n.args[0]), n.int_exponent);
    case ExprKind::RealPower: return jet_func(ev(n.args[0]), JetFunction::Power, n.real_exponent);
    case ExprKind::Exp: return jet_func(ev(n.args[0]), JetFunction::Exp);
    case ExprKind::Log: return jet_func(ev(n.args[0]), JetFunction::Log);
  }
  throw TypeError("unknown expression node");
}

HoloJet eval_holo_jet(const Expr& e, const Point& center, int order) {
  if (e.has_conjugate_variables())
    throw TypeError("holomorphic expression may not use zbar variables: " + e.to_string());
  return HoloJet::holomorphic_part(eval_herm_jet(e, center, order, 0));
}

// ---------------------------------------------------------------- bundles

BundleSpec BundleSpec::from_exprs(std::string label, std::size_t dimension,
                                  const std::vector<std::vector<Expr>>& rows) {
  if (dimension == 0) throw DimensionError("bundle dimension must be >= 1");
  if (rows.empty()) throw DimensionError("bundle Gram matrix is empty");
  BundleSpec spec;
  spec.label = std::move(label);
  spec.dimension = dimension;
  spec.rank = static_cast<Eigen::Index>(rows.size());
  for (const auto& row : rows) {
    if (row.size() != rows.size()) throw DimensionError("bundle Gram matrix must be square");
    for (const auto& e : row) {
      if (e.max_variable() > dimension)
        throw TypeError("expression " + e.to_string() + " uses a variable beyond dimension " +
                        std::to_string(dimension));
      spec.entries.push_back(e);
    }
  }
  return spec;
}

BundleSpec BundleSpec::from_text(std::string label, std::size_t dimension,
                                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Expr>> exprs;
  for (const auto& row : rows) {
    exprs.emplace_back();
    for (const auto& text : row) exprs.back().push_back(parse_kernel(text));
  }
  return from_exprs(std::move(label), dimension, exprs);
}

Matrix evaluate_gram(const BundleSpec& spec, const Point& z) {
  Matrix out(spec.rank, spec.rank);
  for (Eigen::Index i = 0; i < spec.rank; ++i)
    for (Eigen::Index j = 0; j < spec.rank; ++j) out(i, j) = evaluate(spec.entry(i, j), z);
  return out;
}

HermJet gram_jet(const BundleSpec& spec, const Point& center, int p, int q) {
  if (center.size() != spec.dimension)
    throw DimensionError("center dimension does not match bundle '" + spec.label + "'");
  HermJet out(center, p, q, spec.rank);
  for (Eigen::Index i = 0; i < spec.rank; ++i)
    for (Eigen::Index j = 0; j < spec.rank; ++j) {
      const HermJet e = eval_herm_jet(spec.entry(i, j), center, p, q);
      for (std::size_t a = 0; a < out.holo_indices().size(); ++a)
        for (std::size_t b = 0; b < out.anti_indices().size(); ++b)
          out.coeff(a, b)(i, j) = e.coeff(a, b)(0, 0);
    }
  const Matrix& h = out.value();
  if ((h - h.adjoint()).norm() > 1e-10 * std::max(1.0, h.norm()) ||
      !(min_hermitian_eigenvalue(h) > 0.0))
    throw SingularityError("Gram matrix of '" + spec.label +
                           "' is not Hermitian positive definite at the center");
  return out;
}

double hermitian_defect(const BundleSpec& spec, const std::vector<Point>& samples) {
  double out = 0.0;
  for (const auto& z : samples) {
    const Matrix h = evaluate_gram(spec, z);
    out = std::max(out, (h - h.adjoint()).cwiseAbs().maxCoeff());
  }
  return out;
}

HoloJet matrix_holo_jet(const std::vector<Expr>& entries, Eigen::Index rank, const Point& center,
                        int order) {
  if (static_cast<Eigen::Index>(entries.size()) != rank * rank)
    throw DimensionError("holomorphic matrix needs rank*rank entries");
  HoloJet out(center, order, rank);
  for (Eigen::Index i = 0; i < rank; ++i)
    for (Eigen::Index j = 0; j < rank; ++j) {
      const HoloJet e = eval_holo_jet(entries[i * rank + j], center, order);
      for (std::size_t a = 0; a < out.indices().size(); ++a) out.coeff(a)(i, j) = e.coeff(a)(0, 0);
    }
  return out;
}

}  // namespace holocontact
