#pragma once

#include "holocontact/jet.hpp"
#include "holocontact/types.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace holocontact {

enum class ExprKind {
  Variable,    // z_k or zbar_k
  Literal,     // complex constant
  Sum,
  Difference,
  Product,
  Quotient,
  Negate,
  IntPower,
  RealPower,
  Exp,
  Log,
};

class Expr;

struct ExprNode {
  ExprKind kind = ExprKind::Literal;
  std::size_t variable = 0;  // 0-based coordinate for Variable
  bool conjugate = false;    // zbar rather than z
  Complex literal{};
  int int_exponent = 0;
  double real_exponent = 0.0;
  std::vector<Expr> args;
};

/// Immutable, shareable expression tree in z_1..z_m and their conjugates.
class Expr {
 public:
  Expr() : Expr(Complex(0.0)) {}
  Expr(Complex value);  // NOLINT: literals convert implicitly
  Expr(double value) : Expr(Complex(value)) {}  // NOLINT
  Expr(int value) : Expr(Complex(double(value))) {}  // NOLINT

  /// z_k, 1-based as in the text grammar.
  static Expr z(std::size_t k);
  /// zbar_k, 1-based.
  static Expr zb(std::size_t k);

  const ExprNode& node() const { return *node_; }
  ExprKind kind() const { return node_->kind; }
  bool is_literal() const { return kind() == ExprKind::Literal; }
  bool is_zero() const { return is_literal() && node_->literal == Complex(0.0); }
  bool is_one() const { return is_literal() && node_->literal == Complex(1.0); }

  /// Canonical text; parse(to_string()) prints back identically.
  std::string to_string() const;
  /// Largest variable index used (1-based), 0 for constants.
  std::size_t max_variable() const;
  bool has_conjugate_variables() const;

  static Expr make(ExprNode node);

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr exp(const Expr& a);
Expr log(const Expr& a);
/// Integer power.
Expr ipow(const Expr& a, int n);
/// pow(a, r); integral r still produces a RealPower node.
Expr pow(const Expr& a, double r);

/// Parse text in the kernel grammar. Throws ParseError with an offset.
Expr parse_kernel(std::string_view text);

/// Swap z_k <-> zbar_k and conjugate literals.
Expr conjugate(const Expr& e);
/// Symbolic d/dz_k (conj = false) or d/dzbar_k (conj = true), k 1-based.
Expr differentiate(const Expr& e, std::size_t k, bool conj);

/// Value with z and zbar treated as independent inputs.
Complex evaluate(const Expr& e, const Point& z, const Point& zbar);
/// Value on the real slice zbar = conj(z).
Complex evaluate(const Expr& e, const Point& z);

/// Taylor jet in (z, zbar) about center; exact recursive jet arithmetic.
HermJet eval_herm_jet(const Expr& e, const Point& center, int holo_order, int anti_order);
/// Holomorphic Taylor jet; TypeError when the expression uses any zbar.
HoloJet eval_holo_jet(const Expr& e, const Point& center, int order);

/// Gram matrix H of a bundle in a single global frame, entered entrywise.
struct BundleSpec {
  std::string label;
  std::size_t dimension = 1;
  Eigen::Index rank = 1;
  std::vector<Expr> entries;  // row major, rank * rank

  const Expr& entry(Eigen::Index i, Eigen::Index j) const { return entries[i * rank + j]; }

  /// Builds and validates shape and variable range.
  static BundleSpec from_text(std::string label, std::size_t dimension,
                              const std::vector<std::vector<std::string>>& rows);
  static BundleSpec from_exprs(std::string label, std::size_t dimension,
                               const std::vector<std::vector<Expr>>& rows);
};

/// H at a point of the real slice.
Matrix evaluate_gram(const BundleSpec& spec, const Point& z);
/// Jet of H; throws SingularityError when H(center) is not positive definite.
HermJet gram_jet(const BundleSpec& spec, const Point& center, int holo_order, int anti_order);
/// Largest |H_ij - conj(H_ji)| over the sample points.
double hermitian_defect(const BundleSpec& spec, const std::vector<Point>& samples);
/// Holomorphic jet of a matrix of holomorphic expressions.
HoloJet matrix_holo_jet(const std::vector<Expr>& entries, Eigen::Index rank, const Point& center,
                        int order);

}  // namespace holocontact
