#pragma once

#include <Eigen/Core>
#include <memory>
#include <string>

namespace mplab {

/// Closed-form scalar coefficient field over R^n. The grammar covers what the
/// operator families need: numbers, `pi`, coordinates `x1..xn`, the norm
/// `|x|`, `+ - * / ^`, unary minus, and `sin cos exp sqrt abs`. Integer
/// powers are evaluated by repeated multiplication.
///
/// Expressions are immutable values; copying shares the tree.
class Expr {
 public:
  Expr();  // the constant 0
  static Expr constant(double v);
  static Expr coord(int index0);  // zero-based coordinate index
  static Expr norm();             // |x|
  static Expr parse(const std::string& src);

  double operator()(const Eigen::VectorXd& x) const;

  /// Parseable round-trip form.
  std::string str() const;

  /// The field y -> e(factor*y). Requires factor > 0 (|x| rewrite uses it).
  Expr with_scaled_argument(double factor) const;

  /// True when the expression does not depend on x; value in *out.
  bool constant_value(double* out = nullptr) const;

  /// Largest coordinate index mentioned, -1 if none.
  int max_coord() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace mplab
