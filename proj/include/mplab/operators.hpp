#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mplab/expr.hpp"
#include "mplab/geometry.hpp"

namespace mplab {

/// Argument tuple of F(x, s, p, X). X must be symmetric.
struct EvalPoint {
  Eigen::VectorXd x;
  double s = 0.0;
  Eigen::VectorXd p;
  Eigen::MatrixXd X;

  static EvalPoint rest(const Eigen::VectorXd& x);  // (x, 0, 0, O)
};

/// F = Tr(A(x) X) + b(x).p + c(x) s with closed-form coefficient fields.
struct LinearOperator {
  int dim = 0;
  std::vector<std::vector<Expr>> A;  // dim x dim, symmetric entries
  std::vector<Expr> b;
  Expr c;

  Eigen::MatrixXd A_at(const Eigen::VectorXd& x) const;
  Eigen::VectorXd b_at(const Eigen::VectorXd& x) const;
  double c_at(const Eigen::VectorXd& x) const;

  /// Diagonal second-order part, zero drift and zero order unless given.
  static LinearOperator diagonal(int dim, std::vector<Expr> diag);
};

/// One constant-coefficient member of a sup-inf family.
struct ConstLinear {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  double c = 0.0;

  double apply(const EvalPoint& pt) const;
};

/// sup over rows, inf within each row.
struct SupInfOperator {
  int dim = 0;
  std::vector<std::vector<ConstLinear>> families;
};

/// User extension hook; excluded from presets and acceptance paths.
struct CallableOperator {
  int dim = 0;
  std::function<double(const EvalPoint&)> eval;
  std::optional<double> declared_lambda;
  std::optional<double> declared_Lambda;
  std::optional<double> declared_gamma;
};

struct OperatorSpec {
  std::variant<LinearOperator, SupInfOperator, CallableOperator> v;
  std::string name;  // preset name when applicable

  int dim() const;
  const LinearOperator* linear() const { return std::get_if<LinearOperator>(&v); }
  const SupInfOperator* supinf() const { return std::get_if<SupInfOperator>(&v); }
  const CallableOperator* callable() const { return std::get_if<CallableOperator>(&v); }
};

double evaluate(const OperatorSpec& op, const EvalPoint& pt);

/// [F(x,s,p,X+tD) - F(x,s,p,X)] / t for positive semidefinite D, t > 0.
double difference_quotient_dir(const OperatorSpec& op, const EvalPoint& pt,
                               const Eigen::MatrixXd& D, double t);

/// An operator together with its reference domain and scenario metadata.
struct Preset {
  OperatorSpec op;
  DomainSpec domain;
  bool declares_s_monotone = true;   // plain monotonicity in s expected to hold
  std::string counterexample_fn;     // analytic-registry name, empty if none
  std::string note;
};

Preset preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace mplab
