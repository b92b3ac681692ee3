#pragma once

#include <Eigen/Core>
#include <memory>
#include <string>
#include <vector>

namespace mplab {

/// A scalar function with hand-coded first and second derivatives.
class SmoothFunction {
 public:
  virtual ~SmoothFunction() = default;
  virtual int dim() const = 0;
  virtual double value(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd gradient(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const = 0;
  virtual std::string describe() const = 0;
};

using SmoothFnPtr = std::shared_ptr<const SmoothFunction>;

/// sum_i coeff_i * f_i + constant.
SmoothFnPtr combine(std::vector<std::pair<double, SmoothFnPtr>> terms, double constant = 0.0);

struct DerivativeDefect {
  double gradient = 0.0;  // max relative error against central differences
  double hessian = 0.0;
};

/// Central-difference cross check of the closed-form derivatives; the
/// difference path never calls gradient()/hessian(). The second-difference
/// step is larger than the first-difference one because its rounding error
/// scales like eps/h^2; 1e-4 sits near the optimum for these functions.
DerivativeDefect derivative_defect(const SmoothFunction& f, const Eigen::VectorXd& x,
                                   double step = 1e-5, double hess_step = 1e-4);

}  // namespace mplab
