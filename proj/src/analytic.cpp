#include "mplab/analytic.hpp"

#include <cmath>

#include "mplab/errors.hpp"
#include "mplab/numeric.hpp"

namespace mplab {

namespace {

// u = e^{x1} sin x2 sin x3. The two diagonal Hessian entries that cancel
// under the degenerate operator are computed from the same product, so the
// cancellation is exact in floating point.
class ExpSinSin final : public SmoothFunction {
 public:
  int dim() const override { return 3; }

  double value(const Eigen::VectorXd& x) const override {
    return std::exp(x[0]) * sinpi(x[1] / M_PI) * sinpi(x[2] / M_PI);
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    double E = std::exp(x[0]);
    double s2 = sinpi(x[1] / M_PI), c2 = cospi(x[1] / M_PI);
    double s3 = sinpi(x[2] / M_PI), c3 = cospi(x[2] / M_PI);
    Eigen::Vector3d g(E * s2 * s3, E * c2 * s3, E * s2 * c3);
    return g;
  }

  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override {
    double E = std::exp(x[0]);
    double s2 = sinpi(x[1] / M_PI), c2 = cospi(x[1] / M_PI);
    double s3 = sinpi(x[2] / M_PI), c3 = cospi(x[2] / M_PI);
    double u = E * s2 * s3;
    Eigen::Matrix3d h;
    h(0, 0) = u;
    h(1, 1) = -u;
    h(2, 2) = -u;
    h(0, 1) = h(1, 0) = E * c2 * s3;
    h(0, 2) = h(2, 0) = E * s2 * c3;
    h(1, 2) = h(2, 1) = E * c2 * c3;
    return h;
  }

  std::string describe() const override { return "exp_sin_sin: e^{x1} sin x2 sin x3"; }
};

// u = x2^2 sin x1.
class XsqSin final : public SmoothFunction {
 public:
  int dim() const override { return 2; }

  double value(const Eigen::VectorXd& x) const override {
    return (x[1] * x[1]) * sinpi(x[0] / M_PI);
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    double s = sinpi(x[0] / M_PI), c = cospi(x[0] / M_PI);
    return Eigen::Vector2d((x[1] * x[1]) * c, 2.0 * x[1] * s);
  }

  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override {
    double s = sinpi(x[0] / M_PI), c = cospi(x[0] / M_PI);
    double u = (x[1] * x[1]) * s;
    Eigen::Matrix2d h;
    h(0, 0) = -u;
    h(0, 1) = h(1, 0) = 2.0 * x[1] * c;
    h(1, 1) = 2.0 * s;
    return h;
  }

  std::string describe() const override { return "xsq_sin: x2^2 sin x1"; }
};

// dim() == 0 marks the function as dimension-agnostic.
class ZeroFunction final : public SmoothFunction {
 public:
  int dim() const override { return 0; }
  double value(const Eigen::VectorXd&) const override { return 0.0; }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    return Eigen::VectorXd::Zero(x.size());
  }
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override {
    return Eigen::MatrixXd::Zero(x.size(), x.size());
  }
  std::string describe() const override { return "zero"; }
};

}  // namespace

SmoothFnPtr analytic_function(const std::string& name) {
  if (name == "exp_sin_sin") return std::make_shared<ExpSinSin>();
  if (name == "xsq_sin") return std::make_shared<XsqSin>();
  if (name == "zero") return std::make_shared<ZeroFunction>();
  fail(Errc::UnknownAnalyticFunction, "no analytic function named '" + name + "'");
}

std::vector<std::string> analytic_names() { return {"exp_sin_sin", "xsq_sin", "zero"}; }

}  // namespace mplab
