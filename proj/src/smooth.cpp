#include "mplab/smooth.hpp"

#include <cmath>
#include <sstream>

namespace mplab {

namespace {

class Combination final : public SmoothFunction {
 public:
  Combination(std::vector<std::pair<double, SmoothFnPtr>> terms, double constant)
      : terms_(std::move(terms)), constant_(constant) {}

  int dim() const override { return terms_.empty() ? 0 : terms_.front().second->dim(); }

  double value(const Eigen::VectorXd& x) const override {
    double acc = constant_;
    for (const auto& [a, f] : terms_) acc += a * f->value(x);
    return acc;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
    for (const auto& [a, f] : terms_) g += a * f->gradient(x);
    return g;
  }

  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(x.size(), x.size());
    for (const auto& [a, f] : terms_) h += a * f->hessian(x);
    return h;
  }

  std::string describe() const override {
    std::ostringstream out;
    for (size_t i = 0; i < terms_.size(); ++i)
      out << (i ? " + " : "") << terms_[i].first << "*[" << terms_[i].second->describe() << "]";
    if (constant_ != 0.0) out << " + " << constant_;
    return out.str();
  }

 private:
  std::vector<std::pair<double, SmoothFnPtr>> terms_;
  double constant_;
};

}  // namespace

SmoothFnPtr combine(std::vector<std::pair<double, SmoothFnPtr>> terms, double constant) {
  return std::make_shared<Combination>(std::move(terms), constant);
}

DerivativeDefect derivative_defect(const SmoothFunction& f, const Eigen::VectorXd& x, double step,
                                   double hess_step) {
  const int n = static_cast<int>(x.size());
  DerivativeDefect d;

  const Eigen::VectorXd g = f.gradient(x);
  const Eigen::MatrixXd H = f.hessian(x);
  double scale_g = std::max(1.0, g.cwiseAbs().maxCoeff());
  double scale_h = std::max(1.0, H.cwiseAbs().maxCoeff());

  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += step;
    xm[i] -= step;
    double fd = (f.value(xp) - f.value(xm)) / (2.0 * step);
    d.gradient = std::max(d.gradient, std::fabs(fd - g[i]) / scale_g);
  }
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += hess_step;
    xm[i] -= hess_step;
    double fdd = (f.value(xp) - 2.0 * f.value(x) + f.value(xm)) / (hess_step * hess_step);
    d.hessian = std::max(d.hessian, std::fabs(fdd - H(i, i)) / scale_h);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
      xpp[i] += hess_step; xpp[j] += hess_step;
      xpm[i] += hess_step; xpm[j] -= hess_step;
      xmp[i] -= hess_step; xmp[j] += hess_step;
      xmm[i] -= hess_step; xmm[j] -= hess_step;
      double fd = (f.value(xpp) - f.value(xpm) - f.value(xmp) + f.value(xmm)) /
                  (4.0 * hess_step * hess_step);
      d.hessian = std::max(d.hessian, std::fabs(fd - H(i, j)) / scale_h);
    }
  return d;
}

}  // namespace mplab
