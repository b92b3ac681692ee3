#include "mplab/operators.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>

#include "mplab/errors.hpp"

namespace mplab {

EvalPoint EvalPoint::rest(const Eigen::VectorXd& x) {
  EvalPoint pt;
  pt.x = x;
  pt.s = 0.0;
  pt.p = Eigen::VectorXd::Zero(x.size());
  pt.X = Eigen::MatrixXd::Zero(x.size(), x.size());
  return pt;
}

Eigen::MatrixXd LinearOperator::A_at(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = A[i][j](x);
  return m;
}

Eigen::VectorXd LinearOperator::b_at(const Eigen::VectorXd& x) const {
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = b[i](x);
  return v;
}

double LinearOperator::c_at(const Eigen::VectorXd& x) const { return c(x); }

LinearOperator LinearOperator::diagonal(int dim, std::vector<Expr> diag) {
  LinearOperator op;
  op.dim = dim;
  op.A.assign(dim, std::vector<Expr>(dim, Expr::constant(0.0)));
  for (int i = 0; i < dim; ++i) op.A[i][i] = diag[i];
  op.b.assign(dim, Expr::constant(0.0));
  op.c = Expr::constant(0.0);
  return op;
}

double ConstLinear::apply(const EvalPoint& pt) const {
  return (A.array() * pt.X.array()).sum() + b.dot(pt.p) + c * pt.s;
}

int OperatorSpec::dim() const {
  return std::visit([](const auto& o) { return o.dim; }, v);
}

namespace {

void validate_point(const OperatorSpec& op, const EvalPoint& pt) {
  const int n = op.dim();
  if (pt.x.size() != n || pt.p.size() != n || pt.X.rows() != n || pt.X.cols() != n)
    fail(Errc::DimensionMismatch,
         "operator dim " + std::to_string(n) + " vs point dims x=" + std::to_string(pt.x.size()) +
             " p=" + std::to_string(pt.p.size()) + " X=" + std::to_string(pt.X.rows()) + "x" + std::to_string(pt.X.cols()));
  double asym = (pt.X - pt.X.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12) fail(Errc::BadParams, "Hessian argument is not symmetric (defect " + std::to_string(asym) + ")");
}

double require_finite(double v, const char* what, const Eigen::VectorXd& x) {
  if (!std::isfinite(v)) {
    std::string where = "(";
    for (int i = 0; i < x.size(); ++i) where += (i ? "," : "") + std::to_string(x[i]);
    fail(Errc::NonFiniteCoefficient, std::string(what) + " is not finite at x=" + where + ")");
  }
  return v;
}

}  // namespace

double evaluate(const OperatorSpec& op, const EvalPoint& pt) {
  validate_point(op, pt);
  if (const auto* lin = op.linear()) {
    double acc = 0.0;
    for (int i = 0; i < lin->dim; ++i)
      for (int j = 0; j < lin->dim; ++j) {
        double a = lin->A[i][j](pt.x);
        if (a != 0.0) acc += a * pt.X(i, j);
      }
    for (int i = 0; i < lin->dim; ++i) {
      double bi = lin->b[i](pt.x);
      if (bi != 0.0) acc += bi * pt.p[i];
    }
    double c = lin->c(pt.x);
    if (c != 0.0) acc += c * pt.s;
    return require_finite(acc, "linear operator value", pt.x);
  }
  if (const auto* si = op.supinf()) {
    double outer = -std::numeric_limits<double>::infinity();
    for (const auto& row : si->families) {
      double inner = std::numeric_limits<double>::infinity();
      for (const auto& member : row) inner = std::min(inner, member.apply(pt));
      outer = std::max(outer, inner);
    }
    return require_finite(outer, "sup-inf value", pt.x);
  }
  const auto* cb = op.callable();
  return require_finite(cb->eval(pt), "callable value", pt.x);
}

double difference_quotient_dir(const OperatorSpec& op, const EvalPoint& pt,
                               const Eigen::MatrixXd& D, double t) {
  if (!(t > 0.0)) fail(Errc::BadParams, "difference quotient requires t > 0");
  if (D.rows() != op.dim() || D.cols() != op.dim())
    fail(Errc::DimensionMismatch, "probe matrix size mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (D + D.transpose()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    fail(Errc::BadParams, "probe matrix is not positive semidefinite (min eig " + std::to_string(es.eigenvalues().minCoeff()) + ")");
  EvalPoint shifted = pt;
  shifted.X = pt.X + t * D;
  return (evaluate(op, shifted) - evaluate(op, pt)) / t;
}

// ---------------------------------------------------------------------------
// Preset registry
// ---------------------------------------------------------------------------

namespace {

Eigen::VectorXd unit(int n, int i) { return Eigen::VectorXd::Unit(n, i); }

Preset make_linear_mixed() {
  // Identity second-order block on the two bounded axes, |x| times identity on
  // the unbounded one; no drift, no zero-order term.
  LinearOperator lin = LinearOperator::diagonal(
      3, {Expr::constant(1.0), Expr::constant(1.0), Expr::norm()});
  Preset p;
  p.op = {lin, "linear_mixed"};
  p.domain = make_cylinder(3, {unit(3, 0), unit(3, 1)}, {0.0, 0.0}, {1.0, 1.0});
  p.note = "uniformly elliptic on the bounded axes, coefficient growing like |x| on the unbounded one";
  return p;
}

Preset make_linear_mixed_drift() {
  LinearOperator lin = LinearOperator::diagonal(
      3, {Expr::constant(1.0), Expr::constant(1.0), Expr::norm()});
  lin.b[0] = Expr::constant(-0.5);
  lin.c = Expr::constant(-0.1);
  Preset p;
  p.op = {lin, "linear_mixed_drift"};
  p.domain = make_cylinder(3, {unit(3, 0), unit(3, 1)}, {0.0, 0.0}, {1.0, 1.0});
  p.note = "linear_mixed with bounded drift and nonpositive zero-order coefficient";
  return p;
}

Preset make_c1_degenerate() {
  // d^2/dx1^2 + d^2/dx2^2 in R^3 on the cylinder R x (0,pi)^2. The second
  // bounded axis (x3) carries no ellipticity at all; the classical negative
  // example u = e^{x1} sin x2 sin x3 lives here.
  LinearOperator lin = LinearOperator::diagonal(
      3, {Expr::constant(1.0), Expr::constant(1.0), Expr::constant(0.0)});
  Preset p;
  p.op = {lin, "c1_degenerate"};
  p.domain = make_cylinder(3, {unit(3, 1), unit(3, 2)}, {0.0, 0.0}, {M_PI, M_PI});
  p.counterexample_fn = "exp_sin_sin";
  p.note = "degenerate along the bounded x3 axis; admits an exponentially growing positive solution";
  return p;
}

Preset make_quadratic_growth() {
  // d^2/dx1^2 + (x2^2/2) d^2/dx2^2 on the strip (0,pi) x R: the orthogonal
  // coefficient grows quadratically, beyond the admissible linear rate.
  LinearOperator lin = LinearOperator::diagonal(
      2, {Expr::constant(1.0), Expr::parse("0.5*x2^2")});
  Preset p;
  p.op = {lin, "quadratic_growth"};
  p.domain = make_cylinder(2, {unit(2, 0)}, {0.0}, {M_PI});
  p.counterexample_fn = "xsq_sin";
  p.note = "orthogonal growth is quadratic; u = x2^2 sin x1 defeats the maximum principle";
  return p;
}

Preset make_three_cylinders() {
  LinearOperator lin = LinearOperator::diagonal(
      3, {Expr::constant(1.0), Expr::constant(1.0), Expr::constant(1.0)});
  std::vector<CylinderSpec> cs;
  // C1 = R x (0,pi)^2, C2 = (0,pi) x R x (0,pi), C3 = (0,pi)^2 x R
  cs.push_back(make_cylinder(3, {unit(3, 1), unit(3, 2)}, {0.0, 0.0}, {M_PI, M_PI}));
  cs.push_back(make_cylinder(3, {unit(3, 0), unit(3, 2)}, {0.0, 0.0}, {M_PI, M_PI}));
  cs.push_back(make_cylinder(3, {unit(3, 0), unit(3, 1)}, {0.0, 0.0}, {M_PI, M_PI}));
  Preset p;
  p.op = {lin, "three_cylinders"};
  p.domain = make_lattice(std::move(cs));
  p.note = "axis-aligned diagonal operator on the union of the three coordinate cylinders";
  return p;
}

Preset make_crossing_strips() {
  LinearOperator lin = LinearOperator::diagonal(2, {Expr::constant(1.0), Expr::constant(1.0)});
  std::vector<CylinderSpec> cs;
  cs.push_back(make_cylinder(2, {unit(2, 1)}, {0.0}, {M_PI}));  // R x (0,pi)
  cs.push_back(make_cylinder(2, {unit(2, 0)}, {0.0}, {M_PI}));  // (0,pi) x R
  Preset p;
  p.op = {lin, "crossing_strips"};
  p.domain = make_lattice(std::move(cs));
  p.note = "Laplacian on two crossing planar strips; node region (0,pi)^2";
  return p;
}

Preset make_bellman_isaacs_demo() {
  SupInfOperator si;
  si.dim = 2;
  auto member = [](double a1, double a2, double b1, double c) {
    ConstLinear m;
    m.A = Eigen::Vector2d(a1, a2).asDiagonal();
    m.b = Eigen::Vector2d(b1, 0.0);
    m.c = c;
    return m;
  };
  // Every member has a11 >= 1 (bounded direction), a22 <= 2, |b| <= 0.5,
  // c <= 0, so the family fits the strip coefficient bounds.
  si.families = {
      {member(1.0, 0.4, 0.25, -0.1), member(1.2, 0.2, -0.25, 0.0)},
      {member(1.5, 1.0, 0.0, -0.5), member(2.0, 0.3, 0.5, -0.2)},
  };
  Preset p;
  p.op = {si, "bellman_isaacs_demo"};
  p.domain = make_cylinder(2, {unit(2, 0)}, {0.0}, {1.0});
  p.note = "2x2 sup-inf family of constant-coefficient members on the strip (0,1) x R";
  return p;
}

Preset make_laplace_strip() {
  LinearOperator lin = LinearOperator::diagonal(2, {Expr::constant(1.0), Expr::constant(1.0)});
  Preset p;
  p.op = {lin, "laplace_strip"};
  p.domain = make_cylinder(2, {unit(2, 0)}, {0.0}, {1.0});
  p.note = "Laplacian on the strip (0,1) x R; the quantitative-bound workhorse";
  return p;
}

using Maker = Preset (*)();

const std::map<std::string, Maker>& registry() {
  static const std::map<std::string, Maker> reg = {
      {"linear_mixed", &make_linear_mixed},
      {"linear_mixed_drift", &make_linear_mixed_drift},
      {"c1_degenerate", &make_c1_degenerate},
      {"quadratic_growth", &make_quadratic_growth},
      {"three_cylinders", &make_three_cylinders},
      {"crossing_strips", &make_crossing_strips},
      {"bellman_isaacs_demo", &make_bellman_isaacs_demo},
      {"laplace_strip", &make_laplace_strip},
  };
  return reg;
}

}  // namespace

Preset preset(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) fail(Errc::UnknownPreset, "no preset named '" + name + "'");
  return it->second();
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : registry()) names.push_back(k);
  return names;
}

}  // namespace mplab
