#include "mplab/barriers.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "mplab/errors.hpp"

namespace mplab {

// ---------------------------------------------------------------------------
// SpongeBarrier
// ---------------------------------------------------------------------------

SpongeBarrier::SpongeBarrier(Eigen::MatrixXd Q) : Q_(std::move(Q)) {
  if (Q_.rows() != Q_.cols()) fail(Errc::BadParams, "projection must be square");
}

double SpongeBarrier::value(const Eigen::VectorXd& x) const {
  Eigen::VectorXd z = Q_ * x;
  return std::sqrt(z.squaredNorm() + 1.0);
}

Eigen::VectorXd SpongeBarrier::gradient(const Eigen::VectorXd& x) const {
  Eigen::VectorXd z = Q_ * x;
  return z / std::sqrt(z.squaredNorm() + 1.0);
}

Eigen::MatrixXd SpongeBarrier::hessian(const Eigen::VectorXd& x) const {
  Eigen::VectorXd z = Q_ * x;
  double phi = std::sqrt(z.squaredNorm() + 1.0);
  return Q_ / phi - (z * z.transpose()) / (phi * phi * phi);
}

std::string SpongeBarrier::describe() const { return "sponge sqrt(|Qx|^2+1)"; }

SpongeBounds sponge_bounds(const Eigen::VectorXd& x, const ProjectionPair& pair) {
  SpongeBarrier phi(pair.Q);
  SpongeBounds b;
  b.grad_norm = phi.gradient(x).norm();
  Eigen::MatrixXd gap = pair.Q / phi.value(x) - phi.hessian(x);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gap, Eigen::EigenvaluesOnly);
  b.hessian_gap_eig = es.eigenvalues().minCoeff();
  return b;
}

// ---------------------------------------------------------------------------
// ExpDirBarrier
// ---------------------------------------------------------------------------

ExpDirBarrier::ExpDirBarrier(double M, double alpha, double d, double xprime, Eigen::VectorXd nu)
    : M_(M), alpha_(alpha), d_(d), xprime_(xprime), nu_(std::move(nu)) {
  if (!(M_ > 0.0) || !(alpha_ > 0.0) || !(d_ > 0.0))
    fail(Errc::BadParams, "exp-dir barrier needs M, alpha, d > 0");
  double norm = nu_.norm();
  if (std::fabs(norm - 1.0) > 1e-8) fail(Errc::BadParams, "direction must be a unit vector");
  nu_ /= norm;
}

double ExpDirBarrier::value(const Eigen::VectorXd& x) const {
  double t = nu_.dot(x) - xprime_;
  return M_ * (1.0 + std::exp(-alpha_ * d_)) - M_ * std::exp(alpha_ * t - alpha_ * d_);
}

Eigen::VectorXd ExpDirBarrier::gradient(const Eigen::VectorXd& x) const {
  double t = nu_.dot(x) - xprime_;
  return -alpha_ * M_ * std::exp(alpha_ * t - alpha_ * d_) * nu_;
}

Eigen::MatrixXd ExpDirBarrier::hessian(const Eigen::VectorXd& x) const {
  double t = nu_.dot(x) - xprime_;
  return -alpha_ * alpha_ * M_ * std::exp(alpha_ * t - alpha_ * d_) * (nu_ * nu_.transpose());
}

double ExpDirBarrier::slab_lower_bound() const { return M_ * std::exp(-alpha_ * d_); }

std::string ExpDirBarrier::describe() const {
  std::ostringstream out;
  out << "exp-dir barrier M=" << M_ << " alpha=" << alpha_ << " d=" << d_;
  return out.str();
}

ExpDirBarrier exp_dir_barrier(double M_eps, double alpha, double d, double xprime_eps,
                              const Eigen::VectorXd& nu) {
  return ExpDirBarrier(M_eps, alpha, d, xprime_eps, nu);
}

// ---------------------------------------------------------------------------
// AbpAuxBarrier
// ---------------------------------------------------------------------------

AbpAuxBarrier::AbpAuxBarrier(double C1, double alpha, Eigen::VectorXd nu, double shift)
    : C1_(C1), alpha_(alpha), shift_(shift), nu_(std::move(nu)) {
  if (C1_ < 0.0 || alpha_ <= 0.0) fail(Errc::BadParams, "aux barrier needs C1 >= 0, alpha > 0");
  double norm = nu_.norm();
  if (std::fabs(norm - 1.0) > 1e-8) fail(Errc::BadParams, "direction must be a unit vector");
  nu_ /= norm;
}

double AbpAuxBarrier::value(const Eigen::VectorXd& x) const {
  return C1_ * std::exp(alpha_ * nu_.dot(x)) + shift_;
}

Eigen::VectorXd AbpAuxBarrier::gradient(const Eigen::VectorXd& x) const {
  return alpha_ * C1_ * std::exp(alpha_ * nu_.dot(x)) * nu_;
}

Eigen::MatrixXd AbpAuxBarrier::hessian(const Eigen::VectorXd& x) const {
  return alpha_ * alpha_ * C1_ * std::exp(alpha_ * nu_.dot(x)) * (nu_ * nu_.transpose());
}

std::string AbpAuxBarrier::describe() const {
  std::ostringstream out;
  out << "aux exponential C1=" << C1_ << " alpha=" << alpha_;
  return out.str();
}

// ---------------------------------------------------------------------------
// PLBarrier
// ---------------------------------------------------------------------------

PLBarrier::PLBarrier(double alpha, double beta, Eigen::VectorXd nu, Eigen::MatrixXd Q)
    : alpha_(alpha), beta_(beta), nu_(std::move(nu)), Q_(std::move(Q)) {
  if (!(alpha_ > 0.0) || !(beta_ > 0.0)) fail(Errc::BadParams, "growth barrier needs alpha, beta > 0");
  double norm = nu_.norm();
  if (std::fabs(norm - 1.0) > 1e-8) fail(Errc::BadParams, "direction must be a unit vector");
  nu_ /= norm;
}

double PLBarrier::value(const Eigen::VectorXd& x) const {
  Eigen::VectorXd z = Q_ * x;
  double phi = std::sqrt(z.squaredNorm() + 1.0);
  return std::sin(alpha_ * nu_.dot(x)) * std::exp(beta_ * phi);
}

Eigen::VectorXd PLBarrier::gradient(const Eigen::VectorXd& x) const {
  Eigen::VectorXd z = Q_ * x;
  double phi = std::sqrt(z.squaredNorm() + 1.0);
  double y = nu_.dot(x);
  double w = std::exp(beta_ * phi);
  return alpha_ * std::cos(alpha_ * y) * w * nu_ + std::sin(alpha_ * y) * w * (beta_ / phi) * z;
}

Eigen::MatrixXd PLBarrier::hessian(const Eigen::VectorXd& x) const {
  Eigen::VectorXd z = Q_ * x;
  double phi = std::sqrt(z.squaredNorm() + 1.0);
  double y = nu_.dot(x);
  double s = std::sin(alpha_ * y), c = std::cos(alpha_ * y);
  double w = std::exp(beta_ * phi);
  Eigen::VectorXd dw = w * (beta_ / phi) * z;  // gradient of e^{beta phi}
  Eigen::MatrixXd d2w =
      w * ((beta_ * beta_ / (phi * phi)) * (z * z.transpose()) +
           beta_ * (Q_ / phi - (z * z.transpose()) / (phi * phi * phi)));
  return -alpha_ * alpha_ * s * w * (nu_ * nu_.transpose()) +
         alpha_ * c * (nu_ * dw.transpose() + dw * nu_.transpose()) + s * d2w;
}

std::string PLBarrier::describe() const {
  std::ostringstream out;
  out << "growth barrier sin(alpha x.nu) e^{beta phi}, alpha=" << alpha_ << " beta=" << beta_;
  return out.str();
}

// ---------------------------------------------------------------------------
// Scalar solvers
// ---------------------------------------------------------------------------

AbpParams abp_params(double Gamma, double sup_f_over_lambda) {
  if (Gamma < 0.0 || sup_f_over_lambda < 0.0)
    fail(Errc::NegativeInput, "abp_params needs Gamma >= 0 and sup(f^-/lambda) >= 0");
  return {1.0 + Gamma, sup_f_over_lambda / (1.0 + Gamma)};
}

double abp_bound(double d_h, double Gamma, double sup_f_over_lambda, double sup_boundary_uplus) {
  if (!(d_h > 0.0)) fail(Errc::NegativeInput, "abp_bound needs d_h > 0");
  if (Gamma < 0.0 || sup_f_over_lambda < 0.0 || sup_boundary_uplus < 0.0)
    fail(Errc::NegativeInput, "abp_bound needs nonnegative Gamma, forcing and boundary terms");
  double a = 1.0 + d_h * Gamma;
  return sup_boundary_uplus + std::exp(a) / a * sup_f_over_lambda * d_h * d_h;
}

double narrow_threshold(double Gamma, double K) {
  if (!(K > 0.0)) fail(Errc::NonPositiveK, "threshold needs K > 0");
  if (Gamma < 0.0) fail(Errc::NegativeInput, "threshold needs Gamma >= 0");
  auto g = [&](double d) {
    double a = 1.0 + d * Gamma;
    return std::exp(a) / a * d * d * K;
  };
  double lo = 0.0, hi = 1.0;
  while (g(hi) < 1.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e100) return std::numeric_limits<double>::infinity();  // effectively no constraint
  }
  // absolute bracket width 1e-12; the iteration cap covers brackets so large
  // that ulp spacing exceeds the tolerance
  for (int it = 0; it < 500 && hi - lo > 1e-12; ++it) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) < 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

double pl_inequality_lhs(double alpha, double beta, double rho, double Gamma) {
  return -0.5 * alpha * alpha + 2.0 * rho * beta * (beta + 1.0) + Gamma * (alpha + beta);
}

namespace {

PLParams pl_from_beta(double beta0, double beta, double rho, double Gamma) {
  PLParams p;
  p.beta0 = beta0;
  p.beta = beta;
  p.rho = rho;
  p.Gamma = Gamma;
  // positive root of alpha^2/2 - Gamma alpha - (2 rho beta(beta+1) + Gamma beta) = 0
  p.alpha_root = Gamma + std::sqrt(Gamma * Gamma + 4.0 * rho * beta * (beta + 1.0) + 2.0 * Gamma * beta);
  p.alpha = p.alpha_root * (1.0 + 1e-9);
  p.margin_ineq = pl_inequality_lhs(p.alpha, beta, rho, Gamma);
  return p;
}

}  // namespace

PLParams pl_solve(double beta0, double rho, double Gamma, double beta_factor) {
  if (!(beta0 > 0.0)) fail(Errc::NegativeInput, "pl_solve needs beta0 > 0");
  if (!(rho > 0.0)) fail(Errc::NegativeInput, "pl_solve needs rho > 0");
  if (Gamma < 0.0) fail(Errc::NegativeInput, "pl_solve needs Gamma >= 0");
  if (!(beta_factor > 1.0)) fail(Errc::BadParams, "beta factor must exceed 1");
  return pl_from_beta(beta0, beta0 * beta_factor, rho, Gamma);
}

double pl_block_maxeig(double alpha, double beta, double s, double c, double r) {
  double phi2 = r * r + 1.0;
  double phi = std::sqrt(phi2);
  double mu1 = beta * (beta * r * r / phi2 + 1.0 / (phi2 * phi));
  double a11 = alpha * alpha * (0.5 - s);
  double a22 = s * mu1 - 2.0 * beta * (beta + 1.0);
  double a12 = alpha * beta * c * r / phi;
  double tr = a11 + a22;
  double det = a11 * a22 - a12 * a12;
  double disc = std::sqrt(std::max(0.25 * tr * tr - det, 0.0));
  return 0.5 * tr + disc;
}

namespace {

std::vector<double> width_r_grid(const WidthOptions& opt) {
  std::vector<double> rs;
  rs.push_back(0.0);
  double lo = 1e-3;
  for (int i = 0; i < opt.r_points; ++i) {
    double f = static_cast<double>(i) / (opt.r_points - 1);
    rs.push_back(lo * std::pow(opt.r_max / lo, f));
  }
  return rs;
}

double sweep_margin(double alpha, double beta, double d0, int ny, const std::vector<double>& rs) {
  // margin = min over the band sweep of (-max eigenvalue); >= 0 is admissible
  double yc = M_PI / (2.0 * alpha);
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < ny; ++i) {
    double y = yc - 0.5 * d0 + d0 * static_cast<double>(i) / (ny - 1);
    double s = std::sin(alpha * y), c = std::cos(alpha * y);
    for (double r : rs) worst = std::min(worst, -pl_block_maxeig(alpha, beta, s, c, r));
  }
  return worst;
}

}  // namespace

double pl_width_margin(double alpha, double beta, double d0, const WidthOptions& opt) {
  return sweep_margin(alpha, beta, d0, opt.y_points, width_r_grid(opt));
}

double width_from_alpha(double alpha, PLParams& pl, const WidthOptions& opt) {
  if (!(alpha > 0.0)) fail(Errc::BadParams, "width solve needs alpha > 0");
  const std::vector<double> rs = width_r_grid(opt);
  const double cap = M_PI / alpha;
  double lo = 1e-9 * cap;
  if (sweep_margin(alpha, pl.beta, lo, opt.y_points, rs) < 0.0)
    fail(Errc::NoAdmissibleWidth, "no admissible band width down to " + std::to_string(lo));
  double hi = cap;
  while (hi - lo > opt.rel_tol * cap) {
    double mid = 0.5 * (lo + hi);
    if (sweep_margin(alpha, pl.beta, mid, opt.y_points, rs) >= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  pl.d_width = lo;
  pl.width_margin = sweep_margin(alpha, pl.beta, lo, opt.y_points, rs);
  return lo;
}

double pl_beta_for_width(double d_target, double rho, double Gamma, const WidthOptions& opt) {
  if (!(d_target > 0.0)) fail(Errc::BadParams, "target width must be positive");
  // The band edge is the binding sample, so a moderate sweep resolution
  // reproduces the full-resolution width to ~1e-7; that keeps the nested
  // bisection affordable.
  WidthOptions inner = opt;
  inner.y_points = std::min(inner.y_points, 2001);
  auto width_of = [&](double beta) {
    PLParams p = pl_from_beta(beta, beta, rho, Gamma);
    return width_from_alpha(p.alpha, p, inner);
  };
  double lo = 1e-6;
  if (width_of(lo) < d_target)
    fail(Errc::NoAdmissibleWidth, "domain width exceeds the admissible band even for vanishing growth rates");
  double hi = 1.0;
  while (width_of(hi) >= d_target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) break;
  }
  for (int it = 0; it < 60 && hi - lo > 1e-9 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    if (width_of(mid) >= d_target)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

double pl_truncation_constant(double sup_boundary_uplus_R, double beta, double R, double alpha,
                              double d) {
  if (sup_boundary_uplus_R < 0.0 || beta < 0.0 || R < 0.0)
    fail(Errc::NegativeInput, "truncation constant needs nonnegative inputs");
  double cosine = std::cos(alpha * d / 2.0);
  if (cosine <= 1e-9) fail(Errc::CosineDegenerate, "cos(alpha d/2) = " + std::to_string(cosine));
  return sup_boundary_uplus_R / (std::exp(beta * R) * cosine);
}

}  // namespace mplab
