#pragma once

#include <Eigen/Core>

#include "mplab/geometry.hpp"
#include "mplab/smooth.hpp"

namespace mplab {

/// phi(x) = sqrt(|Qx|^2 + 1): the slowly growing function of the unbounded
/// coordinates used to push maxima into the bounded region. |D phi| < 1 and
/// D^2 phi <= Q / phi everywhere.
class SpongeBarrier final : public SmoothFunction {
 public:
  explicit SpongeBarrier(Eigen::MatrixXd Q);
  int dim() const override { return static_cast<int>(Q_.rows()); }
  double value(const Eigen::VectorXd& x) const override;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override;
  std::string describe() const override;
  const Eigen::MatrixXd& Q() const { return Q_; }

 private:
  Eigen::MatrixXd Q_;
};

/// h(x) = M (1 + e^{-alpha d}) - M e^{alpha (x.nu - xprime) - alpha d}:
/// the exponential comparison function along one bounded direction. Positive
/// and bounded below by M e^{-alpha d} on the slab |x.nu - xprime| <= d.
class ExpDirBarrier final : public SmoothFunction {
 public:
  ExpDirBarrier(double M, double alpha, double d, double xprime, Eigen::VectorXd nu);
  int dim() const override { return static_cast<int>(nu_.size()); }
  double value(const Eigen::VectorXd& x) const override;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override;
  std::string describe() const override;

  double M() const { return M_; }
  double alpha() const { return alpha_; }
  double d() const { return d_; }
  double xprime() const { return xprime_; }
  const Eigen::VectorXd& nu() const { return nu_; }
  double slab_lower_bound() const;  // M e^{-alpha d}

 private:
  double M_, alpha_, d_, xprime_;
  Eigen::VectorXd nu_;
};

/// g(x) = C1 e^{alpha x.nu} + shift: the convex exponential in the
/// quantitative sup bound.
class AbpAuxBarrier final : public SmoothFunction {
 public:
  AbpAuxBarrier(double C1, double alpha, Eigen::VectorXd nu, double shift = 0.0);
  int dim() const override { return static_cast<int>(nu_.size()); }
  double value(const Eigen::VectorXd& x) const override;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override;
  std::string describe() const override;

  double C1() const { return C1_; }
  double alpha() const { return alpha_; }
  double shift() const { return shift_; }
  const Eigen::VectorXd& nu() const { return nu_; }

 private:
  double C1_, alpha_, shift_;
  Eigen::VectorXd nu_;
};

/// v(x) = sin(alpha x.nu) e^{beta phi(r)}, r = |Qx|: the growth-trading
/// barrier. Concave in the nu direction on the admissible band, with the
/// orthogonal Hessian block bounded by beta(beta+1) Q before the band bound.
class PLBarrier final : public SmoothFunction {
 public:
  PLBarrier(double alpha, double beta, Eigen::VectorXd nu, Eigen::MatrixXd Q);
  int dim() const override { return static_cast<int>(nu_.size()); }
  double value(const Eigen::VectorXd& x) const override;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override;
  std::string describe() const override;

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  const Eigen::VectorXd& nu() const { return nu_; }
  const Eigen::MatrixXd& Q() const { return Q_; }

 private:
  double alpha_, beta_;
  Eigen::VectorXd nu_;
  Eigen::MatrixXd Q_;
};

// ---------------------------------------------------------------------------
// Parameter solvers
// ---------------------------------------------------------------------------

struct SpongeBounds {
  double grad_norm;        // |D phi|(x), strictly below 1
  double hessian_gap_eig;  // min eigenvalue of Q/phi - D^2 phi, >= 0 up to fp
};

SpongeBounds sponge_bounds(const Eigen::VectorXd& x, const ProjectionPair& pair);

struct AbpParams {
  double alpha;  // 1 + Gamma
  double C1;     // sup(f^-/lambda) / (1 + Gamma)
};

AbpParams abp_params(double Gamma, double sup_f_over_lambda);

/// sup_boundary + e^{1+d Gamma}/(1+d Gamma) * sup(f^-/lambda) * d^2.
double abp_bound(double d_h, double Gamma, double sup_f_over_lambda, double sup_boundary_uplus);

/// Largest width d with e^{1+d Gamma}/(1+d Gamma) * d^2 * K < 1 (bisection,
/// absolute bracket width 1e-12; the left side is increasing in d).
double narrow_threshold(double Gamma, double K);

/// Left side of the growth-rate inequality: -alpha^2/2 + 2 rho beta(beta+1)
/// + Gamma (alpha + beta). Admissible parameters make it <= 0.
double pl_inequality_lhs(double alpha, double beta, double rho, double Gamma);

struct PLParams {
  double beta0 = 0.0;
  double beta = 0.0;        // beta0 * beta_factor
  double alpha_root = 0.0;  // exact positive root of the admissibility quadratic
  double alpha = 0.0;       // alpha_root inflated by 1e-9 for a strict margin
  double rho = 0.0;
  double Gamma = 0.0;
  double margin_ineq = 0.0;  // pl_inequality_lhs at (alpha, beta): <= 0
  double d_width = 0.0;      // admissible band width; 0 until width solve runs
  double width_margin = 0.0; // certified sweep margin (>= 0) for d_width
};

PLParams pl_solve(double beta0, double rho, double Gamma, double beta_factor = 1.1);

struct WidthOptions {
  int y_points = 10000;     // band sweep resolution
  int r_points = 64;        // log-spaced orthogonal radii up to r_max
  double r_max = 1e6;
  double rel_tol = 1e-7;    // bisection width relative to pi/alpha
};

/// Largest band width d0 < pi/alpha whose centered band keeps the barrier
/// Hessian below -alpha^2/2 P_h + 2 beta(beta+1) Q, certified by a dense
/// deterministic sweep. Fills d_width and width_margin of `pl`.
double width_from_alpha(double alpha, PLParams& pl, const WidthOptions& opt = {});

/// Certified sweep margin (min over samples of -max-eigenvalue of the excess
/// block) for a given band width; >= 0 means the width is admissible.
double pl_width_margin(double alpha, double beta, double d0, const WidthOptions& opt = {});

/// Max eigenvalue of the 2x2 excess block at sin/cos values s,c and radius r.
/// The excess matrix vanishes outside span{nu, z-hat}; this is its only
/// nontrivial block (cross-checked against the assembled Hessian in tests).
double pl_block_maxeig(double alpha, double beta, double s, double c, double r);

/// Inverse direction: the largest growth rate beta whose admissible width is
/// at least d_target (bisection over beta through the same width solve).
double pl_beta_for_width(double d_target, double rho, double Gamma,
                         const WidthOptions& opt = {});

/// sup u^+ on the truncated boundary divided by e^{beta R} cos(alpha d / 2).
double pl_truncation_constant(double sup_boundary_uplus_R, double beta, double R,
                              double alpha, double d);

ExpDirBarrier exp_dir_barrier(double M_eps, double alpha, double d, double xprime_eps,
                              const Eigen::VectorXd& nu);

}  // namespace mplab
