#pragma once

#include <Eigen/Core>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mplab/operators.hpp"
#include "mplab/sampling.hpp"

namespace mplab {

/// The individually checked structure conditions. Monotone-in-s is replaced
/// by the one-sided bound in narrow mode.
enum class Cond {
  Continuity,
  DegenerateElliptic,
  MonotoneS,
  ZeroAtRest,
  DirectionalElliptic,
  OrthogonalGrowth,
  GradientBound,
  OneSidedS,
};

const char* cond_name(Cond c);

/// A reproducible record of the worst probe seen for a condition: the base
/// evaluation point plus whichever increment produced the quotient.
struct Witness {
  enum class Kind { Value, MatrixQuotient, GradientQuotient, OrderQuotient };
  Kind kind = Kind::Value;
  EvalPoint pt;
  Eigen::MatrixXd D;    // MatrixQuotient
  double t = 0.0;       // MatrixQuotient
  Eigen::VectorXd p2;   // GradientQuotient second probe
  double s2 = 0.0;      // OrderQuotient second probe
  double value = 0.0;   // observed quotient / value / ratio
  std::string note;

  /// Re-evaluates the recorded probe; must reproduce `value` bitwise.
  double reproduce(const OperatorSpec& op) const;
};

struct ConditionVerdict {
  bool pass = true;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::optional<Witness> witness;
};

struct DirectionReport {
  int dir = 0;                  // index into the bounded frame
  double lambda_min_interior = 0.0;
  double lambda_min_far = 0.0;
  bool positive = false;
};

/// Sampled evidence for the structure condition bundle, plus the scalar
/// constants every quantitative bound consumes. The estimates certify nothing
/// beyond the sample set; reports carry that label verbatim.
struct StructureReport {
  std::string op_name;
  int dim = 0;
  int k = 0;
  double r_far = 0.0;
  double tolerance = 1e-10;
  bool narrow_mode = false;
  bool analytic_constants = false;  // closed-form coefficient path used
  std::uint64_t seed = 0;

  std::vector<DirectionReport> directions;
  int ellipticity_dir = -1;  // chosen direction, -1 when none qualifies
  bool all_directions_elliptic = false;

  std::vector<std::pair<Eigen::VectorXd, double>> lambda_samples;  // chosen dir
  std::vector<std::pair<Eigen::VectorXd, double>> Lambda_samples;  // far shells

  double Lambda1 = 0.0;      // sup of Lambda-hat/|x| over the far shells
  double gamma_bound = 0.0;  // sup gamma-hat
  double Gamma = 0.0;        // sup gamma-hat / lambda-hat
  double rho = std::numeric_limits<double>::infinity();
  bool rho_finite = false;
  double K = 0.0;  // narrow mode: sup max(c-hat,0)/lambda-hat
  bool K_finite = true;
  bool liminf_lambda_positive = false;
  double probe_vs_analytic = 0.0;  // max discrepancy when both paths ran

  std::map<Cond, ConditionVerdict> flags;

  static constexpr const char* kDisclaimer = "sampled evidence, not proof";

  bool pass() const;
  std::string summary() const;
};

StructureReport check_structure(const OperatorSpec& op, const CylinderSpec& dom,
                                const SamplePlan& plan, double tol = 1e-10);

StructureReport check_narrow_mode(const OperatorSpec& op, const CylinderSpec& dom,
                                  const SamplePlan& plan, double tol = 1e-10);

/// Closed-form pointwise coefficients for the linear and sup-inf variants;
/// nullopt for callables. These back the probe-vs-formula cross checks.
std::optional<double> analytic_lambda(const OperatorSpec& op, const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& nu);
std::optional<double> analytic_Lambda(const OperatorSpec& op, const Eigen::VectorXd& x,
                                      const Eigen::MatrixXd& Q);
std::optional<double> analytic_gamma(const OperatorSpec& op, const Eigen::VectorXd& x);
std::optional<double> analytic_order_coeff(const OperatorSpec& op, const Eigen::VectorXd& x);

}  // namespace mplab
