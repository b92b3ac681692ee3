#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mplab/analytic.hpp"
#include "mplab/operators.hpp"
#include "mplab/smooth.hpp"

namespace mplab {

/// Outcome of a pointwise differential-inequality check over a sample set.
/// Margins are signed so that pass <=> worst_margin >= -tolerance; the
/// witness re-evaluates to the same margin bitwise.
struct Certificate {
  std::string claim;
  std::string sample_desc;
  std::int64_t sample_count = 0;
  double worst_margin = 0.0;
  Eigen::VectorXd witness;
  double witness_value = 0.0;  // raw evaluated quantity at the witness
  double tolerance = 1e-10;
  bool pass = false;
  std::uint64_t seed = 0;

  std::string summary() const;
};

enum class Rel { GE, LE, EQ };

struct CertifyOptions {
  double tolerance = 1e-10;
  std::optional<double> fix_s;  // evaluate F at this s instead of fn(x)
  std::string claim;
  std::string sample_desc;
  std::uint64_t seed = 0;
};

/// Margin per sample: residual = F(x, fn(x), Dfn(x), D2fn(x)) - rhs(x);
/// GE keeps it, LE negates it, EQ uses -|residual|.
Certificate certify_inequality(const OperatorSpec& op, const SmoothFunction& fn,
                               const std::vector<Eigen::VectorXd>& samples, Rel rel,
                               const std::function<double(const Eigen::VectorXd&)>& rhs,
                               const CertifyOptions& opt = {});

/// Deterministic Halton samples of the open truncated cylinder; unbounded
/// frame coordinates range over [-range, range].
std::vector<Eigen::VectorXd> interior_samples(const CylinderSpec& dom, int count,
                                              double range, std::uint64_t seed);

/// Points exactly on the physical faces (one slab coordinate pinned to its
/// endpoint), cycling through the 2k faces.
std::vector<Eigen::VectorXd> boundary_samples(const CylinderSpec& dom, int count,
                                              double range, std::uint64_t seed);

struct CounterexampleBundle {
  std::string name;
  Certificate residual;    // the function solves the equation
  Certificate boundary;    // trace vanishes on the physical boundary
  Certificate positivity;  // strictly positive inside, max >= 1 at the marker
  std::string violated_hypothesis;
  std::string conclusion;

  bool all_pass() const { return residual.pass && boundary.pass && positivity.pass; }
};

struct CounterexampleOptions {
  int interior_count = 1000;
  int boundary_count = 1000;
  std::uint64_t seed = 7;
  double range = 0.0;  // 0 = per-scenario default
};

CounterexampleBundle counterexample_report(const std::string& name,
                                           const CounterexampleOptions& opt = {});

/// G(y,s,p,M) = d^2 F(d y, s, p/d, M/d^2); v(y) = u(d y) inherits the
/// differential inequality with right side d^2 f(d y).
OperatorSpec rescale_operator(const OperatorSpec& op, double d_h);

/// Far-field degeneracy check: along |x_eps| = 1/eps the rescaled orthogonal
/// increment F(x_eps, 0, 0, (eps/|x_eps|) Q) must stay below Lambda1*eps.
Certificate sponge_limit_check(const OperatorSpec& op, const CylinderSpec& dom,
                               double Lambda1, const std::vector<double>& eps_ladder,
                               double tolerance = 1e-10);

/// The subtract-a-smooth-supersolution operator:
/// G(x,s,p,M) = F(x, s+v, p+Dv, M+D2v) - F(x, v, Dv, D2v).
OperatorSpec comparison_shift(const OperatorSpec& F, SmoothFnPtr v);

}  // namespace mplab
