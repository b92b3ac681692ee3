#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "mplab/geometry.hpp"

namespace mplab {

/// Deterministic probe set for the structure checks. Interior points come
/// from a Halton sequence over the truncated cylinder; far points sit on
/// radius shells spanning [r_far, 2*r_far] so growth rates can be compared
/// across shells.
struct SamplePlan {
  std::vector<Eigen::VectorXd> interior;
  std::vector<std::vector<Eigen::VectorXd>> far_shells;  // ordered by radius
  std::vector<double> shell_radii;
  std::vector<Eigen::MatrixXd> matrix_probes;  // psd increments D
  std::vector<Eigen::MatrixXd> base_X;         // base Hessian arguments
  std::vector<double> t_ladder;                // strictly positive
  std::vector<Eigen::VectorXd> p_probes;       // nonzero probes; pairs with 0
  std::vector<double> s_probes;                // distinct values, include 0
  double r_far = 0.0;
  std::uint64_t seed = 0;

  std::vector<Eigen::VectorXd> all_points() const;
};

struct PlanOptions {
  int interior_count = 256;
  int per_shell = 16;
  int shells = 4;
  double r_far_factor = 100.0;  // r_far = factor * max width
  double r_far_override = 0.0;  // > 0 takes precedence
  int random_matrix_probes = 4;
  int random_p_probes = 4;
};

SamplePlan make_plan(const CylinderSpec& dom, std::uint64_t seed, const PlanOptions& opt = {});

}  // namespace mplab
