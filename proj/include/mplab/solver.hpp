#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mplab/geometry.hpp"
#include "mplab/operators.hpp"
#include "mplab/smooth.hpp"

namespace mplab {

enum class NodeClass { Interior, Physical, Artificial };

/// Frame-aligned tensor grid over a truncated box, optionally restricted to a
/// union of integer boxes (lattices). Grid coordinates are index * spacing;
/// member endpoints must land on the lattice (they are snapped, and presets
/// use exact binary spacings). Boundary classification is by axis-neighbor
/// visibility: a kept node with a missing axis neighbor is boundary, physical
/// when the crossed face is a bounded-direction endpoint of some member box.
class Grid {
 public:
  static Grid make(const CylinderSpec& dom, double target_h, double truncation_R);
  static Grid make(const LatticeSpec& dom, double target_h, double truncation_R);
  static Grid make(const DomainSpec& dom, double target_h, double truncation_R);

  int dim() const { return n_; }
  std::int64_t node_count() const { return static_cast<std::int64_t>(cls_.size()); }
  const std::vector<double>& spacing() const { return h_; }
  const Eigen::MatrixXd& frame() const { return frame_; }
  double truncation() const { return R_; }

  NodeClass node_class(std::int64_t id) const { return cls_[id]; }
  Eigen::VectorXd point(std::int64_t id) const;                  // ambient coords
  std::int64_t multi_index(std::int64_t id, int axis) const;
  std::int64_t neighbor(std::int64_t id, int axis, int dir) const;  // -1 if absent
  int color(std::int64_t id) const;                              // parity class

  std::int64_t interior_count() const { return interior_count_; }

  /// Index boxes in grid coordinates (per member); bounded[a] marks physical
  /// axis endpoints.
  struct IndexBox {
    std::vector<std::int64_t> lo, hi;
    std::vector<bool> bounded;
  };
  const std::vector<IndexBox>& boxes() const { return boxes_; }
  bool in_box(const IndexBox& b, const std::vector<std::int64_t>& idx) const;

 private:
  int n_ = 0;
  double R_ = 0.0;
  Eigen::MatrixXd frame_;
  std::vector<double> h_;
  std::vector<double> origin_;               // coordinate = origin + index * h
  std::vector<std::int64_t> lo_, hi_;        // bounding index ranges
  std::vector<IndexBox> boxes_;
  std::vector<std::int64_t> id_of_;          // dense bounding-box map, -1 = absent
  std::vector<std::int64_t> multi_;          // id*n + axis
  std::vector<NodeClass> cls_;
  std::int64_t interior_count_ = 0;

  std::int64_t flat_of(const std::vector<std::int64_t>& idx) const;
  void build(double target_h);
};

struct Field {
  const Grid* grid = nullptr;
  std::vector<double> values;

  double max_value() const;
  double min_value() const;
  std::int64_t argmax() const;
};

Field field_from_function(const Grid& g, const std::function<double(const Eigen::VectorXd&)>& fn);
void write_csv(const Field& f, const std::string& path);

/// One constant-or-sampled-coefficient stencil family: per interior node, the
/// lower/upper axis weights (all nonnegative: the monotonicity certificate),
/// the negative center weight, and the zero-order coefficient.
struct StencilFamily {
  std::vector<double> lo_w, hi_w;  // node*dim + axis
  std::vector<double> center;      // strictly negative when solvable
  std::vector<double> czero;
};

struct DiscreteOperator {
  const Grid* grid = nullptr;
  int n_alpha = 1, n_beta = 1;            // 1x1 for plain linear operators
  std::vector<StencilFamily> members;     // indexed alpha*n_beta + beta
  bool strict_dominance = true;           // center + czero < 0 at every node

  double apply_member(int member, const Field& u, std::int64_t id) const;
  /// sup-inf of the member applications (the discrete operator value).
  double apply(const Field& u, std::int64_t id) const;
};

DiscreteOperator discretize(const OperatorSpec& op, const Grid& grid);

/// Residual field f - F_h[u] on interior nodes (zero elsewhere).
Field discrete_residual(const DiscreteOperator& disc, const Field& u, const Field& f);

struct SolveOptions {
  enum class Method { Auto, Sweeps, Direct };
  Method method = Method::Auto;
  double tol = 1e-10;
  std::int64_t max_sweeps = 100000;
  int max_policy_iters = 100;
  double damping = 1.0;
  std::int64_t direct_limit = 300000;
};

struct SolveReport {
  std::string method;
  std::int64_t iterations = 0;  // sweeps or linear solves
  double residual = 0.0;        // final infinity norm over interior nodes
  bool converged = false;
  double max_value = 0.0;
  std::int64_t argmax_node = -1;
  Eigen::VectorXd argmax_point;
  double boundary_max = 0.0;
  int policy_iterations = 0;
  std::vector<double> policy_residuals;  // logged per policy sweep
  int policy_switches = 0;

  std::string summary() const;
};

using BoundaryData = std::function<double(const Eigen::VectorXd&, NodeClass)>;
using SourceData = std::function<double(const Eigen::VectorXd&)>;

std::pair<Field, SolveReport> solve_dirichlet(const OperatorSpec& op, const Grid& grid,
                                              const SourceData& f, const BoundaryData& g,
                                              const SolveOptions& opt = {});

struct MPScenario {
  double h = 0.1;
  double R = 4.0;
  double tolerance = 1e-10;
  SourceData f;     // default 0
  BoundaryData g;   // default 0
  SolveOptions solve;
};

struct MPCheckResult {
  SolveReport report;
  bool verdict = false;  // max u <= tolerance
  double tolerance = 0.0;
};

/// Solve with nonpositive boundary data and nonnegative forcing; the maximum
/// principle holds when the discrete solution stays below the tolerance.
MPCheckResult empirical_mp_check(const OperatorSpec& op, const DomainSpec& dom,
                                 const MPScenario& sc);

/// Truncation-growth study for operators carrying a registered positive
/// solution: prescribe its trace on the artificial faces and record how the
/// interior maximum grows with the truncation radius.
struct GrowthStudy {
  std::vector<double> radii;
  std::vector<double> interior_max;
};
GrowthStudy mp_violation_study(const std::string& preset_name, const std::vector<double>& radii,
                               double h, const SolveOptions& opt = {});

struct LatticeOptions {
  double h = M_PI / 16.0;
  double R = 4.0 * M_PI;
  double tolerance = 1e-12;
  SourceData f;    // default 0
  BoundaryData g;  // default: physical 0, artificial -1
  SolveOptions solve;
};

struct HalfStripReport {
  int member = 0;
  int side = 0;  // -1 below the node region, +1 above
  std::int64_t argmax_node = -1;
  Eigen::VectorXd argmax_point;
  double max_value = 0.0;
  double dist_to_node_region = 0.0;  // along the member's unbounded axis
};

struct LatticeScenarioResult {
  bool in_hypotheses = true;    // uniformly elliptic on the node region
  std::string hypothesis_note;
  SolveReport report;
  double boundary_max = 0.0;
  double global_max = 0.0;
  bool mp_verdict = false;            // global max <= boundary max + tol
  std::vector<HalfStripReport> half_strips;
  bool localization_verdict = false;  // every argmax within one cell of the node region
  double node_region_max = 0.0;
  Eigen::VectorXd node_region_argmax;
  bool node_region_argmax_on_rim = false;
  double grid_h = 0.0;
};

LatticeScenarioResult lattice_mp_scenario(const LatticeSpec& lattice, const OperatorSpec& op,
                                          const LatticeOptions& opt = {});

}  // namespace mplab
