#pragma once

#include <Eigen/Core>
#include <variant>
#include <vector>

namespace mplab {

/// An (n-k)-infinite cylinder: bounded in the k orthonormal directions nu^h
/// (slab inequalities offset_h <= x.nu^h <= offset_h + width_h), unbounded in
/// the orthogonal complement. Immutable after construction; the stored frame
/// is exactly orthonormal (inputs are re-orthonormalized on entry).
struct CylinderSpec {
  int dim = 0;                 // ambient n
  Eigen::MatrixXd dirs;        // k x n, rows nu^1..nu^k
  Eigen::VectorXd offsets;     // a_h
  Eigen::VectorXd widths;      // d_h > 0

  int n() const { return dim; }
  int k() const { return static_cast<int>(dirs.rows()); }

  /// Orthonormal n x n basis, rows 0..k-1 the bounded directions, rows k..n-1
  /// a completion spanning the unbounded subspace.
  Eigen::MatrixXd frame() const;
};

struct ProjectionPair {
  Eigen::MatrixXd P;  // onto the bounded subspace U
  Eigen::MatrixXd Q;  // onto U-perp
};

/// A finite union of 1-infinite cylinders (each bounded in n-1 directions).
/// The node region is where at least two members overlap.
struct LatticeSpec {
  std::vector<CylinderSpec> cylinders;
  int dim = 0;

  int n() const { return dim; }
};

using DomainSpec = std::variant<CylinderSpec, LatticeSpec>;

CylinderSpec make_cylinder(int n, const std::vector<Eigen::VectorXd>& dirs,
                           const std::vector<double>& offsets,
                           const std::vector<double>& widths);

LatticeSpec make_lattice(std::vector<CylinderSpec> cylinders);

ProjectionPair projections(const CylinderSpec& c);

/// Closed slab inequalities (boundary points are inside).
bool contains(const CylinderSpec& c, const Eigen::VectorXd& x);
bool contains(const LatticeSpec& l, const Eigen::VectorXd& x);
bool contains(const DomainSpec& d, const Eigen::VectorXd& x);

/// Open inequalities, for interior sampling.
bool strictly_contains(const CylinderSpec& c, const Eigen::VectorXd& x);

/// Number of member cylinders containing x (lattice multiplicity).
int membership_count(const LatticeSpec& l, const Eigen::VectorXd& x);

/// True when x lies in at least two member cylinders.
bool in_node_region(const LatticeSpec& l, const Eigen::VectorXd& x);

int domain_dim(const DomainSpec& d);

}  // namespace mplab
