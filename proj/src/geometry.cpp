#include "mplab/geometry.hpp"

#include <cmath>
#include <string>

#include "mplab/errors.hpp"

namespace mplab {

namespace {
constexpr double kFrameTol = 1e-8;
}

CylinderSpec make_cylinder(int n, const std::vector<Eigen::VectorXd>& dirs,
                           const std::vector<double>& offsets,
                           const std::vector<double>& widths) {
  const int k = static_cast<int>(dirs.size());
  if (n < 2) fail(Errc::NonCylinder, "ambient dimension must be >= 2");
  if (k < 1 || k > n - 1)
    fail(Errc::NonCylinder, "need 1 <= k <= n-1 bounded directions, got k=" + std::to_string(k) + ", n=" + std::to_string(n));
  if (offsets.size() != dirs.size() || widths.size() != dirs.size())
    fail(Errc::DimensionMismatch, "offsets/widths length must match the direction count");

  Eigen::MatrixXd frame(k, n);
  for (int h = 0; h < k; ++h) {
    if (dirs[h].size() != n)
      fail(Errc::DimensionMismatch, "direction " + std::to_string(h + 1) + " has length " + std::to_string(dirs[h].size()) + ", expected " + std::to_string(n));
    frame.row(h) = dirs[h].transpose();
  }

  // Modified Gram-Schmidt; the correction applied to each input row must stay
  // below kFrameTol or the frame is rejected as non-orthonormal.
  double worst_correction = 0.0;
  for (int h = 0; h < k; ++h) {
    Eigen::VectorXd v = frame.row(h).transpose();
    Eigen::VectorXd orig = v;
    for (int j = 0; j < h; ++j) {
      v -= v.dot(frame.row(j).transpose()) * frame.row(j).transpose();
    }
    double norm = v.norm();
    if (norm < 0.5) fail(Errc::NonOrthonormalFrame, "direction " + std::to_string(h + 1) + " is (nearly) dependent on the previous ones");
    v /= norm;
    worst_correction = std::max(worst_correction, (v - orig).norm());
    frame.row(h) = v.transpose();
  }
  if (worst_correction > kFrameTol)
    fail(Errc::NonOrthonormalFrame, "orthonormalization moved a direction by " + std::to_string(worst_correction));

  CylinderSpec c;
  c.dim = n;
  c.dirs = frame;
  c.offsets = Eigen::Map<const Eigen::VectorXd>(offsets.data(), k);
  c.widths = Eigen::Map<const Eigen::VectorXd>(widths.data(), k);
  for (int h = 0; h < k; ++h) {
    if (!(c.widths[h] > 0.0))
      fail(Errc::BadWidth, "width " + std::to_string(h + 1) + " = " + std::to_string(c.widths[h]) + " must be > 0");
  }
  return c;
}

Eigen::MatrixXd CylinderSpec::frame() const {
  const int n = dim, kk = k();
  Eigen::MatrixXd full(n, n);
  full.topRows(kk) = dirs;
  int filled = kk;
  for (int e = 0; e < n && filled < n; ++e) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(n, e);
    for (int j = 0; j < filled; ++j) v -= v.dot(full.row(j).transpose()) * full.row(j).transpose();
    double norm = v.norm();
    if (norm > 1e-6) {
      full.row(filled++) = (v / norm).transpose();
    }
  }
  return full;
}

LatticeSpec make_lattice(std::vector<CylinderSpec> cylinders) {
  if (cylinders.empty()) fail(Errc::NonCylinder, "a lattice needs at least one cylinder");
  const int n = cylinders.front().dim;
  for (const auto& c : cylinders) {
    if (c.dim != n) fail(Errc::DimensionMismatch, "lattice members must share the ambient dimension");
    if (c.k() != n - 1)
      fail(Errc::NonCylinder, "lattice members must be 1-infinite (k = n-1), got k=" + std::to_string(c.k()));
  }
  LatticeSpec l;
  l.cylinders = std::move(cylinders);
  l.dim = n;
  return l;
}

ProjectionPair projections(const CylinderSpec& c) {
  ProjectionPair pr;
  pr.P = c.dirs.transpose() * c.dirs;  // sum of nu^h (x) nu^h
  pr.Q = Eigen::MatrixXd::Identity(c.dim, c.dim) - pr.P;
  return pr;
}

namespace {
void check_dim(int n, const Eigen::VectorXd& x) {
  if (x.size() != n)
    fail(Errc::DimensionMismatch, "point has length " + std::to_string(x.size()) + ", domain dimension is " + std::to_string(n));
}
}  // namespace

bool contains(const CylinderSpec& c, const Eigen::VectorXd& x) {
  check_dim(c.dim, x);
  for (int h = 0; h < c.k(); ++h) {
    double t = c.dirs.row(h).dot(x);
    if (t < c.offsets[h] || t > c.offsets[h] + c.widths[h]) return false;
  }
  return true;
}

bool strictly_contains(const CylinderSpec& c, const Eigen::VectorXd& x) {
  check_dim(c.dim, x);
  for (int h = 0; h < c.k(); ++h) {
    double t = c.dirs.row(h).dot(x);
    if (t <= c.offsets[h] || t >= c.offsets[h] + c.widths[h]) return false;
  }
  return true;
}

bool contains(const LatticeSpec& l, const Eigen::VectorXd& x) { return membership_count(l, x) >= 1; }

bool contains(const DomainSpec& d, const Eigen::VectorXd& x) {
  return std::visit([&](const auto& g) { return contains(g, x); }, d);
}

int membership_count(const LatticeSpec& l, const Eigen::VectorXd& x) {
  check_dim(l.dim, x);
  int count = 0;
  for (const auto& c : l.cylinders)
    if (contains(c, x)) ++count;
  return count;
}

bool in_node_region(const LatticeSpec& l, const Eigen::VectorXd& x) { return membership_count(l, x) >= 2; }

int domain_dim(const DomainSpec& d) {
  return std::visit([](const auto& g) { return g.dim; }, d);
}

}  // namespace mplab
