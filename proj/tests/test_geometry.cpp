#include <doctest.h>

#include <Eigen/QR>
#include <random>

#include "mplab/errors.hpp"
#include "mplab/geometry.hpp"

using namespace mplab;

namespace {

Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

CylinderSpec c1() {
  return make_cylinder(3, {vec3(0, 1, 0), vec3(0, 0, 1)}, {0.0, 0.0}, {M_PI, M_PI});
}

}  // namespace

TEST_CASE("the reference cylinders") {
  CylinderSpec c = c1();
  CHECK(c.n() == 3);
  CHECK(c.k() == 2);
  CHECK(contains(c, vec3(5.0, M_PI / 2, M_PI / 2)));
  CHECK_FALSE(contains(c, vec3(5.0, -0.1, M_PI / 2)));
  CHECK(contains(c, vec3(5.0, 0.0, 1.0)));           // closed slab
  CHECK_FALSE(strictly_contains(c, vec3(5.0, 0.0, 1.0)));

  CylinderSpec strip = make_cylinder(2, {vec2(1, 0)}, {0.0}, {M_PI});
  CHECK(contains(strip, vec2(1.0, 1e9)));
  CHECK_FALSE(contains(strip, vec2(3.5, 0.0)));
}

TEST_CASE("construction rejections") {
  CHECK_THROWS_AS(make_cylinder(2, {vec2(1, 0), vec2(0, 1)}, {0, 0}, {1, 1}), Error);  // k = n
  try {
    make_cylinder(2, {vec2(1, 0), vec2(0, 1)}, {0, 0}, {1, 1});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonCylinder);
  }
  CHECK_THROWS_AS(make_cylinder(2, {vec2(1, 0)}, {0}, {0.0}), Error);   // zero width
  CHECK_THROWS_AS(make_cylinder(2, {vec2(1, 0)}, {0}, {-1.0}), Error);  // negative width
  CHECK_THROWS_AS(make_cylinder(3, {vec3(1, 0, 0), vec3(0.7, 0.7, 0)}, {0, 0}, {1, 1}), Error);
  try {
    make_cylinder(3, {vec3(1, 0, 0), vec3(0.7, 0.7, 0)}, {0, 0}, {1, 1});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonOrthonormalFrame);
  }
  // tiny perturbations are re-orthonormalized
  CylinderSpec c = make_cylinder(3, {vec3(1, 1e-10, 0), vec3(0, 1, 1e-10)}, {0, 0}, {1, 1});
  Eigen::MatrixXd G = c.dirs * c.dirs.transpose();
  CHECK((G - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("projection pair on axis-aligned frames") {
  ProjectionPair pq = projections(c1());
  Eigen::MatrixXd P_expect = Eigen::Vector3d(0, 1, 1).asDiagonal();
  Eigen::MatrixXd Q_expect = Eigen::Vector3d(1, 0, 0).asDiagonal();
  CHECK((pq.P - P_expect).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((pq.Q - Q_expect).cwiseAbs().maxCoeff() < 1e-15);

  ProjectionPair sp = projections(make_cylinder(2, {vec2(1, 0)}, {0.0}, {M_PI}));
  CHECK(sp.P(0, 0) == 1.0);
  CHECK(sp.P(1, 1) == 0.0);
  CHECK(sp.Q(1, 1) == 1.0);
}

TEST_CASE("projection identities on random frames") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 3 + static_cast<int>(trial % 3);
    int k = 1 + static_cast<int>(trial % (n - 1));
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = g(rng);
    Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(M).householderQ();
    std::vector<Eigen::VectorXd> dirs;
    for (int h = 0; h < k; ++h) dirs.push_back(Q.col(h));
    std::vector<double> offs(k, 0.0), widths(k, 1.0);
    CylinderSpec c = make_cylinder(n, dirs, offs, widths);
    ProjectionPair pq = projections(c);

    CHECK((pq.P * pq.P - pq.P).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((pq.Q * pq.Q - pq.Q).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((pq.P + pq.Q - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((pq.P * pq.Q).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(pq.P.trace() == doctest::Approx(k).epsilon(1e-12));
    CHECK(pq.Q.trace() == doctest::Approx(n - k).epsilon(1e-12));

    // P x equals the sum of slab projections
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = g(rng);
    Eigen::VectorXd px = Eigen::VectorXd::Zero(n);
    for (int h = 0; h < k; ++h) {
      Eigen::VectorXd nu = c.dirs.row(h).transpose();
      px += nu.dot(x) * nu;
    }
    CHECK((pq.P * x - px).norm() < 1e-10);

    // membership is invariant under translations in the unbounded subspace
    Eigen::VectorXd inside = Eigen::VectorXd::Zero(n);
    for (int h = 0; h < k; ++h) inside += 0.5 * c.dirs.row(h).transpose();
    Eigen::VectorXd shift(n);
    for (int i = 0; i < n; ++i) shift[i] = g(rng);
    Eigen::VectorXd qshift = pq.Q * shift;
    CHECK(contains(c, inside) == contains(c, inside + 10.0 * qshift));

    // the completed frame is orthonormal
    Eigen::MatrixXd F = c.frame();
    CHECK((F * F.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("lattices: crossing strips") {
  std::vector<CylinderSpec> cs;
  cs.push_back(make_cylinder(2, {vec2(0, 1)}, {0.0}, {M_PI}));  // R x (0,pi)
  cs.push_back(make_cylinder(2, {vec2(1, 0)}, {0.0}, {M_PI}));  // (0,pi) x R
  LatticeSpec lat = make_lattice(cs);

  CHECK(membership_count(lat, vec2(1.0, 1.0)) == 2);  // node region
  CHECK(in_node_region(lat, vec2(1.0, 1.0)));
  CHECK(membership_count(lat, vec2(5.0, 1.0)) == 1);
  CHECK_FALSE(in_node_region(lat, vec2(5.0, 1.0)));
  CHECK_FALSE(contains(lat, vec2(5.0, 5.0)));

  // union semantics against the members
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int i = 0; i < 500; ++i) {
    Eigen::VectorXd x = vec2(u(rng), u(rng));
    bool any = contains(lat.cylinders[0], x) || contains(lat.cylinders[1], x);
    CHECK(contains(lat, x) == any);
  }
}

TEST_CASE("lattice members must be 1-infinite") {
  std::vector<CylinderSpec> cs;
  cs.push_back(make_cylinder(3, {vec3(1, 0, 0)}, {0.0}, {1.0}));  // k=1 in 3-D
  CHECK_THROWS_AS(make_lattice(cs), Error);
}

TEST_CASE("dimension mismatches are rejected") {
  CHECK_THROWS_AS(contains(c1(), vec2(0, 0)), Error);
}
