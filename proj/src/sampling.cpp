#include "mplab/sampling.hpp"

#include <cmath>
#include <random>

#include "mplab/numeric.hpp"

namespace mplab {

namespace {
const std::uint32_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
}

std::vector<Eigen::VectorXd> SamplePlan::all_points() const {
  std::vector<Eigen::VectorXd> pts = interior;
  for (const auto& shell : far_shells) pts.insert(pts.end(), shell.begin(), shell.end());
  return pts;
}

SamplePlan make_plan(const CylinderSpec& dom, std::uint64_t seed, const PlanOptions& opt) {
  const int n = dom.n(), k = dom.k();
  const Eigen::MatrixXd frame = dom.frame();
  SamplePlan plan;
  plan.seed = seed;
  plan.r_far = opt.r_far_override > 0.0 ? opt.r_far_override
                                        : opt.r_far_factor * dom.widths.maxCoeff();

  // Interior: Halton in frame coordinates. Bounded axes take the open slab,
  // unbounded axes take (-r_far, r_far).
  for (int i = 0; i < opt.interior_count; ++i) {
    Eigen::VectorXd y(n);
    for (int a = 0; a < n; ++a) {
      double u = halton(static_cast<std::uint64_t>(i) + 1, kPrimes[a % 12]);
      if (a < k)
        y[a] = dom.offsets[a] + u * dom.widths[a];
      else
        y[a] = (2.0 * u - 1.0) * plan.r_far;
    }
    plan.interior.push_back(frame.transpose() * y);
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // Far shells: bounded coordinates at slab centers, unbounded part scaled to
  // put |x| exactly on the shell radius. Shell radii span [r_far, 2*r_far].
  Eigen::VectorXd yc = Eigen::VectorXd::Zero(n);
  for (int h = 0; h < k; ++h) yc[h] = dom.offsets[h] + 0.5 * dom.widths[h];
  const double bounded_norm2 = yc.squaredNorm();
  for (int sh = 0; sh < opt.shells; ++sh) {
    double radius = plan.r_far * std::pow(2.0, static_cast<double>(sh) / (opt.shells - 1));
    std::vector<Eigen::VectorXd> shell;
    for (int i = 0; i < opt.per_shell; ++i) {
      Eigen::VectorXd z(n - k);
      if (i < 2 * (n - k)) {
        z = Eigen::VectorXd::Zero(n - k);
        z[(i / 2) % (n - k)] = (i % 2 == 0) ? 1.0 : -1.0;
      } else {
        for (int a = 0; a < n - k; ++a) z[a] = gauss(rng);
        if (z.norm() < 1e-12) z[0] = 1.0;
        z.normalize();
      }
      double zlen = std::sqrt(std::max(radius * radius - bounded_norm2, 0.25 * radius * radius));
      Eigen::VectorXd y = yc;
      y.tail(n - k) = zlen * z;
      shell.push_back(frame.transpose() * y);
    }
    plan.shell_radii.push_back(radius);
    plan.far_shells.push_back(std::move(shell));
  }

  // Matrix probes: every bounded rank-one direction, the orthogonal
  // projection, the identity, and a few random rank-one psd matrices.
  for (int h = 0; h < k; ++h) {
    Eigen::VectorXd nu = dom.dirs.row(h).transpose();
    plan.matrix_probes.push_back(nu * nu.transpose());
  }
  ProjectionPair pq = projections(dom);
  plan.matrix_probes.push_back(pq.Q);
  plan.matrix_probes.push_back(Eigen::MatrixXd::Identity(n, n));
  for (int i = 0; i < opt.random_matrix_probes; ++i) {
    Eigen::VectorXd v(n);
    for (int a = 0; a < n; ++a) v[a] = gauss(rng);
    v.normalize();
    plan.matrix_probes.push_back(v * v.transpose());
  }

  // Base Hessian arguments: zero plus two random symmetric matrices.
  plan.base_X.push_back(Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < 2; ++i) {
    Eigen::MatrixXd G(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) G(r, c) = gauss(rng);
    plan.base_X.push_back(0.5 * (G + G.transpose()));
  }

  plan.t_ladder = {1.0, 1e-2, 1e-4};

  // Gradient probes: all axis directions plus random ones, two magnitudes.
  for (int a = 0; a < n; ++a) {
    plan.p_probes.push_back(Eigen::VectorXd::Unit(n, a));
    plan.p_probes.push_back(-Eigen::VectorXd::Unit(n, a));
  }
  for (int i = 0; i < opt.random_p_probes; ++i) {
    Eigen::VectorXd v(n);
    for (int a = 0; a < n; ++a) v[a] = gauss(rng);
    v.normalize();
    plan.p_probes.push_back(v);
    plan.p_probes.push_back(0.01 * v);
  }

  plan.s_probes = {0.0, 0.5, 1.0, -0.75, 2.0};
  return plan;
}

}  // namespace mplab
