#include "mplab/structure.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "mplab/errors.hpp"

namespace mplab {

namespace {

constexpr double kLambdaFloor = 1e-12;   // "strictly positive" threshold
constexpr double kGrowthFactor = 1.5;    // shell-to-shell boundedness factor
constexpr double kGrowthAbs = 1e-9;

double quotient_matrix(const OperatorSpec& op, const EvalPoint& pt, const Eigen::MatrixXd& D, double t) {
  EvalPoint shifted = pt;
  shifted.X = pt.X + t * D;
  return (evaluate(op, shifted) - evaluate(op, pt)) / t;
}

double quotient_gradient(const OperatorSpec& op, const EvalPoint& pt, const Eigen::VectorXd& p2) {
  EvalPoint other = pt;
  other.p = p2;
  double dn = (pt.p - p2).norm();
  return std::fabs(evaluate(op, pt) - evaluate(op, other)) / dn;
}

double quotient_order(const OperatorSpec& op, const EvalPoint& pt, double s2) {
  EvalPoint other = pt;
  other.s = s2;
  return (evaluate(op, other) - evaluate(op, pt)) / (s2 - pt.s);
}

struct MinTracker {
  double value = std::numeric_limits<double>::infinity();
  Witness witness;
  void offer(double v, const Witness& w) {
    if (v < value) {
      value = v;
      witness = w;
    }
  }
};

struct MaxTracker {
  double value = -std::numeric_limits<double>::infinity();
  Witness witness;
  void offer(double v, const Witness& w) {
    if (v > value) {
      value = v;
      witness = w;
    }
  }
};

}  // namespace

double Witness::reproduce(const OperatorSpec& op) const {
  switch (kind) {
    case Kind::Value: return evaluate(op, pt);
    case Kind::MatrixQuotient: return quotient_matrix(op, pt, D, t);
    case Kind::GradientQuotient: return quotient_gradient(op, pt, p2);
    case Kind::OrderQuotient: return quotient_order(op, pt, s2);
  }
  return 0.0;
}

const char* cond_name(Cond c) {
  switch (c) {
    case Cond::Continuity: return "continuity";
    case Cond::DegenerateElliptic: return "degenerate_ellipticity";
    case Cond::MonotoneS: return "monotone_in_s";
    case Cond::ZeroAtRest: return "zero_at_rest";
    case Cond::DirectionalElliptic: return "directional_ellipticity";
    case Cond::OrthogonalGrowth: return "orthogonal_growth";
    case Cond::GradientBound: return "gradient_lipschitz";
    case Cond::OneSidedS: return "one_sided_s_bound";
  }
  return "?";
}

bool StructureReport::pass() const {
  for (const auto& [c, v] : flags)
    if (!v.pass) return false;
  return true;
}

std::string StructureReport::summary() const {
  std::ostringstream out;
  out << "structure report for '" << op_name << "' (" << kDisclaimer << ")\n";
  out << "  n=" << dim << " k=" << k << " r_far=" << r_far << " seed=" << seed
      << (narrow_mode ? " [narrow mode]" : "") << "\n";
  for (const auto& d : directions)
    out << "  direction " << d.dir + 1 << ": lambda_min interior=" << d.lambda_min_interior
        << " far=" << d.lambda_min_far << (d.positive ? " (elliptic)" : " (NOT elliptic)") << "\n";
  out << "  chosen direction: " << (ellipticity_dir >= 0 ? std::to_string(ellipticity_dir + 1) : "none")
      << ", all-direction ellipticity: " << (all_directions_elliptic ? "yes" : "no") << "\n";
  out << "  Lambda1=" << Lambda1 << " gamma<=" << gamma_bound << " Gamma=" << Gamma;
  out << " rho=" << (rho_finite ? std::to_string(rho) : std::string("unbounded"));
  if (narrow_mode) out << " K=" << (K_finite ? std::to_string(K) : std::string("unbounded"));
  out << "\n";
  for (const auto& [c, v] : flags) {
    out << "  [" << (v.pass ? "pass" : "FAIL") << "] " << cond_name(c)
        << " margin=" << v.worst_margin;
    if (v.witness && !v.pass) {
      out << " witness x=(";
      for (int i = 0; i < v.witness->pt.x.size(); ++i)
        out << (i ? "," : "") << v.witness->pt.x[i];
      out << ") value=" << v.witness->value << " " << v.witness->note;
    }
    out << "\n";
  }
  return out.str();
}

std::optional<double> analytic_lambda(const OperatorSpec& op, const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& nu) {
  if (const auto* lin = op.linear()) return nu.dot(lin->A_at(x) * nu);
  if (const auto* si = op.supinf()) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& row : si->families)
      for (const auto& mem : row) m = std::min(m, nu.dot(mem.A * nu));
    return m;
  }
  return std::nullopt;
}

std::optional<double> analytic_Lambda(const OperatorSpec& op, const Eigen::VectorXd& x,
                                      const Eigen::MatrixXd& Q) {
  if (const auto* lin = op.linear()) return (lin->A_at(x).array() * Q.array()).sum();
  if (const auto* si = op.supinf()) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& row : si->families)
      for (const auto& mem : row) m = std::max(m, (mem.A.array() * Q.array()).sum());
    return m;
  }
  return std::nullopt;
}

std::optional<double> analytic_gamma(const OperatorSpec& op, const Eigen::VectorXd& x) {
  if (const auto* lin = op.linear()) return lin->b_at(x).norm();
  if (const auto* si = op.supinf()) {
    double m = 0.0;
    for (const auto& row : si->families)
      for (const auto& mem : row) m = std::max(m, mem.b.norm());
    return m;
  }
  return std::nullopt;
}

std::optional<double> analytic_order_coeff(const OperatorSpec& op, const Eigen::VectorXd& x) {
  if (const auto* lin = op.linear()) return lin->c_at(x);
  if (const auto* si = op.supinf()) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& row : si->families)
      for (const auto& mem : row) m = std::max(m, mem.c);
    return m;
  }
  return std::nullopt;
}

namespace {

StructureReport check_impl(const OperatorSpec& op, const CylinderSpec& dom,
                           const SamplePlan& plan, double tol, bool narrow) {
  if (op.dim() != dom.dim)
    fail(Errc::DimensionMismatch, "operator dim " + std::to_string(op.dim()) + " vs domain dim " + std::to_string(dom.dim));
  if (plan.interior.size() < 8)
    fail(Errc::InsufficientSamples, "plan has " + std::to_string(plan.interior.size()) + " interior points, need >= 8");

  const int n = dom.n(), k = dom.k();
  const ProjectionPair pq = projections(dom);

  for (const auto& D : plan.matrix_probes) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-12)
      fail(Errc::BadParams, "sample plan contains a non-psd matrix probe");
  }

  // Flattened sample points with shell tags (-1 = interior).
  std::vector<Eigen::VectorXd> pts = plan.interior;
  std::vector<int> shell_of(pts.size(), -1);
  for (size_t sh = 0; sh < plan.far_shells.size(); ++sh)
    for (const auto& x : plan.far_shells[sh]) {
      pts.push_back(x);
      shell_of.push_back(static_cast<int>(sh));
    }
  const size_t npts = pts.size();
  const size_t nshells = plan.far_shells.size();

  const bool analytic = op.linear() != nullptr || op.supinf() != nullptr;
  const size_t n_base_X = plan.base_X.size();
  const size_t n_p_small = std::min<size_t>(3, plan.p_probes.size());

  StructureReport rep;
  rep.op_name = op.name.empty() ? "<anonymous>" : op.name;
  rep.dim = n;
  rep.k = k;
  rep.r_far = plan.r_far;
  rep.tolerance = tol;
  rep.narrow_mode = narrow;
  rep.analytic_constants = analytic;
  rep.seed = plan.seed;

  // --- one-directional ellipticity tables (per direction, per point) -------
  std::vector<std::vector<double>> lambda_tbl(k, std::vector<double>(npts));
  double probe_vs_analytic = 0.0;
  for (int h = 0; h < k; ++h) {
    Eigen::VectorXd nu = dom.dirs.row(h).transpose();
    Eigen::MatrixXd D = nu * nu.transpose();
    for (size_t i = 0; i < npts; ++i) {
      double lo = std::numeric_limits<double>::infinity();
      for (size_t ix = 0; ix < n_base_X; ++ix)
        for (size_t ip = 0; ip <= n_p_small; ++ip)
          for (double t : plan.t_ladder) {
            EvalPoint pt;
            pt.x = pts[i];
            pt.s = 0.0;
            pt.p = ip == 0 ? Eigen::VectorXd::Zero(n) : plan.p_probes[ip - 1];
            pt.X = plan.base_X[ix];
            lo = std::min(lo, quotient_matrix(op, pt, D, t));
          }
      if (analytic) {
        double exact = *analytic_lambda(op, pts[i], nu);
        if (op.linear()) {
          // the canonical probe (rest point, unit t) reproduces the closed
          // form without cancellation noise from large base Hessians
          double canonical = quotient_matrix(op, EvalPoint::rest(pts[i]), D, 1.0);
          probe_vs_analytic = std::max(probe_vs_analytic, std::fabs(canonical - exact));
        }
        lambda_tbl[h][i] = exact;
      } else {
        lambda_tbl[h][i] = lo;
      }
    }
  }

  for (int h = 0; h < k; ++h) {
    DirectionReport dr;
    dr.dir = h;
    dr.lambda_min_interior = std::numeric_limits<double>::infinity();
    dr.lambda_min_far = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < npts; ++i) {
      if (shell_of[i] < 0)
        dr.lambda_min_interior = std::min(dr.lambda_min_interior, lambda_tbl[h][i]);
      else
        dr.lambda_min_far = std::min(dr.lambda_min_far, lambda_tbl[h][i]);
    }
    dr.positive = dr.lambda_min_interior > kLambdaFloor && dr.lambda_min_far > kLambdaFloor;
    rep.directions.push_back(dr);
  }
  // tie-break: maximize the overall infimum of lambda-hat
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& d : rep.directions) {
    double inf_all = std::min(d.lambda_min_interior, d.lambda_min_far);
    if (d.positive && inf_all > best) {
      best = inf_all;
      rep.ellipticity_dir = d.dir;
    }
  }
  rep.all_directions_elliptic =
      std::all_of(rep.directions.begin(), rep.directions.end(), [](const DirectionReport& d) { return d.positive; });

  const int hstar = rep.ellipticity_dir >= 0 ? rep.ellipticity_dir : 0;
  const std::vector<double>& lambda_star = lambda_tbl[hstar];
  for (size_t i = 0; i < npts; ++i)
    if (shell_of[i] < 0) rep.lambda_samples.emplace_back(pts[i], lambda_star[i]);

  {
    ConditionVerdict v;
    if (rep.ellipticity_dir < 0) {
      v.pass = false;
      // witness: the weakest probe of the best-scoring direction
      MinTracker mt;
      Eigen::VectorXd nu = dom.dirs.row(hstar).transpose();
      Eigen::MatrixXd D = nu * nu.transpose();
      for (size_t i = 0; i < npts; ++i) {
        EvalPoint pt = EvalPoint::rest(pts[i]);
        Witness w;
        w.kind = Witness::Kind::MatrixQuotient;
        w.pt = pt;
        w.D = D;
        w.t = plan.t_ladder.front();
        w.value = quotient_matrix(op, pt, D, w.t);
        w.note = "weakest one-directional ellipticity quotient, direction " + std::to_string(hstar + 1);
        mt.offer(w.value, w);
      }
      v.worst_margin = mt.value;
      v.witness = mt.witness;
    } else {
      v.pass = true;
      v.worst_margin = best;
    }
    rep.flags[Cond::DirectionalElliptic] = v;
    rep.liminf_lambda_positive =
        rep.ellipticity_dir >= 0 && rep.directions[hstar].lambda_min_far > kLambdaFloor;
  }

  // --- orthogonal growth -----------------------------------------------
  std::vector<double> Lambda_tbl(npts);
  {
    for (size_t i = 0; i < npts; ++i) {
      double hi = -std::numeric_limits<double>::infinity();
      for (size_t ix = 0; ix < n_base_X; ++ix)
        for (double t : plan.t_ladder) {
          EvalPoint pt = EvalPoint::rest(pts[i]);
          pt.X = plan.base_X[ix];
          hi = std::max(hi, quotient_matrix(op, pt, pq.Q, t));
        }
      if (analytic) {
        double exact = *analytic_Lambda(op, pts[i], pq.Q);
        if (op.linear()) {
          double canonical = quotient_matrix(op, EvalPoint::rest(pts[i]), pq.Q, 1.0);
          probe_vs_analytic =
              std::max(probe_vs_analytic, std::fabs(canonical - exact) / std::max(1.0, std::fabs(exact)));
        }
        Lambda_tbl[i] = exact;
      } else {
        Lambda_tbl[i] = hi;
      }
    }
    std::vector<double> shell_ratio(nshells, 0.0);
    std::vector<MaxTracker> shell_witness(nshells);
    for (size_t i = 0; i < npts; ++i) {
      if (shell_of[i] < 0) continue;
      rep.Lambda_samples.emplace_back(pts[i], Lambda_tbl[i]);
      double ratio = std::max(Lambda_tbl[i], 0.0) / pts[i].norm();
      int sh = shell_of[i];
      Witness w;
      w.kind = Witness::Kind::MatrixQuotient;
      w.pt = EvalPoint::rest(pts[i]);
      w.D = pq.Q;
      w.t = plan.t_ladder.front();
      w.value = quotient_matrix(op, w.pt, pq.Q, w.t);
      w.note = "orthogonal difference quotient; quotient/|x| = " + std::to_string(ratio);
      shell_witness[sh].offer(ratio, w);
      shell_ratio[sh] = std::max(shell_ratio[sh], ratio);
    }
    rep.Lambda1 = *std::max_element(shell_ratio.begin(), shell_ratio.end());
    ConditionVerdict v;
    double first = shell_ratio.front(), last = shell_ratio.back();
    v.worst_margin = kGrowthFactor * first + kGrowthAbs - last;
    v.pass = v.worst_margin >= -tol;
    if (!v.pass) v.witness = shell_witness.back().witness;
    rep.flags[Cond::OrthogonalGrowth] = v;
  }

  // --- gradient Lipschitz bound ----------------------------------------
  std::vector<double> gamma_tbl(npts);
  {
    std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pairs;
    for (const auto& p : plan.p_probes) pairs.emplace_back(p, Eigen::VectorXd::Zero(n));
    for (size_t i = 0; i + 1 < plan.p_probes.size(); i += 2)
      pairs.emplace_back(plan.p_probes[i], plan.p_probes[i + 1]);
    for (size_t i = 0; i < npts; ++i) {
      double hi = 0.0;
      for (size_t ix = 0; ix < std::min<size_t>(2, n_base_X); ++ix)
        for (const auto& [pa, pb] : pairs) {
          if ((pa - pb).norm() < 1e-14) continue;
          EvalPoint pt;
          pt.x = pts[i];
          pt.s = 0.0;
          pt.p = pa;
          pt.X = plan.base_X[ix];
          hi = std::max(hi, quotient_gradient(op, pt, pb));
        }
      if (analytic) {
        // probing only ever underestimates the Lipschitz coefficient, so the
        // cross-check records exceedance alone
        double exact = *analytic_gamma(op, pts[i]);
        probe_vs_analytic = std::max(probe_vs_analytic, std::max(0.0, hi - exact));
        gamma_tbl[i] = exact;
      } else {
        gamma_tbl[i] = hi;
      }
    }
    std::vector<double> shell_max(nshells, 0.0);
    double interior_max = 0.0;
    for (size_t i = 0; i < npts; ++i) {
      if (shell_of[i] < 0)
        interior_max = std::max(interior_max, gamma_tbl[i]);
      else
        shell_max[shell_of[i]] = std::max(shell_max[shell_of[i]], gamma_tbl[i]);
    }
    rep.gamma_bound = std::max(interior_max, *std::max_element(shell_max.begin(), shell_max.end()));
    double Gamma = 0.0;
    bool finite = true;
    size_t bad_idx = 0;
    for (size_t i = 0; i < npts; ++i) {
      if (gamma_tbl[i] <= 0.0) continue;
      if (lambda_star[i] <= kLambdaFloor) {
        finite = false;
        bad_idx = i;
        break;
      }
      Gamma = std::max(Gamma, gamma_tbl[i] / lambda_star[i]);
    }
    rep.Gamma = finite ? Gamma : std::numeric_limits<double>::infinity();
    ConditionVerdict v;
    double growth_margin = kGrowthFactor * shell_max.front() + kGrowthAbs - shell_max.back();
    v.pass = finite && growth_margin >= -tol;
    v.worst_margin = finite ? growth_margin : -std::numeric_limits<double>::infinity();
    if (!v.pass) {
      Witness w;
      w.kind = Witness::Kind::GradientQuotient;
      size_t wi = finite ? npts - 1 : bad_idx;
      w.pt.x = pts[wi];
      w.pt.s = 0.0;
      w.pt.p = plan.p_probes.front();
      w.pt.X = plan.base_X.front();
      w.p2 = Eigen::VectorXd::Zero(n);
      w.value = quotient_gradient(op, w.pt, w.p2);
      w.note = finite ? "gradient coefficient keeps growing across far shells"
                      : "gradient coefficient positive where ellipticity vanishes";
      v.witness = w;
    }
    rep.flags[Cond::GradientBound] = v;
  }

  // --- rho = sup Lambda-hat / lambda-hat --------------------------------
  {
    double rho = 0.0;
    bool finite = rep.ellipticity_dir >= 0;
    std::vector<double> shell_max(nshells, 0.0);
    for (size_t i = 0; i < npts && finite; ++i) {
      double num = std::max(Lambda_tbl[i], 0.0);
      if (num <= 0.0) continue;
      if (lambda_star[i] <= kLambdaFloor) {
        finite = false;
        break;
      }
      double r = num / lambda_star[i];
      rho = std::max(rho, r);
      if (shell_of[i] >= 0) shell_max[shell_of[i]] = std::max(shell_max[shell_of[i]], r);
    }
    if (finite && shell_max.back() > kGrowthFactor * shell_max.front() + kGrowthAbs) finite = false;
    rep.rho = finite ? rho : std::numeric_limits<double>::infinity();
    rep.rho_finite = finite;
  }

  // --- degenerate ellipticity -------------------------------------------
  {
    MinTracker mt;
    for (size_t i = 0; i < npts; ++i)
      for (const auto& D : plan.matrix_probes)
        for (size_t ix = 0; ix < n_base_X; ++ix)
          for (double t : plan.t_ladder) {
            EvalPoint pt = EvalPoint::rest(pts[i]);
            pt.X = plan.base_X[ix];
            double q = quotient_matrix(op, pt, D, t);
            if (q < mt.value) {
              Witness w;
              w.kind = Witness::Kind::MatrixQuotient;
              w.pt = pt;
              w.D = D;
              w.t = t;
              w.value = q;
              w.note = "psd increment decreased the operator value";
              mt.offer(q, w);
            }
          }
    ConditionVerdict v;
    v.worst_margin = mt.value;
    v.pass = mt.value >= -tol;
    if (!v.pass) v.witness = mt.witness;
    rep.flags[Cond::DegenerateElliptic] = v;
  }

  // --- zero normalization ------------------------------------------------
  {
    MinTracker mt;
    for (size_t i = 0; i < npts; ++i) {
      EvalPoint pt = EvalPoint::rest(pts[i]);
      double val = evaluate(op, pt);
      Witness w;
      w.kind = Witness::Kind::Value;
      w.pt = pt;
      w.value = val;
      w.note = "value at (x,0,0,O)";
      mt.offer(-std::fabs(val), w);
    }
    ConditionVerdict v;
    v.worst_margin = mt.value;
    v.pass = mt.value >= -tol;
    if (!v.pass) v.witness = mt.witness;
    rep.flags[Cond::ZeroAtRest] = v;
  }

  // --- continuity (finiteness proxy: every evaluation above returned) ----
  {
    ConditionVerdict v;
    v.pass = true;
    v.worst_margin = 0.0;
    rep.flags[Cond::Continuity] = v;
  }

  // --- monotonicity in s / one-sided bound -------------------------------
  std::vector<std::pair<double, double>> s_pairs;
  for (size_t i = 0; i < plan.s_probes.size(); ++i)
    for (size_t j = 0; j < plan.s_probes.size(); ++j)
      if (plan.s_probes[i] < plan.s_probes[j]) s_pairs.emplace_back(plan.s_probes[i], plan.s_probes[j]);

  if (!narrow) {
    MinTracker mt;
    for (size_t i = 0; i < npts; ++i)
      for (const auto& [s1, s2] : s_pairs)
        for (size_t ix = 0; ix < std::min<size_t>(2, n_base_X); ++ix)
          for (size_t ip = 0; ip < 2; ++ip) {
            EvalPoint pt;
            pt.x = pts[i];
            pt.s = s1;
            pt.p = ip == 0 ? Eigen::VectorXd::Zero(n) : plan.p_probes.front();
            pt.X = plan.base_X[ix];
            double q = quotient_order(op, pt, s2);  // (F(s2)-F(s1))/(s2-s1), must be <= 0
            if (-q < mt.value) {
              Witness w;
              w.kind = Witness::Kind::OrderQuotient;
              w.pt = pt;
              w.s2 = s2;
              w.value = q;
              w.note = "order quotient in s";
              mt.offer(-q, w);
            }
          }
    ConditionVerdict v;
    v.worst_margin = mt.value;
    v.pass = mt.value >= -tol;
    if (!v.pass) v.witness = mt.witness;
    rep.flags[Cond::MonotoneS] = v;
  } else {
    // c-hat(x) = worst order quotient; K = sup max(c-hat,0)/lambda-hat, which
    // must stay bounded across the far shells.
    std::vector<double> chat(npts, -std::numeric_limits<double>::infinity());
    for (size_t i = 0; i < npts; ++i) {
      if (analytic) {
        chat[i] = *analytic_order_coeff(op, pts[i]);
        continue;
      }
      for (const auto& [s1, s2] : s_pairs)
        for (size_t ix = 0; ix < std::min<size_t>(2, n_base_X); ++ix) {
          EvalPoint pt;
          pt.x = pts[i];
          pt.s = s1;
          pt.p = Eigen::VectorXd::Zero(n);
          pt.X = plan.base_X[ix];
          chat[i] = std::max(chat[i], quotient_order(op, pt, s2));
        }
    }
    double K = 0.0;
    bool finite = rep.ellipticity_dir >= 0;
    std::vector<double> shell_max(nshells, 0.0);
    size_t worst_i = 0;
    for (size_t i = 0; i < npts && finite; ++i) {
      double num = std::max(chat[i], 0.0);
      if (num == 0.0) continue;
      if (lambda_star[i] <= kLambdaFloor) {
        finite = false;
        worst_i = i;
        break;
      }
      double r = num / lambda_star[i];
      if (r > K) {
        K = r;
        worst_i = i;
      }
      if (shell_of[i] >= 0) shell_max[shell_of[i]] = std::max(shell_max[shell_of[i]], r);
    }
    double growth_margin = kGrowthFactor * shell_max.front() + kGrowthAbs - shell_max.back();
    if (finite && growth_margin < -tol) {
      finite = false;
      // witness: the largest ratio in the outermost shell
      for (size_t i = 0; i < npts; ++i)
        if (shell_of[i] == static_cast<int>(nshells) - 1 &&
            std::max(chat[i], 0.0) / std::max(lambda_star[i], kLambdaFloor) >=
                shell_max.back() - 1e-15)
          worst_i = i;
    }
    rep.K = finite ? K : std::numeric_limits<double>::infinity();
    rep.K_finite = finite;
    ConditionVerdict v;
    v.pass = finite;
    v.worst_margin = finite ? growth_margin : -std::numeric_limits<double>::infinity();
    if (!v.pass) {
      Witness w;
      w.kind = Witness::Kind::OrderQuotient;
      w.pt.x = pts[worst_i];
      w.pt.s = 0.0;
      w.pt.p = Eigen::VectorXd::Zero(n);
      w.pt.X = plan.base_X.front();
      w.s2 = 1.0;
      w.value = quotient_order(op, w.pt, w.s2);
      w.note = "order coefficient over ellipticity keeps growing (ratio " +
               std::to_string(std::max(chat[worst_i], 0.0) / std::max(lambda_star[worst_i], kLambdaFloor)) + ")";
      v.witness = w;
    }
    rep.flags[Cond::OneSidedS] = v;
  }

  rep.probe_vs_analytic = probe_vs_analytic;
  return rep;
}

}  // namespace

StructureReport check_structure(const OperatorSpec& op, const CylinderSpec& dom,
                                const SamplePlan& plan, double tol) {
  return check_impl(op, dom, plan, tol, false);
}

StructureReport check_narrow_mode(const OperatorSpec& op, const CylinderSpec& dom,
                                  const SamplePlan& plan, double tol) {
  return check_impl(op, dom, plan, tol, true);
}

}  // namespace mplab
