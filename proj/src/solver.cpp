#include "mplab/solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mplab/analytic.hpp"
#include "mplab/errors.hpp"
#include "mplab/numeric.hpp"

namespace mplab {

// ---------------------------------------------------------------------------
// Grid
// ---------------------------------------------------------------------------

namespace {

std::int64_t snap_index(double value, double h, const char* what) {
  double q = value / h;
  std::int64_t idx = static_cast<std::int64_t>(std::llround(q));
  if (std::fabs(q - static_cast<double>(idx)) > 1e-6)
    fail(Errc::BadParams, std::string(what) + " at " + std::to_string(value) +
                              " does not align with grid spacing " + std::to_string(h));
  return idx;
}

}  // namespace

std::int64_t Grid::flat_of(const std::vector<std::int64_t>& idx) const {
  std::int64_t flat = 0;
  for (int a = 0; a < n_; ++a) {
    if (idx[a] < lo_[a] || idx[a] > hi_[a]) return -1;
    flat = flat * (hi_[a] - lo_[a] + 1) + (idx[a] - lo_[a]);
  }
  return flat;
}

bool Grid::in_box(const IndexBox& b, const std::vector<std::int64_t>& idx) const {
  for (int a = 0; a < n_; ++a)
    if (idx[a] < b.lo[a] || idx[a] > b.hi[a]) return false;
  return true;
}

void Grid::build(double /*target_h*/) {
  lo_.assign(n_, std::numeric_limits<std::int64_t>::max());
  hi_.assign(n_, std::numeric_limits<std::int64_t>::min());
  for (const auto& b : boxes_)
    for (int a = 0; a < n_; ++a) {
      lo_[a] = std::min(lo_[a], b.lo[a]);
      hi_[a] = std::max(hi_[a], b.hi[a]);
    }
  std::int64_t total = 1;
  for (int a = 0; a < n_; ++a) total *= hi_[a] - lo_[a] + 1;
  if (total > 50'000'000) fail(Errc::BadParams, "grid bounding box too large: " + std::to_string(total));

  id_of_.assign(total, -1);
  std::vector<std::int64_t> idx(n_);
  auto advance = [&]() {
    for (int a = n_ - 1; a >= 0; --a) {
      if (++idx[a] <= hi_[a]) return true;
      idx[a] = lo_[a];
    }
    return false;
  };

  // first pass: keep nodes contained in some box
  for (int a = 0; a < n_; ++a) idx[a] = lo_[a];
  std::int64_t next_id = 0;
  do {
    bool kept = false;
    for (const auto& b : boxes_)
      if (in_box(b, idx)) {
        kept = true;
        break;
      }
    if (kept) {
      id_of_[flat_of(idx)] = next_id++;
      for (int a = 0; a < n_; ++a) multi_.push_back(idx[a]);
    }
  } while (advance());

  // second pass: classification by axis-neighbor visibility
  cls_.assign(next_id, NodeClass::Interior);
  interior_count_ = 0;
  for (std::int64_t id = 0; id < next_id; ++id) {
    std::vector<std::int64_t> my(multi_.begin() + id * n_, multi_.begin() + (id + 1) * n_);
    bool physical = false, artificial = false;
    for (int a = 0; a < n_; ++a)
      for (int dir = -1; dir <= 1; dir += 2) {
        std::vector<std::int64_t> nb = my;
        nb[a] += dir;
        std::int64_t flat = flat_of(nb);
        bool present = flat >= 0 && id_of_[flat] >= 0;
        if (present) continue;
        bool phys_face = false;
        for (const auto& b : boxes_) {
          if (!in_box(b, my) || !b.bounded[a]) continue;
          if ((dir < 0 && my[a] == b.lo[a]) || (dir > 0 && my[a] == b.hi[a])) {
            phys_face = true;
            break;
          }
        }
        (phys_face ? physical : artificial) = true;
      }
    if (physical)
      cls_[id] = NodeClass::Physical;
    else if (artificial)
      cls_[id] = NodeClass::Artificial;
    else
      ++interior_count_;
  }
}

Grid Grid::make(const CylinderSpec& dom, double target_h, double truncation_R) {
  if (!(target_h > 0.0) || !(truncation_R > 0.0)) fail(Errc::BadParams, "grid needs h, R > 0");
  Grid g;
  g.n_ = dom.n();
  g.frame_ = dom.frame();
  g.h_.assign(g.n_, target_h);
  g.origin_.assign(g.n_, 0.0);
  IndexBox box;
  box.lo.assign(g.n_, 0);
  box.hi.assign(g.n_, 0);
  box.bounded.assign(g.n_, false);
  const int k = dom.k();
  for (int a = 0; a < g.n_; ++a) {
    if (a < k) {
      std::int64_t m = std::max<std::int64_t>(2, std::llround(dom.widths[a] / target_h));
      g.h_[a] = dom.widths[a] / static_cast<double>(m);
      g.origin_[a] = dom.offsets[a];
      box.lo[a] = 0;
      box.hi[a] = m;
      box.bounded[a] = true;
    } else {
      std::int64_t J = std::max<std::int64_t>(1, std::llround(truncation_R / target_h));
      box.lo[a] = -J;
      box.hi[a] = J;
    }
  }
  g.R_ = truncation_R;
  g.boxes_.push_back(box);
  g.build(target_h);
  return g;
}

Grid Grid::make(const LatticeSpec& dom, double target_h, double truncation_R) {
  if (!(target_h > 0.0) || !(truncation_R > 0.0)) fail(Errc::BadParams, "grid needs h, R > 0");
  const int n = dom.n();
  Grid g;
  g.n_ = n;
  g.frame_ = Eigen::MatrixXd::Identity(n, n);
  g.h_.assign(n, target_h);
  g.origin_.assign(n, 0.0);
  g.R_ = truncation_R;

  // member directions must be +-coordinate axes so the boxes share the grid
  std::vector<std::vector<int>> bounded_axis_of(dom.cylinders.size());
  for (size_t m = 0; m < dom.cylinders.size(); ++m) {
    const auto& c = dom.cylinders[m];
    for (int hdx = 0; hdx < c.k(); ++hdx) {
      Eigen::VectorXd nu = c.dirs.row(hdx).transpose();
      int axis = -1;
      for (int a = 0; a < n; ++a)
        if (std::fabs(std::fabs(nu[a]) - 1.0) < 1e-12) axis = a;
      if (axis < 0 || nu.cwiseAbs().sum() > 1.0 + 1e-9)
        fail(Errc::BadParams, "lattice grids need axis-aligned member frames");
      bounded_axis_of[m].push_back(axis);
    }
  }

  // spacing per axis from the first member bounding it
  for (int a = 0; a < n; ++a) {
    for (size_t m = 0; m < dom.cylinders.size(); ++m) {
      const auto& c = dom.cylinders[m];
      for (int hdx = 0; hdx < c.k(); ++hdx) {
        if (bounded_axis_of[m][hdx] != a) continue;
        std::int64_t steps = std::max<std::int64_t>(2, std::llround(c.widths[hdx] / target_h));
        g.h_[a] = c.widths[hdx] / static_cast<double>(steps);
        goto next_axis;
      }
    }
  next_axis:;
  }

  for (size_t m = 0; m < dom.cylinders.size(); ++m) {
    const auto& c = dom.cylinders[m];
    IndexBox box;
    box.lo.assign(n, 0);
    box.hi.assign(n, 0);
    box.bounded.assign(n, false);
    for (int a = 0; a < n; ++a) {
      std::int64_t J = std::max<std::int64_t>(1, std::llround(truncation_R / g.h_[a]));
      box.lo[a] = -J;
      box.hi[a] = J;
    }
    for (int hdx = 0; hdx < c.k(); ++hdx) {
      int a = bounded_axis_of[m][hdx];
      box.bounded[a] = true;
      box.lo[a] = snap_index(c.offsets[hdx], g.h_[a], "member slab offset");
      box.hi[a] = snap_index(c.offsets[hdx] + c.widths[hdx], g.h_[a], "member slab end");
    }
    g.boxes_.push_back(box);
  }
  g.build(target_h);
  return g;
}

Grid Grid::make(const DomainSpec& dom, double target_h, double truncation_R) {
  if (const auto* c = std::get_if<CylinderSpec>(&dom)) return make(*c, target_h, truncation_R);
  return make(std::get<LatticeSpec>(dom), target_h, truncation_R);
}

Eigen::VectorXd Grid::point(std::int64_t id) const {
  Eigen::VectorXd y(n_);
  for (int a = 0; a < n_; ++a)
    y[a] = origin_[a] + static_cast<double>(multi_[id * n_ + a]) * h_[a];
  return frame_.transpose() * y;
}

std::int64_t Grid::multi_index(std::int64_t id, int axis) const { return multi_[id * n_ + axis]; }

std::int64_t Grid::neighbor(std::int64_t id, int axis, int dir) const {
  std::vector<std::int64_t> idx(multi_.begin() + id * n_, multi_.begin() + (id + 1) * n_);
  idx[axis] += dir;
  std::int64_t flat = flat_of(idx);
  return flat < 0 ? -1 : id_of_[flat];
}

int Grid::color(std::int64_t id) const {
  std::int64_t s = 0;
  for (int a = 0; a < n_; ++a) s += multi_[id * n_ + a];
  return static_cast<int>(((s % 2) + 2) % 2);
}

// ---------------------------------------------------------------------------
// Field
// ---------------------------------------------------------------------------

double Field::max_value() const { return *std::max_element(values.begin(), values.end()); }
double Field::min_value() const { return *std::min_element(values.begin(), values.end()); }
std::int64_t Field::argmax() const {
  return static_cast<std::int64_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

Field field_from_function(const Grid& g, const std::function<double(const Eigen::VectorXd&)>& fn) {
  Field f;
  f.grid = &g;
  f.values.resize(g.node_count());
  for (std::int64_t id = 0; id < g.node_count(); ++id) f.values[id] = fn(g.point(id));
  return f;
}

void write_csv(const Field& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::ConfigError, "cannot open '" + path + "' for writing");
  const int n = f.grid->dim();
  for (int a = 0; a < n; ++a) out << "x" << a + 1 << ",";
  out << "value\n";
  out.precision(17);
  for (std::int64_t id = 0; id < f.grid->node_count(); ++id) {
    Eigen::VectorXd x = f.grid->point(id);
    for (int a = 0; a < n; ++a) out << x[a] << ",";
    out << f.values[id] << "\n";
  }
}

// ---------------------------------------------------------------------------
// Discretization
// ---------------------------------------------------------------------------

double DiscreteOperator::apply_member(int member, const Field& u, std::int64_t id) const {
  const int n = grid->dim();
  const StencilFamily& st = members[member];
  double acc = (st.center[id] + st.czero[id]) * u.values[id];
  for (int a = 0; a < n; ++a) {
    double wl = st.lo_w[id * n + a], wh = st.hi_w[id * n + a];
    if (wl != 0.0) acc += wl * u.values[grid->neighbor(id, a, -1)];
    if (wh != 0.0) acc += wh * u.values[grid->neighbor(id, a, +1)];
  }
  return acc;
}

double DiscreteOperator::apply(const Field& u, std::int64_t id) const {
  double outer = -std::numeric_limits<double>::infinity();
  for (int ia = 0; ia < n_alpha; ++ia) {
    double inner = std::numeric_limits<double>::infinity();
    for (int ib = 0; ib < n_beta; ++ib)
      inner = std::min(inner, apply_member(ia * n_beta + ib, u, id));
    outer = std::max(outer, inner);
  }
  return outer;
}

namespace {

// Fills one stencil family from frame-transformed coefficients at a node.
void fill_node(StencilFamily& st, const Grid& grid, std::int64_t id, const Eigen::MatrixXd& At,
               const Eigen::VectorXd& bt, double c) {
  const int n = grid.dim();
  double diag_scale = std::max(1.0, At.diagonal().cwiseAbs().maxCoeff());
  for (int a = 0; a < n; ++a)
    for (int b2 = 0; b2 < n; ++b2)
      if (a != b2 && std::fabs(At(a, b2)) > 1e-10 * diag_scale) {
        std::ostringstream msg;
        msg << "cross-derivative coefficient A(" << a + 1 << "," << b2 + 1 << ")=" << At(a, b2)
            << " at node " << id;
        fail(Errc::NonMonotoneStencil, msg.str());
      }
  double center = 0.0;
  for (int a = 0; a < n; ++a) {
    double Aa = At(a, a);
    if (Aa < -1e-12)
      fail(Errc::NonMonotoneStencil, "negative diffusion coefficient " + std::to_string(Aa) +
                                         " on axis " + std::to_string(a + 1) + " at node " + std::to_string(id));
    Aa = std::max(Aa, 0.0);
    const double h = grid.spacing()[a];
    double wl = Aa / (h * h), wh = Aa / (h * h);
    center -= 2.0 * Aa / (h * h);
    double ba = bt[a];
    if (ba > 0.0) {
      wh += ba / h;
      center -= ba / h;
    } else if (ba < 0.0) {
      wl += -ba / h;
      center -= -ba / h;
    }
    st.lo_w[id * n + a] = wl;
    st.hi_w[id * n + a] = wh;
  }
  st.center[id] = center;
  st.czero[id] = c;
}

}  // namespace

DiscreteOperator discretize(const OperatorSpec& op, const Grid& grid) {
  if (op.dim() != grid.dim()) fail(Errc::DimensionMismatch, "operator/grid dimension mismatch");
  if (op.callable()) fail(Errc::BadParams, "only linear and sup-inf operators are discretized");

  const int n = grid.dim();
  const std::int64_t nodes = grid.node_count();
  const Eigen::MatrixXd& B = grid.frame();

  DiscreteOperator disc;
  disc.grid = &grid;

  auto fresh = [&]() {
    StencilFamily st;
    st.lo_w.assign(nodes * n, 0.0);
    st.hi_w.assign(nodes * n, 0.0);
    st.center.assign(nodes, 0.0);
    st.czero.assign(nodes, 0.0);
    return st;
  };

  if (const auto* lin = op.linear()) {
    StencilFamily st = fresh();
    for (std::int64_t id = 0; id < nodes; ++id) {
      if (grid.node_class(id) != NodeClass::Interior) continue;
      Eigen::VectorXd x = grid.point(id);
      Eigen::MatrixXd At = B * lin->A_at(x) * B.transpose();
      Eigen::VectorXd bt = B * lin->b_at(x);
      fill_node(st, grid, id, At, bt, lin->c_at(x));
    }
    disc.members.push_back(std::move(st));
  } else {
    const auto* si = op.supinf();
    disc.n_alpha = static_cast<int>(si->families.size());
    disc.n_beta = static_cast<int>(si->families.front().size());
    for (const auto& row : si->families)
      if (static_cast<int>(row.size()) != disc.n_beta)
        fail(Errc::BadParams, "sup-inf family rows must have equal length");
    for (int ia = 0; ia < disc.n_alpha; ++ia)
      for (int ib = 0; ib < disc.n_beta; ++ib) {
        const ConstLinear& mem = si->families[ia][ib];
        Eigen::MatrixXd At = B * mem.A * B.transpose();
        Eigen::VectorXd bt = B * mem.b;
        StencilFamily st = fresh();
        for (std::int64_t id = 0; id < nodes; ++id) {
          if (grid.node_class(id) != NodeClass::Interior) continue;
          fill_node(st, grid, id, At, bt, mem.c);
        }
        disc.members.push_back(std::move(st));
      }
  }

  for (const auto& st : disc.members)
    for (std::int64_t id = 0; id < nodes; ++id)
      if (grid.node_class(id) == NodeClass::Interior && st.center[id] + st.czero[id] >= 0.0)
        disc.strict_dominance = false;
  return disc;
}

Field discrete_residual(const DiscreteOperator& disc, const Field& u, const Field& f) {
  Field r;
  r.grid = u.grid;
  r.values.assign(u.values.size(), 0.0);
  for (std::int64_t id = 0; id < u.grid->node_count(); ++id)
    if (u.grid->node_class(id) == NodeClass::Interior)
      r.values[id] = f.values[id] - disc.apply(u, id);
  return r;
}

// ---------------------------------------------------------------------------
// Linear solves
// ---------------------------------------------------------------------------

namespace {

struct Unknowns {
  std::vector<std::int64_t> node_of;           // unknown -> node
  std::vector<std::int64_t> unknown_of;        // node -> unknown or -1
};

Unknowns number_unknowns(const Grid& grid) {
  Unknowns u;
  u.unknown_of.assign(grid.node_count(), -1);
  for (std::int64_t id = 0; id < grid.node_count(); ++id)
    if (grid.node_class(id) == NodeClass::Interior) {
      u.unknown_of[id] = static_cast<std::int64_t>(u.node_of.size());
      u.node_of.push_back(id);
    }
  return u;
}

// Solves the member-per-node linear system with boundary values of `u` fixed.
void direct_solve(const DiscreteOperator& disc, const std::vector<int>& member_of,
                  const Field& f, Field& u, const Unknowns& idx) {
  const Grid& grid = *disc.grid;
  const int n = grid.dim();
  const std::int64_t m = static_cast<std::int64_t>(idx.node_of.size());

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(m * (2 * n + 1));
  Eigen::VectorXd rhs(m);
  for (std::int64_t row = 0; row < m; ++row) {
    std::int64_t id = idx.node_of[row];
    const StencilFamily& st = disc.members[member_of[id]];
    trips.emplace_back(row, row, st.center[id] + st.czero[id]);
    double r = f.values[id];
    for (int a = 0; a < n; ++a)
      for (int dir = -1; dir <= 1; dir += 2) {
        double w = dir < 0 ? st.lo_w[id * n + a] : st.hi_w[id * n + a];
        if (w == 0.0) continue;
        std::int64_t nb = grid.neighbor(id, a, dir);
        std::int64_t col = idx.unknown_of[nb];
        if (col >= 0)
          trips.emplace_back(row, col, w);
        else
          r -= w * u.values[nb];
      }
    rhs[row] = r;
  }

  Eigen::SparseMatrix<double> A(m, m);
  A.setFromTriplets(trips.begin(), trips.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success)
    fail(Errc::NoConvergence, "sparse factorization failed (singular discrete system)");
  Eigen::VectorXd sol = lu.solve(rhs);
  for (std::int64_t row = 0; row < m; ++row) u.values[idx.node_of[row]] = sol[row];
}

double interior_residual(const DiscreteOperator& disc, const Field& u, const Field& f) {
  double r = 0.0;
  for (std::int64_t id = 0; id < disc.grid->node_count(); ++id)
    if (disc.grid->node_class(id) == NodeClass::Interior)
      r = std::max(r, std::fabs(f.values[id] - disc.apply(u, id)));
  return r;
}

void sweep_solve(const DiscreteOperator& disc, const Field& f, Field& u, const SolveOptions& opt,
                 SolveReport& rep) {
  const Grid& grid = *disc.grid;
  const int n = grid.dim();
  const StencilFamily& st = disc.members.front();

  std::vector<std::vector<std::int64_t>> colors(2);
  for (std::int64_t id = 0; id < grid.node_count(); ++id)
    if (grid.node_class(id) == NodeClass::Interior) {
      if (st.center[id] + st.czero[id] >= -1e-300)
        fail(Errc::NoConvergence, "vanishing diagonal at node " + std::to_string(id) + "; sweeps cannot proceed");
      colors[grid.color(id)].push_back(id);
    }

  // neighbor ids cached per interior node
  std::vector<std::int64_t> nb(grid.node_count() * n * 2, -1);
  for (const auto& cl : colors)
    for (std::int64_t id : cl)
      for (int a = 0; a < n; ++a) {
        nb[(id * n + a) * 2] = grid.neighbor(id, a, -1);
        nb[(id * n + a) * 2 + 1] = grid.neighbor(id, a, +1);
      }

  double omega = opt.damping;
  double best = std::numeric_limits<double>::infinity();
  std::int64_t since_best = 0;
  for (std::int64_t sweep = 1; sweep <= opt.max_sweeps; ++sweep) {
    for (const auto& cl : colors) {
      parallel_for(static_cast<std::int64_t>(cl.size()), [&](std::int64_t i) {
        std::int64_t id = cl[i];
        double diag = st.center[id] + st.czero[id];
        double acc = f.values[id];
        for (int a = 0; a < n; ++a) {
          double wl = st.lo_w[id * n + a], wh = st.hi_w[id * n + a];
          if (wl != 0.0) acc -= wl * u.values[nb[(id * n + a) * 2]];
          if (wh != 0.0) acc -= wh * u.values[nb[(id * n + a) * 2 + 1]];
        }
        double gs = acc / diag;
        u.values[id] = (1.0 - omega) * u.values[id] + omega * gs;
      });
    }
    double res = interior_residual(disc, u, f);
    rep.iterations = sweep;
    rep.residual = res;
    if (res <= opt.tol) {
      rep.converged = true;
      return;
    }
    if (res < best * 0.999) {
      best = res;
      since_best = 0;
    } else if (++since_best >= 100) {
      omega = std::max(0.125, omega * 0.5);  // residual stall
      since_best = 0;
    }
  }
  fail(Errc::NoConvergence, "sweeps hit the cap " + std::to_string(opt.max_sweeps) +
                                " with residual " + std::to_string(rep.residual));
}

void finalize_report(const Grid& grid, const Field& u, SolveReport& rep) {
  rep.max_value = -std::numeric_limits<double>::infinity();
  rep.boundary_max = -std::numeric_limits<double>::infinity();
  for (std::int64_t id = 0; id < grid.node_count(); ++id) {
    if (u.values[id] > rep.max_value) {
      rep.max_value = u.values[id];
      rep.argmax_node = id;
    }
    if (grid.node_class(id) != NodeClass::Interior)
      rep.boundary_max = std::max(rep.boundary_max, u.values[id]);
  }
  if (rep.argmax_node >= 0) rep.argmax_point = grid.point(rep.argmax_node);
}

}  // namespace

std::string SolveReport::summary() const {
  std::ostringstream out;
  out << "solve[" << method << "] iters=" << iterations << " residual=" << residual
      << (converged ? "" : " (NOT converged)") << " max=" << max_value
      << " boundary_max=" << boundary_max;
  if (policy_iterations) out << " policy_iters=" << policy_iterations << " switches=" << policy_switches;
  return out.str();
}

std::pair<Field, SolveReport> solve_dirichlet(const OperatorSpec& op, const Grid& grid,
                                              const SourceData& f, const BoundaryData& g,
                                              const SolveOptions& opt) {
  DiscreteOperator disc = discretize(op, grid);
  Unknowns idx = number_unknowns(grid);

  Field u;
  u.grid = &grid;
  u.values.assign(grid.node_count(), 0.0);
  Field rhs = u;
  for (std::int64_t id = 0; id < grid.node_count(); ++id) {
    NodeClass c = grid.node_class(id);
    if (c == NodeClass::Interior)
      rhs.values[id] = f ? f(grid.point(id)) : 0.0;
    else
      u.values[id] = g ? g(grid.point(id), c) : 0.0;
  }

  SolveReport rep;
  const bool supinf = disc.n_alpha * disc.n_beta > 1;
  if (!supinf) {
    bool direct = opt.method == SolveOptions::Method::Direct ||
                  (opt.method == SolveOptions::Method::Auto &&
                   static_cast<std::int64_t>(idx.node_of.size()) <= opt.direct_limit);
    if (direct) {
      rep.method = "direct";
      std::vector<int> member_of(grid.node_count(), 0);
      direct_solve(disc, member_of, rhs, u, idx);
      rep.iterations = 1;
      rep.residual = interior_residual(disc, u, rhs);
      rep.converged = true;
    } else {
      rep.method = "sweeps";
      sweep_solve(disc, rhs, u, opt, rep);
    }
  } else {
    rep.method = "policy-iteration";
    std::vector<int> member_of(grid.node_count(), 0);

    auto pick_policy = [&](std::int64_t id) {
      int best_a = 0;
      double best_val = -std::numeric_limits<double>::infinity();
      for (int ia = 0; ia < disc.n_alpha; ++ia) {
        double inner = std::numeric_limits<double>::infinity();
        for (int ib = 0; ib < disc.n_beta; ++ib)
          inner = std::min(inner, disc.apply_member(ia * disc.n_beta + ib, u, id));
        if (inner > best_val) {
          best_val = inner;
          best_a = ia;
        }
      }
      int best_b = 0;
      double inner_best = std::numeric_limits<double>::infinity();
      for (int ib = 0; ib < disc.n_beta; ++ib) {
        double v = disc.apply_member(best_a * disc.n_beta + ib, u, id);
        if (v < inner_best) {
          inner_best = v;
          best_b = ib;
        }
      }
      return best_a * disc.n_beta + best_b;
    };

    bool done = false;
    for (int it = 1; it <= opt.max_policy_iters; ++it) {
      direct_solve(disc, member_of, rhs, u, idx);
      double res = interior_residual(disc, u, rhs);
      rep.policy_residuals.push_back(res);
      rep.policy_iterations = it;
      rep.iterations = it;

      int switches = 0;
      for (std::int64_t row = 0; row < static_cast<std::int64_t>(idx.node_of.size()); ++row) {
        std::int64_t id = idx.node_of[row];
        int pol = pick_policy(id);
        if (pol != member_of[id]) {
          ++switches;
          member_of[id] = pol;
        }
      }
      rep.policy_switches += switches;
      rep.residual = res;
      if (switches == 0 && res <= opt.tol) {
        rep.converged = true;
        done = true;
        break;
      }
      if (switches == 0)
        fail(Errc::NoConvergence, "policy stabilized above tolerance: residual " + std::to_string(res));
    }
    if (!done)
      fail(Errc::NoConvergence, "policy iteration hit the cap " + std::to_string(opt.max_policy_iters));
  }

  finalize_report(grid, u, rep);
  return {std::move(u), std::move(rep)};
}

// ---------------------------------------------------------------------------
// Scenarios
// ---------------------------------------------------------------------------

MPCheckResult empirical_mp_check(const OperatorSpec& op, const DomainSpec& dom,
                                 const MPScenario& sc) {
  Grid grid = Grid::make(dom, sc.h, sc.R);
  auto [u, rep] = solve_dirichlet(op, grid, sc.f, sc.g, sc.solve);
  MPCheckResult r;
  r.report = rep;
  r.tolerance = sc.tolerance;
  r.verdict = rep.max_value <= sc.tolerance;
  return r;
}

GrowthStudy mp_violation_study(const std::string& preset_name, const std::vector<double>& radii,
                               double h, const SolveOptions& opt) {
  Preset pre = preset(preset_name);
  if (pre.counterexample_fn.empty())
    fail(Errc::UnknownCounterexample, "preset '" + preset_name + "' has no registered positive solution");
  SmoothFnPtr fn = analytic_function(pre.counterexample_fn);

  GrowthStudy study;
  for (double R : radii) {
    Grid grid = Grid::make(pre.domain, h, R);
    auto [u, rep] = solve_dirichlet(
        pre.op, grid, [](const Eigen::VectorXd&) { return 0.0; },
        [&](const Eigen::VectorXd& x, NodeClass) { return fn->value(x); }, opt);
    double inner_max = -std::numeric_limits<double>::infinity();
    for (std::int64_t id = 0; id < grid.node_count(); ++id)
      if (grid.node_class(id) == NodeClass::Interior)
        inner_max = std::max(inner_max, u.values[id]);
    study.radii.push_back(R);
    study.interior_max.push_back(inner_max);
  }
  return study;
}

LatticeScenarioResult lattice_mp_scenario(const LatticeSpec& lattice, const OperatorSpec& op,
                                          const LatticeOptions& opt) {
  LatticeScenarioResult res;
  Grid grid = Grid::make(lattice, opt.h, opt.R);
  const int n = grid.dim();

  // hypothesis: uniform ellipticity on the node region (all axes)
  double min_node_diag = std::numeric_limits<double>::infinity();
  for (std::int64_t id = 0; id < grid.node_count(); ++id) {
    std::vector<std::int64_t> idx(n);
    for (int a = 0; a < n; ++a) idx[a] = grid.multi_index(id, a);
    int members = 0;
    for (const auto& b : grid.boxes())
      if (grid.in_box(b, idx)) ++members;
    if (members < 2) continue;
    Eigen::VectorXd x = grid.point(id);
    if (const auto* lin = op.linear()) {
      min_node_diag = std::min(min_node_diag, lin->A_at(x).diagonal().minCoeff());
    } else if (const auto* si = op.supinf()) {
      for (const auto& row : si->families)
        for (const auto& mem : row)
          min_node_diag = std::min(min_node_diag, mem.A.diagonal().minCoeff());
    } else {
      min_node_diag = 0.0;  // callables carry no coefficient certificate
    }
  }
  if (!(min_node_diag > 0.0)) {
    res.in_hypotheses = false;
    res.hypothesis_note =
        "OUT OF HYPOTHESES: operator is not uniformly elliptic on the node region (min diagonal " +
        std::to_string(min_node_diag) + "); no verdict";
    return res;
  }

  BoundaryData g = opt.g ? opt.g : [](const Eigen::VectorXd&, NodeClass c) {
    return c == NodeClass::Artificial ? -1.0 : 0.0;
  };
  auto [u, rep] = solve_dirichlet(op, grid, opt.f, g, opt.solve);
  res.report = rep;
  res.boundary_max = rep.boundary_max;
  res.global_max = rep.max_value;
  res.mp_verdict = res.global_max <= res.boundary_max + opt.tolerance;
  res.grid_h = *std::max_element(grid.spacing().begin(), grid.spacing().end());

  // node region: argmax over the overlap nodes, checked against its rim
  // (ties that include a rim node count as localized)
  {
    std::vector<std::int64_t> nr_lo(n, std::numeric_limits<std::int64_t>::max());
    std::vector<std::int64_t> nr_hi(n, std::numeric_limits<std::int64_t>::min());
    std::vector<std::int64_t> nr_nodes;
    for (std::int64_t id = 0; id < grid.node_count(); ++id) {
      std::vector<std::int64_t> idx(n);
      for (int a = 0; a < n; ++a) idx[a] = grid.multi_index(id, a);
      int members = 0;
      for (const auto& b : grid.boxes())
        if (grid.in_box(b, idx)) ++members;
      if (members < 2) continue;
      nr_nodes.push_back(id);
      for (int a = 0; a < n; ++a) {
        nr_lo[a] = std::min(nr_lo[a], idx[a]);
        nr_hi[a] = std::max(nr_hi[a], idx[a]);
      }
    }
    double best = -std::numeric_limits<double>::infinity();
    std::int64_t best_id = -1;
    bool best_on_rim = false;
    for (std::int64_t id : nr_nodes) {
      bool on_rim = false;
      for (int a = 0; a < n; ++a) {
        std::int64_t pos = grid.multi_index(id, a);
        if (pos == nr_lo[a] || pos == nr_hi[a]) on_rim = true;
      }
      double v = u.values[id];
      if (v > best || (v == best && on_rim && !best_on_rim)) {
        best = v;
        best_id = id;
        best_on_rim = on_rim;
      }
    }
    if (best_id >= 0) {
      res.node_region_max = best;
      res.node_region_argmax = grid.point(best_id);
      res.node_region_argmax_on_rim = best_on_rim;
    }
  }

  // node-region index span per member, along its unbounded axis
  const auto& boxes = grid.boxes();
  for (size_t mi = 0; mi < boxes.size(); ++mi) {
    int ua = -1;
    for (int a = 0; a < n; ++a)
      if (!boxes[mi].bounded[a]) ua = a;
    std::int64_t nr_lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t nr_hi = std::numeric_limits<std::int64_t>::min();
    for (std::int64_t id = 0; id < grid.node_count(); ++id) {
      std::vector<std::int64_t> idx(n);
      for (int a = 0; a < n; ++a) idx[a] = grid.multi_index(id, a);
      if (!grid.in_box(boxes[mi], idx)) continue;
      int members = 0;
      for (const auto& b : boxes)
        if (grid.in_box(b, idx)) ++members;
      if (members >= 2) {
        nr_lo = std::min(nr_lo, idx[ua]);
        nr_hi = std::max(nr_hi, idx[ua]);
      }
    }
    if (nr_lo > nr_hi) continue;

    for (int side = -1; side <= 1; side += 2) {
      HalfStripReport hs;
      hs.member = static_cast<int>(mi);
      hs.side = side;
      double best_val = -std::numeric_limits<double>::infinity();
      double best_dist = std::numeric_limits<double>::infinity();
      for (std::int64_t id = 0; id < grid.node_count(); ++id) {
        std::vector<std::int64_t> idx(n);
        for (int a = 0; a < n; ++a) idx[a] = grid.multi_index(id, a);
        if (!grid.in_box(boxes[mi], idx)) continue;
        std::int64_t pos = idx[ua];
        if (side < 0 ? pos > nr_lo : pos < nr_hi) continue;  // keep the outer half
        std::int64_t steps = side < 0 ? nr_lo - pos : pos - nr_hi;
        double dist = static_cast<double>(steps) * grid.spacing()[ua];
        double v = u.values[id];
        if (v > best_val || (v == best_val && dist < best_dist)) {
          best_val = v;
          best_dist = dist;
          hs.argmax_node = id;
        }
      }
      if (hs.argmax_node < 0) continue;
      hs.max_value = best_val;
      hs.dist_to_node_region = best_dist;
      hs.argmax_point = grid.point(hs.argmax_node);
      res.half_strips.push_back(hs);
    }
  }
  res.localization_verdict = true;
  for (const auto& hs : res.half_strips)
    if (hs.dist_to_node_region > res.grid_h * (1.0 + 1e-9)) res.localization_verdict = false;
  return res;
}

}  // namespace mplab
