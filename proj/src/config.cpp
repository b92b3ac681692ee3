#include "mplab/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mplab/analytic.hpp"
#include "mplab/errors.hpp"
#include "mplab/numeric.hpp"

namespace mplab {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) fail(Errc::ConfigError, where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      fail(Errc::ConfigError, "unknown key '" + it.key() + "' in " + where);
}

CylinderSpec parse_cylinder(const json& j) {
  check_keys(j, {"dim", "dirs", "offsets", "widths"}, "domain");
  int n = j.at("dim").get<int>();
  std::vector<Eigen::VectorXd> dirs;
  for (const auto& row : j.at("dirs")) {
    Eigen::VectorXd v(n);
    if (static_cast<int>(row.size()) != n) fail(Errc::ConfigError, "direction length mismatch");
    for (int i = 0; i < n; ++i) v[i] = row.at(i).get<double>();
    dirs.push_back(v);
  }
  return make_cylinder(n, dirs, j.at("offsets").get<std::vector<double>>(),
                       j.at("widths").get<std::vector<double>>());
}

Expr parse_field_expr(const json& j, const std::string& where) {
  if (j.is_number()) return Expr::constant(j.get<double>());
  if (j.is_string()) return Expr::parse(j.get<std::string>());
  fail(Errc::ConfigError, where + " must be a number or an expression string");
}

OperatorSpec parse_operator(const json& j, DomainSpec* preset_domain, bool* domain_from_preset) {
  check_keys(j, {"preset", "linear", "supinf"}, "operator");
  if (j.contains("preset")) {
    Preset p = preset(j.at("preset").get<std::string>());
    if (preset_domain) *preset_domain = p.domain;
    if (domain_from_preset) *domain_from_preset = true;
    return p.op;
  }
  if (j.contains("linear")) {
    const json& l = j.at("linear");
    check_keys(l, {"dim", "A", "diag", "b", "c"}, "operator.linear");
    int n = l.at("dim").get<int>();
    LinearOperator lin;
    lin.dim = n;
    lin.A.assign(n, std::vector<Expr>(n, Expr::constant(0.0)));
    if (l.contains("diag")) {
      const auto& d = l.at("diag");
      if (static_cast<int>(d.size()) != n) fail(Errc::ConfigError, "diag length mismatch");
      for (int i = 0; i < n; ++i) lin.A[i][i] = parse_field_expr(d.at(i), "diag entry");
    } else {
      const auto& A = l.at("A");
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) lin.A[i][k] = parse_field_expr(A.at(i).at(k), "A entry");
    }
    lin.b.assign(n, Expr::constant(0.0));
    if (l.contains("b"))
      for (int i = 0; i < n; ++i) lin.b[i] = parse_field_expr(l.at("b").at(i), "b entry");
    lin.c = l.contains("c") ? parse_field_expr(l.at("c"), "c") : Expr::constant(0.0);
    OperatorSpec op;
    op.v = lin;
    op.name = "inline_linear";
    return op;
  }
  if (j.contains("supinf")) {
    const json& s = j.at("supinf");
    check_keys(s, {"dim", "families"}, "operator.supinf");
    int n = s.at("dim").get<int>();
    SupInfOperator si;
    si.dim = n;
    for (const auto& row : s.at("families")) {
      std::vector<ConstLinear> members;
      for (const auto& m : row) {
        check_keys(m, {"A", "b", "c"}, "supinf member");
        ConstLinear cl;
        cl.A.resize(n, n);
        for (int i = 0; i < n; ++i)
          for (int k = 0; k < n; ++k) cl.A(i, k) = m.at("A").at(i).at(k).get<double>();
        cl.b = Eigen::VectorXd::Zero(n);
        if (m.contains("b"))
          for (int i = 0; i < n; ++i) cl.b[i] = m.at("b").at(i).get<double>();
        cl.c = m.value("c", 0.0);
        members.push_back(cl);
      }
      si.families.push_back(std::move(members));
    }
    OperatorSpec op;
    op.v = si;
    op.name = "inline_supinf";
    return op;
  }
  fail(Errc::ConfigError, "operator needs one of: preset, linear, supinf");
}

SourceData parse_forcing(const json& j) {
  Expr e = parse_field_expr(j, "forcing");
  return [e](const Eigen::VectorXd& x) { return e(x); };
}

BoundaryData parse_boundary(const json& j) {
  check_keys(j, {"physical", "artificial"}, "boundary");
  auto side = [&](const char* key) -> std::function<double(const Eigen::VectorXd&)> {
    if (!j.contains(key)) return [](const Eigen::VectorXd&) { return 0.0; };
    const json& v = j.at(key);
    if (v.is_string()) {
      std::string s = v.get<std::string>();
      if (s.rfind("analytic:", 0) == 0) {
        SmoothFnPtr fn = analytic_function(s.substr(9));
        return [fn](const Eigen::VectorXd& x) { return fn->value(x); };
      }
      Expr e = Expr::parse(s);
      return [e](const Eigen::VectorXd& x) { return e(x); };
    }
    double c = v.get<double>();
    return [c](const Eigen::VectorXd&) { return c; };
  };
  auto phys = side("physical");
  auto art = side("artificial");
  return [phys, art](const Eigen::VectorXd& x, NodeClass c) {
    return c == NodeClass::Physical ? phys(x) : art(x);
  };
}

}  // namespace

ScenarioConfig load_scenario(const std::string& path) {
  std::string resolved = path;
  if (!std::filesystem::exists(resolved)) {
    if (std::filesystem::exists(path + ".json"))
      resolved = path + ".json";
    else
      fail(Errc::ConfigError, "scenario file not found: " + path);
  }
  std::ifstream in(resolved);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Errc::ConfigError, "cannot parse " + resolved + ": " + e.what());
  }

  check_keys(j, {"name", "operator", "domain", "theorems", "counterexample", "grid", "forcing",
                 "boundary", "structure", "pl", "tolerance", "seed", "out", "threads"},
             "scenario");

  ScenarioConfig cfg;
  cfg.name = j.value("name", std::filesystem::path(resolved).stem().string());

  bool domain_from_preset = false;
  DomainSpec preset_domain;
  if (!j.contains("operator")) fail(Errc::ConfigError, "scenario needs an operator");
  cfg.op = parse_operator(j.at("operator"), &preset_domain, &domain_from_preset);

  if (j.contains("domain")) {
    const json& d = j.at("domain");
    if (d.is_object() && d.contains("preset")) {
      if (!domain_from_preset) fail(Errc::ConfigError, "domain preset requires an operator preset");
      cfg.domain = preset_domain;
    } else if (d.is_object() && d.contains("lattice")) {
      check_keys(d, {"lattice"}, "domain");
      std::vector<CylinderSpec> cs;
      for (const auto& c : d.at("lattice")) cs.push_back(parse_cylinder(c));
      cfg.domain = make_lattice(std::move(cs));
    } else {
      cfg.domain = parse_cylinder(d);
    }
  } else if (domain_from_preset) {
    cfg.domain = preset_domain;
  } else {
    fail(Errc::ConfigError, "scenario needs a domain");
  }

  if (j.contains("theorems"))
    for (const auto& t : j.at("theorems")) cfg.theorems.push_back(theorem_from_name(t.get<std::string>()));
  cfg.counterexample = j.value("counterexample", false);

  if (j.contains("grid")) {
    const json& g = j.at("grid");
    check_keys(g, {"h", "R", "method", "max_sweeps", "policy_cap", "damping"}, "grid");
    cfg.options.h = g.value("h", cfg.options.h);
    cfg.options.R = g.value("R", cfg.options.R);
    cfg.options.solve.max_sweeps = g.value("max_sweeps", cfg.options.solve.max_sweeps);
    cfg.options.solve.max_policy_iters = g.value("policy_cap", cfg.options.solve.max_policy_iters);
    cfg.options.solve.damping = g.value("damping", cfg.options.solve.damping);
    std::string method = g.value("method", std::string("auto"));
    if (method == "auto") cfg.options.solve.method = SolveOptions::Method::Auto;
    else if (method == "sweeps") cfg.options.solve.method = SolveOptions::Method::Sweeps;
    else if (method == "direct") cfg.options.solve.method = SolveOptions::Method::Direct;
    else fail(Errc::ConfigError, "grid.method must be auto|sweeps|direct");
  }
  if (j.contains("forcing")) cfg.options.forcing = parse_forcing(j.at("forcing"));
  if (j.contains("boundary")) cfg.options.boundary = parse_boundary(j.at("boundary"));
  if (j.contains("structure")) {
    const json& s = j.at("structure");
    check_keys(s, {"interior", "r_far", "shells", "per_shell"}, "structure");
    cfg.options.plan.interior_count = s.value("interior", cfg.options.plan.interior_count);
    cfg.options.plan.r_far_override = s.value("r_far", cfg.options.plan.r_far_override);
    cfg.options.plan.shells = s.value("shells", cfg.options.plan.shells);
    cfg.options.plan.per_shell = s.value("per_shell", cfg.options.plan.per_shell);
  }
  if (j.contains("pl")) {
    const json& p = j.at("pl");
    check_keys(p, {"beta0"}, "pl");
    cfg.options.beta0 = p.value("beta0", cfg.options.beta0);
  }
  cfg.options.tolerance = j.value("tolerance", cfg.options.tolerance);
  cfg.options.solve.tol = std::min(cfg.options.solve.tol, cfg.options.tolerance);
  cfg.options.seed = j.value("seed", cfg.options.seed);
  cfg.out_dir = j.value("out", cfg.out_dir);
  cfg.threads = j.value("threads", cfg.threads);
  if (cfg.counterexample) cfg.options.counterexample = cfg.op.name;
  return cfg;
}

namespace {

json cert_json(const Certificate& c) {
  json j;
  j["claim"] = c.claim;
  j["samples"] = c.sample_count;
  j["sample_desc"] = c.sample_desc;
  j["worst_margin"] = c.worst_margin;
  j["tolerance"] = c.tolerance;
  j["pass"] = c.pass;
  j["seed"] = c.seed;
  if (c.witness.size()) {
    j["witness"] = std::vector<double>(c.witness.data(), c.witness.data() + c.witness.size());
    j["witness_value"] = c.witness_value;
  }
  return j;
}

json structure_json(const StructureReport& s) {
  json j;
  j["operator"] = s.op_name;
  j["disclaimer"] = StructureReport::kDisclaimer;
  j["dim"] = s.dim;
  j["k"] = s.k;
  j["r_far"] = s.r_far;
  j["seed"] = s.seed;
  j["narrow_mode"] = s.narrow_mode;
  j["analytic_constants"] = s.analytic_constants;
  json dirs = json::array();
  for (const auto& d : s.directions)
    dirs.push_back({{"dir", d.dir + 1},
                    {"lambda_min_interior", d.lambda_min_interior},
                    {"lambda_min_far", d.lambda_min_far},
                    {"elliptic", d.positive}});
  j["directions"] = dirs;
  j["chosen_direction"] = s.ellipticity_dir + 1;
  j["all_directions_elliptic"] = s.all_directions_elliptic;
  json constants;
  constants["Lambda1"] = s.Lambda1;
  constants["gamma_bound"] = s.gamma_bound;
  constants["Gamma"] = s.Gamma;
  constants["rho"] = s.rho_finite ? json(s.rho) : json("unbounded");
  if (s.narrow_mode) constants["K"] = s.K_finite ? json(s.K) : json("unbounded");
  constants["liminf_lambda_positive"] = s.liminf_lambda_positive;
  j["constants"] = constants;
  json flags;
  for (const auto& [c, v] : s.flags) {
    json f;
    f["pass"] = v.pass;
    f["worst_margin"] = v.worst_margin;
    if (v.witness) {
      f["witness_x"] = std::vector<double>(v.witness->pt.x.data(),
                                           v.witness->pt.x.data() + v.witness->pt.x.size());
      f["witness_value"] = v.witness->value;
      f["witness_note"] = v.witness->note;
    }
    flags[cond_name(c)] = f;
  }
  j["flags"] = flags;
  return j;
}

json solve_json(const SolveReport& r) {
  json j;
  j["method"] = r.method;
  j["iterations"] = r.iterations;
  j["residual"] = r.residual;
  j["converged"] = r.converged;
  j["max_value"] = r.max_value;
  j["boundary_max"] = r.boundary_max;
  if (r.argmax_point.size())
    j["argmax"] = std::vector<double>(r.argmax_point.data(),
                                      r.argmax_point.data() + r.argmax_point.size());
  if (r.policy_iterations) {
    j["policy_iterations"] = r.policy_iterations;
    j["policy_residuals"] = r.policy_residuals;
    j["policy_switches"] = r.policy_switches;
  }
  return j;
}

json theorem_json(const TheoremReport& t) {
  json j;
  j["theorem"] = theorem_name(t.id);
  j["scenario"] = t.scenario;
  j["structure"] = structure_json(t.structure);
  j["hypothesis_failures"] = t.hypothesis_failures;
  j["inputs"] = t.inputs;
  j["outputs"] = t.outputs;
  json certs = json::array();
  for (const auto& c : t.certificates) certs.push_back(cert_json(c));
  j["certificates"] = certs;
  json solves = json::array();
  for (const auto& s : t.solves) solves.push_back(solve_json(s));
  j["solves"] = solves;
  if (t.counterexample) {
    json cx;
    cx["name"] = t.counterexample->name;
    cx["residual"] = cert_json(t.counterexample->residual);
    cx["boundary"] = cert_json(t.counterexample->boundary);
    cx["positivity"] = cert_json(t.counterexample->positivity);
    cx["violated_hypothesis"] = t.counterexample->violated_hypothesis;
    cx["conclusion"] = t.counterexample->conclusion;
    j["counterexample"] = cx;
  }
  if (t.lattice) {
    json l;
    l["in_hypotheses"] = t.lattice->in_hypotheses;
    l["note"] = t.lattice->hypothesis_note;
    l["global_max"] = t.lattice->global_max;
    l["boundary_max"] = t.lattice->boundary_max;
    l["mp_verdict"] = t.lattice->mp_verdict;
    l["localization_verdict"] = t.lattice->localization_verdict;
    json hs = json::array();
    for (const auto& h : t.lattice->half_strips)
      hs.push_back({{"member", h.member},
                    {"side", h.side},
                    {"max_value", h.max_value},
                    {"dist_to_node_region", h.dist_to_node_region}});
    l["half_strips"] = hs;
    j["lattice"] = l;
  }
  j["verdict"] = t.verdict;
  j["verdict_note"] = t.verdict_note;
  return j;
}

}  // namespace

std::string report_to_json(const std::vector<TheoremReport>& reports, const ScenarioConfig& cfg) {
  json j;
  j["scenario"] = cfg.name;
  j["seed"] = cfg.options.seed;
  j["tolerance"] = cfg.options.tolerance;
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(theorem_json(r));
  j["reports"] = arr;
  return j.dump(2);
}

std::string report_to_text(const std::vector<TheoremReport>& reports, const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "scenario: " << cfg.name << "\nseed: " << cfg.options.seed
      << "\ntolerance: " << cfg.options.tolerance << "\n\n";
  for (const auto& r : reports) out << r.summary() << "\n";
  return out.str();
}

namespace {

json vec_json(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

json mat_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Eigen::VectorXd vec_from(const json& j) {
  Eigen::VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[i] = j.at(i).get<double>();
  return v;
}

Eigen::MatrixXd mat_from(const json& j) {
  Eigen::MatrixXd m(j.size(), j.empty() ? 0 : j.at(0).size());
  for (size_t i = 0; i < j.size(); ++i)
    for (size_t k = 0; k < j.at(i).size(); ++k) m(i, k) = j.at(i).at(k).get<double>();
  return m;
}

}  // namespace

std::string barrier_to_json_text(const SmoothFunction& family) {
  json j;
  if (const auto* s = dynamic_cast<const SpongeBarrier*>(&family)) {
    j["kind"] = "sponge";
    j["Q"] = mat_json(s->Q());
  } else if (const auto* e = dynamic_cast<const ExpDirBarrier*>(&family)) {
    j["kind"] = "exp_dir";
    j["params"] = {{"M", e->M()}, {"alpha", e->alpha()}, {"d", e->d()}, {"xprime", e->xprime()}};
    j["nu"] = vec_json(e->nu());
  } else if (const auto* a = dynamic_cast<const AbpAuxBarrier*>(&family)) {
    j["kind"] = "aux_exp";
    j["params"] = {{"C1", a->C1()}, {"alpha", a->alpha()}, {"shift", a->shift()}};
    j["nu"] = vec_json(a->nu());
  } else if (const auto* p = dynamic_cast<const PLBarrier*>(&family)) {
    j["kind"] = "growth";
    j["params"] = {{"alpha", p->alpha()}, {"beta", p->beta()}};
    j["nu"] = vec_json(p->nu());
    j["Q"] = mat_json(p->Q());
  } else {
    fail(Errc::ConfigError, "not a serializable barrier family: " + family.describe());
  }
  return j.dump();
}

SmoothFnPtr barrier_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail(Errc::ConfigError, std::string("barrier parse: ") + e.what());
  }
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "sponge") return std::make_shared<SpongeBarrier>(mat_from(j.at("Q")));
  if (kind != "exp_dir" && kind != "aux_exp" && kind != "growth")
    fail(Errc::ConfigError, "unknown barrier kind '" + kind + "'");
  const json& p = j.at("params");
  if (kind == "exp_dir")
    return std::make_shared<ExpDirBarrier>(p.at("M").get<double>(), p.at("alpha").get<double>(),
                                           p.at("d").get<double>(), p.at("xprime").get<double>(),
                                           vec_from(j.at("nu")));
  if (kind == "aux_exp")
    return std::make_shared<AbpAuxBarrier>(p.at("C1").get<double>(), p.at("alpha").get<double>(),
                                           vec_from(j.at("nu")), p.at("shift").get<double>());
  if (kind == "growth")
    return std::make_shared<PLBarrier>(p.at("alpha").get<double>(), p.at("beta").get<double>(),
                                       vec_from(j.at("nu")), mat_from(j.at("Q")));
  fail(Errc::ConfigError, "unknown barrier kind '" + kind + "'");
}

int run_scenario(const ScenarioConfig& cfg) {
  set_thread_count(cfg.threads);
  std::vector<TheoremReport> reports;
  std::vector<TheoremId> ids = cfg.theorems;
  if (ids.empty()) ids.push_back(TheoremId::MP);
  for (TheoremId id : ids) reports.push_back(run_theorem(id, cfg.op, cfg.domain, cfg.options));

  std::filesystem::create_directories(cfg.out_dir);
  {
    std::ofstream txt(cfg.out_dir + "/report.txt");
    txt << report_to_text(reports, cfg);
  }
  {
    std::ofstream js(cfg.out_dir + "/report.json");
    js << report_to_json(reports, cfg) << "\n";
  }
  for (const auto& r : reports)
    for (const auto& [name, field] : r.fields)
      write_csv(field, cfg.out_dir + "/" + cfg.name + "_" + theorem_name(r.id) + "_" + name + ".csv");

  bool hypothesis_failed = false, verdict_failed = false;
  for (const auto& r : reports) {
    if (!r.hypotheses_ok()) hypothesis_failed = true;
    else if (!r.verdict) verdict_failed = true;
  }
  if (hypothesis_failed) return 2;
  return verdict_failed ? 1 : 0;
}

}  // namespace mplab
