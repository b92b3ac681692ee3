#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "mplab/analytic.hpp"
#include "mplab/bounds.hpp"
#include "mplab/config.hpp"
#include "mplab/errors.hpp"

using namespace mplab;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  std::string path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("ABP theorem run: Laplacian on the unit square") {
  Preset p = preset("laplace_strip");
  TheoremOptions opt;
  opt.h = 1.0 / 32.0;
  opt.R = 0.5;
  opt.forcing = [](const Eigen::VectorXd&) { return -1.0; };
  TheoremReport rep = run_theorem(TheoremId::ABP, p.op, p.domain, opt);
  CHECK(rep.hypotheses_ok());
  CHECK(rep.outputs.at("abp_bound") == doctest::Approx(M_E).epsilon(1e-12));
  CHECK(rep.outputs.at("alpha") == 1.0);
  CHECK(rep.outputs.at("solver_max") == doctest::Approx(0.07361474).epsilon(1e-4));
  CHECK(rep.verdict);
  REQUIRE(rep.fields.size() == 1);
}

TEST_CASE("MP theorem run on a clean preset") {
  Preset p = preset("linear_mixed");
  TheoremOptions opt;
  opt.h = 0.25;
  opt.R = 2.0;
  TheoremReport rep = run_theorem(TheoremId::MP, p.op, p.domain, opt);
  CHECK(rep.hypotheses_ok());
  CHECK(rep.verdict);
  REQUIRE(rep.solves.size() == 1);
  CHECK(rep.solves.front().max_value <= 1e-10);
  REQUIRE(rep.certificates.size() == 1);
  CHECK(rep.certificates.front().pass);
}

TEST_CASE("MP theorem run flags the counterexample scenarios") {
  Preset qg = preset("quadratic_growth");
  TheoremOptions opt;
  opt.h = M_PI / 16.0;
  opt.R = 2.0;
  TheoremReport rep = run_theorem(TheoremId::MP, qg.op, qg.domain, opt);
  CHECK_FALSE(rep.hypotheses_ok());
  REQUIRE(rep.counterexample.has_value());
  CHECK(rep.counterexample->all_pass());
  bool has_growth_flag = false;
  for (const auto& h : rep.hypothesis_failures)
    if (h.find("orthogonal_growth") != std::string::npos) has_growth_flag = true;
  CHECK(has_growth_flag);

  Preset c1 = preset("c1_degenerate");
  TheoremReport rep1 = run_theorem(TheoremId::MP, c1.op, c1.domain, opt);
  CHECK_FALSE(rep1.hypotheses_ok());
  bool has_subsolution_flag = false;
  for (const auto& h : rep1.hypothesis_failures)
    if (h.find("subsolution growth") != std::string::npos) has_subsolution_flag = true;
  CHECK(has_subsolution_flag);
  REQUIRE(rep1.counterexample.has_value());
  CHECK(rep1.counterexample->all_pass());
}

TEST_CASE("NARROW theorem run") {
  LinearOperator lin = LinearOperator::diagonal(2, {Expr::constant(1.0), Expr::constant(1.0)});
  lin.c = Expr::constant(0.5);
  OperatorSpec op;
  op.v = lin;
  op.name = "narrow_strip";
  DomainSpec dom = make_cylinder(2, {Eigen::Vector2d(1, 0)}, {0.0}, {0.3});
  TheoremOptions opt;
  opt.h = 0.3 / 16.0;
  opt.R = 1.0;
  TheoremReport rep = run_theorem(TheoremId::NARROW, op, dom, opt);
  CHECK(rep.hypotheses_ok());
  CHECK(rep.inputs.at("K") == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rep.outputs.at("narrow_threshold") ==
        doctest::Approx(1.0 / std::sqrt(M_E * 0.5)).epsilon(1e-9));
  CHECK(rep.outputs.at("narrow_enough") == 1.0);
  CHECK(rep.verdict);
}

TEST_CASE("PL theorem run") {
  Preset p = preset("laplace_strip");
  TheoremOptions opt;
  opt.h = 0.125;
  opt.R = 1.0;
  opt.beta0 = 1.0;
  opt.width.y_points = 2001;
  TheoremReport rep = run_theorem(TheoremId::PL, p.op, p.domain, opt);
  CHECK(rep.hypotheses_ok());
  CHECK(rep.outputs.at("beta") == doctest::Approx(1.1).epsilon(1e-14));
  CHECK(rep.outputs.at("alpha_root") == doctest::Approx(std::sqrt(9.24)).epsilon(1e-12));
  CHECK(rep.outputs.at("d0") < M_PI / rep.outputs.at("alpha"));
  CHECK(rep.outputs.at("ineq_margin") <= 0.0);
  CHECK(rep.outputs.at("width_margin") >= 0.0);
  CHECK(rep.verdict);

  // the ratio-unbounded preset cannot enter the growth-trading mode
  Preset lm = preset("linear_mixed");
  TheoremReport bad = run_theorem(TheoremId::PL, lm.op, lm.domain, opt);
  CHECK_FALSE(bad.hypotheses_ok());
}

TEST_CASE("MP on the lattice preset") {
  Preset cs = preset("crossing_strips");
  TheoremOptions opt;
  opt.h = M_PI / 8.0;
  opt.R = 2.0 * M_PI;
  TheoremReport rep = run_theorem(TheoremId::MP, cs.op, cs.domain, opt);
  CHECK(rep.hypotheses_ok());
  REQUIRE(rep.lattice.has_value());
  CHECK(rep.lattice->mp_verdict);
  CHECK(rep.verdict);
}

TEST_CASE("scenario config round trip and exit codes") {
  std::string abp = write_temp("mplab_abp.json", R"({
    "name": "abp_unit_square",
    "operator": {"preset": "laplace_strip"},
    "domain": {"preset": true},
    "theorems": ["ABP"],
    "grid": {"h": 0.03125, "R": 0.5},
    "forcing": "-1",
    "seed": 42,
    "out": ")" + (std::filesystem::temp_directory_path() / "mplab_out_abp").string() + R"("
  })");
  ScenarioConfig cfg = load_scenario(abp);
  CHECK(cfg.name == "abp_unit_square");
  CHECK(cfg.theorems.size() == 1);
  int code = run_scenario(cfg);
  CHECK(code == 0);
  CHECK(std::filesystem::exists(cfg.out_dir + "/report.txt"));
  CHECK(std::filesystem::exists(cfg.out_dir + "/report.json"));
  CHECK(std::filesystem::exists(cfg.out_dir + "/abp_unit_square_ABP_abp_solution.csv"));

  // determinism: identical bytes on a re-run with the same seed
  auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  };
  std::string first = slurp(cfg.out_dir + "/report.json");
  run_scenario(cfg);
  CHECK(slurp(cfg.out_dir + "/report.json") == first);
}

TEST_CASE("counterexample scenario exits with the hypothesis code") {
  std::string c1 = write_temp("mplab_c1.json", R"({
    "name": "c1_counterexample",
    "operator": {"preset": "c1_degenerate"},
    "domain": {"preset": true},
    "theorems": ["MP"],
    "counterexample": true,
    "grid": {"h": 0.39269908169872414, "R": 2.0},
    "seed": 42,
    "out": ")" + (std::filesystem::temp_directory_path() / "mplab_out_c1").string() + R"("
  })");
  ScenarioConfig cfg = load_scenario(c1);
  CHECK(run_scenario(cfg) == 2);
  std::ifstream in(cfg.out_dir + "/report.json");
  std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(body.find("counterexample") != std::string::npos);
  CHECK(body.find("violated_hypothesis") != std::string::npos);
}

TEST_CASE("config rejections") {
  std::string bad_key = write_temp("mplab_bad1.json", R"({
    "name": "x", "operator": {"preset": "laplace_strip"}, "domain": {"preset": true},
    "bogus_key": 1
  })");
  CHECK_THROWS_AS(load_scenario(bad_key), Error);

  std::string bad_preset = write_temp("mplab_bad2.json", R"({
    "name": "x", "operator": {"preset": "nope"}, "domain": {"preset": true}
  })");
  CHECK_THROWS_AS(load_scenario(bad_preset), Error);

  CHECK_THROWS_AS(load_scenario("/nonexistent/path/to/scenario"), Error);
}

TEST_CASE("inline operator and domain configs") {
  std::string inline_cfg = write_temp("mplab_inline.json", R"({
    "name": "inline_narrow",
    "operator": {"linear": {"dim": 2, "diag": ["1", "1"], "c": "0.5"}},
    "domain": {"dim": 2, "dirs": [[1, 0]], "offsets": [0], "widths": [0.3]},
    "theorems": ["NARROW"],
    "grid": {"h": 0.01875, "R": 1.0},
    "seed": 7,
    "out": ")" + (std::filesystem::temp_directory_path() / "mplab_out_inline").string() + R"("
  })");
  ScenarioConfig cfg = load_scenario(inline_cfg);
  CHECK(run_scenario(cfg) == 0);
}

TEST_CASE("barrier families replay through their serialized form") {
  ProjectionPair pq = projections(make_cylinder(2, {Eigen::Vector2d(1, 0)}, {0.0}, {1.0}));
  std::vector<SmoothFnPtr> families = {
      std::make_shared<SpongeBarrier>(pq.Q),
      std::make_shared<ExpDirBarrier>(2.0, 1.3, 0.7, 0.2, Eigen::Vector2d(1, 0)),
      std::make_shared<AbpAuxBarrier>(0.5, 1.5, Eigen::Vector2d(1, 0), -2.0),
      std::make_shared<PLBarrier>(2.8, 1.0, Eigen::Vector2d(1, 0), pq.Q),
  };
  Eigen::Vector2d x(0.4, 1.7);
  for (const auto& f : families) {
    SmoothFnPtr back = barrier_from_json_text(barrier_to_json_text(*f));
    CHECK(back->value(x) == f->value(x));
    CHECK((back->gradient(x) - f->gradient(x)).norm() == 0.0);
    CHECK((back->hessian(x) - f->hessian(x)).norm() == 0.0);
  }
  CHECK_THROWS_AS(barrier_from_json_text("{\"kind\":\"nope\"}"), Error);
  CHECK_THROWS_AS(barrier_to_json_text(*analytic_function("xsq_sin")), Error);
}
