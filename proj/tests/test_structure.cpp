#include <doctest.h>

#include "mplab/errors.hpp"
#include "mplab/structure.hpp"

using namespace mplab;

namespace {

Eigen::VectorXd unit(int n, int i) { return Eigen::VectorXd::Unit(n, i); }

StructureReport run(const char* name, bool narrow = false) {
  Preset p = preset(name);
  const auto& dom = std::get<CylinderSpec>(p.domain);
  SamplePlan plan = make_plan(dom, 42);
  return narrow ? check_narrow_mode(p.op, dom, plan) : check_structure(p.op, dom, plan);
}

OperatorSpec strip_op_with_c(Expr c) {
  LinearOperator lin = LinearOperator::diagonal(2, {Expr::constant(1.0), Expr::constant(1.0)});
  lin.c = c;
  OperatorSpec op;
  op.v = lin;
  op.name = "strip_with_c";
  return op;
}

CylinderSpec pi_strip() { return make_cylinder(2, {unit(2, 0)}, {0.0}, {M_PI}); }

}  // namespace

TEST_CASE("linear_mixed satisfies the full structure condition") {
  StructureReport rep = run("linear_mixed");
  CHECK(rep.pass());
  CHECK(rep.analytic_constants);
  REQUIRE(rep.directions.size() == 2);
  for (const auto& d : rep.directions) {
    CHECK(d.positive);
    CHECK(d.lambda_min_interior == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.lambda_min_far == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(rep.all_directions_elliptic);
  CHECK(rep.liminf_lambda_positive);
  CHECK(rep.Lambda1 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.Gamma == 0.0);
  CHECK(rep.probe_vs_analytic < 1e-10);  // probing reproduces nu.A(x)nu exactly
  CHECK_FALSE(rep.rho_finite);           // Lambda/lambda = |x| keeps growing
}

TEST_CASE("drift preset produces the expected Gamma") {
  StructureReport rep = run("linear_mixed_drift");
  CHECK(rep.pass());
  CHECK(rep.gamma_bound == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rep.Gamma == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("c1_degenerate: one bounded direction carries no ellipticity") {
  StructureReport rep = run("c1_degenerate");
  REQUIRE(rep.directions.size() == 2);
  CHECK(rep.directions[0].positive);       // x2
  CHECK_FALSE(rep.directions[1].positive); // x3: zero quotient
  CHECK(rep.directions[1].lambda_min_interior == 0.0);
  CHECK_FALSE(rep.all_directions_elliptic);
  // one good direction is all the certificate needs
  CHECK(rep.ellipticity_dir == 0);
  CHECK(rep.flags.at(Cond::DirectionalElliptic).pass);
  CHECK(rep.pass());
}

TEST_CASE("quadratic_growth: the orthogonal growth flag fails far out") {
  StructureReport rep = run("quadratic_growth");
  CHECK_FALSE(rep.pass());
  const ConditionVerdict& v = rep.flags.at(Cond::OrthogonalGrowth);
  CHECK_FALSE(v.pass);
  REQUIRE(v.witness.has_value());
  CHECK(std::fabs(v.witness->pt.x[1]) >= 100.0);  // witness beyond |x2| = 1e2
  // witness reproduces its quotient bitwise
  CHECK(v.witness->reproduce(preset("quadratic_growth").op) == v.witness->value);
}

TEST_CASE("narrow mode: positive zero-order coefficient with finite K") {
  OperatorSpec op = strip_op_with_c(Expr::constant(0.5));
  CylinderSpec dom = pi_strip();
  SamplePlan plan = make_plan(dom, 42);

  StructureReport plain = check_structure(op, dom, plan);
  CHECK_FALSE(plain.flags.at(Cond::MonotoneS).pass);  // c > 0 breaks plain monotonicity
  CHECK_FALSE(plain.pass());

  StructureReport narrow = check_narrow_mode(op, dom, plan);
  CHECK(narrow.flags.count(Cond::MonotoneS) == 0);  // replaced by the one-sided bound
  CHECK(narrow.flags.at(Cond::OneSidedS).pass);
  CHECK(narrow.K_finite);
  CHECK(narrow.K == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(narrow.pass());
}

TEST_CASE("narrow mode: zero coefficient gives K = 0") {
  OperatorSpec op = strip_op_with_c(Expr::constant(0.0));
  CylinderSpec dom = pi_strip();
  StructureReport narrow = check_narrow_mode(op, dom, make_plan(dom, 42));
  CHECK(narrow.K == 0.0);
  CHECK(narrow.K_finite);
}

TEST_CASE("narrow mode: unbounded c/lambda is flagged with a far witness") {
  OperatorSpec op = strip_op_with_c(Expr::parse("x2^2"));
  CylinderSpec dom = pi_strip();
  StructureReport narrow = check_narrow_mode(op, dom, make_plan(dom, 42));
  CHECK_FALSE(narrow.K_finite);
  CHECK_FALSE(narrow.flags.at(Cond::OneSidedS).pass);
  REQUIRE(narrow.flags.at(Cond::OneSidedS).witness.has_value());
  const Witness& w = *narrow.flags.at(Cond::OneSidedS).witness;
  CHECK(std::fabs(w.pt.x[1]) >= 100.0);
  CHECK(w.reproduce(op) == w.value);
}

TEST_CASE("direction tie-break maximizes the ellipticity infimum") {
  LinearOperator lin = LinearOperator::diagonal(3, {Expr::constant(1.0), Expr::constant(2.0), Expr::constant(1.0)});
  OperatorSpec op;
  op.v = lin;
  op.name = "tiebreak";
  CylinderSpec dom = make_cylinder(3, {unit(3, 0), unit(3, 1)}, {0.0, 0.0}, {1.0, 1.0});
  StructureReport rep = check_structure(op, dom, make_plan(dom, 42));
  CHECK(rep.ellipticity_dir == 1);  // the direction with coefficient 2
}

TEST_CASE("rho is finite exactly when the coefficient ratio is bounded") {
  StructureReport lap = run("laplace_strip");
  CHECK(lap.rho_finite);
  CHECK(lap.rho == doctest::Approx(1.0).epsilon(1e-9));
  StructureReport bi = run("bellman_isaacs_demo");
  CHECK(bi.pass());
  CHECK(bi.rho_finite);
}

TEST_CASE("sup-inf structure constants come from the member bounds") {
  StructureReport rep = run("bellman_isaacs_demo");
  REQUIRE(rep.directions.size() == 1);
  CHECK(rep.directions[0].lambda_min_interior == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.gamma_bound == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rep.flags.at(Cond::DegenerateElliptic).pass);
  CHECK(rep.flags.at(Cond::MonotoneS).pass);
}

TEST_CASE("insufficient samples are rejected") {
  Preset p = preset("laplace_strip");
  const auto& dom = std::get<CylinderSpec>(p.domain);
  PlanOptions opts;
  opts.interior_count = 4;
  SamplePlan plan = make_plan(dom, 1, opts);
  CHECK_THROWS_AS(check_structure(p.op, dom, plan), Error);
  try {
    check_structure(p.op, dom, plan);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InsufficientSamples);
  }
}

TEST_CASE("report summary carries the evidence label") {
  StructureReport rep = run("linear_mixed");
  CHECK(rep.summary().find("sampled evidence, not proof") != std::string::npos);
}
