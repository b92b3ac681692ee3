#include <doctest.h>

#include <cmath>
#include <random>

#include "mplab/errors.hpp"
#include "mplab/expr.hpp"
#include "mplab/numeric.hpp"

using namespace mplab;

TEST_CASE("sinpi and cospi hit exact zeros") {
  CHECK(sinpi(0.0) == 0.0);
  CHECK(sinpi(1.0) == 0.0);
  CHECK(sinpi(-1.0) == 0.0);
  CHECK(sinpi(2.0) == 0.0);
  CHECK(sinpi(17.0) == 0.0);
  CHECK(sinpi(0.5) == 1.0);
  CHECK(sinpi(-0.5) == -1.0);
  CHECK(cospi(0.5) == 0.0);
  CHECK(cospi(1.5) == 0.0);
  CHECK(cospi(0.0) == 1.0);
  CHECK(cospi(1.0) == -1.0);
}

TEST_CASE("sinpi/cospi agree with the library trig away from the axes") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 500; ++i) {
    double t = u(rng);
    CHECK(std::fabs(sinpi(t) - std::sin(M_PI * t)) < 1e-13);
    CHECK(std::fabs(cospi(t) - std::cos(M_PI * t)) < 1e-13);
  }
}

TEST_CASE("halton values live in (0,1) and are deterministic") {
  for (std::uint64_t i = 1; i < 200; ++i) {
    double v = halton(i, 2);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    CHECK(halton(i, 2) == v);
  }
  CHECK(halton(1, 2) == 0.5);
  CHECK(halton(2, 2) == 0.25);
  CHECK(halton(3, 2) == 0.75);
}

TEST_CASE("parallel_for is independent of the worker count") {
  std::vector<double> a(1000), b(1000);
  set_thread_count(1);
  parallel_for(1000, [&](std::int64_t i) { a[i] = std::sin(0.01 * static_cast<double>(i)); });
  set_thread_count(4);
  parallel_for(1000, [&](std::int64_t i) { b[i] = std::sin(0.01 * static_cast<double>(i)); });
  set_thread_count(1);
  CHECK(a == b);
}

TEST_CASE("expression parsing and evaluation") {
  Eigen::VectorXd x(2);
  x << 1.0, 4.0;
  CHECK(Expr::parse("0.5*x2^2")(x) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(Expr::parse("1+2*3")(x) == 7.0);
  CHECK(Expr::parse("(1+2)*3")(x) == 9.0);
  Eigen::VectorXd y(2);
  y << 3.0, 4.0;
  CHECK(Expr::parse("|x|")(y) == 5.0);
  CHECK(Expr::parse("pi")(x) == M_PI);
  CHECK(Expr::parse("sin(pi/2)")(x) == doctest::Approx(1.0));
  CHECK(Expr::parse("exp(0)")(x) == 1.0);
  CHECK(Expr::parse("sqrt(x2)")(x) == 2.0);
  CHECK(Expr::parse("-x1^2")(x) == -1.0);  // unary minus binds after the power
  CHECK(Expr::parse("2^-2")(x) == 0.25);
}

TEST_CASE("expression round trip through str()") {
  for (const char* src : {"0.5*x2^2", "|x|+1", "sin(x1)*exp(-x2)", "1/(1+x1^2)"}) {
    Expr e = Expr::parse(src);
    Expr back = Expr::parse(e.str());
    Eigen::VectorXd x(2);
    x << 0.7, -1.3;
    CHECK(e(x) == back(x));
  }
}

TEST_CASE("integer powers cancel exactly against halved products") {
  // (0.5*x^2) * 2 == x^2 bitwise, the cancellation the residual checks rely on
  Expr half_sq = Expr::parse("0.5*x1^2");
  Expr sq = Expr::parse("x1^2");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e4, 1e4);
  for (int i = 0; i < 200; ++i) {
    Eigen::VectorXd x(1);
    x << u(rng);
    CHECK(2.0 * half_sq(x) == sq(x));
  }
}

TEST_CASE("argument scaling rewrites coordinates and the norm") {
  Expr e = Expr::parse("x1^2+|x|");
  Expr s = e.with_scaled_argument(2.0);
  Eigen::VectorXd y(2);
  y << 3.0, 4.0;
  Eigen::VectorXd two_y = 2.0 * y;
  CHECK(s(y) == doctest::Approx(e(two_y)).epsilon(1e-15));
  CHECK_THROWS_AS(e.with_scaled_argument(-1.0), Error);
}

TEST_CASE("parse errors carry ConfigError") {
  CHECK_THROWS_AS(Expr::parse("x0"), Error);
  CHECK_THROWS_AS(Expr::parse("foo(1)"), Error);
  CHECK_THROWS_AS(Expr::parse("1+"), Error);
  CHECK_THROWS_AS(Expr::parse("(1"), Error);
  CHECK_THROWS_AS(Expr::parse("x1^x2"), Error);
}

TEST_CASE("constant detection") {
  double v = 0.0;
  CHECK(Expr::parse("2*pi").constant_value(&v));
  CHECK(v == 2.0 * M_PI);
  CHECK_FALSE(Expr::parse("x1").constant_value());
  CHECK(Expr::parse("x3+1").max_coord() == 2);
}
