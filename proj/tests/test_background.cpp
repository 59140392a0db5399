// Background evaluation: exact derivatives, equilibrium residual

#include <cmath>

#include <doctest.h>

#include "mhdpol/background.hpp"
#include "mhdpol/errors.hpp"
#include "mhdpol/rng.hpp"

using namespace mhdpol;

TEST_CASE("constant background has zero derivatives") {
  const BackgroundField b = BackgroundField::constant(1.0, 1.0, {1, 0, 0}, 5.0 / 3.0);
  const BackgroundEval bg = eval_background(b, 0.3, {0.1, -0.2, 0.7});
  CHECK(norm(bg.grad_rho) == 0.0);
  CHECK(norm(bg.grad_p) == 0.0);
  for (int i = 0; i < 3; i++) CHECK(norm(bg.dH[i]) == 0.0);
  CHECK(bg.c2 == doctest::Approx(5.0 / 3.0));
  CHECK(bg.h2 == doctest::Approx(1.0));
  CHECK(bg.div_H == 0.0);
  CHECK(norm(bg.curl_H) == 0.0);
}

TEST_CASE("linear pressure field") {
  BackgroundField b = BackgroundField::constant(1.0, 1.0, {1, 0, 0}, 5.0 / 3.0);
  b.p = parse_expr("1+x2");
  const BackgroundEval bg = eval_background(b, 0.0, {0, 0, 0});
  CHECK(bg.grad_p[0] == 0.0);
  CHECK(bg.grad_p[1] == doctest::Approx(1.0));
  CHECK(bg.grad_p[2] == 0.0);
}

TEST_CASE("exponential density derivative matches finite differences") {
  BackgroundField b = BackgroundField::constant(1.0, 1.0, {1, 0, 0}, 5.0 / 3.0);
  b.rho = parse_expr("exp(x1)");
  const BackgroundEval bg = eval_background(b, 0.0, {1, 0, 0});
  CHECK(bg.rho == doctest::Approx(std::exp(1.0)));
  CHECK(bg.grad_rho[0] == doctest::Approx(std::exp(1.0)));
  const double h = 1e-5;
  const double fd = (eval_background(b, 0.0, {1 + h, 0, 0}).rho -
                     eval_background(b, 0.0, {1 - h, 0, 0}).rho) /
                    (2 * h);
  CHECK(bg.grad_rho[0] == doctest::Approx(fd).epsilon(1e-9));
}

TEST_CASE("non-physical values rejected") {
  BackgroundField b = BackgroundField::constant(1.0, 1.0, {0, 0, 0}, 5.0 / 3.0);
  b.rho = parse_expr("x1");  // zero / negative away from x1 > 0
  CHECK_THROWS_AS(eval_background(b, 0.0, {-1, 0, 0}), NonPhysical);
  b.rho = constant_expr(1.0);
  b.p = parse_expr("x1-2");
  CHECK_THROWS_AS(eval_background(b, 0.0, {1, 0, 0}), NonPhysical);
}

TEST_CASE("equilibrium residual") {
  SUBCASE("constant background is in equilibrium exactly") {
    const BackgroundField b = BackgroundField::constant(2.0, 3.0, {1, 2, -1}, 1.4);
    const Vec3 r = equilibrium_residual(b, {0.4, -0.1, 0.3});
    CHECK(r[0] == 0.0);
    CHECK(r[1] == 0.0);
    CHECK(r[2] == 0.0);
  }
  SUBCASE("linear pressure with constant H is not") {
    BackgroundField b = BackgroundField::constant(1.0, 1.0, {1, 0, 0}, 5.0 / 3.0);
    b.p = parse_expr("1+x2");
    const Vec3 r = equilibrium_residual(b, {0, 0, 0});
    CHECK(r[1] == doctest::Approx(1.0));
  }
  SUBCASE("quadratic pressure balanced by a sheared field") {
    BackgroundField b;
    b.gamma = 5.0 / 3.0;
    b.rho = constant_expr(1.0);
    b.p = parse_expr("1 - x2*x2/2");
    b.H[0] = parse_expr("x2");
    b.H[1] = constant_expr(0.0);
    b.H[2] = constant_expr(0.0);
    SplitMix64 rng(7);
    for (int i = 0; i < 20; i++) {
      const Vec3 x = {rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8)};
      const BackgroundEval bg = eval_background(b, 0.0, x);
      CHECK(bg.curl_H[2] == doctest::Approx(-1.0));
      const Vec3 r = equilibrium_residual(b, x);
      CHECK(norm(r) <= 1e-14);
    }
  }
}

TEST_CASE("curl and div from the Jacobian match finite differences") {
  BackgroundField b;
  b.gamma = 5.0 / 3.0;
  b.rho = constant_expr(1.0);
  b.p = constant_expr(1.0);
  b.H[0] = parse_expr("sin(x2)*cos(x3)");
  b.H[1] = parse_expr("x3*x1");
  b.H[2] = parse_expr("tanh(x1+x2)");
  SplitMix64 rng(11);
  for (int trial = 0; trial < 10; trial++) {
    const Vec3 x = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const BackgroundEval bg = eval_background(b, 0.0, x);
    const double h = 1e-6;
    auto Hat = [&](Vec3 y) { return eval_background(b, 0.0, y).H; };
    Vec3 curl_fd{}, xp, xm;
    double div_fd = 0.0;
    for (int k = 0; k < 3; k++) {
      xp = x;
      xm = x;
      xp[k] += h;
      xm[k] -= h;
      const Vec3 dk = (1.0 / (2 * h)) * (Hat(xp) - Hat(xm));
      div_fd += dk[k];
      // accumulate eps_{ijk} d_j H_k
      if (k == 0) { curl_fd[1] += -dk[2]; curl_fd[2] += dk[1]; }
      if (k == 1) { curl_fd[0] += dk[2]; curl_fd[2] += -dk[0]; }
      if (k == 2) { curl_fd[0] += -dk[1]; curl_fd[1] += dk[0]; }
    }
    CHECK(bg.div_H == doctest::Approx(div_fd).epsilon(1e-6));
    for (int i = 0; i < 3; i++)
      CHECK(bg.curl_H[i] == doctest::Approx(curl_fd[i]).epsilon(1e-6).scale(1.0));
  }
}
