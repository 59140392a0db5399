// Identity suite: determinism, serial/parallel equivalence, mutation
// sensitivity, adjugate factorization

#include <cmath>

#include <doctest.h>

#include "mhdpol/background.hpp"
#include "mhdpol/symbols.hpp"
#include "mhdpol/verify.hpp"

using namespace mhdpol;
using namespace mhdpol::verify;

TEST_CASE("suite passes on a moderate sample set") {
  SuiteOptions opt;
  opt.n_samples = 200;
  opt.seed = 7;
  const VerifyReport rep = run_identity_suite(opt);
  for (const CheckResult& c : rep.checks) {
    INFO(c.name, " residual=", c.max_residual, " tol=", c.tolerance,
         " samples=", c.samples);
    CHECK(c.pass);
  }
  CHECK(rep.pass);
}

TEST_CASE("suite is deterministic and thread-count independent") {
  SuiteOptions a;
  a.n_samples = 120;
  a.seed = 99;
  const std::string r1 = run_identity_suite(a).to_text();
  const std::string r2 = run_identity_suite(a).to_text();
  CHECK(r1 == r2);
  SuiteOptions serial = a;
  serial.parallel = false;
  CHECK(run_identity_suite(serial).to_text() == r1);
}

TEST_CASE("different seeds draw different samples") {
  SuiteOptions a;
  a.n_samples = 60;
  a.seed = 1;
  SuiteOptions b = a;
  b.seed = 2;
  CHECK(run_identity_suite(a).to_text() != run_identity_suite(b).to_text());
}

TEST_CASE("sign mutation in p2 trips several checks") {
  SuiteOptions opt;
  opt.n_samples = 150;
  opt.seed = 7;
  opt.overrides.p2 = [](const PhasePoint& pt, const BackgroundEval& bg) {
    // Flip the sign of the (H.xi)(xi(x)H + H(x)xi) term.
    const double hxi = dot(bg.H, pt.xi);
    const MatrixSymbol sym = outer(pt.xi, bg.H) + outer(bg.H, pt.xi);
    return symbols::build_p2(pt, bg) - 2.0 * hxi * sym;
  };
  const VerifyReport rep = run_identity_suite(opt);
  int failing = 0;
  for (const CheckResult& c : rep.checks) failing += c.pass ? 0 : 1;
  CHECK(failing >= 3);
  CHECK(!rep.pass);
}

TEST_CASE("adjugate factorization residuals at frozen points") {
  const BackgroundField f = BackgroundField::constant(1.0, 0.6, {1, 0, 0}, 5.0 / 3.0);
  const BackgroundEval bg = eval_background(f, 0, {0, 0, 0});
  // Perpendicular direction: the adjugate vanishes at tau = 0 (and to higher
  // order, since the kernel there is six-dimensional).
  const AdjugateResiduals perp = check_adjugate_factorization(bg, {0, 1, 0}, 1e-3);
  CHECK(perp.tau0 <= 1e-10);
  CHECK(perp.identity <= 1e-9);
  // Generic direction (xi.H != 0): the zero eigenvalue of A is exactly
  // double, the limit matrix M is nonzero, and adj(q)/tau stabilizes.
  const AdjugateResiduals gen = check_adjugate_factorization(bg, {0.6, 0.8, 0.0}, 1e-3);
  CHECK(gen.tau0 <= 1e-10);
  CHECK(gen.limit <= 1e-2);
  CHECK(gen.identity <= 1e-9);
}

TEST_CASE("oracle surface sanity") {
  // det and adjugate agree through the defining identity on an 8x8 symbol.
  const BackgroundField f = BackgroundField::constant(1.3, 0.8, {0.5, 1, -0.2}, 1.5);
  const BackgroundEval bg = eval_background(f, 0, {0, 0, 0});
  PhasePoint pt;
  pt.tau = 0.9;
  pt.xi = {0.3, -1.1, 0.7};
  const MatrixSymbol q = symbols::build_q(pt, bg);
  const MatrixSymbol adj = numeric_adjugate(q);
  const cplx det = numeric_det(q);
  MatrixSymbol rhs(8);
  for (int i = 0; i < 8; i++) rhs(i, i) = det;
  CHECK(norm_inf(adj * q - rhs) <= 1e-9 * (1.0 + norm_inf(adj) * norm_inf(q)));
}

TEST_CASE("report serialization carries every check") {
  SuiteOptions opt;
  opt.n_samples = 30;
  opt.seed = 3;
  const VerifyReport rep = run_identity_suite(opt);
  const std::string text = rep.to_text();
  const std::string csv = rep.to_csv();
  for (const CheckResult& c : rep.checks) {
    CHECK(text.find(c.name) != std::string::npos);
    CHECK(csv.find(c.name) != std::string::npos);
  }
  CHECK(csv.rfind("check,name,samples,max_residual,tolerance,pass\n", 0) == 0);
}

TEST_CASE("fixed-background mode uses the given field") {
  BackgroundField f;
  f.gamma = 5.0 / 3.0;
  f.rho = parse_expr("1 + 0.1*tanh(x2)");
  f.p = constant_expr(1.0);
  f.H[0] = constant_expr(1.0);
  f.H[1] = constant_expr(0.3);
  f.H[2] = constant_expr(0.0);
  SuiteOptions opt;
  opt.n_samples = 60;
  opt.seed = 5;
  opt.fixed_background = &f;
  const VerifyReport rep = run_identity_suite(opt);
  for (const CheckResult& c : rep.checks) {
    INFO(c.name, " residual=", c.max_residual, " samples=", c.samples);
    CHECK(c.pass);
  }
}
