// Acceptance suite: one pass/fail line per criterion. Exercises the library
// end to end at the pinned tolerances; criterion 11 drives the CLI binary
// (path expected as argv[1]).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mhdpol/background.hpp"
#include "mhdpol/classify.hpp"
#include "mhdpol/errors.hpp"
#include "mhdpol/geometry.hpp"
#include "mhdpol/rng.hpp"
#include "mhdpol/spectra.hpp"
#include "mhdpol/symbols.hpp"
#include "mhdpol/verify.hpp"

using namespace mhdpol;

namespace {

int g_failed = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion,
              name.c_str(), detail.c_str());
  if (!pass) g_failed++;
}

struct DrawnSample {
  BackgroundEval bg;
  PhasePoint pt;
};

BackgroundEval const_bg(double rho, double p, Vec3 H, double gamma) {
  return eval_background(BackgroundField::constant(rho, p, H, gamma), 0.0, {0, 0, 0});
}

DrawnSample draw(SplitMix64& rng) {
  DrawnSample s;
  s.bg = const_bg(rng.log_uniform(0.1, 10.0), rng.log_uniform(0.1, 10.0),
                  {rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)},
                  rng.uniform(1.1, 2.0));
  s.pt.xi = rng.log_uniform(0.1, 10.0) * rng.unit_vec3();
  s.pt.tau = rng.sign() * rng.log_uniform(0.1, 10.0);
  return s;
}

bool margins_ok(const BackgroundEval& bg, const Vec3& xi, double m) {
  const double xin = norm(xi), hn = norm(bg.H);
  if (hn < 1e-3) return false;
  if (std::abs(dot(xi, bg.H)) < m * xin * hn) return false;
  if (norm(cross(xi, bg.H)) < m * xin * hn) return false;
  const double h2 = hn * hn, rc2 = bg.rho * bg.c2;
  return std::abs(h2 - rc2) >= m * (h2 + rc2);
}

double on_sheet_tau(int sheet, const BackgroundEval& bg, const Vec3& xi, double sign) {
  const spectra::WaveSpeeds ws = spectra::wave_speeds(bg, xi);
  const double xin = norm(xi);
  if (sheet == 1) return sign * std::abs(dot(bg.H, xi)) / std::sqrt(bg.rho);
  if (sheet == 2) return sign * std::sqrt(ws.cs2) * xin;
  return sign * std::sqrt(ws.cf2) * xin;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// --- criterion 1: determinant factorization ---------------------------------
void criterion_det() {
  SplitMix64 rng(1001);
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  long kept = 0;
  for (int i = 0; i < 10000; i++) {
    const DrawnSample s = draw(rng);
    const MatrixSymbol q = symbols::build_q(s.pt, s.bg);
    if (lu_cond(q) >= 1e8) continue;
    kept++;
    const double lu = lu_det(q).real();
    const double f = symbols::det_q(s.pt, s.bg);
    worst = std::max(worst, std::abs(lu - f) / std::max({std::abs(lu), std::abs(f), 1e-300}));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass = worst <= 1e-9 && kept >= 9000 && secs <= 10.0;
  report(1, "determinant factorization",
         pass, "max rel " + fmt(worst) + ", " + std::to_string(kept) + " samples, " + fmt(secs) + " s");
}

// --- criterion 2: eigenvalue lemma ------------------------------------------
bool multiplicities_match_dense(const BackgroundEval& bg, const Vec3& xi) {
  const spectra::MultiplicityCase mc = spectra::multiplicity_case(bg, xi);
  const std::vector<double> dense =
      eig_symmetrizable(symbols::build_A(bg, xi), symbols::symmetrizer(bg));
  double lmax = 1.0;
  for (double v : dense) lmax = std::max(lmax, std::abs(v));
  std::size_t k = 0;
  for (const auto& [value, mult] : mc.eigenvalues)
    for (int m = 0; m < mult; m++) {
      if (k >= 8 || std::abs(dense[k] - value) > 1e-7 * lmax) return false;
      k++;
    }
  return k == 8;
}

void criterion_eigen() {
  SplitMix64 rng(1002);
  double worst = 0.0;
  for (int i = 0; i < 10000; i++) {
    const DrawnSample s = draw(rng);
    const auto formula = spectra::eigenvalues_A(s.bg, s.pt.xi);
    const std::vector<double> dense =
        eig_symmetrizable(symbols::build_A(s.bg, s.pt.xi), symbols::symmetrizer(s.bg));
    double lmax = 0.0;
    for (double v : formula) lmax = std::max(lmax, std::abs(v));
    for (int k = 0; k < 8; k++)
      worst = std::max(worst, std::abs(formula[k] -
                                       dense[k]) /
                                  (1.0 + lmax));
  }
  int built[3] = {0, 0, 0}, matched[3] = {0, 0, 0};
  while (built[0] < 300 || built[1] < 300 || built[2] < 300) {
    const DrawnSample s = draw(rng);
    const double hn = norm(s.bg.H);
    if (hn < 0.1) continue;
    const double h2 = hn * hn, rc2 = s.bg.rho * s.bg.c2;
    if (std::abs(h2 - rc2) < 1e-3 * (h2 + rc2)) continue;
    for (int mode = 0; mode < 3; mode++) {
      if (built[mode] >= 300) continue;
      Vec3 xi = s.pt.xi;
      if (mode == 0 && !margins_ok(s.bg, xi, 1e-3)) continue;
      if (mode == 1) {
        xi = xi - (dot(xi, s.bg.H) / (hn * hn)) * s.bg.H;
        if (norm(xi) < 1e-3) continue;
      }
      if (mode == 2) xi = norm(s.pt.xi) / hn * s.bg.H;
      built[mode]++;
      if (multiplicities_match_dense(s.bg, xi)) matched[mode]++;
    }
  }
  const bool pass = worst <= 1e-8 && matched[0] == 300 && matched[1] == 300 && matched[2] == 300;
  report(2, "eigenvalue lemma",
         pass, "max dev " + fmt(worst) + ", case matches " + std::to_string(matched[0]) + "/" +
             std::to_string(matched[1]) + "/" + std::to_string(matched[2]) + " of 300");
}

// --- criterion 3: symmetrizer ------------------------------------------------
void criterion_symmetrizer() {
  SplitMix64 rng(1003);
  double worst = 0.0;
  bool pd = true;
  for (int i = 0; i < 10000; i++) {
    const DrawnSample s = draw(rng);
    const MatrixSymbol sym = symbols::symmetrizer(s.bg);
    if (jacobi_eig_sym(sym).front() <= 0.0) pd = false;
    const MatrixSymbol sa = sym * symbols::build_A(s.bg, s.pt.xi);
    worst = std::max(worst, sym_defect(sa) / std::max(norm_inf(sa), 1e-300));
  }
  const bool pass = pd && worst <= 1e-12;
  report(3, "symmetrizer", pass, std::string(pd ? "SPD, " : "NOT PD, ") + "max asym " + fmt(worst));
}

// --- criterion 4: projector algebra ------------------------------------------
void criterion_projectors() {
  SplitMix64 rng(1004);
  double worst = 0.0;
  long used = 0;
  while (used < 1000) {
    const DrawnSample s = draw(rng);
    if (!spectra::projector_hypotheses_ok(s.bg, s.pt.xi, 1e-3)) continue;
    used++;
    const spectra::ProjectorTriple pi = spectra::build_projectors(s.pt, s.bg);
    const spectra::SheetFactors q = spectra::sheet_factors(s.pt, s.bg);
    double pmax = 1.0;
    for (int j = 1; j <= 3; j++) {
      const MatrixSymbol& p = pi[j];
      const double pn = 1.0 + norm_inf(p);
      pmax = std::max(pmax, pn);
      worst = std::max(worst, norm_inf(p * p - p) / (pn * pn));
      worst = std::max(worst, std::abs(trace(p).real() - 1.0) / pn);
      worst = std::max(worst, sym_defect(p) / pn);
    }
    worst = std::max(worst, norm_inf(pi.pi1 * pi.pi2) / (1 + norm_inf(pi.pi1) * norm_inf(pi.pi2)));
    worst = std::max(worst, norm_inf(pi.pi1 * pi.pi3) / (1 + norm_inf(pi.pi1) * norm_inf(pi.pi3)));
    worst = std::max(worst, norm_inf(pi.pi2 * pi.pi3) / (1 + norm_inf(pi.pi2) * norm_inf(pi.pi3)));
    worst = std::max(worst,
                     norm_inf(pi.pi1 + pi.pi2 + pi.pi3 - MatrixSymbol::identity(3)) / pmax);
    const MatrixSymbol sum = q.q1 * pi.pi1 + q.q2 * pi.pi2 + q.q3 * pi.pi3;
    const double scale = 1.0 + std::abs(q.q1) * norm_inf(pi.pi1) +
                         std::abs(q.q2) * norm_inf(pi.pi2) + std::abs(q.q3) * norm_inf(pi.pi3);
    worst = std::max(worst, norm_inf(sum - symbols::build_p2(s.pt, s.bg)) / scale);
  }
  report(4, "projector algebra", worst <= 1e-9, "max residual " + fmt(worst) + " on 1000 points");
}

// --- criterion 5: parametrix identities ---------------------------------------
void criterion_parametrix() {
  SplitMix64 rng(1005);
  double worst = 0.0;
  bool pass = true;
  for (int sheet = 1; sheet <= 3; sheet++) {
    long used = 0;
    long attempts = 0;
    while (used < 1000 && attempts < 200000) {
      attempts++;
      DrawnSample s = draw(rng);
      if (!margins_ok(s.bg, s.pt.xi, 1e-3)) continue;
      if (used % 2 == 0)
        s.pt.tau = on_sheet_tau(sheet, s.bg, s.pt.xi, (used % 4 == 0) ? 1.0 : -1.0);
      try {
        const MatrixSymbol ptld = symbols::build_ptilde(s.pt, s.bg, sheet);
        const MatrixSymbol p2 = symbols::build_p2(s.pt, s.bg);
        const spectra::SheetFactors q = spectra::sheet_factors(s.pt, s.bg);
        MatrixSymbol rhs(3);
        for (int i = 0; i < 3; i++) rhs(i, i) = q[sheet];
        worst = std::max(worst,
                         norm_inf(ptld * p2 - rhs) / (1.0 + norm_inf(ptld) * norm_inf(p2)));
        used++;
      } catch (const DegenerateMode&) {
        continue;
      }
    }
    pass = pass && used == 1000;
  }
  pass = pass && worst <= 1e-8;
  report(5, "parametrix identities", pass, "max residual " + fmt(worst) + ", 1000 per sheet");
}

// --- criterion 6: transport lemmas --------------------------------------------
BackgroundField analytic_field(SplitMix64& rng) {
  auto num = [&](double a, double b) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", rng.uniform(a, b));
    return std::string(buf);
  };
  BackgroundField f;
  f.gamma = rng.uniform(1.1, 2.0);
  f.rho = parse_expr(num(0.5, 2.0) + "*(1+0.1*tanh(x2+" + num(-1, 1) + "))");
  f.p = parse_expr(num(0.5, 2.0) + "*(1+0.05*sin(x1+" + num(-1, 1) + "))");
  f.H[0] = parse_expr(num(0.5, 2.0) + "+0.1*tanh(x3+" + num(-1, 1) + ")");
  f.H[1] = parse_expr(num(-1.0, 1.0) + "+0.1*sin(x1+" + num(-1, 1) + ")");
  f.H[2] = parse_expr(num(-1.0, 1.0) + "+0.1*cos(x2+" + num(-1, 1) + ")");
  return f;
}

void criterion_transport_lemmas() {
  SplitMix64 rng(1006);
  double worst_ps = 0.0, worst_bracket = 0.0;
  long used = 0;
  long attempts = 0;
  while (used < 300 && attempts < 20000) {
    attempts++;
    const BackgroundField f = analytic_field(rng);
    PhasePoint pt;
    pt.t = rng.uniform(-0.3, 0.3);
    pt.x = {rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
    pt.xi = rng.log_uniform(0.5, 2.0) * rng.unit_vec3();
    BackgroundEval bg;
    try {
      bg = eval_background(f, pt.t, pt.x);
    } catch (const Error&) {
      continue;
    }
    if (!spectra::projector_hypotheses_ok(bg, pt.xi, 5e-2)) continue;
    const int sheet = static_cast<int>(used % 3) + 1;
    pt.tau = on_sheet_tau(sheet, bg, pt.xi, (used % 2 == 0) ? 1.0 : -1.0);
    try {
      const MatrixSymbol ptld = symbols::build_ptilde(pt, bg, sheet);
      const MatrixSymbol ps = symbols::build_subprincipal_closed(pt, bg);
      const MatrixSymbol pi = spectra::build_projectors(pt, bg)[sheet];
      worst_ps = std::max(worst_ps, norm_inf(ptld * ps * pi) /
                                        (1.0 + norm_inf(ptld) * norm_inf(ps) * norm_inf(pi)));

      const geometry::SymbolFn p2fn = geometry::make_p2_fn(f);
      const geometry::SymbolFn ptfn = geometry::make_ptilde_fn(f, sheet);
      const geometry::SymbolFn pifn = geometry::make_projector_fn(f, sheet);
      const geometry::SymbolFn qfn = geometry::make_sheet_scalar_fn(f, sheet);
      const MatrixSymbol bracket = geometry::poisson_bracket_matrix(ptfn, p2fn, pt);
      const MatrixSymbol hpi = geometry::poisson_bracket_matrix(qfn, pifn, pt);
      // take a = dominant column of pi (spans its rank-one range)
      int best = 0;
      double bn = -1;
      for (int j = 0; j < 3; j++) {
        double n = 0;
        for (int i = 0; i < 3; i++) n += std::norm(pi(i, j));
        if (n > bn) { bn = n; best = j; }
      }
      std::array<cplx, 3> a = {pi(0, best), pi(1, best), pi(2, best)};
      const std::array<cplx, 3> pa = apply3(pi, a);
      const std::array<cplx, 3> lhs = apply3(bracket, pa);
      const std::array<cplx, 3> hp = apply3(hpi, a);
      double rn = 0, ln = 0, hn2 = 0;
      for (int i = 0; i < 3; i++) {
        rn += std::norm(lhs[i] + 2.0 * hp[i]);
        ln += std::norm(lhs[i]);
        hn2 += std::norm(hp[i]);
      }
      worst_bracket = std::max(worst_bracket,
                               std::sqrt(rn) / (1.0 + std::sqrt(ln) + 2.0 * std::sqrt(hn2)));
      used++;
    } catch (const Error&) {
      continue;
    }
  }
  const bool pass = used == 300 && worst_ps <= 1e-6 && worst_bracket <= 1e-5;
  report(6, "transport lemmas", pass,
         "ptilde p^s pi " + fmt(worst_ps) + ", bracket " + fmt(worst_bracket) + ", " +
             std::to_string(used) + " Char-P samples");
}

// --- criterion 7: kernel structure --------------------------------------------
void criterion_kernels() {
  SplitMix64 rng(1007);
  int mhd_dims = 0, uni_dims = 0, mhd_orders = 0, uni_orders = 0, sheet_orders = 0;
  double worst_map = 0.0;
  double worst_neg = 1.0;
  int built = 0;
  while (built < 100) {
    const DrawnSample s = draw(rng);
    const double hn = norm(s.bg.H);
    if (hn < 0.1) continue;
    const double h2 = hn * hn, rc2 = s.bg.rho * s.bg.c2;
    if (std::abs(h2 - rc2) < 1e-3 * (h2 + rc2)) continue;
    Vec3 perp = s.pt.xi - (dot(s.pt.xi, s.bg.H) / (hn * hn)) * s.bg.H;
    if (norm(perp) < 1e-3) continue;
    built++;

    PhasePoint mhd;
    mhd.xi = (1.0 / norm(perp)) * perp;
    mhd.tau = 0.0;
    if (spectra::kernel_basis(symbols::build_q(mhd, s.bg), 1e-10).size() == 6) mhd_dims++;
    if (classify::vanishing_order(mhd, s.bg, 8).value_or(-1) == 6) mhd_orders++;
    worst_map = std::max(worst_map,
                         classify::check_kernel_mapping(mhd, s.bg, classify::Regime::MHDTypeSigma2));
    PhasePoint neg = mhd;
    neg.tau += 0.1 * (1.0 + std::abs(mhd.tau));
    worst_neg = std::min(worst_neg, classify::check_kernel_mapping(
                                        neg, s.bg, classify::Regime::MHDTypeSigma2));

    PhasePoint uni;
    uni.xi = (1.0 / hn) * s.bg.H;
    uni.tau = hn / std::sqrt(s.bg.rho);
    if (spectra::kernel_basis(symbols::build_q(uni, s.bg), 1e-10).size() == 2) uni_dims++;
    if (classify::vanishing_order(uni, s.bg, 8).value_or(-1) == 2) uni_orders++;
    worst_map = std::max(worst_map, classify::check_kernel_mapping(
                                        uni, s.bg, classify::Regime::UniaxialSigma2));
    PhasePoint negu = uni;
    negu.tau += 0.1 * (1.0 + std::abs(uni.tau));
    worst_neg = std::min(worst_neg, classify::check_kernel_mapping(
                                        negu, s.bg, classify::Regime::UniaxialSigma2));

    // Simple sheet point: only the fast factor vanishes.
    PhasePoint simple = s.pt;
    simple.tau = on_sheet_tau(3, s.bg, s.pt.xi, 1.0);
    if (margins_ok(s.bg, s.pt.xi, 1e-2) &&
        classify::vanishing_order(simple, s.bg, 8).value_or(-1) == 1)
      sheet_orders++;
  }
  const bool pass = mhd_dims == 100 && uni_dims == 100 && mhd_orders == 100 &&
                    uni_orders == 100 && sheet_orders >= 60 && worst_map <= 1e-8 &&
                    worst_neg >= 1e-3;
  report(7, "kernel structure", pass,
         "dims " + std::to_string(mhd_dims) + "/" + std::to_string(uni_dims) +
             ", orders " + std::to_string(mhd_orders) + "/" + std::to_string(uni_orders) +
             ", map " + fmt(worst_map) + ", neg " + fmt(worst_neg));
}

// --- criterion 8: rays ---------------------------------------------------------
void criterion_rays() {
  // (a) constant-background ray: drift and affinity.
  const BackgroundField cf = BackgroundField::constant(1.0, 0.9, {1, 0.4, 0}, 5.0 / 3.0);
  PhasePoint start;
  start.x = {0.3, -0.2, 0.1};
  start.xi = {1.0, 0.5, -0.4};
  start.tau = 1.0;
  geometry::RayOptions opt;
  opt.span = 2.0;
  opt.project_tau = true;
  const geometry::Ray ray = geometry::trace_ray(start, 1, cf, opt);
  double affine_dev = 0.0;
  {
    // least-squares line per coordinate
    const std::size_t n = ray.samples.size();
    double sx = 0, sxx = 0;
    for (const auto& smp : ray.samples) {
      sx += smp.s;
      sxx += smp.s * smp.s;
    }
    for (int coord = 0; coord < 3; coord++) {
      double sy = 0, sxy = 0;
      for (const auto& smp : ray.samples) {
        sy += smp.pt.x[coord];
        sxy += smp.s * smp.pt.x[coord];
      }
      const double dn = static_cast<double>(n);
      const double b = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
      const double a = (sy - b * sx) / dn;
      for (const auto& smp : ray.samples)
        affine_dev = std::max(affine_dev,
                              std::abs(a + b * smp.s - smp.pt.x[coord]));
    }
  }

  // (b) varying background drift.
  BackgroundField tf;
  tf.gamma = 5.0 / 3.0;
  tf.rho = parse_expr("1 + 0.1*tanh(x2)");
  tf.p = constant_expr(1.0);
  tf.H[0] = constant_expr(1.0);
  tf.H[1] = constant_expr(0.0);
  tf.H[2] = constant_expr(0.0);
  PhasePoint vstart;
  vstart.x = {0, -0.5, 0};
  vstart.xi = {1.0, 0.3, 0.2};
  vstart.tau = 1.0;
  geometry::RayOptions vopt;
  vopt.span = 3.0;
  vopt.project_tau = true;
  double vdrift = 1.0;
  bool vstopped = true;
  {
    const geometry::Ray vray = geometry::trace_ray(vstart, 1, tf, vopt);
    vdrift = vray.q_drift;
    vstopped = vray.stopped;
  }

  // (c) analytic vs finite-difference Hamilton fields.
  BackgroundField wf;
  wf.gamma = 1.4;
  wf.rho = parse_expr("1.2 + 0.2*tanh(x2)");
  wf.p = parse_expr("0.8 + 0.1*sin(x1)");
  wf.H[0] = parse_expr("1 + 0.15*cos(x3)");
  wf.H[1] = parse_expr("0.3*sin(x2)");
  wf.H[2] = constant_expr(0.4);
  SplitMix64 rng(1008);
  double worst_fd = 0.0;
  for (int sheet = 1; sheet <= 3; sheet++) {
    int used = 0;
    while (used < 1000) {
      PhasePoint pt;
      pt.t = rng.uniform(-0.5, 0.5);
      pt.x = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
      pt.tau = rng.sign() * rng.log_uniform(0.3, 3.0);
      pt.xi = rng.log_uniform(0.3, 3.0) * rng.unit_vec3();
      const BackgroundEval bg = eval_background(wf, pt.t, pt.x);
      if (norm(cross(pt.xi, bg.H)) < 1e-2 * norm(bg.H) * norm(pt.xi)) continue;
      used++;
      const auto an = geometry::hamilton_field(sheet, pt, bg);
      auto value = [&](const PhasePoint& p) {
        return geometry::sheet_value(sheet, p, eval_background(wf, p.t, p.x));
      };
      std::array<double, 8> fd{};
      const double h = 1e-6 * (std::abs(pt.tau) + norm(pt.xi) + 1.0);
      auto diff = [&](int coord) {
        PhasePoint plus = pt, minus = pt;
        double* sp[8] = {&plus.t, &plus.x[0], &plus.x[1], &plus.x[2],
                         &plus.tau, &plus.xi[0], &plus.xi[1], &plus.xi[2]};
        double* sm[8] = {&minus.t, &minus.x[0], &minus.x[1], &minus.x[2],
                         &minus.tau, &minus.xi[0], &minus.xi[1], &minus.xi[2]};
        *sp[coord] += h;
        *sm[coord] -= h;
        return (value(plus) - value(minus)) / (2 * h);
      };
      fd = {diff(4), diff(5), diff(6), diff(7), -diff(0), -diff(1), -diff(2), -diff(3)};
      double scale = 1.0;
      for (double v : an) scale = std::max(scale, std::abs(v));
      for (int i = 0; i < 8; i++)
        worst_fd = std::max(worst_fd, std::abs(an[i] -
                                               fd[i]) /
                                          scale);
    }
  }

  const bool pass = !ray.stopped && ray.q_drift <= 1e-6 && affine_dev <= 1e-9 &&
                    !vstopped && vdrift <= 1e-6 && worst_fd <= 1e-6;
  report(8, "bicharacteristic rays", pass,
         "drift " + fmt(ray.q_drift) + "/" + fmt(vdrift) + ", affine dev " +
             fmt(affine_dev) + ", FD dev " + fmt(worst_fd));
}

// --- criterion 9: polarization transport ---------------------------------------
void criterion_transport() {
  BackgroundField tf;
  tf.gamma = 5.0 / 3.0;
  tf.rho = parse_expr("1 + 0.1*tanh(x2)");
  tf.p = constant_expr(1.0);
  tf.H[0] = constant_expr(1.0);
  tf.H[1] = constant_expr(0.0);
  tf.H[2] = constant_expr(0.0);
  PhasePoint start;
  start.x = {0, -0.5, 0};
  start.xi = {1.0, 0.3, 0.2};
  start.tau = 1.0;
  geometry::RayOptions opt;
  opt.span = 3.0;
  opt.project_tau = true;
  const geometry::Ray ray = geometry::trace_ray(start, 1, tf, opt);
  bool pass = !ray.stopped;
  double dir_dev = 1.0, kres = 1.0;
  if (pass) {
    const BackgroundEval bg0 =
        eval_background(tf, ray.samples.front().pt.t, ray.samples.front().pt.x);
    const auto kernel =
        spectra::kernel_basis(symbols::build_p2(ray.samples.front().pt, bg0), 1e-8);
    pass = kernel.size() == 1;
    if (pass) {
      const std::array<cplx, 3> w0 = {kernel[0][0], kernel[0][1], kernel[0][2]};
      const geometry::PolarizationFrame a = geometry::dencker_transport(ray, tf, w0);
      const geometry::PolarizationFrame b = geometry::simplified_transport(ray, tf, w0);
      kres = std::max(a.max_kernel_residual, b.max_kernel_residual);
      dir_dev = 0.0;
      for (std::size_t i = 0; i < a.samples.size() && i < b.samples.size(); i++)
        dir_dev = std::max(dir_dev, geometry::direction_distance(a.samples[i].direction,
                                                                 b.samples[i].direction));
      pass = kres <= 1e-6 && dir_dev <= 1e-5 && a.samples.size() == ray.samples.size();
    }
  }
  report(9, "polarization transport", pass,
         "kernel residual " + fmt(kres) + ", direction dev " + fmt(dir_dev));
}

// --- criterion 10: mutation sensitivity ----------------------------------------
void criterion_mutation() {
  verify::SuiteOptions opt;
  opt.n_samples = 150;
  opt.seed = 7;
  opt.overrides.p2 = [](const PhasePoint& pt, const BackgroundEval& bg) {
    const double hxi = dot(bg.H, pt.xi);
    const MatrixSymbol sym = outer(pt.xi, bg.H) + outer(bg.H, pt.xi);
    return symbols::build_p2(pt, bg) - 2.0 * hxi * sym;
  };
  const verify::VerifyReport rep = verify::run_identity_suite(opt);
  int failing = 0;
  for (const auto& c : rep.checks) failing += c.pass ? 0 : 1;
  report(10, "mutation sensitivity", failing >= 3,
         std::to_string(failing) + " checks fail under the sign flip");
}

// --- criterion 11: end-to-end determinism ----------------------------------------
void criterion_cli(const std::string& bin) {
  if (bin.empty()) {
    report(11, "end-to-end determinism", false, "mhdpol binary path not provided");
    return;
  }
  auto run_verify = [&](const std::string& out) {
    const std::string cmd = bin + " verify --seed 42 --samples 1000 > " + out + " 2>/dev/null";
    const int raw = std::system(cmd.c_str());
    return WEXITSTATUS(raw);
  };
  const auto t0 = std::chrono::steady_clock::now();
  const int rc1 = run_verify("acc_verify_1.txt");
  const int rc2 = run_verify("acc_verify_2.txt");
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string a = slurp("acc_verify_1.txt");
  const std::string b = slurp("acc_verify_2.txt");
  const bool pass = rc1 == 0 && rc2 == 0 && !a.empty() && a == b && secs <= 60.0;
  report(11, "end-to-end determinism", pass,
         "exit " + std::to_string(rc1) + "/" + std::to_string(rc2) +
             (a == b ? ", byte-identical" : ", OUTPUTS DIFFER") + ", " + fmt(secs) + " s for both runs");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string bin = argc > 1 ? argv[1] : "";
  criterion_det();
  criterion_eigen();
  criterion_symmetrizer();
  criterion_projectors();
  criterion_parametrix();
  criterion_transport_lemmas();
  criterion_kernels();
  criterion_rays();
  criterion_transport();
  criterion_mutation();
  criterion_cli(bin);
  if (g_failed == 0) std::printf("acceptance: all 11 criteria pass\n");
  else std::printf("acceptance: %d criteria FAILED\n", g_failed);
  return g_failed;
}
