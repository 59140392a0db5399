// mhdpol - identity suite: every closed-form symbol relation checked against
// generic dense linear algebra on seeded random samples

#include "mhdpol/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mhdpol/classify.hpp"
#include "mhdpol/errors.hpp"
#include "mhdpol/geometry.hpp"
#include "mhdpol/rng.hpp"
#include "mhdpol/spectra.hpp"
#include "mhdpol/symbols.hpp"

namespace mhdpol::verify {

cplx numeric_det(const MatrixSymbol& m) { return lu_det(m); }

MatrixSymbol numeric_adjugate(const MatrixSymbol& m) { return adjugate(m); }

std::vector<double> numeric_eig_sym(const MatrixSymbol& m) { return jacobi_eig_sym(m); }

std::vector<std::array<cplx, 8>> numeric_kernel(const MatrixSymbol& m, double tol_factor) {
  return kernel_basis(m, tol_factor);
}

AdjugateResiduals check_adjugate_factorization(const BackgroundEval& bg, const Vec3& xi,
                                               double tau_probe) {
  AdjugateResiduals out;

  // (a) adj(q) vanishes entrywise at tau = 0; entry scale ||q||^7.
  PhasePoint p0;
  p0.xi = xi;
  p0.tau = 0.0;
  const MatrixSymbol q0 = symbols::build_q(p0, bg);
  const double qn = std::max(norm_inf(q0), 1e-300);
  out.tau0 = norm_inf(adjugate(q0)) / std::pow(qn, 7);

  // (b) adj(q)/tau approaches a finite limit: compare two small tau values.
  auto scaled_adj = [&](double tau) {
    PhasePoint p = p0;
    p.tau = tau;
    return (1.0 / tau) * adjugate(symbols::build_q(p, bg));
  };
  const MatrixSymbol m1 = scaled_adj(tau_probe);
  const MatrixSymbol m2 = scaled_adj(tau_probe / 10.0);
  const double m2n = norm_inf(m2);
  double worst = 0.0;
  for (int i = 0; i < 64; i++) {
    if (std::abs(m2.e[i]) < 1e-2 * m2n) continue;
    worst = std::max(worst, std::abs(m1.e[i] / m2.e[i] - 1.0));
  }
  out.limit = worst;

  // (c) 3x3 analogue: adj(p2) p2 = det(p2) Id3.
  PhasePoint pg = p0;
  pg.tau = tau_probe * 3.0 + 1.0;
  const MatrixSymbol p2 = symbols::build_p2(pg, bg);
  const MatrixSymbol lhs = adjugate(p2) * p2;
  MatrixSymbol rhs(3);
  const cplx d = lu_det(p2);
  for (int i = 0; i < 3; i++) rhs(i, i) = d;
  out.identity = norm_inf(lhs - rhs) / (1.0 + norm_inf(adjugate(p2)) * norm_inf(p2));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kMarginAlg = 1e-3;  // hypothesis margin for algebraic checks
constexpr double kMarginFd = 5e-2;   // wider margin where finite differences enter

struct Sample {
  double rho0 = 1.0, p0 = 1.0, gamma = 5.0 / 3.0;
  Vec3 H0{};
  PhasePoint pt;
  std::uint64_t probe_seed = 0;
};

struct Ctx {
  Sample s;
  BackgroundField const_field;
  BackgroundField vary_field;
  BackgroundEval bgc;  // constant-coefficient evaluation at pt
  BackgroundEval bgv;  // varying-background evaluation at pt
  bool valid = false;
};

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

BackgroundField make_vary_field(const Sample& s, SplitMix64& rng) {
  const double d0 = rng.uniform(-1.0, 1.0), d1 = rng.uniform(-1.0, 1.0),
               d2 = rng.uniform(-1.0, 1.0), d3 = rng.uniform(-1.0, 1.0),
               d4 = rng.uniform(-1.0, 1.0);
  const double b1 = rng.uniform(-1.0, 1.0), b2 = rng.uniform(-1.0, 1.0),
               b3 = rng.uniform(-1.0, 1.0);
  BackgroundField f;
  f.gamma = s.gamma;
  f.rho = parse_expr(fmt_num(s.rho0) + "*(1+0.1*tanh(x2+" + fmt_num(d0) + "))");
  f.p = parse_expr(fmt_num(s.p0) + "*(1+0.05*sin(x1+" + fmt_num(d1) + "))");
  f.H[0] = parse_expr(fmt_num(s.H0[0]) + "+0.1*" + fmt_num(b1) + "*tanh(x3+" + fmt_num(d2) + ")");
  f.H[1] = parse_expr(fmt_num(s.H0[1]) + "+0.1*" + fmt_num(b2) + "*sin(x1+" + fmt_num(d3) + ")");
  f.H[2] = parse_expr(fmt_num(s.H0[2]) + "+0.1*" + fmt_num(b3) + "*cos(x2+" + fmt_num(d4) + ")");
  return f;
}

bool margins_ok(const BackgroundEval& bg, const Vec3& xi, double m) {
  const double xin = norm(xi);
  const double hn = norm(bg.H);
  if (hn < 1e-3) return false;
  if (std::abs(dot(xi, bg.H)) < m * xin * hn) return false;
  if (norm(cross(xi, bg.H)) < m * xin * hn) return false;
  const double h2 = hn * hn, rc2 = bg.rho * bg.c2;
  if (std::abs(h2 - rc2) < m * (h2 + rc2)) return false;
  return true;
}

// tau solving the requested sheet at the sample's (x, xi).
double on_sheet_tau(int sheet, const BackgroundEval& bg, const Vec3& xi, double sign) {
  const spectra::WaveSpeeds ws = spectra::wave_speeds(bg, xi);
  const double xin = norm(xi);
  double target = 0.0;
  if (sheet == 1) target = std::abs(dot(bg.H, xi)) / std::sqrt(bg.rho);
  else if (sheet == 2) target = std::sqrt(ws.cs2) * xin;
  else target = std::sqrt(ws.cf2) * xin;
  return sign * target;
}

MatrixSymbol eval_p2(const PhasePoint& pt, const BackgroundEval& bg,
                     const SymbolOverrides& ov) {
  return ov.p2 ? ov.p2(pt, bg) : symbols::build_p2(pt, bg);
}

// Dominant column of a rank-one projector, normalized: spans its range.
std::array<cplx, 3> projector_line(const MatrixSymbol& pi) {
  int best = 0;
  double best_n = -1.0;
  for (int j = 0; j < 3; j++) {
    double n = 0.0;
    for (int i = 0; i < 3; i++) n += std::norm(pi(i, j));
    if (n > best_n) {
      best_n = n;
      best = j;
    }
  }
  std::array<cplx, 3> a{};
  double n = 0.0;
  for (int i = 0; i < 3; i++) {
    a[i] = pi(i, best);
    n += std::norm(pi(i, best));
  }
  n = std::sqrt(n);
  for (auto& v : a) v /= n;
  return a;
}

double vec_norm3(const std::array<cplx, 3>& v) {
  return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

using CheckFn = std::function<std::optional<double>(const Ctx&, const SymbolOverrides&)>;

struct CheckSpec {
  std::string name;
  double tolerance;
  CheckFn fn;
};

std::optional<double> chk_det_factorization(const Ctx& c, const SymbolOverrides&) {
  const MatrixSymbol q = symbols::build_q(c.s.pt, c.bgc);
  if (lu_cond(q) >= 1e8) return std::nullopt;
  const double a = lu_det(q).real();
  const double b = symbols::det_q(c.s.pt, c.bgc);
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

std::optional<double> chk_eigenvalue_formula(const Ctx& c, const SymbolOverrides&) {
  const std::array<double, 8> formula = spectra::eigenvalues_A(c.bgc, c.s.pt.xi);
  const MatrixSymbol a = symbols::build_A(c.bgc, c.s.pt.xi);
  const MatrixSymbol s = symbols::symmetrizer(c.bgc);
  const std::vector<double> dense = eig_symmetrizable(a, s);
  double dev = 0.0, lmax = 0.0;
  for (int i = 0; i < 8; i++) {
    dev = std::max(dev, std::abs(formula[i] - dense[i]));
    lmax = std::max(lmax, std::abs(formula[i]));
  }
  return dev / (1.0 + lmax);
}

std::optional<double> chk_symmetrizer(const Ctx& c, const SymbolOverrides&) {
  const MatrixSymbol s = symbols::symmetrizer(c.bgc);
  const std::vector<double> ev = jacobi_eig_sym(s);
  if (ev.front() <= 0.0) return 1.0;  // loses positive definiteness: hard fail
  const MatrixSymbol sa = s * symbols::build_A(c.bgc, c.s.pt.xi);
  return sym_defect(sa) / std::max(norm_inf(sa), 1e-300);
}

std::optional<double> chk_projector_algebra(const Ctx& c, const SymbolOverrides& ov) {
  if (!spectra::projector_hypotheses_ok(c.bgc, c.s.pt.xi, kMarginAlg)) return std::nullopt;
  const spectra::ProjectorTriple pi = spectra::build_projectors(c.s.pt, c.bgc);
  const spectra::SheetFactors q = spectra::sheet_factors(c.s.pt, c.bgc);
  double r = 0.0;
  const MatrixSymbol id = MatrixSymbol::identity(3);
  double max_pin = 1.0;
  for (int j = 1; j <= 3; j++) {
    const MatrixSymbol& p = pi[j];
    const double pn = 1.0 + norm_inf(p);
    max_pin = std::max(max_pin, pn);
    r = std::max(r, norm_inf(p * p - p) / (pn * pn));
    r = std::max(r, std::abs(trace(p) - 1.0) / pn);
    r = std::max(r, sym_defect(p) / pn);
    r = std::max(r, imag_defect(p) / pn);
  }
  r = std::max(r, norm_inf(pi.pi1 * pi.pi2) / (1.0 + norm_inf(pi.pi1) * norm_inf(pi.pi2)));
  r = std::max(r, norm_inf(pi.pi1 * pi.pi3) / (1.0 + norm_inf(pi.pi1) * norm_inf(pi.pi3)));
  r = std::max(r, norm_inf(pi.pi2 * pi.pi3) / (1.0 + norm_inf(pi.pi2) * norm_inf(pi.pi3)));
  r = std::max(r, norm_inf(pi.pi1 + pi.pi2 + pi.pi3 - id) / max_pin);
  const MatrixSymbol recomposed = q.q1 * pi.pi1 + q.q2 * pi.pi2 + q.q3 * pi.pi3;
  const MatrixSymbol p2 = eval_p2(c.s.pt, c.bgc, ov);
  const double scale = 1.0 + std::abs(q.q1) * norm_inf(pi.pi1) +
                       std::abs(q.q2) * norm_inf(pi.pi2) + std::abs(q.q3) * norm_inf(pi.pi3);
  r = std::max(r, norm_inf(recomposed - p2) / scale);
  return r;
}

std::optional<double> chk_parametrix(const Ctx& c, const SymbolOverrides& ov, int sheet) {
  if (!margins_ok(c.bgc, c.s.pt.xi, kMarginAlg)) return std::nullopt;
  PhasePoint pt = c.s.pt;
  // Half the samples sit exactly on the sheet, half probe the neighborhood.
  if (c.s.probe_seed % 2 == 0)
    pt.tau = on_sheet_tau(sheet, c.bgc, pt.xi, (c.s.probe_seed & 2) ? -1.0 : 1.0);
  try {
    const MatrixSymbol ptilde = symbols::build_ptilde(pt, c.bgc, sheet);
    const MatrixSymbol p2 = eval_p2(pt, c.bgc, ov);
    const spectra::SheetFactors q = spectra::sheet_factors(pt, c.bgc);
    MatrixSymbol rhs(3);
    for (int i = 0; i < 3; i++) rhs(i, i) = q[sheet];
    return norm_inf(ptilde * p2 - rhs) / (1.0 + norm_inf(ptilde) * norm_inf(p2));
  } catch (const DegenerateMode&) {
    return std::nullopt;
  }
}

std::optional<double> chk_subprincipal(const Ctx& c, const SymbolOverrides&) {
  const MatrixSymbol ps = symbols::build_subprincipal_closed(c.s.pt, c.bgv);
  const MatrixSymbol def = symbols::build_subprincipal_definitional(c.s.pt, c.bgv);
  const MatrixSymbol m = cplx(0.0, 2.0) * ps;  // 2i p^s: real, skew, zero diagonal
  const double mn = 1.0 + norm_inf(m);
  double r = imag_defect(m) / mn;
  r = std::max(r, norm_inf(m + transpose(m)) / mn);
  for (int i = 0; i < 3; i++) r = std::max(r, std::abs(m(i, i)) / mn);
  r = std::max(r, norm_inf(ps - def) / (1.0 + norm_inf(ps) + norm_inf(def)));
  return r;
}

std::optional<double> chk_ptilde_ps_pi(const Ctx& c, const SymbolOverrides&) {
  if (!spectra::projector_hypotheses_ok(c.bgv, c.s.pt.xi, kMarginFd)) return std::nullopt;
  const int sheet = static_cast<int>(c.s.probe_seed % 3) + 1;
  PhasePoint pt = c.s.pt;
  pt.tau = on_sheet_tau(sheet, c.bgv, pt.xi, (c.s.probe_seed & 4) ? -1.0 : 1.0);
  try {
    const MatrixSymbol ptilde = symbols::build_ptilde(pt, c.bgv, sheet);
    const MatrixSymbol ps = symbols::build_subprincipal_closed(pt, c.bgv);
    const MatrixSymbol pi = spectra::build_projectors(pt, c.bgv)[sheet];
    const MatrixSymbol lhs = ptilde * ps * pi;
    const double scale = 1.0 + norm_inf(ptilde) * norm_inf(ps) * norm_inf(pi);
    return norm_inf(lhs) / scale;
  } catch (const DegenerateMode&) {
    return std::nullopt;
  }
}

std::optional<double> chk_bracket_lemma(const Ctx& c, const SymbolOverrides& ov) {
  if (!spectra::projector_hypotheses_ok(c.bgv, c.s.pt.xi, kMarginFd)) return std::nullopt;
  const int sheet = static_cast<int>(c.s.probe_seed % 3) + 1;
  PhasePoint pt = c.s.pt;
  pt.tau = on_sheet_tau(sheet, c.bgv, pt.xi, (c.s.probe_seed & 4) ? -1.0 : 1.0);
  const BackgroundField& f = c.vary_field;
  const geometry::SymbolFn p2fn = [&f, &ov](const PhasePoint& p) {
    const BackgroundEval bg = eval_background(f, p.t, p.x);
    return ov.p2 ? ov.p2(p, bg) : symbols::build_p2(p, bg);
  };
  try {
    const geometry::SymbolFn ptfn = geometry::make_ptilde_fn(f, sheet);
    const geometry::SymbolFn pifn = geometry::make_projector_fn(f, sheet);
    const geometry::SymbolFn qfn = geometry::make_sheet_scalar_fn(f, sheet);
    const MatrixSymbol bracket = geometry::poisson_bracket_matrix(ptfn, p2fn, pt);
    const MatrixSymbol hpi = geometry::poisson_bracket_matrix(qfn, pifn, pt);
    const BackgroundEval bg = eval_background(f, pt.t, pt.x);
    const MatrixSymbol pi = spectra::build_projectors(pt, bg)[sheet];
    const std::array<cplx, 3> a = projector_line(pi);
    const std::array<cplx, 3> pa = apply3(pi, a);
    const std::array<cplx, 3> lhs = apply3(bracket, pa);
    const std::array<cplx, 3> rhs_raw = apply3(hpi, a);
    std::array<cplx, 3> resid{};
    for (int i = 0; i < 3; i++)
      resid[i] = lhs[i] + 2.0 * rhs_raw[i];
    const double scale = 1.0 + vec_norm3(lhs) + 2.0 * vec_norm3(rhs_raw);
    return vec_norm3(resid) / scale;
  } catch (const DegenerateMode&) {
    return std::nullopt;
  }
}

// Constructed intersection points: xi rotated perpendicular (MHD) or parallel
// (uniaxial) to H, with tau on the crossing.
std::optional<PhasePoint> mhd_sigma2_point(const Ctx& c, double xi_norm) {
  const Vec3& h = c.bgc.H;
  const double hn = norm(h);
  if (hn < 1e-3) return std::nullopt;
  const Vec3 xi = c.s.pt.xi;
  const Vec3 perp = xi - (dot(xi, h) / (hn * hn)) * h;
  const double pn = norm(perp);
  if (pn < 1e-3 * norm(xi)) return std::nullopt;
  PhasePoint pt = c.s.pt;
  pt.tau = 0.0;
  pt.xi = (xi_norm / pn) * perp;
  return pt;
}

std::optional<PhasePoint> uniaxial_sigma2_point(const Ctx& c, double xi_norm) {
  const Vec3& h = c.bgc.H;
  const double hn = norm(h);
  if (hn < 1e-3) return std::nullopt;
  const double h2 = hn * hn, rc2 = c.bgc.rho * c.bgc.c2;
  if (std::abs(h2 - rc2) < kMarginAlg * (h2 + rc2)) return std::nullopt;
  PhasePoint pt = c.s.pt;
  pt.xi = (xi_norm / hn) * h;
  pt.tau = xi_norm * hn / std::sqrt(c.bgc.rho);
  return pt;
}

std::optional<double> chk_kernel_dim(const Ctx& c, bool mhd) {
  const double xin = norm(c.s.pt.xi);
  const auto pt = mhd ? mhd_sigma2_point(c, xin) : uniaxial_sigma2_point(c, xin);
  if (!pt) return std::nullopt;
  const std::size_t dim = spectra::kernel_basis(symbols::build_q(*pt, c.bgc), 1e-10).size();
  const std::size_t expect = mhd ? 6 : 2;
  return dim == expect ? 0.0 : 1.0;
}

std::optional<double> chk_kernel_mapping(const Ctx& c, bool mhd) {
  const auto pt = mhd ? mhd_sigma2_point(c, 1.0) : uniaxial_sigma2_point(c, 1.0);
  if (!pt) return std::nullopt;
  const classify::Regime regime =
      mhd ? classify::Regime::MHDTypeSigma2 : classify::Regime::UniaxialSigma2;
  const double pos = classify::check_kernel_mapping(*pt, c.bgc, regime);
  PhasePoint shifted = *pt;
  shifted.tau += 0.1 * (1.0 + std::abs(pt->tau));
  const double neg = classify::check_kernel_mapping(shifted, c.bgc, regime);
  // The positive direction must certify; the shifted point is a negative
  // control and must not.
  return std::max(pos, neg < 1e-3 ? 1.0 : 0.0);
}

std::optional<double> chk_char_poly_7x7(const Ctx& c, const SymbolOverrides&) {
  if (!margins_ok(c.bgc, c.s.pt.xi, kMarginAlg)) return std::nullopt;
  const spectra::WaveSpeeds ws = spectra::wave_speeds(c.bgc, c.s.pt.xi);
  const double a = ws.a;
  const double b = std::sqrt(ws.b2);
  const double galpha = c.bgc.gamma * c.bgc.p / c.bgc.rho;  // = c^2
  MatrixSymbol at(7);
  at(0, 1) = 1.0;
  at(1, 4) = b;
  at(1, 6) = 1.0;
  at(2, 4) = -a;
  at(3, 5) = -a;
  at(4, 1) = b;
  at(4, 2) = -a;
  at(5, 3) = -a;
  at(6, 1) = galpha;
  SplitMix64 rng(c.s.probe_seed);
  const double speed = std::sqrt(ws.c2) + std::sqrt(ws.h2);
  double worst = 0.0;
  for (int k = 0; k < 5; k++) {
    const double lambda = rng.uniform(-1.5, 1.5) * speed;
    MatrixSymbol m(7);
    for (int i = 0; i < 7; i++)
      for (int j = 0; j < 7; j++) m(i, j) = ((i == j) ? cplx(lambda) : cplx(0.0)) - at(i, j);
    const double det = lu_det(m).real();
    const double l2 = lambda * lambda;
    const double poly =
        lambda * (l2 - a * a) * ((l2 - a * a) * (l2 - galpha) - l2 * b * b);
    const double scale = std::pow(std::abs(lambda) + std::abs(a) + b + std::sqrt(galpha) + 1.0, 7);
    worst = std::max(worst, std::abs(det - poly) / scale);
  }
  return worst;
}

std::optional<double> chk_adjugate(const Ctx& c, int which) {
  if (!margins_ok(c.bgc, c.s.pt.xi, kMarginAlg)) return std::nullopt;
  const Vec3 xi_hat = (1.0 / norm(c.s.pt.xi)) * c.s.pt.xi;
  const spectra::WaveSpeeds ws = spectra::wave_speeds(c.bgc, xi_hat);
  const double tau_probe = 1e-3 * std::max(std::sqrt(ws.cs2), 1e-3);
  const AdjugateResiduals r = check_adjugate_factorization(c.bgc, xi_hat, tau_probe);
  return which == 0 ? r.tau0 : (which == 1 ? r.limit : r.identity);
}

std::optional<double> chk_adjugate_identity(const Ctx& c, const SymbolOverrides& ov) {
  // 3x3 adjugate identity with the (possibly overridden) principal symbol.
  const MatrixSymbol p2 = eval_p2(c.s.pt, c.bgc, ov);
  const MatrixSymbol adj = adjugate(p2);
  const MatrixSymbol lhs = adj * p2;
  const cplx d = lu_det(p2);
  // For the true symbol, det p2 = q1 q2 q3; the factored route feeds the
  // comparison so a corrupted p2 shows up here.
  const spectra::SheetFactors q = spectra::sheet_factors(c.s.pt, c.bgc);
  const double dfact = q.q1 * q.q2 * q.q3;
  MatrixSymbol rhs(3);
  for (int i = 0; i < 3; i++) rhs(i, i) = dfact;
  double r = norm_inf(lhs - rhs) / (1.0 + norm_inf(adj) * norm_inf(p2));
  r = std::max(r, std::abs(d.real() - dfact) /
                      std::max({std::abs(d.real()), std::abs(dfact), 1e-300}));
  return r;
}

}  // namespace

VerifyReport run_identity_suite(const SuiteOptions& opt) {
  VerifyReport report;
  report.seed = opt.seed;
  report.n_samples = opt.n_samples;
  const long n = std::max<long>(opt.n_samples, 1);

  // Draw all sample records up front, sequentially: slot i is owned by
  // sample i, so the parallel phase below is deterministic.
  std::vector<Sample> samples(n);
  {
    SplitMix64 rng(opt.seed);
    for (long i = 0; i < n; i++) {
      Sample& s = samples[i];
      s.rho0 = rng.log_uniform(0.1, 10.0);
      s.p0 = rng.log_uniform(0.1, 10.0);
      s.gamma = rng.uniform(1.1, 2.0);
      for (int k = 0; k < 3; k++) s.H0[k] = rng.uniform(-3.0, 3.0);
      s.pt.t = rng.uniform(-0.5, 0.5);
      for (int k = 0; k < 3; k++) s.pt.x[k] = rng.uniform(-0.5, 0.5);
      s.pt.xi = rng.log_uniform(0.1, 10.0) * rng.unit_vec3();
      s.pt.tau = rng.sign() * rng.log_uniform(0.1, 10.0);
      s.probe_seed = rng.next_u64();
    }
  }

  std::vector<Ctx> ctx(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (opt.parallel)
#endif
  for (long i = 0; i < n; i++) {
    Ctx& c = ctx[i];
    c.s = samples[i];
    try {
      if (opt.fixed_background) {
        c.vary_field = *opt.fixed_background;
        c.bgv = eval_background(c.vary_field, c.s.pt.t, c.s.pt.x);
        c.const_field = BackgroundField::constant(c.bgv.rho, c.bgv.p, c.bgv.H, c.bgv.gamma);
      } else {
        SplitMix64 rng(c.s.probe_seed ^ 0xa5a5a5a5a5a5a5a5ULL);
        c.const_field = BackgroundField::constant(c.s.rho0, c.s.p0, c.s.H0, c.s.gamma);
        c.vary_field = make_vary_field(c.s, rng);
        c.bgv = eval_background(c.vary_field, c.s.pt.t, c.s.pt.x);
      }
      c.bgc = eval_background(c.const_field, c.s.pt.t, c.s.pt.x);
      c.valid = true;
    } catch (const Error&) {
      c.valid = false;
    }
  }

  const std::vector<CheckSpec> checks = {
      {"det_factorization", 1e-9, chk_det_factorization},
      {"eigenvalue_formula", 1e-8, chk_eigenvalue_formula},
      {"symmetrizer", 1e-12, chk_symmetrizer},
      {"projector_algebra", 1e-9, chk_projector_algebra},
      {"parametrix_sheet1", 1e-8,
       [](const Ctx& c, const SymbolOverrides& ov) { return chk_parametrix(c, ov, 1); }},
      {"parametrix_sheet2", 1e-8,
       [](const Ctx& c, const SymbolOverrides& ov) { return chk_parametrix(c, ov, 2); }},
      {"parametrix_sheet3", 1e-8,
       [](const Ctx& c, const SymbolOverrides& ov) { return chk_parametrix(c, ov, 3); }},
      {"subprincipal_skew", 1e-10, chk_subprincipal},
      {"ptilde_ps_pi_charp", 1e-6, chk_ptilde_ps_pi},
      {"bracket_lemma_charp", 1e-5, chk_bracket_lemma},
      {"kernel_dim_mhd_sigma2", 0.5,
       [](const Ctx& c, const SymbolOverrides&) { return chk_kernel_dim(c, true); }},
      {"kernel_dim_uniaxial_sigma2", 0.5,
       [](const Ctx& c, const SymbolOverrides&) { return chk_kernel_dim(c, false); }},
      {"kernel_mapping_mhd", 1e-8,
       [](const Ctx& c, const SymbolOverrides&) { return chk_kernel_mapping(c, true); }},
      {"kernel_mapping_uniaxial", 1e-8,
       [](const Ctx& c, const SymbolOverrides&) { return chk_kernel_mapping(c, false); }},
      {"char_poly_7x7", 1e-8, chk_char_poly_7x7},
      {"adjugate_tau0", 1e-10,
       [](const Ctx& c, const SymbolOverrides&) { return chk_adjugate(c, 0); }},
      {"adjugate_limit", 1e-2,
       [](const Ctx& c, const SymbolOverrides&) { return chk_adjugate(c, 1); }},
      {"adjugate_identity_p2", 1e-9, chk_adjugate_identity},
  };

  const long required = std::min<long>(100, std::max<long>(1, n / 10));
  const double nan = std::numeric_limits<double>::quiet_NaN();
  report.pass = true;
  for (const CheckSpec& spec : checks) {
    std::vector<double> residuals(n, nan);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (opt.parallel)
#endif
    for (long i = 0; i < n; i++) {
      const Ctx& c = ctx[i];
      if (!c.valid) continue;
      try {
        const std::optional<double> r = spec.fn(c, opt.overrides);
        if (r) residuals[i] = *r;
      } catch (...) {
        // Unexpected failures must be loud, not filtered.
        residuals[i] = std::numeric_limits<double>::infinity();
      }
    }
    CheckResult row;
    row.name = spec.name;
    row.tolerance = spec.tolerance;
    for (double r : residuals) {
      if (std::isnan(r)) continue;
      row.samples++;
      row.max_residual = std::max(row.max_residual, r);
    }
    row.pass = row.samples >= required && row.max_residual <= row.tolerance;
    report.pass = report.pass && row.pass;
    report.checks.push_back(row);
  }
  return report;
}

std::string VerifyReport::to_text() const {
  std::string out = "# mhdpol identity suite\n";
  out += "# seed=" + std::to_string(seed) + " samples=" + std::to_string(n_samples) + "\n";
  for (const CheckResult& c : checks) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "check %-28s samples=%-6ld max_residual=%.17g tolerance=%g pass=%d\n",
                  c.name.c_str(), c.samples, c.max_residual, c.tolerance, c.pass ? 1 : 0);
    out += buf;
  }
  out += std::string("# overall pass=") + (pass ? "1" : "0") + "\n";
  return out;
}

std::string VerifyReport::to_csv() const {
  std::string out = "check,name,samples,max_residual,tolerance,pass\n";
  int idx = 0;
  for (const CheckResult& c : checks) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%d,%s,%ld,%.17g,%g,%d\n", idx++, c.name.c_str(),
                  c.samples, c.max_residual, c.tolerance, c.pass ? 1 : 0);
    out += buf;
  }
  return out;
}

}  // namespace mhdpol::verify
