// mhdpol - construction of the MHD matrix symbols

#include "mhdpol/symbols.hpp"

#include <cmath>
#include <string>

#include "mhdpol/errors.hpp"
#include "mhdpol/spectra.hpp"

namespace mhdpol::symbols {

namespace {

constexpr double kDegenerateEps = 1e-10;

void set_real(MatrixSymbol& m, int i, int j, double v) { m(i, j) = cplx(v, 0.0); }

}  // namespace

MatrixSymbol build_A(const BackgroundEval& bg, const Vec3& xi) {
  if (!(bg.rho > 0.0)) throw NonPhysical("build_A: rho <= 0");
  MatrixSymbol a(8, 1);
  const double hxi = dot(bg.H, xi);
  const double gp = bg.gamma * bg.p;
  for (int j = 0; j < 3; j++) {
    set_real(a, 0, 1 + j, bg.rho * xi[j]);
    set_real(a, 7, 1 + j, gp * xi[j]);
    set_real(a, 1 + j, 7, xi[j] / bg.rho);
  }
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++) {
      const double del = (i == j) ? 1.0 : 0.0;
      // rho^-1 H x (xi x H.) = rho^-1 (xi (H.H.) - H. (H.xi)) on the H. slots
      set_real(a, 1 + i, 4 + j,
               (xi[i] * bg.H[j] - hxi * del) / bg.rho);
      // (xi.u.) H - (H.xi) u. on the u. slots
      set_real(a, 4 + i, 1 + j,
               bg.H[i] * xi[j] - hxi * del);
    }
  return a;
}

MatrixSymbol build_A_dx(const BackgroundEval& bg, const Vec3& xi, int k) {
  MatrixSymbol a(8, 1);
  const double drho = bg.grad_rho[k];
  const double dp = bg.grad_p[k];
  const Vec3 dHk = {bg.dH[0][k], bg.dH[1][k], bg.dH[2][k]};
  const double hxi = dot(bg.H, xi);
  const double dhxi = dot(dHk, xi);
  const double rho = bg.rho;
  for (int j = 0; j < 3; j++) {
    set_real(a, 0, 1 + j, drho * xi[j]);
    set_real(a, 7, 1 + j, bg.gamma * dp * xi[j]);
    set_real(a, 1 + j, 7, -drho * xi[j] / (rho * rho));
  }
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++) {
      const double del = (i == j) ? 1.0 : 0.0;
      const double block = xi[i] * bg.H[j] - hxi * del;
      set_real(a, 1 + i, 4 + j,
               (xi[i] * dHk[j] - dhxi * del) / rho - drho * block / (rho * rho));
      set_real(a, 4 + i, 1 + j, dHk[i] * xi[j] - dhxi * del);
    }
  return a;
}

MatrixSymbol build_A_dt(const BackgroundEval& bg, const Vec3& xi) {
  BackgroundEval d = bg;  // reuse the dx assembly with time derivatives in slot 0
  d.grad_rho = {bg.dt_rho, 0, 0};
  d.grad_p = {bg.dt_p, 0, 0};
  for (int i = 0; i < 3; i++) {
    d.dH[i] = {bg.dt_H[i], 0, 0};
  }
  return build_A_dx(d, xi, 0);
}

MatrixSymbol build_q(const PhasePoint& pt, const BackgroundEval& bg) {
  MatrixSymbol q = build_A(bg, pt.xi);
  for (int i = 0; i < 8; i++) q(i, i) += pt.tau;
  return q;
}

MatrixSymbol build_p2(const PhasePoint& pt, const BackgroundEval& bg) {
  const double hxi = dot(bg.H, pt.xi);
  const double lead = bg.rho * pt.tau * pt.tau - hxi * hxi;
  const double gp_h2 = bg.gamma * bg.p + dot(bg.H, bg.H);
  MatrixSymbol m = outer(pt.xi, pt.xi);
  MatrixSymbol sym = outer(pt.xi, bg.H) + outer(bg.H, pt.xi);
  MatrixSymbol p2 = (-gp_h2) * m + hxi * sym;
  for (int i = 0; i < 3; i++) p2(i, i) += lead;
  p2.degree = 2;
  return p2;
}

MatrixSymbol build_p1(const PhasePoint& pt, const BackgroundEval& bg) {
  const Vec3& xi = pt.xi;
  const double hxi = dot(bg.H, xi);
  const Vec3 grad_hxi = bg.grad_H_dot(xi);
  const Vec3 hgrad_h = bg.H_grad_H();
  const Vec3 grad_h2 = bg.grad_H_norm2();
  const double scal = dot(grad_hxi, bg.H) + hxi * bg.div_H;

  // nabla (x) H with (i,j) entry dH_j/dx_i (the transposed Jacobian).
  MatrixSymbol grad_outer_H(3);
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++)
      grad_outer_H(i, j) = bg.dH[j][i];

  MatrixSymbol m = bg.gamma * outer(bg.grad_p, xi) + outer(xi, bg.grad_p) -
                   1.0 * outer(bg.grad_p, xi) + 0.5 * outer(xi, grad_h2) +
                   0.5 * outer(grad_h2, xi) - 1.0 * outer(hgrad_h, xi) -
                   outer(grad_hxi, bg.H) - hxi * grad_outer_H -
                   bg.div_H * outer(xi, bg.H);
  for (int i = 0; i < 3; i++) m(i, i) += scal;
  MatrixSymbol p1 = cplx(0.0, 1.0) * m;
  p1.degree = 1;
  return p1;
}

MatrixSymbol mixed_correction_p2(const PhasePoint& pt, const BackgroundEval& bg) {
  const Vec3& xi = pt.xi;
  const double hxi = dot(bg.H, xi);
  MatrixSymbol c(3, 1);
  for (int k = 0; k < 3; k++) {
    const Vec3 dHk = {bg.dH[0][k], bg.dH[1][k], bg.dH[2][k]};
    const double dhxi = dot(dHk, xi);
    const double dgp_h2 = bg.gamma * bg.grad_p[k] + bg.grad_H_norm2()[k];
    Vec3 ek{};
    ek[k] = 1.0;
    // d/dx_k of dp2/dxi_k, term by term from the definition of p2.
    MatrixSymbol term = (-dgp_h2) * (outer(ek, xi) + outer(xi, ek)) +
                        bg.dH[k][k] * (outer(xi, bg.H) + outer(bg.H, xi)) +
                        bg.H[k] * (outer(xi, dHk) + outer(dHk, xi)) +
                        dhxi * (outer(ek, bg.H) + outer(bg.H, ek)) +
                        hxi * (outer(ek, dHk) + outer(dHk, ek));
    const double diag = -2.0 * (dhxi * bg.H[k] + hxi * bg.dH[k][k]);
    for (int i = 0; i < 3; i++) term(i, i) += diag;
    c = c + term;
  }
  return c;
}

MatrixSymbol build_subprincipal_closed(const PhasePoint& pt, const BackgroundEval& bg) {
  const Vec3& xi = pt.xi;
  const double hxi = dot(bg.H, xi);
  const Vec3 grad_hxi = bg.grad_H_dot(xi);
  const Vec3 hgrad_h = bg.H_grad_H();

  MatrixSymbol grad_outer_H(3);
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++)
      grad_outer_H(i, j) = bg.dH[j][i];

  MatrixSymbol skew =
      bg.gamma * (outer(xi, bg.grad_p) - outer(bg.grad_p, xi)) +
      bg.div_H * (outer(xi, bg.H) - outer(bg.H, xi)) +
      hxi * (grad_outer_H - transpose(grad_outer_H)) +
      (outer(hgrad_h, xi) - outer(xi, hgrad_h)) +
      (outer(grad_hxi, bg.H) - outer(bg.H, grad_hxi)) +
      2.0 * (outer(bg.grad_p, xi) - outer(xi, bg.grad_p));
  MatrixSymbol ps = cplx(0.0, -0.5) * skew;  // p^s = skew / (2i)
  ps.degree = 1;
  return ps;
}

MatrixSymbol build_subprincipal_definitional(const PhasePoint& pt,
                                             const BackgroundEval& bg) {
  const MatrixSymbol p1 = build_p1(pt, bg);
  const MatrixSymbol corr = mixed_correction_p2(pt, bg);
  // p^s = p1 - (1/2i) corr = p1 + (i/2) corr
  MatrixSymbol ps = p1 + cplx(0.0, 0.5) * corr;
  ps.degree = 1;
  return ps;
}

MatrixSymbol build_subprincipal(const PhasePoint& pt, const BackgroundEval& bg) {
  const MatrixSymbol closed = build_subprincipal_closed(pt, bg);
  const MatrixSymbol def = build_subprincipal_definitional(pt, bg);
  const double scale = norm_inf(closed) + norm_inf(def) + 1.0;
  if (norm_inf(closed - def) > 1e-10 * scale)
    throw Error("subprincipal symbol: closed-form and definitional routes disagree");
  return closed;
}

MatrixSymbol build_w2(const BackgroundEval& bg, const Vec3& xi) {
  const double hxi = dot(bg.H, xi);
  MatrixSymbol w2 = dot(bg.H, bg.H) * outer(xi, xi) + dot(xi, xi) * outer(bg.H, bg.H) -
                    hxi * (outer(bg.H, xi) + outer(xi, bg.H));
  w2.degree = 2;
  return w2;
}

MatrixSymbol build_ptilde(const PhasePoint& pt, const BackgroundEval& bg, int sheet) {
  const spectra::SheetFactors q = spectra::sheet_factors(pt, bg);
  const double scale = q_scale(pt, bg);
  auto require = [&](double qj, const char* name) {
    if (std::abs(qj) < kDegenerateEps * scale)
      throw DegenerateMode(name, std::string("ptilde: characteristic factor ") + name +
                                     " vanishes at the evaluation point");
  };
  const Vec3& xi = pt.xi;
  const double hxi = dot(bg.H, xi);
  const double gp_h2 = bg.gamma * bg.p + dot(bg.H, bg.H);
  const MatrixSymbol core = gp_h2 * outer(xi, xi) - hxi * (outer(xi, bg.H) + outer(bg.H, xi));
  const MatrixSymbol w2 = build_w2(bg, xi);

  MatrixSymbol pt2(3, 2);
  switch (sheet) {
    case 1:
      require(q.q2, "q2");
      require(q.q3, "q3");
      pt2 = MatrixSymbol::identity(3) + (q.q1 / (q.q2 * q.q3)) * core +
            (hxi * hxi / (q.q2 * q.q3)) * w2;
      break;
    case 2:
      require(q.q1, "q1");
      require(q.q3, "q3");
      pt2 = (q.q2 / q.q1) * MatrixSymbol::identity(3) + (1.0 / q.q3) * core +
            (hxi * hxi / (q.q1 * q.q3)) * w2;
      break;
    case 3:
      require(q.q1, "q1");
      require(q.q2, "q2");
      pt2 = (q.q3 / q.q1) * MatrixSymbol::identity(3) + (1.0 / q.q2) * core +
            (hxi * hxi / (q.q1 * q.q2)) * w2;
      break;
    default:
      throw Error("ptilde: sheet must be 1, 2 or 3");
  }
  pt2.degree = 0;
  return pt2;
}

MatrixSymbol symmetrizer(const BackgroundEval& bg) {
  if (!(bg.rho > 0.0 && bg.p > 0.0)) throw NonPhysical("symmetrizer: rho, p must be > 0");
  MatrixSymbol s(8, 0);
  const double gp = bg.gamma * bg.p;
  set_real(s, 0, 0, gp);
  for (int i = 1; i <= 3; i++) set_real(s, i, i, bg.rho);
  for (int i = 4; i <= 6; i++) set_real(s, i, i, 1.0);
  set_real(s, 7, 7, (1.0 + bg.rho * bg.rho) / gp);
  set_real(s, 0, 7, -bg.rho);
  set_real(s, 7, 0, -bg.rho);
  return s;
}

double det_q(const PhasePoint& pt, const BackgroundEval& bg) {
  if (dot(pt.xi, pt.xi) == 0.0) throw ZeroFrequency("det_q: |xi| = 0");
  const spectra::WaveSpeeds ws = spectra::wave_speeds(bg, pt.xi);
  const double xi2 = dot(pt.xi, pt.xi);
  const double t2 = pt.tau * pt.tau;
  const double hxi = dot(bg.H, pt.xi);
  return t2 * (t2 - ws.cs2 * xi2) * (t2 - ws.cf2 * xi2) * (t2 - hxi * hxi / bg.rho);
}

}  // namespace mhdpol::symbols
