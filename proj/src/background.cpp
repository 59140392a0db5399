// mhdpol - background field evaluation

#include "mhdpol/background.hpp"

#include <cmath>
#include <string>

#include "mhdpol/errors.hpp"

namespace mhdpol {

BackgroundField BackgroundField::constant(double rho0, double p0, const Vec3& H0,
                                          double gamma0) {
  BackgroundField b;
  b.rho = constant_expr(rho0);
  b.p = constant_expr(p0);
  for (int i = 0; i < 3; i++) b.H[i] = constant_expr(H0[i]);
  b.gamma = gamma0;
  return b;
}

BackgroundEval eval_background(const BackgroundField& b, double t, const Vec3& x) {
  BackgroundEval out;
  const Dual rho = b.rho.eval(t, x);
  const Dual p = b.p.eval(t, x);
  if (!(b.gamma > 0.0)) throw NonPhysical("gamma must be positive");
  if (!(rho.v > 0.0)) throw NonPhysical("rho <= 0 at evaluation point");
  if (!(p.v > 0.0)) throw NonPhysical("p <= 0 at evaluation point");

  out.rho = rho.v;
  out.p = p.v;
  out.gamma = b.gamma;
  out.dt_rho = rho.d[0];
  out.dt_p = p.d[0];
  for (int k = 0; k < 3; k++) {
    out.grad_rho[k] = rho.d[k + 1];
    out.grad_p[k] = p.d[k + 1];
  }
  for (int i = 0; i < 3; i++) {
    const Dual hi = b.H[i].eval(t, x);
    out.H[i] = hi.v;
    out.dt_H[i] = hi.d[0];
    for (int k = 0; k < 3; k++)
      out.dH[i][k] = hi.d[k + 1];
  }

  out.c2 = out.gamma * out.p / out.rho;
  out.h2 = dot(out.H, out.H) / out.rho;
  out.div_H = out.dH[0][0] + out.dH[1][1] + out.dH[2][2];
  out.curl_H = {out.dH[2][1] - out.dH[1][2], out.dH[0][2] - out.dH[2][0],
                out.dH[1][0] - out.dH[0][1]};
  return out;
}

Vec3 equilibrium_residual(const BackgroundField& b, const Vec3& x, double t) {
  const BackgroundEval bg = eval_background(b, t, x);
  return bg.grad_p + cross(bg.H, bg.curl_H);
}

double equilibrium_scale(const BackgroundEval& bg) {
  return norm(bg.grad_p) + norm(bg.H) * norm(bg.curl_H) + 1.0;
}

}  // namespace mhdpol
