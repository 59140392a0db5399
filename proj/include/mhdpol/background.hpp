// mhdpol - equilibrium background fields (rho, H, p, gamma) with exact first
// derivatives via dual numbers

#ifndef MHDPOL_BACKGROUND_HPP_
#define MHDPOL_BACKGROUND_HPP_

#include <array>

#include "mhdpol/expr.hpp"
#include "mhdpol/linalg.hpp"

namespace mhdpol {

// Equilibrium state: density, pressure and magnetic field as expressions in
// (t, x1, x2, x3); the adiabatic index is a constant. Immutable after
// construction, safe to share across threads.
struct BackgroundField {
  Expr rho;
  Expr p;
  std::array<Expr, 3> H;
  double gamma = 5.0 / 3.0;

  static BackgroundField constant(double rho0, double p0, const Vec3& H0, double gamma0);
};

// Point evaluation of a BackgroundField: values, first derivatives, and the
// derived quantities used by the symbol formulas.
struct BackgroundEval {
  double rho = 0.0;
  double p = 0.0;
  Vec3 H{};
  double gamma = 0.0;

  Vec3 grad_rho{};
  Vec3 grad_p{};
  // Spatial Jacobian, dH[i][j] = dH_i/dx_j.
  std::array<Vec3, 3> dH{};
  // Formal time derivatives (zero for stationary fields).
  double dt_rho = 0.0;
  double dt_p = 0.0;
  Vec3 dt_H{};

  double c2 = 0.0;  // gamma p / rho
  double h2 = 0.0;  // |H|^2 / rho
  Vec3 curl_H{};
  double div_H = 0.0;

  double H_norm2() const { return dot(H, H); }
  // grad of x -> H(x).xi at frozen xi; component k is sum_i xi_i dH_i/dx_k.
  Vec3 grad_H_dot(const Vec3& xi) const {
    return {xi[0] * dH[0][0] + xi[1] * dH[1][0] + xi[2] * dH[2][0],
            xi[0] * dH[0][1] + xi[1] * dH[1][1] + xi[2] * dH[2][1],
            xi[0] * dH[0][2] + xi[1] * dH[1][2] + xi[2] * dH[2][2]};
  }
  // (H.grad)H, component i is sum_k H_k dH_i/dx_k.
  Vec3 H_grad_H() const {
    return {dot(dH[0], H), dot(dH[1], H), dot(dH[2], H)};
  }
  Vec3 grad_H_norm2() const {  // grad |H|^2 = 2 (dH)^T H
    return {2.0 * (H[0] * dH[0][0] + H[1] * dH[1][0] + H[2] * dH[2][0]),
            2.0 * (H[0] * dH[0][1] + H[1] * dH[1][1] + H[2] * dH[2][1]),
            2.0 * (H[0] * dH[0][2] + H[1] * dH[1][2] + H[2] * dH[2][2])};
  }
};

// Evaluates the background and its first derivatives at (t, x). Derivatives
// come from forward-mode duals, so they are exact to rounding. Throws
// DomainError on undefined subexpressions and NonPhysical when rho <= 0 or
// p <= 0 (or gamma <= 0).
BackgroundEval eval_background(const BackgroundField& b, double t, const Vec3& x);

// Stationary-equilibrium residual grad p + H x curl H at x (t = 0 unless
// given). Zero for an equilibrium background; callers decide whether a
// nonzero value is fatal.
Vec3 equilibrium_residual(const BackgroundField& b, const Vec3& x, double t = 0.0);

// Tolerance scale used by the CLI when warning about nonzero residuals.
double equilibrium_scale(const BackgroundEval& bg);

}  // namespace mhdpol

#endif  // MHDPOL_BACKGROUND_HPP_
