// mhdpol - matrix symbols of the linearized ideal MHD system: the 8x8
// first-order symbol and its symmetrizer, and the 3x3 wave-equation symbols
// (principal, first-order, subprincipal, parametrix factors)

#ifndef MHDPOL_SYMBOLS_HPP_
#define MHDPOL_SYMBOLS_HPP_

#include "mhdpol/background.hpp"
#include "mhdpol/linalg.hpp"
#include "mhdpol/phase.hpp"

namespace mhdpol::symbols {

// First-order 8x8 symbol matrix A(U, xi) in the state ordering
// (rho., u.1, u.2, u.3, H.1, H.2, H.3, p.); the full principal symbol of the
// first-order system is q = tau Id8 + A. Real, linear in xi.
MatrixSymbol build_A(const BackgroundEval& bg, const Vec3& xi);

// Entrywise derivative of A with respect to x_k (k in 0..2) through the
// background fields, at frozen xi.
MatrixSymbol build_A_dx(const BackgroundEval& bg, const Vec3& xi, int k);

// Entrywise derivative of A with respect to t through the background fields.
MatrixSymbol build_A_dt(const BackgroundEval& bg, const Vec3& xi);

// q = tau Id8 + A.
MatrixSymbol build_q(const PhasePoint& pt, const BackgroundEval& bg);

// Principal symbol of the second-order wave operator:
// p2 = (rho tau^2 - (H.xi)^2) Id3 - (gamma p + |H|^2) xi (x) xi
//      + (H.xi)(xi (x) H + H (x) xi).  Real symmetric.
MatrixSymbol build_p2(const PhasePoint& pt, const BackgroundEval& bg);

// First-order symbol p1 (the printed ten-term form, which already uses the
// stationary-equilibrium identity). Purely imaginary entries for real
// backgrounds; linear in xi.
MatrixSymbol build_p1(const PhasePoint& pt, const BackgroundEval& bg);

// Mixed-derivative correction sum_j d^2 p2 / dx_j dxi_j, assembled from the
// definition of p2 (background derivatives through BackgroundEval).
MatrixSymbol mixed_correction_p2(const PhasePoint& pt, const BackgroundEval& bg);

// Subprincipal symbol via the closed skew form; 2i p^s is real,
// skew-symmetric with zero diagonal.
MatrixSymbol build_subprincipal_closed(const PhasePoint& pt, const BackgroundEval& bg);

// Subprincipal symbol via its definition p1 - (1/2i) sum_j d^2 p2/dx_j dxi_j.
MatrixSymbol build_subprincipal_definitional(const PhasePoint& pt,
                                             const BackgroundEval& bg);

// Builds the subprincipal symbol by both routes and checks agreement to
// relative 1e-10 (throws Error on disagreement); returns the closed form.
MatrixSymbol build_subprincipal(const PhasePoint& pt, const BackgroundEval& bg);

// w^2 = |H|^2 xi(x)xi + |xi|^2 H(x)H - (H.xi)(H(x)xi + xi(x)H);
// real symmetric positive semidefinite, trace 2 |xi x H|^2.
MatrixSymbol build_w2(const BackgroundEval& bg, const Vec3& xi);

// Parametrix factor on the conic neighborhood of sheet 1, 2 or 3, satisfying
// ptilde * p2 = q_sheet Id3. Throws DegenerateMode when a characteristic
// factor appearing in a denominator is below 1e-10 * q_scale.
MatrixSymbol build_ptilde(const PhasePoint& pt, const BackgroundEval& bg, int sheet);

// The 8x8 symmetrizer S: symmetric positive definite with S A symmetric.
MatrixSymbol symmetrizer(const BackgroundEval& bg);

// Factored determinant
// tau^2 (tau^2 - c_s^2 |xi|^2)(tau^2 - c_f^2 |xi|^2)(tau^2 - (xi.H)^2/rho).
double det_q(const PhasePoint& pt, const BackgroundEval& bg);

}  // namespace mhdpol::symbols

#endif  // MHDPOL_SYMBOLS_HPP_
