// mhdpol - placement of phase points in the characteristic variety and the
// propagation-regime decision (elliptic / real principal / uniaxial / MHD)

#ifndef MHDPOL_CLASSIFY_HPP_
#define MHDPOL_CLASSIFY_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mhdpol/background.hpp"
#include "mhdpol/phase.hpp"

namespace mhdpol::classify {

// Membership in the seven characteristic hypersurfaces, with the normalized
// residual of each defining linear factor:
//   s1: tau,  s2/s3: tau -+ c_s|xi|,  s4/s5: tau -+ (xi.H)/sqrt(rho),
//   s6/s7: tau -+ c_f|xi|.
struct SheetSet {
  std::array<bool, 7> member{};
  std::array<double, 7> residual{};
  int count() const {
    int n = 0;
    for (bool m : member) n += m ? 1 : 0;
    return n;
  }
};

// Relative residual below which a sheet counts as active.
constexpr double kSheetEps = 1e-10;
// Relative threshold deciding xi.H = 0 / xi x H = 0 / |H|^2 = rho c^2.
constexpr double kClassifyEps = 1e-12;

SheetSet sheet_membership(const PhasePoint& pt, const BackgroundEval& bg);

enum class Regime { Elliptic, RealPrincipalType, UniaxialSigma2, MHDTypeSigma2, Excluded };

const char* regime_name(Regime r);

// The algebraic quantities the decision is made from.
struct RegimeWitnesses {
  double tau = 0.0;
  double xi_dot_H = 0.0;
  double xi_cross_H_norm = 0.0;
  double H2_minus_rho_c2 = 0.0;
  double cs = 0.0, ca = 0.0, cf = 0.0;  // per unit |xi|, ca = |xi^.H|/sqrt(rho)
  SheetSet sheets;
};

struct RegimeReport {
  Regime regime = Regime::Excluded;
  RegimeWitnesses witnesses;
  int kernel_dim = 0;
  std::optional<int> vanishing_order;  // empty when the log-log fit is inconclusive
};

RegimeReport classify_point(const PhasePoint& pt, const BackgroundEval& bg);

// Leading vanishing order of det q at a characteristic point, from log-log
// slopes of |det q| sampled along 32 fixed pseudo-random directions in
// (tau, xi)-space at radii {1e-2, 5e-3, 2.5e-3} (relative to |tau| + |xi|).
// Returns the minimum directional order; empty when no slope is within 0.1 of
// an integer <= max_order. Throws NotOnCharacteristic when det q does not
// vanish at the point.
std::optional<int> vanishing_order(const PhasePoint& pt, const BackgroundEval& bg,
                                   int max_order = 8);

// Coefficient vectors of the printed tangent generators of T_{Sigma_2} Sigma
// at pt, in the basis (dt, dx1..dx3, dtau, dxi1..dxi3): 13 generators in the
// uniaxial regime, 14 in the MHD regime. Throws WrongRegime otherwise.
std::vector<std::array<double, 8>> tangent_generators(const PhasePoint& pt,
                                                      const BackgroundEval& bg,
                                                      Regime regime);

// Maximal normalized residual of the out-of-image component of (D_j q) nu
// over the generators D_j and the near-kernel vectors nu of q (the regime's
// nominal kernel dimension: 6 at an MHD intersection, 2 at a uniaxial one).
// Small values certify that every tangent derivative of q maps the kernel
// into the image of q; evaluating at a perturbed off-intersection point
// serves as a negative control.
double check_kernel_mapping(const PhasePoint& pt, const BackgroundEval& bg, Regime regime);

}  // namespace mhdpol::classify

#endif  // MHDPOL_CLASSIFY_HPP_
