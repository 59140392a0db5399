// mhdpol - phase-space point of the cotangent bundle of R x R^3

#ifndef MHDPOL_PHASE_HPP_
#define MHDPOL_PHASE_HPP_

#include "mhdpol/background.hpp"
#include "mhdpol/linalg.hpp"

namespace mhdpol {

struct PhasePoint {
  double t = 0.0;
  Vec3 x{};
  double tau = 0.0;
  Vec3 xi{};
};

// Degree-2 magnitude scale of the characteristic factors at a point; used to
// make degeneracy thresholds and ray-drift diagnostics relative.
inline double q_scale(const PhasePoint& pt, const BackgroundEval& bg) {
  const double xi2 = dot(pt.xi, pt.xi);
  return bg.rho * (pt.tau * pt.tau + bg.c2 * xi2 + bg.h2 * xi2);
}

// Degree-1 scale for the linear sheet residuals tau -+ c |xi|.
inline double sheet_scale(const PhasePoint& pt, const BackgroundEval& bg) {
  return std::abs(pt.tau) + (std::sqrt(bg.c2) + std::sqrt(bg.h2)) * norm(pt.xi) + 1.0;
}

}  // namespace mhdpol

#endif  // MHDPOL_PHASE_HPP_
