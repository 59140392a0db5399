// mhdpol - wave speeds, eigenvalue multiplicities, spectral projectors

#include "mhdpol/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "mhdpol/errors.hpp"
#include "mhdpol/symbols.hpp"

namespace mhdpol::spectra {

namespace {
constexpr double kCoincidenceEps = 1e-12;
}

WaveSpeeds wave_speeds(const BackgroundEval& bg, const Vec3& xi) {
  const double xin = norm(xi);
  if (xin == 0.0) throw ZeroFrequency("wave_speeds: |xi| = 0");
  const Vec3 xhat = (1.0 / xin) * xi;
  WaveSpeeds ws;
  ws.c2 = bg.c2;
  ws.h2 = bg.h2;
  ws.a = dot(xhat, bg.H) / std::sqrt(bg.rho);
  const Vec3 xb = cross(xhat, bg.H);
  ws.b2 = dot(xb, xb) / bg.rho;
  const double rad = std::sqrt((ws.c2 - ws.h2) * (ws.c2 - ws.h2) + 4.0 * ws.b2 * ws.c2);
  ws.cf2 = 0.5 * ((ws.c2 + ws.h2) + rad);
  // The subtracted branch cancels badly when cs2 is small; the product of the
  // two quartic roots is a^2 c^2 exactly, which gives cs2 at full accuracy.
  ws.cs2 = (ws.cf2 > 0.0) ? std::max(ws.a * ws.a * ws.c2 / ws.cf2, 0.0)
                          : std::max(0.5 * ((ws.c2 + ws.h2) - rad), 0.0);
  return ws;
}

SheetFactors sheet_factors(const PhasePoint& pt, const BackgroundEval& bg) {
  const WaveSpeeds ws = wave_speeds(bg, pt.xi);
  const double xi2 = dot(pt.xi, pt.xi);
  const double t2 = pt.tau * pt.tau;
  const double hxi = dot(bg.H, pt.xi);
  SheetFactors q;
  q.q1 = bg.rho * t2 - hxi * hxi;
  q.q2 = bg.rho * (t2 - ws.cs2 * xi2);
  q.q3 = bg.rho * (t2 - ws.cf2 * xi2);
  return q;
}

std::array<double, 8> eigenvalues_A(const BackgroundEval& bg, const Vec3& xi) {
  const double xin = norm(xi);
  if (xin == 0.0) throw ZeroFrequency("eigenvalues_A: |xi| = 0");
  const WaveSpeeds ws = wave_speeds(bg, xi);
  const double cs = std::sqrt(ws.cs2) * xin;
  const double cf = std::sqrt(ws.cf2) * xin;
  const double ca = dot(bg.H, xi) / std::sqrt(bg.rho);
  std::array<double, 8> ev = {0.0, 0.0, cs, -cs, ca, -ca, cf, -cf};
  std::sort(ev.begin(), ev.end());
  return ev;
}

MultiplicityCase multiplicity_case(const BackgroundEval& bg, const Vec3& xi) {
  const double xin = norm(xi);
  if (xin == 0.0) throw ZeroFrequency("multiplicity_case: |xi| = 0");
  const double hn = norm(bg.H);
  const double rhoc2 = bg.rho * bg.c2;
  const double h_sq = dot(bg.H, bg.H);
  if (std::abs(h_sq - rhoc2) <= kCoincidenceEps * (h_sq + rhoc2))
    throw UnclassifiedDegeneracy("multiplicity_case: |H|^2 = rho c^2 (triple crossing)");

  const double hxi = dot(bg.H, xi);
  const Vec3 xh = cross(xi, bg.H);
  const bool perp = std::abs(hxi) <= kCoincidenceEps * xin * hn;
  const bool para = norm(xh) <= kCoincidenceEps * xin * hn;

  const WaveSpeeds ws = wave_speeds(bg, xi);
  const double cs = std::sqrt(ws.cs2) * xin;
  const double cf = std::sqrt(ws.cf2) * xin;
  const double ca = std::abs(hxi) / std::sqrt(bg.rho);

  MultiplicityCase out;
  if (perp) {
    out.tag = MultiplicityTag::PerpendicularDegenerate;
    out.eigenvalues = {{-cf, 1}, {0.0, 6}, {cf, 1}};
  } else if (para) {
    const double c = std::sqrt(bg.c2) * xin;
    const double h = std::sqrt(bg.h2) * xin;
    if (h_sq < rhoc2) {
      out.tag = MultiplicityTag::ParallelDegenerateSub;
      out.eigenvalues = {{-c, 1}, {-h, 2}, {0.0, 2}, {h, 2}, {c, 1}};
    } else {
      out.tag = MultiplicityTag::ParallelDegenerateSuper;
      out.eigenvalues = {{-h, 2}, {-c, 1}, {0.0, 2}, {c, 1}, {h, 2}};
    }
  } else {
    out.tag = MultiplicityTag::GenericTransverse;
    out.eigenvalues = {{-cf, 1}, {-ca, 1}, {-cs, 1}, {0.0, 2}, {cs, 1}, {ca, 1}, {cf, 1}};
  }
  return out;
}

ProjectorTriple build_projectors(const PhasePoint& pt, const BackgroundEval& bg) {
  const double xin = norm(pt.xi);
  if (xin == 0.0) throw ZeroFrequency("build_projectors: |xi| = 0");
  const double hn = norm(bg.H);
  const double hxi = dot(bg.H, pt.xi);
  const Vec3 xh = cross(pt.xi, bg.H);
  if (std::abs(hxi) <= kCoincidenceEps * xin * hn)
    throw DegenerateMode("xi.H", "build_projectors: xi.H = 0");
  if (norm(xh) <= kCoincidenceEps * xin * hn)
    throw DegenerateMode("xi x H", "build_projectors: xi x H = 0");
  const double h_sq = dot(bg.H, bg.H);
  const double rhoc2 = bg.rho * bg.c2;
  if (std::abs(h_sq - rhoc2) <= kCoincidenceEps * (h_sq + rhoc2))
    throw DegenerateMode("|H|^2 = rho c^2", "build_projectors: |H|^2 = rho c^2");

  const WaveSpeeds ws = wave_speeds(bg, pt.xi);
  const double xi2 = xin * xin;
  // (x, xi)-scaled speeds inside the projector denominators.
  const double rcs2 = bg.rho * ws.cs2 * xi2;
  const double rcf2 = bg.rho * ws.cf2 * xi2;

  const MatrixSymbol w2 = symbols::build_w2(bg, pt.xi);
  const double gp_h2 = bg.gamma * bg.p + h_sq;
  const MatrixSymbol core =
      gp_h2 * outer(pt.xi, pt.xi) - hxi * (outer(pt.xi, bg.H) + outer(bg.H, pt.xi));

  ProjectorTriple out;
  out.pi1 = MatrixSymbol::identity(3) + (1.0 / (hxi * hxi - h_sq * xi2)) * w2;
  out.pi2 = (1.0 / (rcs2 - rcf2)) * (core + (hxi * hxi / (rcs2 - hxi * hxi)) * w2);
  out.pi3 = (1.0 / (rcf2 - rcs2)) * (core + (hxi * hxi / (rcf2 - hxi * hxi)) * w2);
  return out;
}

bool projector_hypotheses_ok(const BackgroundEval& bg, const Vec3& xi, double margin) {
  const double xin = norm(xi);
  const double hn = norm(bg.H);
  if (xin == 0.0 || hn < 1e-3) return false;
  if (std::abs(dot(xi, bg.H)) < margin * xin * hn) return false;
  if (norm(cross(xi, bg.H)) < margin * xin * hn) return false;
  const double h2 = hn * hn, rc2 = bg.rho * bg.c2;
  if (std::abs(h2 - rc2) < margin * (h2 + rc2)) return false;
  const WaveSpeeds ws = wave_speeds(bg, xi);
  const double xi2 = xin * xin;
  const double rcs2 = bg.rho * ws.cs2 * xi2;
  const double rcf2 = bg.rho * ws.cf2 * xi2;
  const double hxi2 = dot(bg.H, xi) * dot(bg.H, xi);
  if (std::abs(rcs2 - hxi2) < margin * (rcs2 + hxi2)) return false;
  if (std::abs(rcf2 - hxi2) < margin * (rcf2 + hxi2)) return false;
  if (std::abs(rcf2 - rcs2) < margin * (rcf2 + rcs2)) return false;
  return true;
}

std::vector<std::array<cplx, 8>> kernel_basis(const MatrixSymbol& m, double tol_factor) {
  return mhdpol::kernel_basis(m, tol_factor);
}

const char* multiplicity_tag_name(MultiplicityTag tag) {
  switch (tag) {
    case MultiplicityTag::GenericTransverse: return "generic_transverse";
    case MultiplicityTag::PerpendicularDegenerate: return "perpendicular_degenerate";
    case MultiplicityTag::ParallelDegenerateSub: return "parallel_degenerate_sub";
    case MultiplicityTag::ParallelDegenerateSuper: return "parallel_degenerate_super";
  }
  return "?";
}

}  // namespace mhdpol::spectra
