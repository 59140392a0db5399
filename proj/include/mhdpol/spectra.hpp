// mhdpol - wave speeds, eigenvalue structure of the 8x8 symbol, spectral
// projectors of the 3x3 principal symbol, numerical kernels

#ifndef MHDPOL_SPECTRA_HPP_
#define MHDPOL_SPECTRA_HPP_

#include <array>
#include <string>
#include <vector>

#include "mhdpol/background.hpp"
#include "mhdpol/linalg.hpp"
#include "mhdpol/phase.hpp"

namespace mhdpol::spectra {

// Squared slow/fast magnetosonic speeds per unit |xi| (the unit-direction
// convention), plus the field-aligned Alfven projection a = xi^.H/sqrt(rho)
// and b^2 = |xi^ x H|^2/rho.
struct WaveSpeeds {
  double cs2 = 0.0;
  double cf2 = 0.0;
  double a = 0.0;
  double b2 = 0.0;
  double c2 = 0.0;
  double h2 = 0.0;
};

// Throws ZeroFrequency when |xi| = 0. cs2 is clamped at 0 to absorb
// negative rounding in the radical subtraction.
WaveSpeeds wave_speeds(const BackgroundEval& bg, const Vec3& xi);

// Characteristic factors of the wave-equation symbol at a phase point, in the
// (x, xi)-scaled convention:
//   q1 = rho tau^2 - (H.xi)^2,
//   q2 = rho (tau^2 - cs2 |xi|^2),
//   q3 = rho (tau^2 - cf2 |xi|^2).
struct SheetFactors {
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;
  double operator[](int sheet) const { return sheet == 1 ? q1 : (sheet == 2 ? q2 : q3); }
};

SheetFactors sheet_factors(const PhasePoint& pt, const BackgroundEval& bg);

// The eight eigenvalues 0, 0, +-cs|xi|, +-(xi.H)/sqrt(rho), +-cf|xi|,
// sorted ascending.
std::array<double, 8> eigenvalues_A(const BackgroundEval& bg, const Vec3& xi);

enum class MultiplicityTag {
  GenericTransverse,          // xi.H != 0 and xi x H != 0
  PerpendicularDegenerate,    // xi.H  = 0
  ParallelDegenerateSub,      // xi x H = 0, |H|^2 < rho c^2
  ParallelDegenerateSuper,    // xi x H = 0, |H|^2 > rho c^2
};

struct MultiplicityCase {
  MultiplicityTag tag;
  // Distinct eigenvalues with multiplicities, ascending; counts sum to 8.
  std::vector<std::pair<double, int>> eigenvalues;
};

// Classifies the eigenvalue coincidence pattern. Relative threshold 1e-12 on
// |xi.H| and |xi x H| decides the degenerate cases; throws
// UnclassifiedDegeneracy when |H|^2 = rho c^2 within the same tolerance.
MultiplicityCase multiplicity_case(const BackgroundEval& bg, const Vec3& xi);

struct ProjectorTriple {
  MatrixSymbol pi1, pi2, pi3;
  const MatrixSymbol& operator[](int sheet) const {
    return sheet == 1 ? pi1 : (sheet == 2 ? pi2 : pi3);
  }
};

// The rank-one orthogonal projectors with p2 = q1 pi1 + q2 pi2 + q3 pi3.
// Requires xi.H != 0, xi x H != 0 and |H|^2 != rho c^2; throws DegenerateMode
// naming the violated hypothesis.
ProjectorTriple build_projectors(const PhasePoint& pt, const BackgroundEval& bg);

// True when every denominator of the projector formulas is bounded away from
// zero with the given relative margin: the disjointness hypotheses plus the
// derived gaps rho c_{s,f}^2 |xi|^2 - (H.xi)^2 and c_f^2 - c_s^2. Sampling
// filters use this to keep the formulas well conditioned.
bool projector_hypotheses_ok(const BackgroundEval& bg, const Vec3& xi, double margin);

// Orthonormal numerical kernel of a matrix symbol: SVD-based, keeping right
// singular vectors with sigma <= tol_factor * sigma_max.
std::vector<std::array<cplx, 8>> kernel_basis(const MatrixSymbol& m,
                                              double tol_factor = 1e-10);

const char* multiplicity_tag_name(MultiplicityTag tag);

}  // namespace mhdpol::spectra

#endif  // MHDPOL_SPECTRA_HPP_
