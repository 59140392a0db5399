// mhdpol - Hamilton fields, bicharacteristic ray integration, Poisson
// brackets, and polarization transport along rays

#ifndef MHDPOL_GEOMETRY_HPP_
#define MHDPOL_GEOMETRY_HPP_

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "mhdpol/background.hpp"
#include "mhdpol/linalg.hpp"
#include "mhdpol/phase.hpp"

namespace mhdpol::geometry {

// Hamilton field of the characteristic factor q_sheet at a phase point, as
// (t., x.1..3, tau., xi.1..3) = (dq/dtau, dq/dxi, -dq/dt, -dq/dx). All
// derivatives are analytic; x- and t-derivatives enter through the background
// first derivatives. Throws RadicalDegenerate on sheets 2/3 when the
// magnetosonic radical is too close to zero to differentiate.
std::array<double, 8> hamilton_field(int sheet, const PhasePoint& pt,
                                     const BackgroundEval& bg);

// Scalar value of q_sheet at a point (same scaling as hamilton_field).
double sheet_value(int sheet, const PhasePoint& pt, const BackgroundEval& bg);

struct RayOptions {
  double span = 1.0;
  double tol = 1e-9;       // relative integrator tolerance
  int samples = 64;        // dense-output sample count (>= 2)
  bool project_tau = false;  // solve tau onto the sheet before starting
};

struct Ray {
  struct Sample {
    double s = 0.0;
    PhasePoint pt;
    double q_residual = 0.0;  // |q_sheet| / q_scale
  };
  int sheet = 1;
  double tol = 1e-9;
  std::vector<Sample> samples;
  double q_drift = 0.0;  // max sample residual
  struct StepStats {
    long accepted = 0;
    long rejected = 0;
    double h_min = 0.0;
    double h_max = 0.0;
  } stats;
  bool stopped = false;         // entered a degenerate region before span
  std::string stop_reason;
  double s_reached = 0.0;
};

// Integrates the bicharacteristic through `start` on the given sheet with an
// embedded Dormand-Prince 4(5) pair. Throws NotOnSheet when the start point
// does not satisfy |q_sheet| <= 1e-8 * q_scale (after optional tau
// projection). Entering a degenerate region (xi.H -> 0, xi x H -> 0,
// |H|^2 -> rho c^2, or a vanishing radical) stops the ray and records the
// reason instead of throwing.
Ray trace_ray(const PhasePoint& start, int sheet, const BackgroundField& field,
              const RayOptions& opt);

// Matrix-symbol function of a phase point; evaluates the background itself so
// that finite differencing in (t, x) is meaningful.
using SymbolFn = std::function<MatrixSymbol(const PhasePoint&)>;

SymbolFn make_p2_fn(const BackgroundField& field);
SymbolFn make_ptilde_fn(const BackgroundField& field, int sheet);
SymbolFn make_projector_fn(const BackgroundField& field, int sheet);
SymbolFn make_subprincipal_fn(const BackgroundField& field);
// q_sheet times Id3, so scalar brackets reuse the matrix machinery.
SymbolFn make_sheet_scalar_fn(const BackgroundField& field, int sheet);

// Poisson bracket {F, G} = dF/dtau dG/dt - dF/dt dG/dtau
//                        + sum_k (dF/dxi_k dG/dx_k - dF/dx_k dG/dxi_k),
// computed entrywise by central differences (h = 1e-5 per-coordinate scale)
// on the analytic evaluators.
MatrixSymbol poisson_bracket_matrix(const SymbolFn& f, const SymbolFn& g,
                                    const PhasePoint& pt);

struct PolarizationFrame {
  struct Sample {
    double s = 0.0;
    std::array<cplx, 3> w{};
    std::array<cplx, 3> direction{};  // w / ||w||
    double kernel_residual = 0.0;     // ||p2 w|| / (||p2|| ||w||)
  };
  std::vector<Sample> samples;
  double max_kernel_residual = 0.0;
};

// Parallel transport of a polarization vector along the ray for the
// connection D w = H_q w + 1/2 {ptilde, p2} w + i ptilde p^s w, i.e.
// integrates dw/ds = -1/2 {ptilde,p2} w - i ptilde p^s w. Requires
// w0 in ker p2 at the start (residual <= 1e-8), else throws NotInKernel.
PolarizationFrame dencker_transport(const Ray& ray, const BackgroundField& field,
                                    const std::array<cplx, 3>& w0);

// Reduced transport on kernel sections: integrates da/ds = (H_q pi) a, where
// H_q pi is the derivative of the sheet projector along the Hamilton field.
PolarizationFrame simplified_transport(const Ray& ray, const BackgroundField& field,
                                       const std::array<cplx, 3>& a0);

// Phase-invariant distance between two unit polarization directions
// (0 when equal up to a complex phase).
double direction_distance(const std::array<cplx, 3>& u, const std::array<cplx, 3>& v);

}  // namespace mhdpol::geometry

#endif  // MHDPOL_GEOMETRY_HPP_
