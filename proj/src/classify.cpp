// mhdpol - characteristic-variety classification

#include "mhdpol/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "mhdpol/errors.hpp"
#include "mhdpol/rng.hpp"
#include "mhdpol/spectra.hpp"
#include "mhdpol/symbols.hpp"

namespace mhdpol::classify {

namespace {

double frob_norm(const MatrixSymbol& m) {
  double s = 0.0;
  for (int i = 0; i < m.dim * m.dim; i++) s += std::norm(m.e[i]);
  return std::sqrt(s);
}

}  // namespace

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Elliptic: return "elliptic";
    case Regime::RealPrincipalType: return "real_principal_type";
    case Regime::UniaxialSigma2: return "uniaxial_sigma2";
    case Regime::MHDTypeSigma2: return "mhd_type_sigma2";
    case Regime::Excluded: return "excluded";
  }
  return "?";
}

SheetSet sheet_membership(const PhasePoint& pt, const BackgroundEval& bg) {
  const double xin = norm(pt.xi);
  if (xin == 0.0) throw ZeroFrequency("sheet_membership: |xi| = 0");
  const spectra::WaveSpeeds ws = spectra::wave_speeds(bg, pt.xi);
  const double cs = std::sqrt(ws.cs2) * xin;
  const double cf = std::sqrt(ws.cf2) * xin;
  const double ca = dot(bg.H, pt.xi) / std::sqrt(bg.rho);
  const double scale = sheet_scale(pt, bg);
  const std::array<double, 7> factors = {pt.tau,      pt.tau - cs, pt.tau + cs,
                                         pt.tau - ca, pt.tau + ca, pt.tau - cf,
                                         pt.tau + cf};
  SheetSet out;
  for (int j = 0; j < 7; j++) {
    out.residual[j] = std::abs(factors[j]) / scale;
    out.member[j] = out.residual[j] <= kSheetEps;
  }
  return out;
}

RegimeReport classify_point(const PhasePoint& pt, const BackgroundEval& bg) {
  const double xin = norm(pt.xi);
  if (xin == 0.0) throw ZeroFrequency("classify_point: |xi| = 0");

  RegimeReport rep;
  RegimeWitnesses& w = rep.witnesses;
  w.tau = pt.tau;
  w.xi_dot_H = dot(pt.xi, bg.H);
  w.xi_cross_H_norm = norm(cross(pt.xi, bg.H));
  const double h_sq = dot(bg.H, bg.H);
  w.H2_minus_rho_c2 = h_sq - bg.rho * bg.c2;
  const spectra::WaveSpeeds ws = spectra::wave_speeds(bg, pt.xi);
  w.cs = std::sqrt(ws.cs2);
  w.cf = std::sqrt(ws.cf2);
  w.ca = std::abs(ws.a);
  w.sheets = sheet_membership(pt, bg);

  const double hn = std::sqrt(h_sq);
  const double lin_scale = std::abs(pt.tau) + (std::sqrt(bg.c2) + std::sqrt(bg.h2)) * xin;
  const bool tau_zero = std::abs(pt.tau) <= kClassifyEps * lin_scale;
  const bool perp = std::abs(w.xi_dot_H) <= kClassifyEps * xin * hn;
  const bool para = w.xi_cross_H_norm <= kClassifyEps * xin * hn;
  const bool excluded_speed =
      std::abs(w.H2_minus_rho_c2) <= kClassifyEps * (h_sq + bg.rho * bg.c2);
  const bool tau_alfven =
      std::abs(std::abs(pt.tau) - std::sqrt(bg.h2) * xin) <= kClassifyEps * lin_scale;

  auto finish = [&](Regime r) {
    rep.regime = r;
    rep.kernel_dim =
        static_cast<int>(spectra::kernel_basis(symbols::build_q(pt, bg), 1e-10).size());
    if (r == Regime::Elliptic) {
      rep.vanishing_order = 0;
    } else {
      try {
        rep.vanishing_order = vanishing_order(pt, bg, 8);
      } catch (const NotOnCharacteristic&) {
        rep.vanishing_order = std::nullopt;
      }
    }
    return rep;
  };

  if (hn == 0.0) return finish(Regime::Excluded);
  if (w.sheets.count() == 0) return finish(Regime::Elliptic);
  // tau = 0, xi.H = 0 is the MHD intersection regardless of |H|^2 vs rho c^2
  // (that coincidence only matters where xi x H = 0).
  if (tau_zero && perp) return finish(Regime::MHDTypeSigma2);
  if (excluded_speed) return finish(Regime::Excluded);
  if (para && tau_alfven && !tau_zero) return finish(Regime::UniaxialSigma2);
  if (w.sheets.count() == 1) return finish(Regime::RealPrincipalType);
  return finish(Regime::Excluded);
}

std::optional<int> vanishing_order(const PhasePoint& pt, const BackgroundEval& bg,
                                   int max_order) {
  const double xin = norm(pt.xi);
  if (xin == 0.0) throw ZeroFrequency("vanishing_order: |xi| = 0");
  const double lin_scale = std::abs(pt.tau) + (std::sqrt(bg.c2) + std::sqrt(bg.h2)) * xin;
  const double det_scale = std::pow(lin_scale, 8);
  if (std::abs(symbols::det_q(pt, bg)) > 1e-9 * det_scale)
    throw NotOnCharacteristic("vanishing_order: det q does not vanish at the point");

  const double s0 = std::abs(pt.tau) + xin;
  const std::array<double, 3> radii = {1e-2, 5e-3, 2.5e-3};
  SplitMix64 rng(0x6d686470UL);  // fixed probe seed

  double min_slope = 1e30;
  int usable = 0;
  for (int dir = 0; dir < 32; dir++) {
    std::array<double, 4> d{};
    double n2 = 0.0;
    for (int i = 0; i < 4; i++) {
      d[i] = rng.next_symmetric();
      n2 += d[i] * d[i];
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& v : d) v *= inv;

    std::array<double, 3> logf{};
    bool ok = true;
    double first_sign = 0.0;
    for (int r = 0; r < 3; r++) {
      PhasePoint p = pt;
      const double eps = radii[r] * s0;
      p.tau += eps * d[0];
      for (int i = 0; i < 3; i++)
        p.xi[i] += eps * d[i + 1];
      const double f = symbols::det_q(p, bg);
      if (f == 0.0 || !std::isfinite(f)) {
        ok = false;  // direction tangent to the variety within roundoff
        break;
      }
      // A sign change of det across the radii means the direction crosses a
      // characteristic sheet inside the window; no power law to fit there.
      if (r == 0) first_sign = (f > 0.0) ? 1.0 : -1.0;
      else if (f * first_sign < 0.0) {
        ok = false;
        break;
      }
      logf[r] = std::log(std::abs(f));
    }
    if (!ok) continue;
    // A usable direction behaves like a power law over the radius window; a
    // nearby root of det (sheet crossing just outside the window) bends the
    // curve, which shows up as inconsistent pairwise slopes.
    const double log_ratio = std::log(2.0);
    const double s12 = (logf[0] - logf[1]) / log_ratio;
    const double s23 = (logf[1] - logf[2]) / log_ratio;
    if (std::abs(s12 - s23) > 0.3) continue;
    // The pairwise slopes carry an O(radius) bias from the next term of the
    // expansion; the halved-radius pair carries half of it, so 2 s23 - s12
    // extrapolates it away.
    const double slope = 2.0 * s23 - s12;
    usable++;
    min_slope = std::min(min_slope, slope);
  }
  if (usable == 0) return std::nullopt;
  const int rounded = static_cast<int>(std::lround(min_slope));
  if (std::abs(min_slope - rounded) > 0.1) return std::nullopt;
  if (rounded < 0 || rounded > max_order) return std::nullopt;
  return rounded;
}

std::vector<std::array<double, 8>> tangent_generators(const PhasePoint& pt,
                                                      const BackgroundEval& bg,
                                                      Regime regime) {
  // Basis order: (dt, dx1, dx2, dx3, dtau, dxi1, dxi2, dxi3).
  const Vec3& xi = pt.xi;
  const Vec3& H = bg.H;
  const double tau = pt.tau;
  const double xi2 = dot(xi, xi);
  const double hxi = dot(H, xi);
  std::vector<std::array<double, 8>> gen;

  auto add = [&](std::initializer_list<std::pair<int, double>> coeffs) {
    std::array<double, 8> v{};
    for (const auto& [idx, val] : coeffs) v[idx] = val;
    gen.push_back(v);
  };

  if (regime == Regime::UniaxialSigma2) {
    add({{5, xi[1]}, {6, -xi[0]}});          // xi2 dxi1 - xi1 dxi2
    add({{5, xi[2]}, {7, -xi[0]}});          // xi3 dxi1 - xi1 dxi3
    add({{7, xi[1]}, {6, -xi[2]}});          // xi2 dxi3 - xi3 dxi2
    add({{5, H[1]}, {6, -H[0]}});            // H2 dxi1 - H1 dxi2
    add({{7, H[0]}, {5, -H[2]}});            // H1 dxi3 - H3 dxi1
    add({{7, H[1]}, {6, -H[2]}});            // H2 dxi3 - H3 dxi2
    add({{0, 1.0}});                         // dt
    add({{4, xi[0] * tau}, {5, xi2}});
    add({{4, xi[1] * tau}, {6, xi2}});
    add({{4, xi[2] * tau}, {7, xi2}});
    add({{4, tau * H[0]}, {5, hxi}});
    add({{4, tau * H[1]}, {6, hxi}});
    add({{4, tau * H[2]}, {7, hxi}});
    return gen;
  }
  if (regime == Regime::MHDTypeSigma2) {
    add({{5, xi[0]}, {6, xi[1]}, {7, xi[2]}});  // radial xi . dxi
    add({{4, tau}});
    add({{0, 1.0}});
    add({{5, tau}});
    add({{6, tau}});
    add({{7, tau}});
    add({{1, tau}});
    add({{2, tau}});
    add({{3, tau}});
    add({{1, hxi}});
    add({{2, hxi}});
    add({{3, hxi}});
    add({{5, hxi}});
    add({{7, hxi}});
    return gen;
  }
  throw WrongRegime("tangent_generators: regime has no printed generator list");
}

double check_kernel_mapping(const PhasePoint& pt, const BackgroundEval& bg,
                            Regime regime) {
  if (regime != Regime::UniaxialSigma2 && regime != Regime::MHDTypeSigma2)
    throw WrongRegime("check_kernel_mapping: regime must be uniaxial or MHD");
  const int nominal_dim = (regime == Regime::MHDTypeSigma2) ? 6 : 2;

  // Near-kernel and near-cokernel subspaces: the nominal_dim smallest right /
  // left singular directions of q. On the intersection these span ker q and
  // the orthogonal complement of Im q exactly; at a perturbed point they make
  // the residual a meaningful negative control.
  const MatrixSymbol q = symbols::build_q(pt, bg);
  const Svd svd = svd_onesided(q);
  MatrixSymbol qh(8);  // conjugate transpose
  for (int i = 0; i < 8; i++)
    for (int j = 0; j < 8; j++) qh(i, j) = std::conj(q(j, i));
  const Svd svd_left = svd_onesided(qh);
  std::vector<std::array<cplx, 8>> kernel, cokernel;
  for (int j = 8 - nominal_dim; j < 8; j++) {
    std::array<cplx, 8> v{}, w{};
    for (int k = 0; k < 8; k++) {
      v[k] = svd.v(k, j);
      w[k] = svd_left.v(k, j);
    }
    kernel.push_back(v);
    cokernel.push_back(w);
  }

  // Precompute the coordinate derivatives of q.
  const MatrixSymbol dq_dt = symbols::build_A_dt(bg, pt.xi);
  std::array<MatrixSymbol, 3> dq_dx, dq_dxi;
  for (int k = 0; k < 3; k++) {
    dq_dx[k] = symbols::build_A_dx(bg, pt.xi, k);
    Vec3 ek{};
    ek[k] = 1.0;
    dq_dxi[k] = symbols::build_A(bg, ek);
  }

  const auto gens = tangent_generators(pt, bg, regime);
  std::vector<MatrixSymbol> dqs;
  dqs.reserve(gens.size());
  double ref_norm = 0.0;  // derivative scale set by the largest generator
  for (const auto& gen : gens) {
    MatrixSymbol dq(8, 1);
    if (gen[0] != 0.0) dq = dq + gen[0] * dq_dt;
    for (int k = 0; k < 3; k++) {
      if (gen[1 + k] != 0.0)
        dq = dq + gen[1 + k] * dq_dx[k];
      if (gen[5 + k] != 0.0)
        dq = dq + gen[5 + k] * dq_dxi[k];
    }
    if (gen[4] != 0.0)
      for (int i = 0; i < 8; i++) dq(i, i) += gen[4];  // dtau q = Id8
    ref_norm = std::max(ref_norm, frob_norm(dq));
    dqs.push_back(dq);
  }

  // The invariant condition is that every tangent derivative maps ker q into
  // Im q, so the residual measures the component of (D_j q) nu outside the
  // image (its projection onto the cokernel). Generators whose coefficients
  // vanish on the intersection come out as roundoff-sized matrices; the
  // guard keeps their ratio from amplifying that roundoff to order one.
  double worst = 0.0;
  for (const MatrixSymbol& dq : dqs) {
    const double dq_norm = frob_norm(dq);
    for (const auto& nu : kernel) {
      const std::array<cplx, 8> y = apply8(dq, nu);
      double out2 = 0.0, nunorm = 0.0;
      for (const auto& w : cokernel) {
        cplx proj = 0.0;
        for (int i = 0; i < 8; i++)
          proj += std::conj(w[i]) * y[i];
        out2 += std::norm(proj);
      }
      for (int i = 0; i < 8; i++) nunorm += std::norm(nu[i]);
      const double res =
          std::sqrt(out2) / ((dq_norm + 1e-4 * ref_norm) * std::sqrt(nunorm) + 1e-300);
      worst = std::max(worst, res);
    }
  }
  return worst;
}

}  // namespace mhdpol::classify
