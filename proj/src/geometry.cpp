// mhdpol - bicharacteristic rays and polarization transport

#include "mhdpol/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include "mhdpol/errors.hpp"
#include "mhdpol/spectra.hpp"
#include "mhdpol/symbols.hpp"

namespace mhdpol::geometry {

namespace {

constexpr double kStopEps = 1e-10;       // relative degeneracy threshold on guards
constexpr double kRadicalEps = 1e-14;    // relative threshold on the radical argument
constexpr double kStartSheetEps = 1e-8;  // |q(start)| / q_scale admission

struct SheetDerivs {
  double value;
  double d_tau;
  Vec3 d_xi;
  Vec3 d_x;
  double d_t;
};

// Value and full gradient of q_sheet. Sheets 2/3 differentiate through the
// magnetosonic radical; sheet 1 is polynomial.
SheetDerivs sheet_derivs(int sheet, const PhasePoint& pt, const BackgroundEval& bg) {
  SheetDerivs out{};
  const Vec3& xi = pt.xi;
  const double tau = pt.tau;
  if (sheet == 1) {
    const double hxi = dot(bg.H, xi);
    out.value = bg.rho * tau * tau - hxi * hxi;
    out.d_tau = 2.0 * bg.rho * tau;
    out.d_xi = -2.0 * hxi * bg.H;
    for (int k = 0; k < 3; k++) {
      const Vec3 dHk = {bg.dH[0][k], bg.dH[1][k], bg.dH[2][k]};
      out.d_x[k] = bg.grad_rho[k] * tau * tau - 2.0 * hxi * dot(dHk, xi);
    }
    out.d_t = bg.dt_rho * tau * tau - 2.0 * hxi * dot(bg.dt_H, xi);
    return out;
  }
  if (sheet != 2 && sheet != 3) throw Error("sheet must be 1, 2 or 3");

  const double sgn = (sheet == 2) ? -1.0 : 1.0;
  const double xi2 = dot(xi, xi);
  const double C = bg.c2, HH = bg.h2;
  const Vec3 xh = cross(xi, bg.H);
  const double B = dot(xh, xh) / bg.rho;
  const double S = (C + HH) * xi2;
  const double radarg = (C - HH) * (C - HH) * xi2 * xi2 + 4.0 * B * C * xi2;
  if (radarg <= kRadicalEps * S * S)
    throw RadicalDegenerate("sheet derivative: magnetosonic radical vanishes");
  const double R = std::sqrt(radarg);
  const double Wf = 0.5 * (S + R);
  // Product of the two magnetosonic branches: W_s W_f = c^2 |xi|^2 (xi.H)^2
  // / rho, the stable route to the subtracted branch.
  const double hxi0 = dot(bg.H, xi);
  const double W = (sheet == 3)
                       ? Wf
                       : ((Wf > 0.0) ? C * xi2 * hxi0 * hxi0 / (bg.rho * Wf)
                                     : 0.5 * (S - R));

  out.value = bg.rho * (tau * tau - W);
  out.d_tau = 2.0 * bg.rho * tau;

  const double h2norm = dot(bg.H, bg.H);
  const double hxi = dot(bg.H, xi);
  for (int k = 0; k < 3; k++) {
    const double dxi2 = 2.0 * xi[k];
    const double dB = (2.0 * xi[k] * h2norm - 2.0 * hxi * bg.H[k]) / bg.rho;
    const double dS = (C + HH) * dxi2;
    const double drad =
        (C - HH) * (C - HH) * 2.0 * xi2 * dxi2 + 4.0 * C * (dB * xi2 + B * dxi2);
    const double dW = 0.5 * (dS + sgn * drad / (2.0 * R));
    out.d_xi[k] = -bg.rho * dW;
  }

  auto base_deriv = [&](double drho, double dp, const Vec3& dH) {
    const double dh2norm = 2.0 * dot(bg.H, dH);
    const double dC = (bg.gamma * dp - C * drho) / bg.rho;
    const double dHH = (dh2norm - HH * drho) / bg.rho;
    const Vec3 dxh = cross(xi, dH);
    const double dB = (2.0 * dot(xh, dxh) - B * drho) / bg.rho;
    const double dS = (dC + dHH) * xi2;
    const double drad =
        2.0 * (C - HH) * (dC - dHH) * xi2 * xi2 + 4.0 * xi2 * (dB * C + B * dC);
    const double dW = 0.5 * (dS + sgn * drad / (2.0 * R));
    return drho * (tau * tau - W) - bg.rho * dW;
  };
  for (int k = 0; k < 3; k++) {
    const Vec3 dHk = {bg.dH[0][k], bg.dH[1][k], bg.dH[2][k]};
    out.d_x[k] = base_deriv(bg.grad_rho[k], bg.grad_p[k], dHk);
  }
  out.d_t = base_deriv(bg.dt_rho, bg.dt_p, bg.dt_H);
  return out;
}

// --------------------------------------------------------------------------
// Embedded Dormand-Prince 4(5) with output clipping and a guard hook.

constexpr int kMaxState = 14;

struct StepperResult {
  bool stopped = false;
  std::string reason;
  double s_reached = 0.0;
  Ray::StepStats stats;
};

struct Rk45 {
  int n;
  double tol;
  std::function<void(double, const double*, double*)> rhs;  // may throw
  // Called at every dense-output sample.
  std::function<void(double, const double*)> on_sample;
  // Returns a stop reason when a degenerate region is entered.
  std::function<std::optional<std::string>(const double*)> guard;

  StepperResult run(const double* y0, const std::vector<double>& out_grid) {
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                        e4 = 125.0 / 192 - 393.0 / 640,
                        e5 = -2187.0 / 6784 + 92097.0 / 339200, e6 = 11.0 / 84 - 187.0 / 2100,
                        e7 = -1.0 / 40;

    StepperResult res;
    double y[kMaxState], k1[kMaxState], k2[kMaxState], k3[kMaxState], k4[kMaxState],
        k5[kMaxState], k6[kMaxState], k7[kMaxState], yt[kMaxState], y5[kMaxState];
    for (int i = 0; i < n; i++) y[i] = y0[i];

    const double span = out_grid.back();
    double s = 0.0;
    std::size_t next_out = 0;

    auto emit_due = [&]() {
      while (next_out < out_grid.size() && out_grid[next_out] <= s + 1e-14 * (1.0 + span)) {
        on_sample(out_grid[next_out], y);
        next_out++;
      }
    };

    if (auto why = guard(y)) {
      on_sample(0.0, y);
      res.stopped = true;
      res.reason = *why;
      res.s_reached = 0.0;
      return res;
    }
    emit_due();

    double y_scale = 1.0;
    for (int i = 0; i < n; i++) y_scale = std::max(y_scale, std::abs(y[i]));
    const double atol = 1e-12 * y_scale;

    double h = span / 128.0;
    res.stats.h_min = h;
    res.stats.h_max = h;
    int domain_retries = 0;

    while (s < span - 1e-14 * (1.0 + span)) {
      if (next_out < out_grid.size()) h = std::min(h, out_grid[next_out] - s);
      h = std::min(h, span - s);
      if (h <= 1e-15 * (1.0 + span)) break;

      bool step_ok = true;
      std::string fail_reason;
      try {
        rhs(s, y, k1);
        for (int i = 0; i < n; i++) yt[i] = y[i] + h * a21 * k1[i];
        rhs(s + c2 * h, yt, k2);
        for (int i = 0; i < n; i++) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(s + c3 * h, yt, k3);
        for (int i = 0; i < n; i++)
          yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(s + c4 * h, yt, k4);
        for (int i = 0; i < n; i++)
          yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(s + c5 * h, yt, k5);
        for (int i = 0; i < n; i++)
          yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                              a65 * k5[i]);
        rhs(s + h, yt, k6);
        for (int i = 0; i < n; i++)
          y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(s + h, y5, k7);
      } catch (const Error& err) {
        step_ok = false;
        fail_reason = err.what();
      }

      if (!step_ok) {
        // Shrink toward the failure; if the current point itself is bad, stop.
        domain_retries++;
        if (domain_retries > 40 || h <= 1e-12 * (1.0 + span)) {
          res.stopped = true;
          res.reason = fail_reason;
          res.s_reached = s;
          return res;
        }
        h *= 0.25;
        res.stats.rejected++;
        continue;
      }
      domain_retries = 0;

      double err = 0.0;
      for (int i = 0; i < n; i++) {
        const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                               e6 * k6[i] + e7 * k7[i]);
        const double sc = atol + tol * std::max(std::abs(y[i]), std::abs(y5[i]));
        err = std::max(err, std::abs(ei) / sc);
      }

      if (err > 1.0) {
        res.stats.rejected++;
        h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        continue;
      }

      s += h;
      for (int i = 0; i < n; i++) y[i] = y5[i];
      res.stats.accepted++;
      res.stats.h_min = std::min(res.stats.h_min, h);
      res.stats.h_max = std::max(res.stats.h_max, h);
      // Guard before emitting: samples past a degeneracy are not recorded.
      if (auto why = guard(y)) {
        res.stopped = true;
        res.reason = *why;
        res.s_reached = s;
        return res;
      }
      emit_due();
      const double grow = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
      h *= std::clamp(grow, 0.2, 5.0);
    }
    res.s_reached = s;
    return res;
  }
};

PhasePoint point_from_state(const double* y) {
  PhasePoint pt;
  pt.t = y[0];
  pt.x = {y[1], y[2], y[3]};
  pt.tau = y[4];
  pt.xi = {y[5], y[6], y[7]};
  return pt;
}

void state_from_point(const PhasePoint& pt, double* y) {
  y[0] = pt.t;
  y[1] = pt.x[0];
  y[2] = pt.x[1];
  y[3] = pt.x[2];
  y[4] = pt.tau;
  y[5] = pt.xi[0];
  y[6] = pt.xi[1];
  y[7] = pt.xi[2];
}

// Signed degeneracy guards along a ray; the cross-field component is measured
// against the direction of xi x H at the start so a sign flip marks a crossing.
class DegeneracyGuard {
 public:
  DegeneracyGuard(const BackgroundField& field, const PhasePoint& start) : field_(field) {
    const BackgroundEval bg = eval_background(field, start.t, start.x);
    const Vec3 xh = cross(start.xi, bg.H);
    const double n = norm(xh);
    cross_ref_ = (n > 0.0) ? (1.0 / n) * xh : Vec3{0, 0, 0};
  }

  std::optional<std::string> operator()(const double* y) {
    PhasePoint pt = point_from_state(y);
    BackgroundEval bg;
    try {
      bg = eval_background(field_, pt.t, pt.x);
    } catch (const Error& err) {
      return std::string(err.what());
    }
    const double xin = norm(pt.xi);
    const double hn = norm(bg.H);
    const double dotv = dot(pt.xi, bg.H);
    const Vec3 xh = cross(pt.xi, bg.H);
    const double crossv = dot(xh, cross_ref_);
    const double speedv = dot(bg.H, bg.H) - bg.rho * bg.c2;

    if (std::abs(dotv) < kStopEps * xin * hn) return std::string("xi.H vanishes");
    if (norm(xh) < kStopEps * xin * hn) return std::string("xi x H vanishes");
    if (std::abs(speedv) < kStopEps * (dot(bg.H, bg.H) + bg.rho * bg.c2))
      return std::string("|H|^2 crosses rho c^2");
    const double xi2 = dot(pt.xi, pt.xi);
    const double S = (bg.c2 + bg.h2) * xi2;
    const Vec3 xhh = cross(pt.xi, bg.H);
    const double B = dot(xhh, xhh) / bg.rho;
    const double radarg =
        (bg.c2 - bg.h2) * (bg.c2 - bg.h2) * xi2 * xi2 + 4.0 * B * bg.c2 * xi2;
    if (radarg <= kRadicalEps * S * S) return std::string("magnetosonic radical degenerate");

    if (has_prev_) {
      if (prev_dot_ * dotv < 0.0) return std::string("xi.H crossed zero");
      if (cross_ref_ != Vec3{0, 0, 0} && prev_cross_ * crossv < 0.0)
        return std::string("xi x H crossed zero");
      if (prev_speed_ * speedv < 0.0) return std::string("|H|^2 crossed rho c^2");
    }
    prev_dot_ = dotv;
    prev_cross_ = crossv;
    prev_speed_ = speedv;
    has_prev_ = true;
    return std::nullopt;
  }

 private:
  const BackgroundField& field_;
  Vec3 cross_ref_;
  bool has_prev_ = false;
  double prev_dot_ = 0.0, prev_cross_ = 0.0, prev_speed_ = 0.0;
};

std::vector<double> uniform_grid(double span, int samples) {
  const int n = std::max(samples, 2);
  std::vector<double> grid(n);
  for (int i = 0; i < n; i++)
    grid[i] = span * static_cast<double>(i) / (n - 1);
  return grid;
}

}  // namespace

double sheet_value(int sheet, const PhasePoint& pt, const BackgroundEval& bg) {
  const spectra::SheetFactors q = spectra::sheet_factors(pt, bg);
  return q[sheet];
}

std::array<double, 8> hamilton_field(int sheet, const PhasePoint& pt,
                                     const BackgroundEval& bg) {
  const SheetDerivs d = sheet_derivs(sheet, pt, bg);
  return {d.d_tau,   d.d_xi[0], d.d_xi[1], d.d_xi[2],
          -d.d_t,    -d.d_x[0], -d.d_x[1], -d.d_x[2]};
}

Ray trace_ray(const PhasePoint& start, int sheet, const BackgroundField& field,
              const RayOptions& opt) {
  PhasePoint p0 = start;
  BackgroundEval bg0 = eval_background(field, p0.t, p0.x);
  if (opt.project_tau) {
    const spectra::WaveSpeeds ws = spectra::wave_speeds(bg0, p0.xi);
    const double xin = norm(p0.xi);
    double target = 0.0;
    if (sheet == 1) target = std::abs(dot(bg0.H, p0.xi)) / std::sqrt(bg0.rho);
    else if (sheet == 2) target = std::sqrt(ws.cs2) * xin;
    else target = std::sqrt(ws.cf2) * xin;
    p0.tau = (p0.tau < 0.0) ? -target : target;
  }
  if (std::abs(sheet_value(sheet, p0, bg0)) > kStartSheetEps * q_scale(p0, bg0))
    throw NotOnSheet("trace_ray: start point is not on the requested sheet");

  Ray ray;
  ray.sheet = sheet;
  ray.tol = opt.tol;

  DegeneracyGuard guard(field, p0);
  Rk45 stepper;
  stepper.n = 8;
  stepper.tol = opt.tol;
  stepper.rhs = [&](double, const double* y, double* f) {
    const PhasePoint pt = point_from_state(y);
    const BackgroundEval bg = eval_background(field, pt.t, pt.x);
    const std::array<double, 8> xh = hamilton_field(sheet, pt, bg);
    for (int i = 0; i < 8; i++) f[i] = xh[i];
  };
  stepper.on_sample = [&](double s, const double* y) {
    Ray::Sample sample;
    sample.s = s;
    sample.pt = point_from_state(y);
    const BackgroundEval bg = eval_background(field, sample.pt.t, sample.pt.x);
    sample.q_residual =
        std::abs(sheet_value(sheet, sample.pt, bg)) / q_scale(sample.pt, bg);
    ray.q_drift = std::max(ray.q_drift, sample.q_residual);
    ray.samples.push_back(sample);
  };
  stepper.guard = [&](const double* y) { return guard(y); };

  double y0[8];
  state_from_point(p0, y0);
  const StepperResult res = stepper.run(y0, uniform_grid(opt.span, opt.samples));
  ray.stats = res.stats;
  ray.stopped = res.stopped;
  ray.stop_reason = res.reason;
  ray.s_reached = res.stopped ? res.s_reached : opt.span;
  return ray;
}

SymbolFn make_p2_fn(const BackgroundField& field) {
  return [&field](const PhasePoint& pt) {
    return symbols::build_p2(pt, eval_background(field, pt.t, pt.x));
  };
}

SymbolFn make_ptilde_fn(const BackgroundField& field, int sheet) {
  return [&field, sheet](const PhasePoint& pt) {
    return symbols::build_ptilde(pt, eval_background(field, pt.t, pt.x), sheet);
  };
}

SymbolFn make_projector_fn(const BackgroundField& field, int sheet) {
  return [&field, sheet](const PhasePoint& pt) {
    return spectra::build_projectors(pt, eval_background(field, pt.t, pt.x))[sheet];
  };
}

SymbolFn make_subprincipal_fn(const BackgroundField& field) {
  return [&field](const PhasePoint& pt) {
    return symbols::build_subprincipal_closed(pt, eval_background(field, pt.t, pt.x));
  };
}

SymbolFn make_sheet_scalar_fn(const BackgroundField& field, int sheet) {
  return [&field, sheet](const PhasePoint& pt) {
    const BackgroundEval bg = eval_background(field, pt.t, pt.x);
    return sheet_value(sheet, pt, bg) * MatrixSymbol::identity(3);
  };
}

namespace {

// Central difference of a symbol function along one of the 8 phase
// coordinates (order: t, x1..3, tau, xi1..3).
MatrixSymbol central_diff(const SymbolFn& f, const PhasePoint& pt, int coord) {
  PhasePoint plus = pt, minus = pt;
  double* slot_p = nullptr;
  double* slot_m = nullptr;
  switch (coord) {
    case 0: slot_p = &plus.t; slot_m = &minus.t; break;
    case 1: case 2: case 3:
      slot_p = &plus.x[coord - 1];
      slot_m = &minus.x[coord - 1];
      break;
    case 4: slot_p = &plus.tau; slot_m = &minus.tau; break;
    default:
      slot_p = &plus.xi[coord - 5];
      slot_m = &minus.xi[coord - 5];
      break;
  }
  const double freq_scale = std::abs(pt.tau) + norm(pt.xi);
  const double scale = (coord >= 4) ? freq_scale : 1.0 + std::abs(*slot_p);
  const double h = 1e-5 * scale;
  *slot_p += h;
  *slot_m -= h;
  const MatrixSymbol fp = f(plus);
  const MatrixSymbol fm = f(minus);
  return (1.0 / (2.0 * h)) * (fp - fm);
}

}  // namespace

MatrixSymbol poisson_bracket_matrix(const SymbolFn& f, const SymbolFn& g,
                                    const PhasePoint& pt) {
  const MatrixSymbol f_tau = central_diff(f, pt, 4);
  const MatrixSymbol g_t = central_diff(g, pt, 0);
  const MatrixSymbol f_t = central_diff(f, pt, 0);
  const MatrixSymbol g_tau = central_diff(g, pt, 4);
  MatrixSymbol out = f_tau * g_t - f_t * g_tau;
  for (int k = 0; k < 3; k++) {
    const MatrixSymbol f_xi = central_diff(f, pt, 5 + k);
    const MatrixSymbol g_x = central_diff(g, pt, 1 + k);
    const MatrixSymbol f_x = central_diff(f, pt, 1 + k);
    const MatrixSymbol g_xi = central_diff(g, pt, 5 + k);
    out = out + f_xi * g_x - f_x * g_xi;
  }
  return out;
}

namespace {

double frob(const MatrixSymbol& m) {
  double s = 0.0;
  for (int i = 0; i < m.dim * m.dim; i++) s += std::norm(m.e[i]);
  return std::sqrt(s);
}

double kernel_residual_at(const PhasePoint& pt, const BackgroundEval& bg,
                          const std::array<cplx, 3>& w) {
  const MatrixSymbol p2 = symbols::build_p2(pt, bg);
  const std::array<cplx, 3> y = apply3(p2, w);
  double yn = 0.0, wn = 0.0;
  for (int i = 0; i < 3; i++) {
    yn += std::norm(y[i]);
    wn += std::norm(w[i]);
  }
  return std::sqrt(yn) / (frob(p2) * std::sqrt(wn) + 1e-300);
}

// Shared driver for the two transport laws: integrates the phase point and
// the 3-vector w together (the coupling is one-way) and records w at the
// ray's sample parameters.
PolarizationFrame transport_along(const Ray& ray, const BackgroundField& field,
                                  const std::array<cplx, 3>& w0,
                                  const std::function<MatrixSymbol(const PhasePoint&)>& law) {
  if (ray.samples.empty()) throw Error("transport: ray has no samples");
  const PhasePoint start = ray.samples.front().pt;
  const BackgroundEval bg0 = eval_background(field, start.t, start.x);
  if (kernel_residual_at(start, bg0, w0) > 1e-8)
    throw NotInKernel("transport: initial vector is not in ker p2");

  std::vector<double> grid;
  grid.reserve(ray.samples.size());
  for (const auto& s : ray.samples) grid.push_back(s.s);

  PolarizationFrame frame;
  DegeneracyGuard guard(field, start);
  Rk45 stepper;
  stepper.n = 14;
  stepper.tol = ray.tol;
  stepper.rhs = [&](double, const double* y, double* f) {
    const PhasePoint pt = point_from_state(y);
    const BackgroundEval bg = eval_background(field, pt.t, pt.x);
    const std::array<double, 8> xh = hamilton_field(ray.sheet, pt, bg);
    for (int i = 0; i < 8; i++) f[i] = xh[i];
    const MatrixSymbol m = law(pt);
    const std::array<cplx, 3> w = {cplx(y[8], y[11]), cplx(y[9], y[12]),
                                   cplx(y[10], y[13])};
    const std::array<cplx, 3> dw = apply3(m, w);
    for (int i = 0; i < 3; i++) {
      f[8 + i] = dw[i].real();
      f[11 + i] = dw[i].imag();
    }
  };
  stepper.on_sample = [&](double s, const double* y) {
    PolarizationFrame::Sample sample;
    sample.s = s;
    const PhasePoint pt = point_from_state(y);
    sample.w = {cplx(y[8], y[11]), cplx(y[9], y[12]), cplx(y[10], y[13])};
    double wn = 0.0;
    for (const auto& c : sample.w) wn += std::norm(c);
    wn = std::sqrt(wn);
    for (int i = 0; i < 3; i++)
      sample.direction[i] =
          (wn > 0.0) ? sample.w[i] / wn : cplx(0.0);
    const BackgroundEval bg = eval_background(field, pt.t, pt.x);
    sample.kernel_residual = kernel_residual_at(pt, bg, sample.w);
    frame.max_kernel_residual = std::max(frame.max_kernel_residual, sample.kernel_residual);
    frame.samples.push_back(sample);
  };
  stepper.guard = [&](const double* y) { return guard(y); };

  double y0[14];
  state_from_point(start, y0);
  for (int i = 0; i < 3; i++) {
    y0[8 + i] = w0[i].real();
    y0[11 + i] = w0[i].imag();
  }
  stepper.run(y0, grid);
  return frame;
}

}  // namespace

PolarizationFrame dencker_transport(const Ray& ray, const BackgroundField& field,
                                    const std::array<cplx, 3>& w0) {
  const SymbolFn p2 = make_p2_fn(field);
  const SymbolFn ptilde = make_ptilde_fn(field, ray.sheet);
  const SymbolFn ps = make_subprincipal_fn(field);
  auto law = [&](const PhasePoint& pt) {
    const MatrixSymbol bracket = poisson_bracket_matrix(ptilde, p2, pt);
    const MatrixSymbol pt_ps = ptilde(pt) * ps(pt);
    // D w = 0  =>  dw/ds = -1/2 {ptilde, p2} w - i ptilde p^s w
    return cplx(-0.5, 0.0) * bracket + cplx(0.0, -1.0) * pt_ps;
  };
  return transport_along(ray, field, w0, law);
}

PolarizationFrame simplified_transport(const Ray& ray, const BackgroundField& field,
                                       const std::array<cplx, 3>& a0) {
  const SymbolFn qfn = make_sheet_scalar_fn(field, ray.sheet);
  const SymbolFn pifn = make_projector_fn(field, ray.sheet);
  auto law = [&](const PhasePoint& pt) {
    // da/ds = (H_q pi) a with H_q pi = {q, pi}
    return poisson_bracket_matrix(qfn, pifn, pt);
  };
  return transport_along(ray, field, a0, law);
}

double direction_distance(const std::array<cplx, 3>& u, const std::array<cplx, 3>& v) {
  cplx inner = 0.0;
  double un = 0.0, vn = 0.0;
  for (int i = 0; i < 3; i++) {
    inner += std::conj(u[i]) * v[i];
    un += std::norm(u[i]);
    vn += std::norm(v[i]);
  }
  const double denom = std::sqrt(un * vn);
  if (denom == 0.0) return 0.0;
  const double cosang = std::min(std::abs(inner) / denom, 1.0);
  return std::sqrt(std::max(2.0 - 2.0 * cosang, 0.0));
}

}  // namespace mhdpol::geometry
