// mhdpol - command-line front end

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "mhdpol/background.hpp"
#include "mhdpol/classify.hpp"
#include "mhdpol/errors.hpp"
#include "mhdpol/geometry.hpp"
#include "mhdpol/scenario.hpp"
#include "mhdpol/spectra.hpp"
#include "mhdpol/symbols.hpp"
#include "mhdpol/verify.hpp"

namespace {

constexpr const char* kVersion = "mhdpol 1.0.0";
constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadPhysics = 2;
constexpr int kExitRayStopped = 3;
constexpr int kExitUsage = 64;

using namespace mhdpol;

std::string g_command_line;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_header(const Scenario* sc) {
  std::string h = std::string("# ") + kVersion + "\n";
  h += "# command: " + g_command_line + "\n";
  if (sc) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(sc->hash));
    h += std::string("# scenario: ") + buf + "\n";
  }
  return h;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file: " + path);
  out << content;
}

std::optional<Vec3> parse_triple(const std::string& s) {
  Vec3 v{};
  char extra;
  if (std::sscanf(s.c_str(), "%lf,%lf,%lf%c", &v[0], &v[1], &v[2], &extra) == 3) return v;
  return std::nullopt;
}

std::optional<PhasePoint> parse_point(const std::string& s) {
  PhasePoint p;
  char extra;
  if (std::sscanf(s.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf%c", &p.t, &p.x[0], &p.x[1],
                  &p.x[2], &p.tau, &p.xi[0], &p.xi[1], &p.xi[2], &extra) == 8)
    return p;
  return std::nullopt;
}

void warn_equilibrium(const Scenario& sc) {
  const BackgroundEval bg = eval_background(sc.background, sc.point.t, sc.point.x);
  const Vec3 res = equilibrium_residual(sc.background, sc.point.x, sc.point.t);
  if (norm(res) > 1e-10 * equilibrium_scale(bg))
    std::cerr << "warning: background is not in stationary equilibrium at the "
                 "scenario point (residual "
              << norm(res) << ")\n";
}

int cmd_speeds(const Scenario& sc, const std::optional<Vec3>& xi_arg,
               const std::string& out) {
  warn_equilibrium(sc);
  const Vec3 xi = xi_arg.value_or(sc.point.xi);
  const BackgroundEval bg = eval_background(sc.background, sc.point.t, sc.point.x);
  const spectra::WaveSpeeds ws = spectra::wave_speeds(bg, xi);
  const Vec3 xhat = (1.0 / norm(xi)) * xi;
  std::string csv = csv_header(&sc);
  csv += "xi_hat1,xi_hat2,xi_hat3,c_s,c_f,c_A,c,h\n";
  csv += fmt(xhat[0]) + "," + fmt(xhat[1]) + "," + fmt(xhat[2]) + "," +
         fmt(std::sqrt(ws.cs2)) + "," + fmt(std::sqrt(ws.cf2)) + "," +
         fmt(std::abs(ws.a)) + "," + fmt(std::sqrt(ws.c2)) + "," + fmt(std::sqrt(ws.h2)) +
         "\n";
  write_output(out, csv);
  return kExitOk;
}

std::string friedrichs_svg(const std::vector<std::array<double, 4>>& rows) {
  // Polar plot of the three phase-speed curves; theta = 0 points along H
  // (to the right).
  double rmax = 1e-30;
  for (const auto& r : rows) rmax = std::max({rmax, r[1], r[2], r[3]});
  const double size = 560.0, cx = size / 2, cy = size / 2, rad = 0.42 * size;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\""
      << size << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int ring = 1; ring <= 4; ring++)
    svg << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << rad * ring / 4.0
        << "\" fill=\"none\" stroke=\"#dddddd\"/>\n";
  svg << "<line x1=\"" << cx - rad << "\" y1=\"" << cy << "\" x2=\"" << cx + rad
      << "\" y2=\"" << cy << "\" stroke=\"#bbbbbb\"/>\n";
  svg << "<line x1=\"" << cx << "\" y1=\"" << cy - rad << "\" x2=\"" << cx << "\" y2=\""
      << cy + rad << "\" stroke=\"#bbbbbb\"/>\n";
  const char* colors[3] = {"#1f77b4", "#2ca02c", "#d62728"};
  const char* names[3] = {"c_s", "c_A", "c_f"};
  for (int k = 0; k < 3; k++) {
    svg << "<polyline fill=\"none\" stroke=\"" << colors[k]
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& r : rows) {
      const double rr = rad * r[k + 1] / rmax;
      svg << cx + rr * std::cos(r[0]) << "," << cy - rr * std::sin(r[0]) << " ";
    }
    svg << "\"/>\n";
    svg << "<text x=\"20\" y=\"" << 30 + 20 * k << "\" fill=\"" << colors[k] << "\">"
        << names[k] << "</text>\n";
  }
  svg << "<text x=\"" << cx + rad + 6 << "\" y=\"" << cy + 4 << "\">H</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

int cmd_friedrichs(const Scenario& sc, int ntheta, const std::string& out) {
  warn_equilibrium(sc);
  const BackgroundEval bg = eval_background(sc.background, sc.point.t, sc.point.x);
  const double hn = norm(bg.H);
  if (hn <= 0.0) throw DegenerateMode("H", "friedrichs: |H| must be positive");
  const Vec3 hhat = (1.0 / hn) * bg.H;
  Vec3 seed = {0.0, 0.0, 1.0};
  if (norm(cross(hhat, seed)) < 1e-6) seed = {1.0, 0.0, 0.0};
  Vec3 normal = cross(hhat, seed);
  normal = (1.0 / norm(normal)) * normal;

  std::vector<std::array<double, 4>> rows;
  rows.reserve(ntheta);
  for (int i = 0; i < ntheta; i++) {
    const double theta = 2.0 * M_PI * static_cast<double>(i) / ntheta;
    const Vec3 xi = std::cos(theta) * hhat + std::sin(theta) * normal;
    const spectra::WaveSpeeds ws = spectra::wave_speeds(bg, xi);
    rows.push_back({theta, std::sqrt(ws.cs2), std::abs(ws.a), std::sqrt(ws.cf2)});
  }

  const bool svg = out.size() > 4 && out.substr(out.size() - 4) == ".svg";
  if (svg) {
    write_output(out, friedrichs_svg(rows));
  } else {
    std::string csv = csv_header(&sc);
    csv += "theta,c_s,c_A,c_f\n";
    for (const auto& r : rows)
      csv += fmt(r[0]) + "," + fmt(r[1]) + "," + fmt(r[2]) + "," + fmt(r[3]) + "\n";
    write_output(out, csv);
  }
  return kExitOk;
}

int cmd_classify(const Scenario& sc, const std::optional<PhasePoint>& pt_arg,
                 const std::string& out) {
  warn_equilibrium(sc);
  const PhasePoint pt = pt_arg.value_or(sc.point);
  const BackgroundEval bg = eval_background(sc.background, pt.t, pt.x);
  const classify::RegimeReport rep = classify::classify_point(pt, bg);
  std::ostringstream os;
  os << "regime=" << classify::regime_name(rep.regime) << "\n";
  os << "kernel_dim=" << rep.kernel_dim << "\n";
  os << "vanishing_order="
     << (rep.vanishing_order ? std::to_string(*rep.vanishing_order) : std::string("unknown"))
     << "\n";
  os << "tau=" << fmt(rep.witnesses.tau) << "\n";
  os << "xi_dot_H=" << fmt(rep.witnesses.xi_dot_H) << "\n";
  os << "xi_cross_H_norm=" << fmt(rep.witnesses.xi_cross_H_norm) << "\n";
  os << "H2_minus_rho_c2=" << fmt(rep.witnesses.H2_minus_rho_c2) << "\n";
  os << "c_s=" << fmt(rep.witnesses.cs) << " c_A=" << fmt(rep.witnesses.ca)
     << " c_f=" << fmt(rep.witnesses.cf) << "\n";
  os << "sheets=";
  for (int j = 0; j < 7; j++) os << (rep.witnesses.sheets.member[j] ? "1" : "0");
  os << "\n";
  write_output(out, os.str());
  return kExitOk;
}

geometry::Ray trace_from_scenario(const Scenario& sc, std::optional<int> sheet_arg) {
  geometry::RayOptions opt;
  opt.span = sc.ray.span;
  opt.tol = sc.ray.tol;
  opt.samples = sc.ray.samples;
  opt.project_tau = sc.ray.project_tau;
  const int sheet = sheet_arg.value_or(sc.ray.sheet);
  return geometry::trace_ray(sc.point, sheet, sc.background, opt);
}

int cmd_ray(const Scenario& sc, std::optional<int> sheet_arg, const std::string& out) {
  warn_equilibrium(sc);
  const geometry::Ray ray = trace_from_scenario(sc, sheet_arg);
  std::string csv = csv_header(&sc);
  if (ray.stopped)
    csv += "# stopped: " + ray.stop_reason + " at s=" + fmt(ray.s_reached) + "\n";
  csv += "s,t,x1,x2,x3,tau,xi1,xi2,xi3,q_residual\n";
  for (const auto& s : ray.samples) {
    csv += fmt(s.s) + "," + fmt(s.pt.t) + "," + fmt(s.pt.x[0]) + "," + fmt(s.pt.x[1]) +
           "," + fmt(s.pt.x[2]) + "," + fmt(s.pt.tau) + "," + fmt(s.pt.xi[0]) + "," +
           fmt(s.pt.xi[1]) + "," + fmt(s.pt.xi[2]) + "," + fmt(s.q_residual) + "\n";
  }
  write_output(out, csv);
  return ray.stopped ? kExitRayStopped : kExitOk;
}

std::array<cplx, 3> auto_polarization(const Scenario& sc, int sheet) {
  PhasePoint start = sc.point;
  const BackgroundEval bg = eval_background(sc.background, start.t, start.x);
  if (sc.ray.project_tau) {
    const spectra::WaveSpeeds ws = spectra::wave_speeds(bg, start.xi);
    const double xin = norm(start.xi);
    double target = 0.0;
    if (sheet == 1) target = std::abs(dot(bg.H, start.xi)) / std::sqrt(bg.rho);
    else if (sheet == 2) target = std::sqrt(ws.cs2) * xin;
    else target = std::sqrt(ws.cf2) * xin;
    start.tau = (start.tau < 0.0) ? -target : target;
  }
  const MatrixSymbol p2 = symbols::build_p2(start, bg);
  const auto kernel = spectra::kernel_basis(p2, 1e-8);
  if (kernel.empty())
    throw NotInKernel("transport: p2 has no kernel at the start point (is it on the sheet?)");
  return {kernel[0][0], kernel[0][1], kernel[0][2]};
}

int cmd_transport(const Scenario& sc, std::optional<int> sheet_arg, const std::string& out) {
  warn_equilibrium(sc);
  const int sheet = sheet_arg.value_or(sc.ray.sheet);
  const geometry::Ray ray = trace_from_scenario(sc, sheet_arg);
  const std::array<cplx, 3> w0 =
      sc.transport_w0 ? *sc.transport_w0 : auto_polarization(sc, sheet);
  const geometry::PolarizationFrame frame =
      geometry::dencker_transport(ray, sc.background, w0);

  std::string csv = csv_header(&sc);
  if (ray.stopped)
    csv += "# stopped: " + ray.stop_reason + " at s=" + fmt(ray.s_reached) + "\n";
  csv += "s,t,x1,x2,x3,tau,xi1,xi2,xi3,q_residual,w1_re,w1_im,w2_re,w2_im,w3_re,w3_im,"
         "kernel_residual,dir1_re,dir1_im,dir2_re,dir2_im,dir3_re,dir3_im\n";
  const std::size_t n = std::min(ray.samples.size(), frame.samples.size());
  for (std::size_t i = 0; i < n; i++) {
    const auto& r = ray.samples[i];
    const auto& w = frame.samples[i];
    csv += fmt(r.s) + "," + fmt(r.pt.t) + "," + fmt(r.pt.x[0]) + "," + fmt(r.pt.x[1]) +
           "," + fmt(r.pt.x[2]) + "," + fmt(r.pt.tau) + "," + fmt(r.pt.xi[0]) + "," +
           fmt(r.pt.xi[1]) + "," + fmt(r.pt.xi[2]) + "," + fmt(r.q_residual);
    for (int k = 0; k < 3; k++)
      csv += "," + fmt(w.w[k].real()) + "," +
             fmt(w.w[k].imag());
    csv += "," + fmt(w.kernel_residual);
    for (int k = 0; k < 3; k++)
      csv += "," + fmt(w.direction[k].real()) + "," +
             fmt(w.direction[k].imag());
    csv += "\n";
  }
  write_output(out, csv);
  return ray.stopped ? kExitRayStopped : kExitOk;
}

int cmd_verify(const Scenario* sc, std::uint64_t seed, long samples, const std::string& out) {
  verify::SuiteOptions opt;
  opt.seed = seed;
  opt.n_samples = samples;
  BackgroundField fixed;
  if (sc) {
    fixed = sc->background;
    opt.fixed_background = &fixed;
  }
  const verify::VerifyReport report = verify::run_identity_suite(opt);
  std::cout << report.to_text();
  if (!out.empty()) write_output(out, report.to_csv());
  return report.pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  {
    std::ostringstream cmd;
    for (int i = 0; i < argc; i++) cmd << (i ? " " : "") << argv[i];
    g_command_line = cmd.str();
  }
#ifdef _OPENMP
  if (const char* env = std::getenv("MHDPOL_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) omp_set_num_threads(std::min(cap, omp_get_max_threads()));
  }
#endif

  CLI::App app{"linearized ideal MHD: wave speeds, characteristic classification, "
               "bicharacteristic rays, polarization transport, identity verification"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config_path, out_path, xi_str, point_str;
  int sheet = 0;
  std::uint64_t seed = 42;
  long samples = -1;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", config_path, "scenario JSON file");
    if (config_required) c->required();
    sub->add_option("--out", out_path, "output path (stdout when omitted)");
  };

  CLI::App* sp = app.add_subcommand("speeds", "slow/Alfven/fast speeds for a direction");
  add_common(sp, true);
  sp->add_option("--xi", xi_str, "direction a,b,c (overrides the scenario point)");

  CLI::App* fr = app.add_subcommand("friedrichs", "phase-speed polar diagram (CSV or SVG)");
  add_common(fr, true);
  fr->add_option("--samples", samples, "number of angular samples (default 360)");

  CLI::App* cl = app.add_subcommand("classify", "characteristic regime of a phase point");
  add_common(cl, true);
  cl->add_option("--point", point_str, "t,x1,x2,x3,tau,xi1,xi2,xi3 (overrides scenario)");

  CLI::App* ry = app.add_subcommand("ray", "trace a bicharacteristic ray (CSV)");
  add_common(ry, true);
  ry->add_option("--sheet", sheet, "characteristic sheet 1|2|3 (overrides scenario)");

  CLI::App* tr = app.add_subcommand("transport", "polarization transport along a ray (CSV)");
  add_common(tr, true);
  tr->add_option("--sheet", sheet, "characteristic sheet 1|2|3 (overrides scenario)");

  CLI::App* vf = app.add_subcommand("verify", "run the randomized identity suite");
  add_common(vf, false);
  vf->add_option("--seed", seed, "RNG seed (default 42)");
  vf->add_option("--samples", samples, "sample count (default 1000)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sp->parsed()) {
      std::optional<Vec3> xi;
      if (!xi_str.empty()) {
        xi = parse_triple(xi_str);
        if (!xi) throw ConfigError("--xi expects three comma-separated numbers");
      }
      return cmd_speeds(load_scenario(config_path), xi, out_path);
    }
    if (fr->parsed()) {
      const long ntheta = samples < 0 ? 360 : samples;
      if (ntheta < 4) {
        std::cerr << "error: friedrichs needs at least 4 angular samples\n";
        return kExitUsage;
      }
      return cmd_friedrichs(load_scenario(config_path), static_cast<int>(ntheta), out_path);
    }
    if (cl->parsed()) {
      std::optional<PhasePoint> pt;
      if (!point_str.empty()) {
        pt = parse_point(point_str);
        if (!pt) throw ConfigError("--point expects eight comma-separated numbers");
      }
      return cmd_classify(load_scenario(config_path), pt, out_path);
    }
    if (ry->parsed())
      return cmd_ray(load_scenario(config_path),
                     sheet ? std::optional<int>(sheet) : std::nullopt, out_path);
    if (tr->parsed())
      return cmd_transport(load_scenario(config_path),
                           sheet ? std::optional<int>(sheet) : std::nullopt, out_path);
    if (vf->parsed()) {
      const long n = samples < 0 ? 1000 : samples;
      if (n <= 0) {
        std::cerr << "error: --samples must be positive\n";
        return kExitUsage;
      }
      std::optional<Scenario> sc;
      if (!config_path.empty()) sc = load_scenario(config_path);
      return cmd_verify(sc ? &*sc : nullptr, seed, n, out_path);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadPhysics;
  } catch (const NotOnSheet& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadPhysics;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadPhysics;
  }
  return kExitUsage;
}
