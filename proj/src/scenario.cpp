// mhdpol - scenario JSON parsing

#include "mhdpol/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mhdpol/errors.hpp"

namespace mhdpol {

namespace {

using nlohmann::json;

Expr field_expr(const json& j, const char* name) {
  if (j.is_number()) return constant_expr(j.get<double>());
  if (j.is_string()) {
    try {
      return parse_expr(j.get<std::string>());
    } catch (const Error& e) {
      throw ConfigError(std::string("background.") + name + ": " + e.what());
    }
  }
  throw ConfigError(std::string("background.") + name +
                    " must be a number or an expression string");
}

Vec3 vec3_of(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3)
    throw ConfigError(what + " must be an array of three numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Scenario parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }

  Scenario sc;
  sc.hash = fnv1a64(json_text);

  if (!j.contains("background")) throw ConfigError("missing \"background\" section");
  const json& b = j["background"];
  sc.background.rho = field_expr(b.value("rho", json(1.0)), "rho");
  sc.background.p = field_expr(b.value("p", json(1.0)), "p");
  sc.background.gamma = b.value("gamma", 5.0 / 3.0);
  if (b.contains("H")) {
    const json& h = b["H"];
    if (!h.is_array() || h.size() != 3)
      throw ConfigError("background.H must be an array of three entries");
    for (int i = 0; i < 3; i++)
      sc.background.H[i] =
          field_expr(h[i], "H");
  } else {
    for (auto& e : sc.background.H) e = constant_expr(0.0);
  }

  if (j.contains("point")) {
    const json& p = j["point"];
    sc.point.t = p.value("t", 0.0);
    if (p.contains("x")) sc.point.x = vec3_of(p["x"], "point.x");
    sc.point.tau = p.value("tau", 0.0);
    if (p.contains("xi")) sc.point.xi = vec3_of(p["xi"], "point.xi");
  }

  if (j.contains("ray")) {
    const json& r = j["ray"];
    sc.ray.sheet = r.value("sheet", 1);
    sc.ray.span = r.value("span", 1.0);
    sc.ray.tol = r.value("tol", 1e-9);
    sc.ray.samples = r.value("samples", 64);
    sc.ray.project_tau = r.value("project_tau", false);
    if (sc.ray.sheet < 1 || sc.ray.sheet > 3)
      throw ConfigError("ray.sheet must be 1, 2 or 3");
    if (!(sc.ray.span > 0.0)) throw ConfigError("ray.span must be positive");
  }

  if (j.contains("transport")) {
    const json& t = j["transport"];
    if (t.contains("w0") && !(t["w0"].is_string() && t["w0"] == "auto")) {
      const json& w = t["w0"];
      if (!w.is_array() || w.size() != 3)
        throw ConfigError("transport.w0 must be \"auto\" or three [re, im] pairs");
      std::array<cplx, 3> w0{};
      for (int i = 0; i < 3; i++) {
        const json& e = w[i];
        if (e.is_number())
          w0[i] = cplx(e.get<double>(), 0.0);
        else if (e.is_array() && e.size() == 2)
          w0[i] = cplx(e[0].get<double>(), e[1].get<double>());
        else
          throw ConfigError("transport.w0 entries must be numbers or [re, im] pairs");
      }
      sc.transport_w0 = w0;
    }
  }

  sc.out_path = j.value("output", std::string());
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

}  // namespace mhdpol
