// mhdpol - scenario configuration (JSON) shared by the CLI commands

#ifndef MHDPOL_SCENARIO_HPP_
#define MHDPOL_SCENARIO_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "mhdpol/background.hpp"
#include "mhdpol/phase.hpp"

namespace mhdpol {

struct Scenario {
  BackgroundField background;
  PhasePoint point;

  struct RaySettings {
    int sheet = 1;
    double span = 1.0;
    double tol = 1e-9;
    int samples = 64;
    bool project_tau = false;
  } ray;

  // Initial polarization; empty means "auto" (first kernel basis vector of p2
  // at the start point).
  std::optional<std::array<cplx, 3>> transport_w0;

  std::string out_path;  // default output path, may be empty
  std::uint64_t hash = 0;  // FNV-1a of the config text
};

// Parses a scenario from JSON text. Numbers are accepted wherever expression
// strings are (and vice versa for the background fields). Throws ConfigError.
Scenario parse_scenario(const std::string& json_text);

// Reads and parses a scenario file.
Scenario load_scenario(const std::string& path);

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace mhdpol

#endif  // MHDPOL_SCENARIO_HPP_
