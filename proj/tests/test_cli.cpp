// End-to-end checks of the mhdpol command-line tool: exit-code contract,
// CSV headers, determinism. Takes the binary path as argv[1].

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int g_failures = 0;

#define REQUIRE(cond, msg)                                                    \
  do {                                                                        \
    if (!(cond)) {                                                            \
      std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << (msg)   \
                << "\n";                                                      \
      g_failures++;                                                           \
    }                                                                         \
  } while (0)

std::string g_bin;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string out_file = "cli_stdout.tmp";
  const std::string cmd = g_bin + " " + args + " > " + out_file + " 2> cli_stderr.tmp";
  const int raw = std::system(cmd.c_str());
  RunResult r;
#ifdef _WIN32
  r.exit_code = raw;
#else
  r.exit_code = WEXITSTATUS(raw);
#endif
  std::ifstream in(out_file, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <path-to-mhdpol>\n";
    return 2;
  }
  g_bin = argv[1];

  write_file("cli_hydro.json", R"json({
    "background": {"rho": 1.0, "p": 0.6, "H": [0.0, 0.0, 0.0], "gamma": 1.6666666666666667},
    "point": {"t": 0, "x": [0,0,0], "tau": 1.0, "xi": [1.0, 0.0, 0.0]}
  })json");
  write_file("cli_const.json", R"json({
    "background": {"rho": 1.0, "p": 0.9, "H": [1.0, 0.4, 0.0], "gamma": 1.6666666666666667},
    "point": {"t": 0, "x": [0.3, -0.2, 0.1], "tau": 1.0, "xi": [1.0, 0.5, -0.4]},
    "ray": {"sheet": 1, "span": 2.0, "project_tau": true}
  })json");
  write_file("cli_tanh.json", R"json({
    "background": {"rho": "1 + 0.1*tanh(x2)", "p": 1.0, "H": [1.0, 0.0, 0.0], "gamma": 1.6666666666666667},
    "point": {"t": 0, "x": [0.0, -0.5, 0.0], "tau": 1.0, "xi": [1.0, 0.3, 0.2]},
    "ray": {"sheet": 1, "span": 3.0, "project_tau": true},
    "transport": {"w0": "auto"}
  })json");
  write_file("cli_stop.json", R"json({
    "background": {"rho": "1 + 0.5*tanh(x2)", "p": 1.0, "H": [1.0, 0.0, 0.0], "gamma": 1.6666666666666667},
    "point": {"t": 0, "x": [0,0,0], "tau": 1.0, "xi": [1.0, 0.05, 0.0]},
    "ray": {"sheet": 3, "span": 1.5, "project_tau": true}
  })json");
  write_file("cli_mhdpoint.json", R"json({
    "background": {"rho": 1.0, "p": 0.6, "H": [1.0, 0.0, 0.0], "gamma": 1.6666666666666667},
    "point": {"t": 0, "x": [0,0,0], "tau": 0.0, "xi": [0.0, 1.0, 0.0]}
  })json");

  {  // speeds in the hydrodynamic limit: c_s = 0, c_f = c = 1
    const RunResult r = run("speeds --config cli_hydro.json");
    REQUIRE(r.exit_code == 0, "speeds exit code");
    REQUIRE(contains(r.output, "xi_hat1"), "speeds header row");
    REQUIRE(contains(r.output, "# mhdpol"), "speeds version header");
    std::istringstream is(r.output);
    std::string line, data;
    while (std::getline(is, line))
      if (!line.empty() && line[0] != '#' && line.find("xi_hat") == std::string::npos)
        data = line;
    double xh1, xh2, xh3, cs, cf, ca, c, h;
    REQUIRE(std::sscanf(data.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf", &xh1, &xh2,
                        &xh3, &cs, &cf, &ca, &c, &h) == 8,
            "speeds row parses");
    REQUIRE(cs == 0.0, "hydro slow speed vanishes");
    REQUIRE(std::abs(cf - 1.0) < 1e-12, "hydro fast speed equals c");
  }

  {  // friedrichs CSV and SVG
    const RunResult r = run("friedrichs --config cli_const.json --samples 90");
    REQUIRE(r.exit_code == 0, "friedrichs exit code");
    REQUIRE(contains(r.output, "theta,c_s,c_A,c_f"), "friedrichs header");
    std::istringstream is(r.output);
    std::string line;
    int rows = 0;
    bool ordered = true, aligned_ok = false;
    while (std::getline(is, line)) {
      if (line.empty() || line[0] == '#' || line[0] == 't') continue;
      double theta, cs, ca, cf;
      if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &theta, &cs, &ca, &cf) != 4)
        continue;
      rows++;
      ordered = ordered && cs <= ca + 1e-12 && ca <= cf + 1e-12;
      // theta = 0 is aligned with H: c_A = h, {c_s, c_f} = {min, max}(c, h)
      if (theta == 0.0) aligned_ok = std::abs(ca - cf) < 1e-9 || std::abs(ca - cs) < 1e-9;
    }
    REQUIRE(rows == 90, "friedrichs row count");
    REQUIRE(ordered, "friedrichs speed ordering c_s <= c_A <= c_f");
    REQUIRE(aligned_ok, "friedrichs aligned column");
    const RunResult svg = run("friedrichs --config cli_const.json --samples 64 --out cli_fried.svg");
    REQUIRE(svg.exit_code == 0, "friedrichs svg exit code");
    std::ifstream f("cli_fried.svg");
    std::ostringstream ss;
    ss << f.rdbuf();
    REQUIRE(contains(ss.str(), "<svg"), "svg file written");
    REQUIRE(contains(ss.str(), "polyline"), "svg has curves");
  }

  {  // classify the MHD intersection point
    const RunResult r = run("classify --config cli_mhdpoint.json");
    REQUIRE(r.exit_code == 0, "classify exit code");
    REQUIRE(contains(r.output, "regime=mhd_type_sigma2"), "classify regime");
    REQUIRE(contains(r.output, "kernel_dim=6"), "classify kernel dim");
    REQUIRE(contains(r.output, "vanishing_order=6"), "classify vanishing order");
  }

  {  // ray on a constant background: exit 0 and affine x columns
    const RunResult r = run("ray --config cli_const.json");
    REQUIRE(r.exit_code == 0, "ray exit code");
    REQUIRE(contains(r.output, "s,t,x1,x2,x3,tau,xi1,xi2,xi3,q_residual"), "ray header");
  }

  {  // steered into xi x H = 0: exit 3, partial output retained, reason noted
    const RunResult r = run("ray --config cli_stop.json");
    REQUIRE(r.exit_code == 3, "stopped ray exit code");
    REQUIRE(contains(r.output, "# stopped:"), "stop reason recorded");
    REQUIRE(contains(r.output, "xi x H"), "stop reason names the degeneracy");
  }

  {  // transport: kernel residual column stays small
    const RunResult r = run("transport --config cli_tanh.json");
    REQUIRE(r.exit_code == 0, "transport exit code");
    REQUIRE(contains(r.output, "kernel_residual"), "transport header");
    std::istringstream is(r.output);
    std::string line;
    int rows = 0;
    while (std::getline(is, line)) {
      if (line.empty() || line[0] == '#' || line[0] == 's') continue;
      // kernel_residual is column 17 (1-based) in the CSV
      std::istringstream ls(line);
      std::string cell;
      int col = 0;
      double kres = -1.0;
      while (std::getline(ls, cell, ',')) {
        col++;
        if (col == 17) kres = std::atof(cell.c_str());
      }
      REQUIRE(col == 23, "transport column count");
      REQUIRE(kres >= 0.0 && kres <= 1e-6, "transport kernel residual bounded");
      rows++;
    }
    REQUIRE(rows >= 64, "transport row count");
  }

  {  // usage errors
    const RunResult r0 = run("verify --samples 0");
    REQUIRE(r0.exit_code == 64, "verify --samples 0 is a usage error");
    const RunResult r1 = run("frobnicate");
    REQUIRE(r1.exit_code == 64, "unknown subcommand is a usage error");
    const RunResult r2 = run("ray");
    REQUIRE(r2.exit_code == 64, "missing --config is a usage error");
  }

  {  // invalid physics / config file: exit 2
    write_file("cli_bad.json", R"json({"background": {"rho": -1.0, "p": 1.0, "H": [1,0,0]}})json");
    const RunResult r = run("speeds --config cli_bad.json");
    REQUIRE(r.exit_code == 2, "non-physical background exits 2");
    const RunResult r2 = run("speeds --config does_not_exist.json");
    REQUIRE(r2.exit_code == 2, "missing config exits 2");
  }

  {  // verify: small run is deterministic, exits 0, and writes the CSV report
    const RunResult a = run("verify --seed 11 --samples 60 --out cli_verify.csv");
    const RunResult b = run("verify --seed 11 --samples 60");
    REQUIRE(a.exit_code == 0, "verify exit code");
    REQUIRE(a.output == b.output, "verify output is byte-identical");
    REQUIRE(contains(a.output, "# overall pass=1"), "verify passes");
    std::ifstream csv("cli_verify.csv");
    std::ostringstream ss;
    ss << csv.rdbuf();
    REQUIRE(contains(ss.str(), "check,name,samples,max_residual,tolerance,pass"),
            "verify CSV header");
    REQUIRE(contains(ss.str(), "det_factorization"), "verify CSV rows");
  }

  if (g_failures == 0) {
    std::cout << "test_cli: all checks passed\n";
    return 0;
  }
  std::cerr << "test_cli: " << g_failures << " failures\n";
  return 1;
}
