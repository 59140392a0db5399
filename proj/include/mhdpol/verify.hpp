// mhdpol - brute-force linear-algebra oracles and the randomized identity
// suite certifying the closed-form symbol relations

#ifndef MHDPOL_VERIFY_HPP_
#define MHDPOL_VERIFY_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mhdpol/background.hpp"
#include "mhdpol/linalg.hpp"
#include "mhdpol/phase.hpp"

namespace mhdpol::verify {

// Oracle operations. These are deliberately generic dense routines (LU,
// cofactor expansion, cyclic Jacobi, one-sided Jacobi SVD) and never evaluate
// the closed-form factorizations they are paired against.
cplx numeric_det(const MatrixSymbol& m);
MatrixSymbol numeric_adjugate(const MatrixSymbol& m);
std::vector<double> numeric_eig_sym(const MatrixSymbol& m);
std::vector<std::array<cplx, 8>> numeric_kernel(const MatrixSymbol& m,
                                                double tol_factor = 1e-10);

// Per-sample residuals of the adjugate factorization of q = tau Id + A:
//   tau0:     entries of adj(q)|tau=0 relative to ||q||^7 (divisibility by tau)
//   limit:    stability of adj(q)/tau between two small tau values
//   identity: adj(p2) p2 - det(p2) Id on the 3x3 analogue
struct AdjugateResiduals {
  double tau0 = 0.0;
  double limit = 0.0;
  double identity = 0.0;
};
AdjugateResiduals check_adjugate_factorization(const BackgroundEval& bg, const Vec3& xi,
                                               double tau_probe);

struct CheckResult {
  std::string name;
  long samples = 0;  // admissible samples actually checked
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  long n_samples = 0;
  std::vector<CheckResult> checks;
  bool pass = false;

  std::string to_text() const;
  std::string to_csv() const;
};

// Test-only substitution hooks: when set, the suite evaluates the replacement
// instead of the standard construction. Used by mutation-sensitivity tests.
struct SymbolOverrides {
  std::function<MatrixSymbol(const PhasePoint&, const BackgroundEval&)> p2;
};

struct SuiteOptions {
  long n_samples = 1000;
  std::uint64_t seed = 42;
  bool parallel = true;  // OpenMP over samples; results are identical either way
  const BackgroundField* fixed_background = nullptr;  // draw random ones when null
  SymbolOverrides overrides;
};

// Draws backgrounds and frequencies, filters each check to its hypotheses
// (relative margins >= 1e-3), and runs every identity check. Deterministic
// for a fixed seed; per-sample work parallelizes, report assembly is
// sequential over pre-assigned sample slots.
VerifyReport run_identity_suite(const SuiteOptions& opt);

}  // namespace mhdpol::verify

#endif  // MHDPOL_VERIFY_HPP_
