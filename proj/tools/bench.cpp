// mhdpol - benchmark: identity-suite kernels, serial reference vs OpenMP

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mhdpol/verify.hpp"

namespace {

double run_once(long n, bool parallel, std::string* text_out) {
  mhdpol::verify::SuiteOptions opt;
  opt.n_samples = n;
  opt.seed = 42;
  opt.parallel = parallel;
  const auto t0 = std::chrono::steady_clock::now();
  const mhdpol::verify::VerifyReport report = mhdpol::verify::run_identity_suite(opt);
  const auto t1 = std::chrono::steady_clock::now();
  if (text_out) *text_out = report.to_text();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  long n = 2000;
  if (argc > 1) n = std::atol(argv[1]);
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif

  std::string serial_text, parallel_text;
  // Warm-up pass so first-touch allocation does not skew the serial number.
  run_once(n / 4, true, nullptr);

  const double ts = run_once(n, false, &serial_text);
  const double tp = run_once(n, true, &parallel_text);

  std::printf("identity suite, %ld samples\n", n);
  std::printf("  serial reference: %9.3f s  (%.1f us/sample)\n", ts, 1e6 * ts / n);
  std::printf("  openmp parallel:  %9.3f s  (%.1f us/sample)\n", tp, 1e6 * tp / n);
  std::printf("  speedup:          %9.2fx\n", ts / tp);
  const bool identical = serial_text == parallel_text;
  std::printf("  reports identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
