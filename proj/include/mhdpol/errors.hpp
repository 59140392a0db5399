// mhdpol - error types shared across the library

#ifndef MHDPOL_ERRORS_HPP_
#define MHDPOL_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mhdpol {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Expression parsing failed; carries the byte offset and the token set that
// would have been accepted at that position.
struct SyntaxError : Error {
  std::size_t offset;
  std::vector<std::string> expected;
  SyntaxError(std::size_t off, std::vector<std::string> exp, const std::string& msg)
      : Error(msg), offset(off), expected(std::move(exp)) {}
};

// Identifier outside {t, x1, x2, x3} and the supported function names.
struct UnknownIdentifier : Error {
  std::size_t offset;
  std::string name;
  UnknownIdentifier(std::size_t off, std::string id)
      : Error("unknown identifier '" + id + "' at offset " + std::to_string(off)),
        offset(off), name(std::move(id)) {}
};

// Evaluation left the domain of a subexpression (sqrt of a negative,
// division by zero, non-finite result).
struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Background violates rho > 0 or p > 0.
struct NonPhysical : Error {
  explicit NonPhysical(const std::string& msg) : Error(msg) {}
};

// An operation requiring xi != 0 was called with |xi| = 0.
struct ZeroFrequency : Error {
  explicit ZeroFrequency(const std::string& msg) : Error(msg) {}
};

// A disjointness hypothesis (xi.H != 0, xi x H != 0, |H|^2 != rho c^2) or a
// required characteristic-factor denominator is violated; names the culprit.
struct DegenerateMode : Error {
  std::string hypothesis;
  DegenerateMode(std::string hyp, const std::string& msg)
      : Error(msg), hypothesis(std::move(hyp)) {}
};

// |H|^2 = rho c^2 within tolerance: the multiplicity case split excludes it.
struct UnclassifiedDegeneracy : Error {
  explicit UnclassifiedDegeneracy(const std::string& msg) : Error(msg) {}
};

// Operation restricted to the uniaxial / MHD intersection regimes.
struct WrongRegime : Error {
  explicit WrongRegime(const std::string& msg) : Error(msg) {}
};

struct NotOnCharacteristic : Error {
  explicit NotOnCharacteristic(const std::string& msg) : Error(msg) {}
};

struct NotOnSheet : Error {
  explicit NotOnSheet(const std::string& msg) : Error(msg) {}
};

struct NotInKernel : Error {
  explicit NotInKernel(const std::string& msg) : Error(msg) {}
};

// The magnetosonic radical is too close to zero to differentiate through.
struct RadicalDegenerate : Error {
  explicit RadicalDegenerate(const std::string& msg) : Error(msg) {}
};

// Scenario / configuration file problems.
struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace mhdpol

#endif  // MHDPOL_ERRORS_HPP_
