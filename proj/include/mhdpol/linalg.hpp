// mhdpol - 3-vectors, dense matrix symbols, and small-matrix numeric kernels

#ifndef MHDPOL_LINALG_HPP_
#define MHDPOL_LINALG_HPP_

#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace mhdpol {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

// Dense complex square matrix of dimension 3 or 8, with an informational
// homogeneity degree tag. Row-major, fixed capacity to keep symbol
// construction allocation-free in batch loops.
struct MatrixSymbol {
  int dim = 0;
  int degree = 0;
  std::array<cplx, 64> e{};

  MatrixSymbol() = default;
  explicit MatrixSymbol(int n, int deg = 0) : dim(n), degree(deg) {}

  cplx& operator()(int i, int j) { return e[i * dim + j]; }
  const cplx& operator()(int i, int j) const {
    return e[i * dim + j];
  }

  static MatrixSymbol identity(int n, int deg = 0) {
    MatrixSymbol m(n, deg);
    for (int i = 0; i < n; i++) m(i, i) = 1.0;
    return m;
  }
};

MatrixSymbol operator+(const MatrixSymbol& a, const MatrixSymbol& b);
MatrixSymbol operator-(const MatrixSymbol& a, const MatrixSymbol& b);
MatrixSymbol operator*(const MatrixSymbol& a, const MatrixSymbol& b);
MatrixSymbol operator*(cplx s, const MatrixSymbol& a);
MatrixSymbol operator*(double s, const MatrixSymbol& a);

MatrixSymbol transpose(const MatrixSymbol& a);
cplx trace(const MatrixSymbol& a);

// Max-abs entry norm.
double norm_inf(const MatrixSymbol& a);

// Largest Hermitian-asymmetry |a_ij - conj(a_ji)| over all pairs; for real
// matrices this is the plain symmetry defect.
double sym_defect(const MatrixSymbol& a);

// Largest |Im a_ij|.
double imag_defect(const MatrixSymbol& a);

// 3x3 outer product u (x) v.
MatrixSymbol outer(const Vec3& u, const Vec3& v);

// y = M v for a 3x3 symbol.
std::array<cplx, 3> apply3(const MatrixSymbol& m, const std::array<cplx, 3>& v);

std::array<cplx, 8> apply8(const MatrixSymbol& m, const std::array<cplx, 8>& v);

// ---------------------------------------------------------------------------
// Numeric kernels for dim <= 8. These back the verification oracles and the
// SVD-based kernel extraction; none of them use the closed-form factorizations
// they are paired against.

// Determinant by LU with partial pivoting.
cplx lu_det(const MatrixSymbol& a);

// Infinity-norm condition number via explicit inverse from the LU factors.
// Returns +inf for (numerically) singular input.
double lu_cond(const MatrixSymbol& a);

// Adjugate (transposed cofactor matrix) by recursive minor expansion. This is
// division-free, hence exact polynomial arithmetic in the entries and
// well-defined on singular matrices.
MatrixSymbol adjugate(const MatrixSymbol& a);

// Eigenvalues of a real symmetric matrix (ascending) by cyclic Jacobi.
// The imaginary parts of the input are ignored.
std::vector<double> jacobi_eig_sym(const MatrixSymbol& a);

// Singular value decomposition by one-sided Jacobi: returns singular values
// (descending) and the right singular vectors as columns of V. Works on
// complex input and resolves tiny singular values to ~eps * sigma_max, which
// keeps kernel detection reliable on exactly singular matrices.
struct Svd {
  std::vector<double> sigma;
  MatrixSymbol v;  // dim x dim, columns are right singular vectors
};
Svd svd_onesided(const MatrixSymbol& a);

// Orthonormal basis of the numerical kernel: right singular vectors with
// sigma_i <= tol_factor * sigma_max.
std::vector<std::array<cplx, 8>> kernel_basis(const MatrixSymbol& a, double tol_factor);

// Cholesky factor L (lower) of a real symmetric positive definite matrix.
// Throws mhdpol::Error if a pivot is not positive.
MatrixSymbol cholesky(const MatrixSymbol& a);

// Eigenvalues (ascending) of a real matrix A that is symmetrizable by a known
// SPD matrix S with SA symmetric: reduces L^-1 (SA) L^-T with S = L L^T and
// runs Jacobi on the result.
std::vector<double> eig_symmetrizable(const MatrixSymbol& a, const MatrixSymbol& s);

}  // namespace mhdpol

#endif  // MHDPOL_LINALG_HPP_
