// mhdpol - small dense matrix arithmetic and numeric kernels

#include "mhdpol/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mhdpol/errors.hpp"

namespace mhdpol {

MatrixSymbol operator+(const MatrixSymbol& a, const MatrixSymbol& b) {
  MatrixSymbol r(a.dim, a.degree);
  for (int i = 0; i < a.dim * a.dim; i++) r.e[i] = a.e[i] + b.e[i];
  return r;
}

MatrixSymbol operator-(const MatrixSymbol& a, const MatrixSymbol& b) {
  MatrixSymbol r(a.dim, a.degree);
  for (int i = 0; i < a.dim * a.dim; i++) r.e[i] = a.e[i] - b.e[i];
  return r;
}

MatrixSymbol operator*(const MatrixSymbol& a, const MatrixSymbol& b) {
  const int n = a.dim;
  MatrixSymbol r(n, a.degree + b.degree);
  for (int i = 0; i < n; i++)
    for (int k = 0; k < n; k++) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0)) continue;
      for (int j = 0; j < n; j++) r(i, j) += aik * b(k, j);
    }
  return r;
}

MatrixSymbol operator*(cplx s, const MatrixSymbol& a) {
  MatrixSymbol r(a.dim, a.degree);
  for (int i = 0; i < a.dim * a.dim; i++) r.e[i] = s * a.e[i];
  return r;
}

MatrixSymbol operator*(double s, const MatrixSymbol& a) { return cplx(s) * a; }

MatrixSymbol transpose(const MatrixSymbol& a) {
  MatrixSymbol r(a.dim, a.degree);
  for (int i = 0; i < a.dim; i++)
    for (int j = 0; j < a.dim; j++) r(i, j) = a(j, i);
  return r;
}

cplx trace(const MatrixSymbol& a) {
  cplx t = 0.0;
  for (int i = 0; i < a.dim; i++) t += a(i, i);
  return t;
}

double norm_inf(const MatrixSymbol& a) {
  double m = 0.0;
  for (int i = 0; i < a.dim * a.dim; i++) m = std::max(m, std::abs(a.e[i]));
  return m;
}

double sym_defect(const MatrixSymbol& a) {
  double m = 0.0;
  for (int i = 0; i < a.dim; i++)
    for (int j = 0; j < a.dim; j++) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

double imag_defect(const MatrixSymbol& a) {
  double m = 0.0;
  for (int i = 0; i < a.dim * a.dim; i++) m = std::max(m, std::abs(a.e[i].imag()));
  return m;
}

MatrixSymbol outer(const Vec3& u, const Vec3& v) {
  MatrixSymbol r(3);
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++) r(i, j) = u[i] * v[j];
  return r;
}

std::array<cplx, 3> apply3(const MatrixSymbol& m, const std::array<cplx, 3>& v) {
  std::array<cplx, 3> y{};
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++) y[i] += m(i, j) * v[j];
  return y;
}

std::array<cplx, 8> apply8(const MatrixSymbol& m, const std::array<cplx, 8>& v) {
  std::array<cplx, 8> y{};
  for (int i = 0; i < m.dim; i++)
    for (int j = 0; j < m.dim; j++) y[i] += m(i, j) * v[j];
  return y;
}

// ---------------------------------------------------------------------------

namespace {

// In-place LU with partial pivoting on a copy; returns the permutation sign,
// or 0 when a column is exactly null (singular to working precision).
int lu_factor(MatrixSymbol& a, std::array<int, 8>& perm) {
  const int n = a.dim;
  int sign = 1;
  for (int i = 0; i < n; i++) perm[i] = i;
  for (int k = 0; k < n; k++) {
    int piv = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; i++) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return 0;
    if (piv != k) {
      for (int j = 0; j < n; j++) std::swap(a(k, j), a(piv, j));
      std::swap(perm[k], perm[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; i++) {
      const cplx m = a(i, k) / a(k, k);
      a(i, k) = m;
      for (int j = k + 1; j < n; j++) a(i, j) -= m * a(k, j);
    }
  }
  return sign;
}

void lu_solve(const MatrixSymbol& lu, const std::array<int, 8>& perm,
              std::array<cplx, 8>& b) {
  const int n = lu.dim;
  std::array<cplx, 8> y{};
  for (int i = 0; i < n; i++) y[i] = b[perm[i]];
  for (int i = 0; i < n; i++)
    for (int j = 0; j < i; j++) y[i] -= lu(i, j) * y[j];
  for (int i = n - 1; i >= 0; i--) {
    for (int j = i + 1; j < n; j++) y[i] -= lu(i, j) * y[j];
    y[i] /= lu(i, i);
  }
  b = y;
}

double row_sum_norm(const MatrixSymbol& a) {
  double m = 0.0;
  for (int i = 0; i < a.dim; i++) {
    double s = 0.0;
    for (int j = 0; j < a.dim; j++) s += std::abs(a(i, j));
    m = std::max(m, s);
  }
  return m;
}

// Determinant of the minor of `a` restricted to `rows`/`cols` index lists,
// by expansion along the first listed row. Division-free.
cplx det_minor(const MatrixSymbol& a, const int* rows, const int* cols, int n) {
  if (n == 1) return a(rows[0], cols[0]);
  if (n == 2)
    return a(rows[0], cols[0]) * a(rows[1], cols[1]) -
           a(rows[0], cols[1]) * a(rows[1], cols[0]);
  cplx det = 0.0;
  int sub_cols[8];
  double sgn = 1.0;
  for (int j = 0; j < n; j++) {
    const cplx pivot = a(rows[0], cols[j]);
    if (pivot != cplx(0.0)) {
      int m = 0;
      for (int k = 0; k < n; k++)
        if (k != j) sub_cols[m++] = cols[k];
      det += sgn * pivot * det_minor(a, rows + 1, sub_cols, n - 1);
    }
    sgn = -sgn;
  }
  return det;
}

}  // namespace

cplx lu_det(const MatrixSymbol& a) {
  MatrixSymbol lu = a;
  std::array<int, 8> perm{};
  const int sign = lu_factor(lu, perm);
  if (sign == 0) return 0.0;
  cplx det = static_cast<double>(sign);
  for (int i = 0; i < a.dim; i++) det *= lu(i, i);
  return det;
}

double lu_cond(const MatrixSymbol& a) {
  MatrixSymbol lu = a;
  std::array<int, 8> perm{};
  if (lu_factor(lu, perm) == 0) return std::numeric_limits<double>::infinity();
  MatrixSymbol inv(a.dim);
  for (int j = 0; j < a.dim; j++) {
    std::array<cplx, 8> e{};
    e[j] = 1.0;
    lu_solve(lu, perm, e);
    for (int i = 0; i < a.dim; i++) inv(i, j) = e[i];
  }
  return row_sum_norm(a) * row_sum_norm(inv);
}

MatrixSymbol adjugate(const MatrixSymbol& a) {
  const int n = a.dim;
  MatrixSymbol adj(n, a.degree * (n - 1));
  int rows[8], cols[8];
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      int r = 0, c = 0;
      for (int k = 0; k < n; k++) {
        if (k != i) rows[r++] = k;
        if (k != j) cols[c++] = k;
      }
      const double sgn = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      // adj(a)_{ji} = (-1)^{i+j} det(minor_ij)
      adj(j, i) = sgn * det_minor(a, rows, cols, n - 1);
    }
  return adj;
}

std::vector<double> jacobi_eig_sym(const MatrixSymbol& a) {
  const int n = a.dim;
  double m[8][8];
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) m[i][j] = 0.5 * (a(i, j).real() + a(j, i).real());
  for (int sweep = 0; sweep < 64; sweep++) {
    double off = 0.0;
    for (int i = 0; i < n; i++)
      for (int j = i + 1; j < n; j++) off += m[i][j] * m[i][j];
    if (off < 1e-300) break;
    for (int p = 0; p < n - 1; p++)
      for (int q = p + 1; q < n; q++) {
        if (std::abs(m[p][q]) == 0.0) continue;
        const double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; k++) {
          const double mkp = m[k][p], mkq = m[k][q];
          m[k][p] = c * mkp - s * mkq;
          m[k][q] = s * mkp + c * mkq;
        }
        for (int k = 0; k < n; k++) {
          const double mpk = m[p][k], mqk = m[q][k];
          m[p][k] = c * mpk - s * mqk;
          m[q][k] = s * mpk + c * mqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; i++) ev[i] = m[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

Svd svd_onesided(const MatrixSymbol& a) {
  const int n = a.dim;
  MatrixSymbol u = a;
  MatrixSymbol v = MatrixSymbol::identity(n);
  // Orthogonalize column pairs until all Gram off-diagonals are negligible.
  for (int sweep = 0; sweep < 60; sweep++) {
    bool rotated = false;
    for (int p = 0; p < n - 1; p++)
      for (int q = p + 1; q < n; q++) {
        cplx gpq = 0.0;
        double gpp = 0.0, gqq = 0.0;
        for (int k = 0; k < n; k++) {
          gpq += std::conj(u(k, p)) * u(k, q);
          gpp += std::norm(u(k, p));
          gqq += std::norm(u(k, q));
        }
        const double apq = std::abs(gpq);
        if (apq <= 1e-30 || apq * apq <= 1e-60 * gpp * gqq) continue;
        rotated = true;
        // Complex Jacobi rotation diagonalizing [[gpp, gpq], [conj(gpq), gqq]].
        const cplx phase = gpq / apq;
        const double theta = (gqq - gpp) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; k++) {
          const cplx up = u(k, p), uq = u(k, q);
          u(k, p) = c * up - s * std::conj(phase) * uq;
          u(k, q) = s * phase * up + c * uq;
        }
        for (int k = 0; k < n; k++) {
          const cplx vp = v(k, p), vq = v(k, q);
          v(k, p) = c * vp - s * std::conj(phase) * vq;
          v(k, q) = s * phase * vp + c * vq;
        }
      }
    if (!rotated) break;
  }
  Svd out;
  out.sigma.resize(n);
  std::vector<int> order(n);
  for (int j = 0; j < n; j++) {
    double s = 0.0;
    for (int k = 0; k < n; k++) s += std::norm(u(k, j));
    out.sigma[j] = std::sqrt(s);
    order[j] = j;
  }
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return out.sigma[i] > out.sigma[j];
  });
  Svd sorted;
  sorted.sigma.resize(n);
  sorted.v = MatrixSymbol(n);
  for (int j = 0; j < n; j++) {
    const int src = order[j];
    sorted.sigma[j] = out.sigma[src];
    for (int k = 0; k < n; k++) sorted.v(k, j) = v(k, src);
  }
  return sorted;
}

std::vector<std::array<cplx, 8>> kernel_basis(const MatrixSymbol& a, double tol_factor) {
  const Svd s = svd_onesided(a);
  const double cut = tol_factor * (s.sigma.empty() ? 0.0 : s.sigma[0]);
  std::vector<std::array<cplx, 8>> basis;
  for (int j = 0; j < a.dim; j++) {
    if (s.sigma[j] > cut) continue;
    std::array<cplx, 8> vj{};
    for (int k = 0; k < a.dim; k++) vj[k] = s.v(k, j);
    basis.push_back(vj);
  }
  return basis;
}

MatrixSymbol cholesky(const MatrixSymbol& a) {
  const int n = a.dim;
  MatrixSymbol l(n);
  for (int i = 0; i < n; i++) {
    for (int j = 0; j <= i; j++) {
      double s = a(i, j).real();
      for (int k = 0; k < j; k++) s -= (l(i, k) * l(j, k)).real();
      if (i == j) {
        if (s <= 0.0) throw Error("cholesky: matrix not positive definite");
        l(i, i) = std::sqrt(s);
      } else {
        l(i, j) = s / l(j, j).real();
      }
    }
  }
  return l;
}

std::vector<double> eig_symmetrizable(const MatrixSymbol& a, const MatrixSymbol& s) {
  const int n = a.dim;
  const MatrixSymbol l = cholesky(s);
  const MatrixSymbol sa = s * a;
  // B = L^-1 (SA) L^-T, column by column: forward-substitute L Y = SA,
  // then solve B L^T = Y row by row (back substitution on the right).
  MatrixSymbol y(n);
  for (int j = 0; j < n; j++)
    for (int i = 0; i < n; i++) {
      cplx v = sa(i, j);
      for (int k = 0; k < i; k++) v -= l(i, k) * y(k, j);
      y(i, j) = v / l(i, i);
    }
  MatrixSymbol b(n);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      cplx v = y(i, j);
      for (int k = 0; k < j; k++) v -= b(i, k) * l(j, k);
      b(i, j) = v / l(j, j);
    }
  return jacobi_eig_sym(b);
}

}  // namespace mhdpol
