#ifndef GROUPFIX_LINALG_HPP
#define GROUPFIX_LINALG_HPP

#include "groupfix/matrix.hpp"

namespace groupfix {

inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kRankTol = 1e-12;

double unitarity_error(const Matrix& m);  // ||M M+ - I||_F
double antihermiticity_error(const Matrix& m);  // ||M + M+||_F

// Unitary matrix, validated on construction: ||M M+ - I||_F <= tol.
class Unitary {
 public:
  explicit Unitary(Matrix m, double tol = kUnitaryTol);
  const Matrix& mat() const { return m_; }
  int dim() const { return m_.dim(); }

 private:
  Matrix m_;
};

// Anti-hermitian generator of a unitary rotation e^R. Construction keeps
// only the anti-hermitian part of the input, so the invariant R + R+ = 0
// holds exactly.
class AntiHermitian {
 public:
  explicit AntiHermitian(const Matrix& m) : m_(m.antihermitian_part()) {}
  static AntiHermitian zero(int n) { return AntiHermitian(Matrix(n)); }
  const Matrix& mat() const { return m_; }
  int dim() const { return m_.dim(); }
  double norm() const { return frobenius_norm(m_); }

 private:
  Matrix m_;
};

// A = V diag(values) V+ with A hermitian; columns of `vectors` are the
// eigenvectors, values ascending.
struct Eigensystem {
  std::vector<double> values;
  Matrix vectors;
};

// Throws NotHermitianError if ||A - A+|| > herm_tol * max(1, ||A||).
Eigensystem eigh(const Matrix& a, double herm_tol = 1e-8);

// A = U diag(sigma) Vh, sigma descending.
struct Svd {
  Matrix u;
  std::vector<double> sigma;
  Matrix vh;
};

Svd svd(const Matrix& a);

// Unitary polar factor of M, the nearest unitary matrix in Frobenius norm.
// Throws SingularMatrixError when the smallest singular value is at or below
// rank_tol (degenerate input, e.g. coplanar molecule vectors).
Unitary reunitarize(const Matrix& m, double rank_tol = kRankTol);

// e^R computed via the spectral decomposition of the hermitian matrix iR;
// exact for the (normal) anti-hermitian generator, result unitary to 1e-12.
Unitary exp_antihermitian(const AntiHermitian& r);

// Minimum-norm least-squares solution of L x = p for hermitian L:
// eigendecompose, invert eigenvalues with |lambda| > null_threshold * max|lambda|,
// zero the rest. Throws DegenerateSolveError when every eigenvalue is below
// the threshold.
Vector solve_pinv(const Matrix& l, const Vector& p, double null_threshold);

}  // namespace groupfix

#endif
