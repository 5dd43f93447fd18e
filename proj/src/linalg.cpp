#define LAPACK_COMPLEX_CPP
#include "groupfix/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>

namespace groupfix {

double unitarity_error(const Matrix& m) {
  Matrix d = m * m.adjoint();
  d -= Matrix::identity(m.dim());
  return frobenius_norm(d);
}

double antihermiticity_error(const Matrix& m) {
  Matrix s = m;
  s += m.adjoint();
  return frobenius_norm(s);
}

Unitary::Unitary(Matrix m, double tol) : m_(std::move(m)) {
  const double err = unitarity_error(m_);
  if (err > tol)
    throw NotUnitaryError("matrix is not unitary: ||M M+ - I|| = " + std::to_string(err));
}

Eigensystem eigh(const Matrix& a, double herm_tol) {
  Matrix d = a;
  d -= a.adjoint();
  const double herm_err = frobenius_norm(d);
  if (herm_err > herm_tol * std::max(1.0, frobenius_norm(a)))
    throw NotHermitianError("matrix is not hermitian: ||A - A+|| = " + std::to_string(herm_err));

  Eigensystem es;
  es.vectors = a.hermitian_part();
  es.values.resize(static_cast<std::size_t>(a.dim()));
  const lapack_int info = LAPACKE_zheev(
      LAPACK_COL_MAJOR, 'V', 'U', a.dim(),
      reinterpret_cast<lapack_complex_double*>(es.vectors.data()), a.dim(), es.values.data());
  if (info != 0) throw Error("zheev failed with info " + std::to_string(info));
  return es;
}

Svd svd(const Matrix& a) {
  const int n = a.dim();
  Matrix work = a;
  Svd out;
  out.u = Matrix(n);
  out.vh = Matrix(n);
  out.sigma.resize(static_cast<std::size_t>(n));
  std::vector<double> superb(static_cast<std::size_t>(std::max(1, n - 1)));
  const lapack_int info = LAPACKE_zgesvd(
      LAPACK_COL_MAJOR, 'A', 'A', n, n, reinterpret_cast<lapack_complex_double*>(work.data()),
      n, out.sigma.data(), reinterpret_cast<lapack_complex_double*>(out.u.data()), n,
      reinterpret_cast<lapack_complex_double*>(out.vh.data()), n, superb.data());
  if (info != 0) throw Error("zgesvd failed with info " + std::to_string(info));
  return out;
}

Unitary reunitarize(const Matrix& m, double rank_tol) {
  if (!m.all_finite()) throw Error("reunitarize: input contains non-finite entries");
  const Svd f = svd(m);
  if (f.sigma.back() <= rank_tol)
    throw SingularMatrixError("reunitarize: matrix is rank deficient (smallest singular value " +
                              std::to_string(f.sigma.back()) + ")");
  return Unitary(f.u * f.vh, 1e-12);
}

Unitary exp_antihermitian(const AntiHermitian& r) {
  // iR is hermitian; R = V diag(-i w) V+, so e^R = V diag(e^{-i w}) V+.
  Matrix ir = r.mat();
  ir *= cplx(0.0, 1.0);
  const Eigensystem es = eigh(ir, 1e-12);
  const int n = ir.dim();
  Matrix phases(n);
  for (int k = 0; k < n; ++k)
    phases(k, k) = std::exp(cplx(0.0, -es.values[static_cast<std::size_t>(k)]));
  return Unitary(es.vectors * phases * es.vectors.adjoint(), 1e-12);
}

Vector solve_pinv(const Matrix& l, const Vector& p, double null_threshold) {
  if (static_cast<int>(p.size()) != l.dim())
    throw DimensionError("solve_pinv: right-hand side length does not match");
  const Eigensystem es = eigh(l);
  double lambda_max = 0.0;
  for (double w : es.values) lambda_max = std::max(lambda_max, std::abs(w));
  const double cut = null_threshold * lambda_max;

  // x = V f(D) V+ p with f inverting only the eigenvalues above the cut
  Vector proj = es.vectors.adjoint() * p;
  bool any = false;
  for (int k = 0; k < l.dim(); ++k) {
    const double w = es.values[static_cast<std::size_t>(k)];
    if (std::abs(w) > cut && w != 0.0) {
      proj[static_cast<std::size_t>(k)] /= w;
      any = true;
    } else {
      proj[static_cast<std::size_t>(k)] = 0.0;
    }
  }
  if (!any)
    throw DegenerateSolveError("solve_pinv: all eigenvalues below null threshold");
  return es.vectors * proj;
}

}  // namespace groupfix
