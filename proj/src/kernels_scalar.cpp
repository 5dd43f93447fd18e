#include "groupfix/kernels.hpp"

namespace groupfix::kernels::scalar {

void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t m) {
  const double ar = alpha.real(), ai = alpha.imag();
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  for (std::size_t k = 0; k < m; ++k) {
    const double xr = xs[2 * k], xi = xs[2 * k + 1];
    ys[2 * k] += ar * xr - ai * xi;
    ys[2 * k + 1] += ar * xi + ai * xr;
  }
}

void matmul_acc(cplx* c, const cplx* a, const cplx* b, int n) {
  // c(:,j) += sum_k a(:,k) * b(k,j), all column-major
  for (int j = 0; j < n; ++j) {
    cplx* cj = c + static_cast<std::size_t>(j) * n;
    const cplx* bj = b + static_cast<std::size_t>(j) * n;
    for (int k = 0; k < n; ++k)
      caxpy(cj, bj[k], a + static_cast<std::size_t>(k) * n, n);
  }
}

double norm_sq(const cplx* x, std::size_t m) {
  const double* xs = reinterpret_cast<const double*>(x);
  double acc = 0.0;
  for (std::size_t k = 0; k < 2 * m; ++k) acc += xs[k] * xs[k];
  return acc;
}

}  // namespace groupfix::kernels::scalar
