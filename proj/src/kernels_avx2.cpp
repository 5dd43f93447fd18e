#include "groupfix/kernels.hpp"

#ifdef GROUPFIX_KERNELS_AVX2

#include <immintrin.h>

namespace groupfix::kernels::avx2 {

// One __m256d holds two complex doubles (re0, im0, re1, im1).
//
// Complex multiply-accumulate y += alpha*x per lane pair:
//   t1 = x * (ar, ar, ar, ar)
//   t2 = swap(x) * (ai, ai, ai, ai)        swap = (im0, re0, im1, re1)
//   y += addsub(t1, t2) = (t1 - t2, t1 + t2) interleaved
// which is exactly (xr*ar - xi*ai, xi*ar + xr*ai).

void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t m) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  double* ys = reinterpret_cast<double*>(y);
  const double* xs = reinterpret_cast<const double*>(x);
  std::size_t k = 0;
  for (; k + 2 <= m; k += 2) {
    const __m256d xv = _mm256_loadu_pd(xs + 2 * k);
    const __m256d xsw = _mm256_permute_pd(xv, 0x5);
    const __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(xv, ar), _mm256_mul_pd(xsw, ai));
    _mm256_storeu_pd(ys + 2 * k, _mm256_add_pd(_mm256_loadu_pd(ys + 2 * k), prod));
  }
  if (k < m) {
    const double xr = xs[2 * k], xi = xs[2 * k + 1];
    ys[2 * k] += alpha.real() * xr - alpha.imag() * xi;
    ys[2 * k + 1] += alpha.real() * xi + alpha.imag() * xr;
  }
}

void matmul_acc(cplx* c, const cplx* a, const cplx* b, int n) {
  for (int j = 0; j < n; ++j) {
    cplx* cj = c + static_cast<std::size_t>(j) * n;
    const cplx* bj = b + static_cast<std::size_t>(j) * n;
    for (int k = 0; k < n; ++k)
      caxpy(cj, bj[k], a + static_cast<std::size_t>(k) * n, n);
  }
}

double norm_sq(const cplx* x, std::size_t m) {
  const double* xs = reinterpret_cast<const double*>(x);
  const std::size_t d = 2 * m;
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= d; k += 4) {
    const __m256d v = _mm256_loadu_pd(xs + k);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; k < d; ++k) total += xs[k] * xs[k];
  return total;
}

}  // namespace groupfix::kernels::avx2

#endif
