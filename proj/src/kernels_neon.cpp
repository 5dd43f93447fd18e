#include "groupfix/kernels.hpp"

#ifdef GROUPFIX_KERNELS_NEON

#include <arm_neon.h>

namespace groupfix::kernels::neon {

// One float64x2_t holds a single complex double (re, im).
//
// y += alpha*x per element:
//   y += x * (ar, ar) + ext(x) * (-ai, ai)   ext = (im, re)

void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t m) {
  const float64x2_t c1 = vdupq_n_f64(alpha.real());
  const float64x2_t c2 = {-alpha.imag(), alpha.imag()};
  double* ys = reinterpret_cast<double*>(y);
  const double* xs = reinterpret_cast<const double*>(x);
  for (std::size_t k = 0; k < m; ++k) {
    const float64x2_t xv = vld1q_f64(xs + 2 * k);
    float64x2_t yv = vld1q_f64(ys + 2 * k);
    yv = vfmaq_f64(yv, xv, c1);
    yv = vfmaq_f64(yv, vextq_f64(xv, xv, 1), c2);
    vst1q_f64(ys + 2 * k, yv);
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
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 2 <= d; k += 2) {
    const float64x2_t v = vld1q_f64(xs + k);
    acc = vfmaq_f64(acc, v, v);
  }
  double total = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; k < d; ++k) total += xs[k] * xs[k];
  return total;
}

}  // namespace groupfix::kernels::neon

#endif
