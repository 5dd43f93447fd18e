#ifndef GROUPFIX_KERNELS_HPP
#define GROUPFIX_KERNELS_HPP

// Arithmetic kernels behind the dense complex matrix type. Every kernel has
// a scalar reference implementation plus SIMD variants (AVX2 on x86-64, NEON
// on arm64) selected once at runtime from CPU capabilities. The variants are
// equivalence-tested against the scalar versions; callers go through the
// dispatched entry points.
//
// Matrices are column-major, interleaved re/im (std::complex<double> layout).

#include <complex>
#include <cstddef>

namespace groupfix::kernels {

using cplx = std::complex<double>;

// y[0..m) += alpha * x[0..m)
void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t m);

// c = a * b for n x n column-major matrices; c must not alias a or b.
void matmul(cplx* c, const cplx* a, const cplx* b, int n);

// c += a * b
void matmul_acc(cplx* c, const cplx* a, const cplx* b, int n);

// sum of |x[k]|^2
double norm_sq(const cplx* x, std::size_t m);

// Name of the selected backend ("scalar", "avx2", "neon").
const char* backend();

// Force a backend by name; returns false if unavailable on this CPU.
// Recognized for the GROUPFIX_KERNELS environment variable as well.
bool select_backend(const char* name);

namespace scalar {
void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t m);
void matmul_acc(cplx* c, const cplx* a, const cplx* b, int n);
double norm_sq(const cplx* x, std::size_t m);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define GROUPFIX_KERNELS_AVX2 1
namespace avx2 {
void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t m);
void matmul_acc(cplx* c, const cplx* a, const cplx* b, int n);
double norm_sq(const cplx* x, std::size_t m);
}  // namespace avx2
#endif

#if defined(__aarch64__)
#define GROUPFIX_KERNELS_NEON 1
namespace neon {
void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t m);
void matmul_acc(cplx* c, const cplx* a, const cplx* b, int n);
double norm_sq(const cplx* x, std::size_t m);
}  // namespace neon
#endif

}  // namespace groupfix::kernels

#endif
