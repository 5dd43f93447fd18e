#include "groupfix/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace groupfix::kernels {

namespace {

struct Backend {
  const char* name;
  void (*caxpy)(cplx*, cplx, const cplx*, std::size_t);
  void (*matmul_acc)(cplx*, const cplx*, const cplx*, int);
  double (*norm_sq)(const cplx*, std::size_t);
};

constexpr Backend kScalar{"scalar", scalar::caxpy, scalar::matmul_acc, scalar::norm_sq};

#ifdef GROUPFIX_KERNELS_AVX2
constexpr Backend kAvx2{"avx2", avx2::caxpy, avx2::matmul_acc, avx2::norm_sq};
#endif
#ifdef GROUPFIX_KERNELS_NEON
constexpr Backend kNeon{"neon", neon::caxpy, neon::matmul_acc, neon::norm_sq};
#endif

const Backend* find_backend(const char* name) {
  if (std::strcmp(name, "scalar") == 0) return &kScalar;
#ifdef GROUPFIX_KERNELS_AVX2
  if (std::strcmp(name, "avx2") == 0 && __builtin_cpu_supports("avx2")) return &kAvx2;
#endif
#ifdef GROUPFIX_KERNELS_NEON
  if (std::strcmp(name, "neon") == 0) return &kNeon;
#endif
  return nullptr;
}

const Backend* detect() {
  if (const char* env = std::getenv("GROUPFIX_KERNELS")) {
    if (const Backend* b = find_backend(env)) return b;
  }
#ifdef GROUPFIX_KERNELS_AVX2
  if (__builtin_cpu_supports("avx2")) return &kAvx2;
#endif
#ifdef GROUPFIX_KERNELS_NEON
  return &kNeon;
#endif
  return &kScalar;
}

const Backend* g_active = detect();

}  // namespace

void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t m) {
  g_active->caxpy(y, alpha, x, m);
}

void matmul(cplx* c, const cplx* a, const cplx* b, int n) {
  std::memset(c, 0, sizeof(cplx) * static_cast<std::size_t>(n) * n);
  g_active->matmul_acc(c, a, b, n);
}

void matmul_acc(cplx* c, const cplx* a, const cplx* b, int n) {
  g_active->matmul_acc(c, a, b, n);
}

double norm_sq(const cplx* x, std::size_t m) {
  return g_active->norm_sq(x, m);
}

const char* backend() { return g_active->name; }

bool select_backend(const char* name) {
  if (const Backend* b = find_backend(name)) {
    g_active = b;
    return true;
  }
  return false;
}

}  // namespace groupfix::kernels
