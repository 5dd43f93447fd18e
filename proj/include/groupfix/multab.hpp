#ifndef GROUPFIX_MULTAB_HPP
#define GROUPFIX_MULTAB_HPP

#include "groupfix/group.hpp"
#include "groupfix/linalg.hpp"

namespace groupfix {

// F_ij = G'_i G'_j - G'_(ij), the matrices characterising the violation of
// the multiplication table. All-zero iff the group is exactly closed.
class ViolationMatrices {
 public:
  ViolationMatrices(int order, int dim)
      : order_(order), f_(static_cast<std::size_t>(order) * order, Matrix(dim)) {}

  int order() const { return order_; }
  const Matrix& operator()(int i, int j) const {
    return f_[static_cast<std::size_t>(i) * order_ + j];
  }
  Matrix& operator()(int i, int j) { return f_[static_cast<std::size_t>(i) * order_ + j]; }

 private:
  int order_;
  std::vector<Matrix> f_;
};

ViolationMatrices violation_matrices(const ApproxGroup& g);

// S_M = sqrt(sum_ij ||F_ij||^2)
double multab_error(const ViolationMatrices& f);

// First-order deviations dG_i = (1/2N) sum_j (F_ij G_j^-1 + G_j^-1 F_ji),
// with G_j^-1 taken as the conjugate transpose, valid because the caller
// re-unitarizes first (checked against unitary_tol). The caller subtracts:
// G_i <- G'_i - dG_i.
std::vector<Matrix> correction_step(const ApproxGroup& g, double unitary_tol = 1e-8);

struct MultabTraceRow {
  int iteration;  // 1-based
  double s_m;     // error before this iteration's correction
};

struct MultabResult {
  ApproxGroup group;
  std::vector<MultabTraceRow> trace;
  bool converged;
  int iterations;
};

// Iterates re-unitarize / build F / check S_M / subtract correction until
// S_M < eps. On non-convergence within max_iter the best iterate seen is
// returned with converged = false.
MultabResult multab_group_correction(ApproxGroup g, double eps = 1e-12, int max_iter = 50);

}  // namespace groupfix

#endif
