#include "groupfix/multab.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "groupfix/kernels.hpp"

namespace groupfix {

ViolationMatrices violation_matrices(const ApproxGroup& g) {
  const int n = g.order();
  ViolationMatrices f(n, g.dim());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Matrix& fij = f(i, j);
      kernels::matmul(fij.data(), g.elements[static_cast<std::size_t>(i)].data(),
                      g.elements[static_cast<std::size_t>(j)].data(), g.dim());
      fij -= g.elements[static_cast<std::size_t>(g.table(i, j))];
    }
  return f;
}

double multab_error(const ViolationMatrices& f) {
  double acc = 0.0;
  for (int i = 0; i < f.order(); ++i)
    for (int j = 0; j < f.order(); ++j) acc += frobenius_norm_sq(f(i, j));
  return std::sqrt(acc);
}

std::vector<Matrix> correction_step(const ApproxGroup& g, double unitary_tol) {
  const int n = g.order(), d = g.dim();
  for (int i = 0; i < n; ++i) {
    const double err = unitarity_error(g.elements[static_cast<std::size_t>(i)]);
    if (err > unitary_tol)
      throw NotUnitaryError("correction_step: element " + std::to_string(i) +
                            " is not unitary (error " + std::to_string(err) + ")");
  }

  const ViolationMatrices f = violation_matrices(g);
  std::vector<Matrix> adj(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    adj[static_cast<std::size_t>(j)] = g.elements[static_cast<std::size_t>(j)].adjoint();

  std::vector<Matrix> dg(static_cast<std::size_t>(n), Matrix(d));
  for (int i = 0; i < n; ++i) {
    Matrix& di = dg[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      kernels::matmul_acc(di.data(), f(i, j).data(), adj[static_cast<std::size_t>(j)].data(), d);
      kernels::matmul_acc(di.data(), adj[static_cast<std::size_t>(j)].data(), f(j, i).data(), d);
    }
    di *= 1.0 / (2.0 * n);
  }
  return dg;
}

MultabResult multab_group_correction(ApproxGroup g, double eps, int max_iter) {
  if (eps <= 0.0) throw Error("multab_group_correction: eps must be positive");
  if (max_iter < 1) throw Error("multab_group_correction: max_iter must be >= 1");

  std::vector<MultabTraceRow> trace;
  ApproxGroup best = g;
  double best_sm = std::numeric_limits<double>::infinity();

  for (int it = 1; it <= max_iter; ++it) {
    reunitarize_elements(g);
    const ViolationMatrices f = violation_matrices(g);
    const double s_m = multab_error(f);
    trace.push_back({it, s_m});
    if (s_m < best_sm) {
      best_sm = s_m;
      best = g;
    }
    if (s_m < eps) return {std::move(g), std::move(trace), true, it};

    const std::vector<Matrix> dg = correction_step(g);
    for (int i = 0; i < g.order(); ++i)
      g.elements[static_cast<std::size_t>(i)] -= dg[static_cast<std::size_t>(i)];
  }
  return {std::move(best), std::move(trace), false, max_iter};
}

}  // namespace groupfix
