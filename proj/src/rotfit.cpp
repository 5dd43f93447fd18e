#include "groupfix/rotfit.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "groupfix/kernels.hpp"
#include "groupfix/multab.hpp"

namespace groupfix {

int VectorPairs::dim() const {
  for (const auto& pairs : per_element)
    for (const Pair& p : pairs) return static_cast<int>(p.a.size());
  throw DimensionError("vector pairs are empty");
}

void FitConfig::validate() const {
  if (eps_m <= 0 || eps_q <= 0 || eps_r <= 0 || null_threshold <= 0)
    throw Error("fit thresholds must be positive");
  if (max_iter < 1) throw Error("max_iter must be >= 1");
}

FitAlgo parse_fit_algo(const std::string& name) {
  if (name == "supermatrix") return FitAlgo::supermatrix;
  if (name == "simplified") return FitAlgo::simplified;
  throw Error("unknown fit algorithm '" + name + "' (expected supermatrix or simplified)");
}

TargetMatrices q_from_vector_pairs(const VectorPairs& v) {
  const int n = v.dim();
  TargetMatrices t;
  t.q.reserve(v.per_element.size());
  for (const auto& pairs : v.per_element) {
    Matrix qi(n);
    for (const VectorPairs::Pair& p : pairs) {
      if (static_cast<int>(p.a.size()) != n || static_cast<int>(p.b.size()) != n)
        throw DimensionError("vector pair has wrong dimension");
      for (int c = 0; c < n; ++c) {
        const cplx ac = std::conj(p.a[static_cast<std::size_t>(c)]);
        if (ac == cplx{}) continue;
        for (int r = 0; r < n; ++r) qi(r, c) += p.b[static_cast<std::size_t>(r)] * ac;
      }
    }
    t.q.push_back(std::move(qi));
  }
  return t;
}

namespace {

void check_targets(const ApproxGroup& g, const TargetMatrices& q) {
  if (static_cast<int>(q.q.size()) != g.order())
    throw DimensionError("target count does not match group order");
  for (const Matrix& m : q.q)
    if (m.dim() != g.dim()) throw DimensionError("target dimension does not match group");
}

}  // namespace

Matrix rhs_p(const ApproxGroup& g, const TargetMatrices& q) {
  check_targets(g, q);
  Matrix p(g.dim());
  for (int i = 0; i < g.order(); ++i) {
    const Matrix& gi = g.elements[static_cast<std::size_t>(i)];
    const Matrix& qi = q.q[static_cast<std::size_t>(i)];
    p += commutator(gi, qi.adjoint());
    p += commutator(gi.adjoint(), qi);
  }
  const double err = antihermiticity_error(p);
  if (err > 1e-10 * std::max(1.0, frobenius_norm(p)))
    throw Error("rhs_p: result lost anti-hermiticity (" + std::to_string(err) + ")");
  return p;
}

Matrix h_matrix(const Matrix& gi, const Matrix& qi) {
  const Matrix qa = qi.adjoint(), ga = gi.adjoint();
  Matrix h = gi * qa;
  h += qa * gi;
  h += qi * ga;
  h += ga * qi;
  h *= 0.5;
  return h;
}

Matrix supermatrix_l(const ApproxGroup& g, const TargetMatrices& q) {
  check_targets(g, q);
  const int n = g.dim();
  const Matrix eye = Matrix::identity(n);
  Matrix l(n * n);
  for (int i = 0; i < g.order(); ++i) {
    const Matrix& gi = g.elements[static_cast<std::size_t>(i)];
    const Matrix& qi = q.q[static_cast<std::size_t>(i)];
    const Matrix h = h_matrix(gi, qi);
    l += kron(h.transpose(), eye);
    l += kron(eye, h);
    l -= kron(qi.conjugate(), gi);
    l -= kron(gi.transpose(), qi.adjoint());
    l -= kron(qi.transpose(), gi.adjoint());
    l -= kron(gi.conjugate(), qi);
  }
  return l;
}

AntiHermitian solve_r_supermatrix(const ApproxGroup& g, const TargetMatrices& q,
                                  double null_threshold) {
  const Matrix l = supermatrix_l(g, q);
  const Vector x = solve_pinv(l, vec(rhs_p(g, q)), null_threshold);
  return AntiHermitian(unvec(x, g.dim()));
}

AntiHermitian solve_r_simplified(const ApproxGroup& g, const TargetMatrices& q,
                                 double unitary_tol) {
  for (int i = 0; i < g.order(); ++i) {
    const double err = unitarity_error(g.elements[static_cast<std::size_t>(i)]);
    if (err > unitary_tol)
      throw NotUnitaryError("solve_r_simplified: element " + std::to_string(i) +
                            " is not unitary (error " + std::to_string(err) + ")");
  }
  Matrix r = rhs_p(g, q);
  r *= 1.0 / (4.0 * g.order());
  return AntiHermitian(r);
}

ApproxGroup rotate_group(const ApproxGroup& g, const AntiHermitian& r) {
  if (r.dim() != g.dim()) throw DimensionError("generator dimension does not match group");
  const Matrix u = exp_antihermitian(r).mat();
  const Matrix uinv = u.adjoint();
  ApproxGroup out = g;
  for (Matrix& m : out.elements) m = uinv * m * u;

  // conjugation commutes with the table, so the violation error is invariant
  const double before = group_closure_error(g);
  const double after = group_closure_error(out);
  if (std::abs(before - after) > 1e-12 * std::max(1.0, before))
    throw Error("rotate_group: S_M drifted from " + std::to_string(before) + " to " +
                std::to_string(after));
  return out;
}

double fit_error(const ApproxGroup& g, const TargetMatrices& q) {
  check_targets(g, q);
  double acc = 0.0;
  for (int i = 0; i < g.order(); ++i) {
    Matrix d = g.elements[static_cast<std::size_t>(i)];
    d -= q.q[static_cast<std::size_t>(i)];
    acc += frobenius_norm_sq(d);
  }
  return acc;
}

double fit_error_ab(const ApproxGroup& g, const VectorPairs& v) {
  if (v.order() != g.order()) throw DimensionError("pair count does not match group order");
  double acc = 0.0;
  for (int i = 0; i < g.order(); ++i) {
    const Matrix& gi = g.elements[static_cast<std::size_t>(i)];
    for (const VectorPairs::Pair& p : v.per_element[static_cast<std::size_t>(i)]) {
      Vector d = gi * p.a;
      for (std::size_t k = 0; k < d.size(); ++k) d[k] -= p.b[k];
      acc += kernels::norm_sq(d.data(), d.size());
    }
  }
  return acc;
}

namespace {

// Shared driver; s_q_of evaluates the error functional of the concrete
// problem on the current group.
template <typename ErrorFn>
FitResult run_fit(ApproxGroup g, const TargetMatrices& targets, const FitConfig& cfg,
                  ErrorFn&& s_q_of) {
  cfg.validate();
  check_targets(g, targets);

  FitResult out{std::move(g), {}, {}, false, 0};
  double s_q_prev = std::numeric_limits<double>::infinity();

  for (int it = 1; it <= cfg.max_iter; ++it) {
    bool flag = true;
    reunitarize_elements(out.group);

    const double s_m = group_closure_error(out.group);
    if (s_m >= cfg.eps_m) {
      const std::vector<Matrix> dg = correction_step(out.group);
      for (int i = 0; i < out.group.order(); ++i)
        out.group.elements[static_cast<std::size_t>(i)] -= dg[static_cast<std::size_t>(i)];
      flag = false;
    }

    const AntiHermitian r = cfg.algo == FitAlgo::supermatrix
                                ? solve_r_supermatrix(out.group, targets, cfg.null_threshold)
                                : solve_r_simplified(out.group, targets);
    out.group = rotate_group(out.group, r);
    out.generators.push_back(r.mat());

    const double s_q = s_q_of(out.group);
    const double delta_s_q = s_q_prev - s_q;
    s_q_prev = s_q;
    const double norm_r = frobenius_norm(r.mat());

    // No previous S_Q exists on iteration 1; its delta is recorded as +inf
    // and excluded from the convergence comparison so that an already
    // converged input terminates immediately.
    if ((it > 1 && delta_s_q > cfg.eps_q) || norm_r > cfg.eps_r) flag = false;

    out.trace.push_back({it, s_m, s_q, delta_s_q, norm_r});
    out.iterations = it;
    if (flag) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

}  // namespace

FitResult lsf_group_correction(ApproxGroup g, const TargetMatrices& targets,
                               const FitConfig& cfg) {
  return run_fit(std::move(g), targets, cfg,
                 [&](const ApproxGroup& cur) { return fit_error(cur, targets); });
}

FitResult lsf_group_correction(ApproxGroup g, const VectorPairs& v, const FitConfig& cfg) {
  if (v.order() != g.order()) throw DimensionError("pair count does not match group order");
  const TargetMatrices targets = q_from_vector_pairs(v);
  return run_fit(std::move(g), targets, cfg,
                 [&](const ApproxGroup& cur) { return fit_error_ab(cur, v); });
}

}  // namespace groupfix
