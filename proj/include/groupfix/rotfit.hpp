#ifndef GROUPFIX_ROTFIT_HPP
#define GROUPFIX_ROTFIT_HPP

#include "groupfix/group.hpp"
#include "groupfix/linalg.hpp"

namespace groupfix {

// External targets Q_i for the rotation fit; neither unitarity nor full rank
// is required.
struct TargetMatrices {
  std::vector<Matrix> q;
};

// Per group element i, vectors a_ij that element i should map to b_ij.
struct VectorPairs {
  struct Pair {
    Vector a;
    Vector b;
  };
  std::vector<std::vector<Pair>> per_element;

  int order() const { return static_cast<int>(per_element.size()); }
  int dim() const;
};

enum class FitAlgo { supermatrix, simplified };

struct FitConfig {
  double eps_m = 1e-10;          // table-violation threshold
  double eps_q = 1e-10;          // delta S_Q threshold
  double eps_r = 1e-8;           // ||R|| threshold
  int max_iter = 200;
  FitAlgo algo = FitAlgo::simplified;
  double null_threshold = 1e-8;  // relative eigenvalue cutoff of L

  void validate() const;
};

FitAlgo parse_fit_algo(const std::string& name);

// Q_i = sum_j |b_ij><a_ij| ; reduces the vector-mapping problem to the
// matrix-target problem.
TargetMatrices q_from_vector_pairs(const VectorPairs& v);

// P = sum_i ([G_i, Q_i+] + [G_i+, Q_i]); anti-hermitian by construction.
Matrix rhs_p(const ApproxGroup& g, const TargetMatrices& q);

// H_i = (G_i Q_i+ + Q_i+ G_i + Q_i G_i+ + G_i+ Q_i) / 2
Matrix h_matrix(const Matrix& gi, const Matrix& qi);

// The n^2 x n^2 supermatrix L with L vec(R) = vec of the left-hand side
//   sum_i { R H_i + H_i R - (G_i R Q_i+ + Q_i+ R G_i + G_i+ R Q_i + Q_i R G_i+) }
// under the column-major vec convention.
Matrix supermatrix_l(const ApproxGroup& g, const TargetMatrices& q);

// Solves L vec R = vec P by pseudo-inverse, then projects the solution onto
// its anti-hermitian part, discarding the hermitian null-space content.
AntiHermitian solve_r_supermatrix(const ApproxGroup& g, const TargetMatrices& q,
                                  double null_threshold = 1e-8);

// R = P / 4N; valid in the regime G_i ~ Q_i, group unitary to unitary_tol.
AntiHermitian solve_r_simplified(const ApproxGroup& g, const TargetMatrices& q,
                                 double unitary_tol = 1e-8);

// G_i -> e^-R G_i e^R. Conjugation commutes with the table, so S_M is
// preserved exactly.
ApproxGroup rotate_group(const ApproxGroup& g, const AntiHermitian& r);

// S_Q = sum_i ||G_i - Q_i||^2
double fit_error(const ApproxGroup& g, const TargetMatrices& q);
// S_ab = sum_ij ||G_i a_ij - b_ij||^2
double fit_error_ab(const ApproxGroup& g, const VectorPairs& v);

struct FitTraceRow {
  int iteration;    // 1-based
  double s_m;       // before the iteration's table correction
  double s_q;       // after the iteration's rotation
  double delta_s_q; // S_Q(prev) - S_Q(current); +inf on iteration 1
  double norm_r;
};

struct FitResult {
  ApproxGroup group;
  std::vector<Matrix> generators;  // applied R, in order
  std::vector<FitTraceRow> trace;
  bool converged;
  int iterations;
};

// Iterative rotation fit interleaved with multiplication-table correction.
// Per iteration: re-unitarize; one table-correction step if S_M >= eps_m;
// compute R by cfg.algo; rotate; update S_Q. Converged when an iteration
// completes with S_M < eps_m, delta S_Q <= eps_q and ||R|| <= eps_r.
FitResult lsf_group_correction(ApproxGroup g, const TargetMatrices& targets,
                               const FitConfig& cfg = {});
// Vector-pair flavour (problem "map a to b"); same R sequence as running on
// q_from_vector_pairs(v), with S_Q evaluated by fit_error_ab.
FitResult lsf_group_correction(ApproxGroup g, const VectorPairs& v, const FitConfig& cfg = {});

}  // namespace groupfix

#endif
