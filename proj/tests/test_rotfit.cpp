#include <doctest.h>

#include <cmath>

#include "groupfix/io.hpp"
#include "groupfix/multab.hpp"
#include "groupfix/rotfit.hpp"
#include "test_util.hpp"

using groupfix::AntiHermitian;
using groupfix::ApproxGroup;
using groupfix::cplx;
using groupfix::FitAlgo;
using groupfix::FitConfig;
using groupfix::Matrix;
using groupfix::Rng;
using groupfix::TargetMatrices;
using groupfix::VectorPairs;

namespace {

// Group of complex unitaries: the s3 irrep conjugated by a random unitary.
ApproxGroup complex_s3(Rng& rng) {
  const Matrix u = tu::random_unitary(rng, 2);
  std::vector<Matrix> els;
  for (const Matrix& m : tu::s3_rep()) els.push_back(u.adjoint() * m * u);
  return tu::exact_group(els);
}

TargetMatrices targets_equal(const ApproxGroup& g) { return {g.elements}; }

// S_Q as a function of the rotation parameter t along direction d.
double s_q_along(const ApproxGroup& g, const TargetMatrices& q, const Matrix& d, double t) {
  Matrix step = d;
  step *= t;
  const ApproxGroup rotated = groupfix::rotate_group(g, AntiHermitian(step));
  return groupfix::fit_error(rotated, q);
}

}  // namespace

TEST_CASE("q_from_vector_pairs outer products") {
  VectorPairs v;
  v.per_element.resize(1);
  v.per_element[0].push_back({{1, 0, 0}, {0, 1, 0}});  // a = e1, b = e2 (1-based)
  const TargetMatrices t = groupfix::q_from_vector_pairs(v);
  Matrix expect(3);
  expect(1, 0) = 1.0;
  CHECK(tu::max_abs_diff(t.q[0], expect) == 0.0);

  // completeness: pairs (e_k, e_k) sum to the identity
  VectorPairs w;
  w.per_element.resize(1);
  for (int k = 0; k < 3; ++k) {
    groupfix::Vector e(3, cplx{});
    e[static_cast<std::size_t>(k)] = 1.0;
    w.per_element[0].push_back({e, e});
  }
  CHECK(tu::max_abs_diff(groupfix::q_from_vector_pairs(w).q[0], Matrix::identity(3)) == 0.0);
}

TEST_CASE("q_from_vector_pairs matches a direct summation") {
  Rng rng(50);
  VectorPairs v;
  v.per_element.resize(2);
  for (auto& list : v.per_element)
    for (int p = 0; p < 3; ++p) {
      VectorPairs::Pair pr;
      for (int k = 0; k < 3; ++k) {
        pr.a.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
        pr.b.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
      }
      list.push_back(std::move(pr));
    }
  const TargetMatrices t = groupfix::q_from_vector_pairs(v);
  for (int i = 0; i < 2; ++i) {
    Matrix ref(3);
    for (const auto& pr : v.per_element[static_cast<std::size_t>(i)])
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
          ref(r, c) += pr.b[static_cast<std::size_t>(r)] * std::conj(pr.a[static_cast<std::size_t>(c)]);
    CHECK(tu::max_abs_diff(t.q[static_cast<std::size_t>(i)], ref) < 1e-15);
  }
}

TEST_CASE("rhs_p vanishes when targets equal the group") {
  Rng rng(51);
  const ApproxGroup g = complex_s3(rng);
  CHECK(groupfix::frobenius_norm(groupfix::rhs_p(g, targets_equal(g))) < 1e-13);

  // real scaling of the targets keeps P = 0
  TargetMatrices scaled = targets_equal(g);
  for (Matrix& m : scaled.q) m *= 2.5;
  CHECK(groupfix::frobenius_norm(groupfix::rhs_p(g, scaled)) < 1e-13);
}

TEST_CASE("rhs_p is anti-hermitian") {
  Rng rng(52);
  const ApproxGroup g = complex_s3(rng);
  TargetMatrices q = targets_equal(g);
  for (Matrix& m : q.q) m += tu::random_matrix(rng, 2, 0.1);
  CHECK(groupfix::antihermiticity_error(groupfix::rhs_p(g, q)) < 1e-12);
}

TEST_CASE("analytic 2x2 case pins the gradient scale: dS/dt = Tr(D P)") {
  // G = {I, sz}, Q = {I, sx}: P = 2 [sz, sx] = 4i sy. Along D = i sy the
  // derivative of S_Q at t = 0 is exactly Tr(D P) = -8.
  const Matrix sz(2, {1, 0, 0, -1});
  const Matrix sx(2, {0, 1, 1, 0});
  const Matrix sy(2, {0, cplx(0, -1), cplx(0, 1), 0});
  const ApproxGroup g = tu::exact_group({Matrix::identity(2), sz});
  TargetMatrices q;
  q.q = {Matrix::identity(2), sx};

  const Matrix p = groupfix::rhs_p(g, q);
  Matrix expect = sy;
  expect *= cplx(0, 4);
  CHECK(tu::max_abs_diff(p, expect) < 1e-14);

  Matrix d = sy;
  d *= cplx(0, 1);
  const double tr_dp = (d * p).trace().real();
  CHECK(tr_dp == doctest::Approx(-8.0));

  const double h = 1e-6;
  const double fd = (s_q_along(g, q, d, h) - s_q_along(g, q, d, -h)) / (2 * h);
  CHECK(fd == doctest::Approx(-8.0).epsilon(1e-6));
}

TEST_CASE("rhs_p matches central finite differences of S_Q") {
  Rng rng(53);
  const ApproxGroup g = complex_s3(rng);

  // targets: group conjugated by a small rotation
  const Matrix r0 = tu::with_norm(tu::random_antihermitian(rng, 2), 1e-3);
  const Matrix e = tu::taylor_exp(r0);
  TargetMatrices q;
  for (const Matrix& m : g.elements) q.q.push_back(e.adjoint() * m * e);

  const Matrix p = groupfix::rhs_p(g, q);
  const double h = 1e-5;
  for (int rep = 0; rep < 4; ++rep) {
    const Matrix d = tu::with_norm(tu::random_antihermitian(rng, 2), 1.0);
    const double fd = (s_q_along(g, q, d, h) - s_q_along(g, q, d, -h)) / (2 * h);
    const double analytic = (d * p).trace().real();
    CHECK(fd == doctest::Approx(analytic).epsilon(1e-4));
  }
}

TEST_CASE("supermatrix annihilates the identity when targets equal the group") {
  Rng rng(54);
  const ApproxGroup g = complex_s3(rng);
  const Matrix l = groupfix::supermatrix_l(g, targets_equal(g));
  const groupfix::Vector lv = l * groupfix::vec(Matrix::identity(2));
  CHECK(groupfix::norm(lv) <= 1e-10 * groupfix::frobenius_norm(l));
}

TEST_CASE("supermatrix reproduces the direct operator evaluation") {
  Rng rng(55);
  const ApproxGroup g = complex_s3(rng);
  TargetMatrices q = targets_equal(g);
  for (Matrix& m : q.q) m += tu::random_matrix(rng, 2, 0.3);

  const Matrix l = groupfix::supermatrix_l(g, q);
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix r = tu::random_matrix(rng, 2);
    // direct left-hand side
    Matrix lhs(2);
    for (int i = 0; i < g.order(); ++i) {
      const Matrix& gi = g.elements[static_cast<std::size_t>(i)];
      const Matrix& qi = q.q[static_cast<std::size_t>(i)];
      const Matrix h = groupfix::h_matrix(gi, qi);
      lhs += r * h + h * r;
      lhs -= gi * r * qi.adjoint() + qi.adjoint() * r * gi + gi.adjoint() * r * qi +
             qi * r * gi.adjoint();
    }
    const Matrix via_l = groupfix::unvec(l * groupfix::vec(r), 2);
    CHECK(tu::max_abs_diff(via_l, lhs) < 1e-11);
  }
}

TEST_CASE("supermatrix reduces to 4N R - 4 sum G R G+ at Q = G") {
  Rng rng(56);
  const ApproxGroup g = complex_s3(rng);
  const Matrix l = groupfix::supermatrix_l(g, targets_equal(g));
  const int n = g.order();
  for (int rep = 0; rep < 5; ++rep) {
    const Matrix r = tu::random_antihermitian(rng, 2);
    Matrix expect = r;
    expect *= 4.0 * n;
    for (int i = 0; i < n; ++i) {
      Matrix t = g.elements[static_cast<std::size_t>(i)] * r *
                 g.elements[static_cast<std::size_t>(i)].adjoint();
      t *= 4.0;
      expect -= t;
    }
    CHECK(tu::max_abs_diff(groupfix::unvec(l * groupfix::vec(r), 2), expect) < 1e-11);
  }
}

TEST_CASE("near-null eigenmatrices of L are hermitian after phase fixing") {
  Rng rng(57);
  const ApproxGroup g = complex_s3(rng);
  const Matrix l = groupfix::supermatrix_l(g, targets_equal(g));
  const auto es = groupfix::eigh(l);
  double lmax = 0;
  for (double w : es.values) lmax = std::max(lmax, std::abs(w));
  int null_count = 0;
  for (int k = 0; k < l.dim(); ++k) {
    if (std::abs(es.values[static_cast<std::size_t>(k)]) > 1e-8 * lmax) continue;
    ++null_count;
    groupfix::Vector col(static_cast<std::size_t>(l.dim()));
    for (int r = 0; r < l.dim(); ++r) col[static_cast<std::size_t>(r)] = es.vectors(r, k);
    Matrix x = groupfix::unvec(col, g.dim());
    // eigenvector phases are arbitrary; rotate so the trace is real positive
    const cplx tr = x.trace();
    REQUIRE(std::abs(tr) > 1e-8);
    x *= std::conj(tr) / std::abs(tr);
    CHECK(groupfix::frobenius_norm(x - x.adjoint()) < 1e-8);
  }
  CHECK(null_count == 1);  // irreducible representation: commutant is C I
}

TEST_CASE("solve_r_supermatrix recovers a constructed rotation") {
  Rng rng(58);
  const ApproxGroup g = complex_s3(rng);

  // traceless generator: no component in the commutant of the irrep
  Matrix r0 = tu::random_antihermitian(rng, 2);
  Matrix half = Matrix::identity(2);
  half *= r0.trace() / 2.0;
  r0 -= half;
  r0 = tu::with_norm(r0, 0.05);

  const Matrix e = tu::taylor_exp(r0);
  TargetMatrices q;
  for (const Matrix& m : g.elements) q.q.push_back(e.adjoint() * m * e);

  const AntiHermitian r = groupfix::solve_r_supermatrix(g, q, 1e-8);
  CHECK(groupfix::frobenius_norm(r.mat() - r0) <= 10.0 * 0.05 * 0.05);
}

TEST_CASE("solve_r_supermatrix and solve_r_simplified agree to second order") {
  double ratio[2];
  int idx = 0;
  for (double dq : {1e-2, 1e-3}) {
    Rng rng(59);
    const ApproxGroup g = complex_s3(rng);
    TargetMatrices q = targets_equal(g);
    for (Matrix& m : q.q) m += tu::with_norm(tu::random_matrix(rng, 2), dq);
    const Matrix rs = groupfix::solve_r_supermatrix(g, q, 1e-8).mat();
    const Matrix ri = groupfix::solve_r_simplified(g, q).mat();
    ratio[idx++] = groupfix::frobenius_norm(rs - ri) / (dq * dq);
  }
  // second-order agreement: the ratio stays bounded across scales
  CHECK(ratio[0] < 10.0 * ratio[1] + 10.0);
  CHECK(ratio[1] < 10.0 * ratio[0] + 10.0);
}

TEST_CASE("solve_r trivial and degenerate cases") {
  Rng rng(60);
  const ApproxGroup g = complex_s3(rng);
  CHECK(groupfix::solve_r_supermatrix(g, targets_equal(g), 1e-8).norm() < 1e-12);
  CHECK(groupfix::solve_r_simplified(g, targets_equal(g)).norm() < 1e-13);

  // 1x1 group: scalars commute, so P = 0 and R = 0 regardless of the target
  // phase; the rotation cannot act on a 1x1 group at all.
  ApproxGroup one(groupfix::MultiplicationTable(1, {0}), {Matrix::identity(1)});
  TargetMatrices qphase;
  qphase.q.push_back(Matrix(1, {std::exp(cplx(0, 0.3))}));
  CHECK(groupfix::solve_r_simplified(one, qphase).norm() == 0.0);
  // and the supermatrix is fully degenerate there
  CHECK_THROWS_AS(groupfix::solve_r_supermatrix(one, qphase, 1e-8),
                  groupfix::DegenerateSolveError);

  ApproxGroup bad = g;
  bad.elements[0] *= 3.0;
  CHECK_THROWS_AS(groupfix::solve_r_simplified(bad, targets_equal(bad)),
                  groupfix::NotUnitaryError);
}

TEST_CASE("rotate_group basics") {
  Rng rng(61);
  ApproxGroup g = tu::perturbed(complex_s3(rng), 1e-2, rng);

  const ApproxGroup same = groupfix::rotate_group(g, AntiHermitian::zero(2));
  for (int i = 0; i < g.order(); ++i)
    CHECK(tu::max_abs_diff(same.elements[static_cast<std::size_t>(i)],
                           g.elements[static_cast<std::size_t>(i)]) < 1e-15);

  const AntiHermitian r(tu::random_antihermitian(rng, 2, 0.5));
  Matrix neg = r.mat();
  neg *= -1.0;
  const ApproxGroup back = groupfix::rotate_group(groupfix::rotate_group(g, r), AntiHermitian(neg));
  for (int i = 0; i < g.order(); ++i)
    CHECK(tu::max_abs_diff(back.elements[static_cast<std::size_t>(i)],
                           g.elements[static_cast<std::size_t>(i)]) < 1e-12);

  const double sm_before = groupfix::group_closure_error(g);
  const double sm_after = groupfix::group_closure_error(groupfix::rotate_group(g, r));
  CHECK(std::abs(sm_before - sm_after) < 1e-12 * std::max(1.0, sm_before));
}

TEST_CASE("fit errors vanish on exact matches") {
  Rng rng(62);
  const ApproxGroup g = complex_s3(rng);
  CHECK(groupfix::fit_error(g, targets_equal(g)) == 0.0);

  VectorPairs v;
  v.per_element.resize(static_cast<std::size_t>(g.order()));
  for (int i = 0; i < g.order(); ++i)
    for (int p = 0; p < 2; ++p) {
      groupfix::Vector a{{rng.uniform(-1, 1), 0}, {rng.uniform(-1, 1), 0}};
      v.per_element[static_cast<std::size_t>(i)].push_back(
          {a, g.elements[static_cast<std::size_t>(i)] * a});
    }
  CHECK(groupfix::fit_error_ab(g, v) < 1e-28);
}

TEST_CASE("driver converges immediately on an exact instance") {
  Rng rng(63);
  const ApproxGroup g = complex_s3(rng);
  const auto res = groupfix::lsf_group_correction(g, targets_equal(g), FitConfig{});
  CHECK(res.converged);
  CHECK(res.iterations == 1);
  CHECK(res.trace[0].norm_r < 1e-12);
  CHECK(std::isinf(res.trace[0].delta_s_q));
}

TEST_CASE("one driver iteration does not increase S_Q") {
  Rng rng(64);
  const ApproxGroup g = complex_s3(rng);
  TargetMatrices q = targets_equal(g);
  for (Matrix& m : q.q) m += tu::random_matrix(rng, 2, 3e-3);
  const double s0 = groupfix::fit_error(g, q);

  FitConfig cfg;
  cfg.max_iter = 1;
  for (FitAlgo algo : {FitAlgo::simplified, FitAlgo::supermatrix}) {
    cfg.algo = algo;
    const auto res = groupfix::lsf_group_correction(g, q, cfg);
    CHECK(res.trace[0].s_q <= s0 + 1e-12);
  }
}

TEST_CASE("every applied generator is anti-hermitian") {
  Rng rng(65);
  ApproxGroup g = tu::perturbed(complex_s3(rng), 1e-3, rng);
  TargetMatrices q = targets_equal(g);
  FitConfig cfg;
  cfg.max_iter = 10;
  const auto res = groupfix::lsf_group_correction(g, q, cfg);
  for (const Matrix& r : res.generators) CHECK(groupfix::antihermiticity_error(r) < 1e-12);
}

TEST_CASE("vector pairs and reduced targets produce the same R sequence") {
  Rng rng(66);
  const ApproxGroup g0 = complex_s3(rng);

  // targets: rotated group action on random vectors
  const Matrix r0 = tu::with_norm(tu::random_antihermitian(rng, 2), 0.2);
  const Matrix e = tu::taylor_exp(r0);
  VectorPairs v;
  v.per_element.resize(static_cast<std::size_t>(g0.order()));
  for (int i = 0; i < g0.order(); ++i)
    for (int p = 0; p < 3; ++p) {
      groupfix::Vector a{{rng.uniform(-1, 1), rng.uniform(-1, 1)},
                         {rng.uniform(-1, 1), rng.uniform(-1, 1)}};
      const groupfix::Vector b = e.adjoint() * (g0.elements[static_cast<std::size_t>(i)] * (e * a));
      v.per_element[static_cast<std::size_t>(i)].push_back({a, b});
    }

  FitConfig cfg;
  cfg.max_iter = 6;
  cfg.eps_q = 1e-300;  // force max_iter iterations in both runs
  cfg.eps_r = 1e-300;
  const auto res_pairs = groupfix::lsf_group_correction(g0, v, cfg);
  const auto res_q = groupfix::lsf_group_correction(g0, groupfix::q_from_vector_pairs(v), cfg);
  REQUIRE(res_pairs.generators.size() == res_q.generators.size());
  for (std::size_t k = 0; k < res_pairs.generators.size(); ++k)
    CHECK(tu::max_abs_diff(res_pairs.generators[k], res_q.generators[k]) < 1e-12);
}

TEST_CASE("driver flags non-convergence at max_iter") {
  Rng rng(67);
  const ApproxGroup g = complex_s3(rng);
  TargetMatrices q = targets_equal(g);
  for (Matrix& m : q.q) m += tu::random_matrix(rng, 2, 0.2);
  FitConfig cfg;
  cfg.max_iter = 2;
  cfg.eps_q = 1e-300;
  const auto res = groupfix::lsf_group_correction(g, q, cfg);
  CHECK_FALSE(res.converged);
  CHECK(res.iterations == 2);
  CHECK(res.trace.size() == 2);
}

TEST_CASE("pairs json round trip") {
  Rng rng(68);
  VectorPairs v;
  v.per_element.resize(2);
  for (auto& list : v.per_element)
    for (int p = 0; p < 2; ++p) {
      VectorPairs::Pair pr;
      for (int k = 0; k < 3; ++k) {
        pr.a.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
        pr.b.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
      }
      list.push_back(std::move(pr));
    }
  const VectorPairs back = groupfix::parse_vector_pairs_json(groupfix::vector_pairs_to_json(v));
  REQUIRE(back.order() == v.order());
  for (int i = 0; i < v.order(); ++i) {
    const auto& la = v.per_element[static_cast<std::size_t>(i)];
    const auto& lb = back.per_element[static_cast<std::size_t>(i)];
    REQUIRE(la.size() == lb.size());
    for (std::size_t p = 0; p < la.size(); ++p)
      for (int k = 0; k < 3; ++k) {
        CHECK(la[p].a[static_cast<std::size_t>(k)] == lb[p].a[static_cast<std::size_t>(k)]);
        CHECK(la[p].b[static_cast<std::size_t>(k)] == lb[p].b[static_cast<std::size_t>(k)]);
      }
  }
}
