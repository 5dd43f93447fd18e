#include <doctest.h>

#include "groupfix/matrix.hpp"
#include "test_util.hpp"

using groupfix::cplx;
using groupfix::Matrix;
using groupfix::Rng;
using groupfix::Vector;

TEST_CASE("frobenius norm") {
  CHECK(groupfix::frobenius_norm(Matrix(3)) == 0.0);
  CHECK(groupfix::frobenius_norm(Matrix::identity(3)) == doctest::Approx(std::sqrt(3.0)));
  // hand sum: 9 + 16 = 25
  const Matrix m(2, {3.0, 4.0, 0.0, 0.0});
  CHECK(groupfix::frobenius_norm(m) == doctest::Approx(5.0));
}

TEST_CASE("commutator") {
  Rng rng(10);
  const Matrix a = tu::random_matrix(rng, 3);
  CHECK(groupfix::frobenius_norm(groupfix::commutator(a, a)) < 1e-14);
  CHECK(groupfix::frobenius_norm(groupfix::commutator(a, Matrix::identity(3))) < 1e-14);

  // [sx, sy] = 2i sz for the Pauli matrices
  const Matrix sx(2, {0, 1, 1, 0});
  const Matrix sy(2, {0, cplx(0, -1), cplx(0, 1), 0});
  Matrix expect(2, {cplx(0, 2), 0, 0, cplx(0, -2)});
  CHECK(tu::max_abs_diff(groupfix::commutator(sx, sy), expect) < 1e-15);

  CHECK_THROWS_AS(groupfix::commutator(a, Matrix::identity(2)), groupfix::DimensionError);
}

TEST_CASE("vec is column-major and unvec inverts it") {
  const Matrix m(2, {1, 3, 2, 4});
  const Vector v = groupfix::vec(m);
  CHECK(v[0] == cplx(1));
  CHECK(v[1] == cplx(2));
  CHECK(v[2] == cplx(3));
  CHECK(v[3] == cplx(4));

  CHECK(groupfix::norm(groupfix::vec(Matrix(3))) == 0.0);

  Rng rng(11);
  const Matrix r = tu::random_matrix(rng, 4);
  CHECK(tu::max_abs_diff(groupfix::unvec(groupfix::vec(r), 4), r) == 0.0);
}

TEST_CASE("kron blocks and the vec identity") {
  const Matrix i2 = Matrix::identity(2);
  CHECK(tu::max_abs_diff(groupfix::kron(i2, i2), Matrix::identity(4)) == 0.0);

  // [[0,1],[1,0]] (x) I2 = block anti-diagonal of I2
  const Matrix swap(2, {0, 1, 1, 0});
  const Matrix k = groupfix::kron(swap, i2);
  Matrix expect(4);
  expect(0, 2) = expect(1, 3) = expect(2, 0) = expect(3, 1) = 1.0;
  CHECK(tu::max_abs_diff(k, expect) == 0.0);

  // vec(B X A^T) = (A (x) B) vec(X) on random triples
  Rng rng(12);
  for (int rep = 0; rep < 5; ++rep) {
    const Matrix a = tu::random_matrix(rng, 3), b = tu::random_matrix(rng, 3),
                 x = tu::random_matrix(rng, 3);
    const Vector lhs = groupfix::vec(b * x * a.transpose());
    const Vector rhs = groupfix::kron(a, b) * groupfix::vec(x);
    double d = 0;
    for (std::size_t t = 0; t < lhs.size(); ++t) d = std::max(d, std::abs(lhs[t] - rhs[t]));
    CHECK(d < 1e-12);
  }
}

TEST_CASE("adjoint, parts and trace") {
  Rng rng(13);
  const Matrix a = tu::random_matrix(rng, 3);
  CHECK(tu::max_abs_diff(a.adjoint().adjoint(), a) == 0.0);
  CHECK(tu::max_abs_diff(a.hermitian_part() + a.antihermitian_part(), a) < 1e-15);
  CHECK(groupfix::frobenius_norm(a.hermitian_part() - a.hermitian_part().adjoint()) < 1e-15);
  CHECK(groupfix::frobenius_norm(a.antihermitian_part() + a.antihermitian_part().adjoint()) <
        1e-15);
  CHECK(std::abs(a.trace() - (a(0, 0) + a(1, 1) + a(2, 2))) < 1e-15);
}

TEST_CASE("matrix multiplication dispatches through the kernel layer") {
  Rng rng(14);
  const Matrix a = tu::random_matrix(rng, 5), b = tu::random_matrix(rng, 5);
  const Matrix c = a * b;
  Matrix ref(5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      cplx acc = 0;
      for (int k = 0; k < 5; ++k) acc += a(i, k) * b(k, j);
      ref(i, j) = acc;
    }
  CHECK(tu::max_abs_diff(c, ref) < 1e-13);
}
