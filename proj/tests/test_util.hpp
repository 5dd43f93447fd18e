#ifndef GROUPFIX_TEST_UTIL_HPP
#define GROUPFIX_TEST_UTIL_HPP

// Shared fixtures and independent oracles for the test suites. Oracles here
// must stay independent of the implementation paths they check: the matrix
// exponential is a scaled Taylor series, unitaries are produced from it, and
// reference values are recomputed with explicit loops.

#include <cmath>
#include <vector>

#include "groupfix/group.hpp"
#include "groupfix/linalg.hpp"
#include "groupfix/matrix.hpp"
#include "groupfix/random.hpp"
#include "groupfix/table.hpp"

namespace tu {

using groupfix::ApproxGroup;
using groupfix::cplx;
using groupfix::Matrix;
using groupfix::MultiplicationTable;
using groupfix::Rng;

inline Matrix random_matrix(Rng& rng, int n, double scale = 1.0) {
  Matrix m(n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r)
      m(r, c) = cplx(rng.uniform(-scale, scale), rng.uniform(-scale, scale));
  return m;
}

inline Matrix random_real_matrix(Rng& rng, int n, double scale = 1.0) {
  Matrix m(n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) m(r, c) = rng.uniform(-scale, scale);
  return m;
}

inline Matrix random_hermitian(Rng& rng, int n, double scale = 1.0) {
  return random_matrix(rng, n, scale).hermitian_part();
}

inline Matrix random_antihermitian(Rng& rng, int n, double scale = 1.0) {
  return random_matrix(rng, n, scale).antihermitian_part();
}

// Rescaled so the Frobenius norm is exactly `norm`.
inline Matrix with_norm(Matrix m, double norm) {
  m *= norm / groupfix::frobenius_norm(m);
  return m;
}

// Matrix exponential oracle: scaling and squaring around a 30-term Taylor
// series. Deliberately not the spectral route used by the library.
inline Matrix taylor_exp(const Matrix& a) {
  int squarings = 0;
  double s = groupfix::frobenius_norm(a);
  while (s > 0.5) {
    s /= 2.0;
    ++squarings;
  }
  Matrix b = a;
  b *= std::pow(0.5, squarings);

  Matrix sum = Matrix::identity(a.dim());
  Matrix term = Matrix::identity(a.dim());
  for (int k = 1; k <= 30; ++k) {
    term = term * b;
    term *= 1.0 / k;
    sum += term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

inline Matrix random_unitary(Rng& rng, int n) {
  return taylor_exp(random_antihermitian(rng, n, 1.0));
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  double v = 0.0;
  for (int c = 0; c < a.dim(); ++c)
    for (int r = 0; r < a.dim(); ++r) v = std::max(v, std::abs(a(r, c) - b(r, c)));
  return v;
}

// Multiplication table recovered by matching exact products against the
// element list.
inline MultiplicationTable table_from_exact(const std::vector<Matrix>& mats) {
  const int n = static_cast<int>(mats.size());
  std::vector<int> entries(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Matrix prod = mats[static_cast<std::size_t>(i)] * mats[static_cast<std::size_t>(j)];
      int best = -1;
      double best_d = 1e9;
      for (int k = 0; k < n; ++k) {
        const double d = groupfix::frobenius_norm(prod - mats[static_cast<std::size_t>(k)]);
        if (d < best_d) {
          best_d = d;
          best = k;
        }
      }
      if (best_d > 1e-8) throw std::runtime_error("matrices do not form a group");
      entries[static_cast<std::size_t>(i) * n + j] = best;
    }
  return MultiplicationTable(n, std::move(entries));
}

inline Matrix rot2(double angle_rad) {
  Matrix m(2);
  m(0, 0) = std::cos(angle_rad);
  m(0, 1) = -std::sin(angle_rad);
  m(1, 0) = std::sin(angle_rad);
  m(1, 1) = std::cos(angle_rad);
  return m;
}

// Z2 as {I, -I} in dimension 2.
inline std::vector<Matrix> z2_rep() {
  Matrix minus = Matrix::identity(2);
  minus *= -1.0;
  return {Matrix::identity(2), minus};
}

// Z4 as the 2D rotations by k*90 degrees.
inline std::vector<Matrix> z4_rep() {
  std::vector<Matrix> v;
  for (int k = 0; k < 4; ++k) v.push_back(rot2(k * M_PI / 2.0));
  return v;
}

// S3 as its 2D irreducible representation: rotations by 0/120/240 degrees
// plus three reflections.
inline std::vector<Matrix> s3_rep() {
  std::vector<Matrix> v;
  for (int k = 0; k < 3; ++k) v.push_back(rot2(k * 2.0 * M_PI / 3.0));
  Matrix mirror(2);
  mirror(0, 0) = 1.0;
  mirror(1, 1) = -1.0;
  for (int k = 0; k < 3; ++k) v.push_back(v[static_cast<std::size_t>(k)] * mirror);
  return v;
}

inline ApproxGroup exact_group(const std::vector<Matrix>& mats) {
  return ApproxGroup(table_from_exact(mats), mats);
}

// Entrywise complex noise of amplitude sigma on every element.
inline ApproxGroup perturbed(const ApproxGroup& g, double sigma, Rng& rng) {
  ApproxGroup out = g;
  for (Matrix& m : out.elements) m += random_matrix(rng, m.dim(), sigma);
  return out;
}

}  // namespace tu

#endif
