#include "groupfix/matrix.hpp"

#include <cmath>

#include "groupfix/kernels.hpp"

namespace groupfix {

Matrix::Matrix(int n, std::initializer_list<cplx> row_major)
    : n_(check_dim(n)), a_(static_cast<std::size_t>(n) * n) {
  if (row_major.size() != a_.size())
    throw DimensionError("initializer size does not match matrix dimension");
  auto it = row_major.begin();
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) (*this)(r, c) = *it++;
}

Matrix Matrix::identity(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

void check_same_dim(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("matrix dimensions do not match");
}

Matrix& Matrix::operator+=(const Matrix& o) {
  check_same_dim(*this, o);
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  check_same_dim(*this, o);
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(cplx s) {
  for (auto& v : a_) v *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  check_same_dim(a, b);
  Matrix c(a.dim());
  kernels::matmul(c.data(), a.data(), b.data(), a.dim());
  return c;
}

Vector operator*(const Matrix& a, const Vector& x) {
  if (static_cast<int>(x.size()) != a.dim())
    throw DimensionError("matrix-vector dimensions do not match");
  Vector y(x.size(), cplx{});
  for (int k = 0; k < a.dim(); ++k)
    kernels::caxpy(y.data(), x[static_cast<std::size_t>(k)],
                   a.data() + static_cast<std::size_t>(k) * a.dim(), y.size());
  return y;
}

Matrix Matrix::adjoint() const {
  Matrix m(n_);
  for (int c = 0; c < n_; ++c)
    for (int r = 0; r < n_; ++r) m(c, r) = std::conj((*this)(r, c));
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(n_);
  for (int c = 0; c < n_; ++c)
    for (int r = 0; r < n_; ++r) m(c, r) = (*this)(r, c);
  return m;
}

Matrix Matrix::conjugate() const {
  Matrix m(n_);
  for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = std::conj(a_[k]);
  return m;
}

Matrix Matrix::hermitian_part() const {
  Matrix m = adjoint();
  m += *this;
  m *= 0.5;
  return m;
}

Matrix Matrix::antihermitian_part() const {
  Matrix m = *this;
  m -= adjoint();
  m *= 0.5;
  return m;
}

cplx Matrix::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

bool Matrix::all_finite() const {
  for (const cplx& v : a_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

double frobenius_norm_sq(const Matrix& m) {
  return kernels::norm_sq(m.data(), m.size());
}

double frobenius_norm(const Matrix& m) { return std::sqrt(frobenius_norm_sq(m)); }

double norm(const Vector& v) { return std::sqrt(kernels::norm_sq(v.data(), v.size())); }

Matrix commutator(const Matrix& a, const Matrix& b) {
  check_same_dim(a, b);
  Matrix c = a * b;
  c -= b * a;
  return c;
}

Vector vec(const Matrix& m) { return Vector(m.data(), m.data() + m.size()); }

Matrix unvec(const Vector& v, int n) {
  Matrix m(n);
  if (v.size() != m.size()) throw DimensionError("vector length is not n^2");
  std::copy(v.begin(), v.end(), m.data());
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const int n = a.dim(), m = b.dim();
  Matrix k(n * m);
  for (int ac = 0; ac < n; ++ac)
    for (int ar = 0; ar < n; ++ar) {
      const cplx s = a(ar, ac);
      if (s == cplx{}) continue;
      for (int bc = 0; bc < m; ++bc)
        for (int br = 0; br < m; ++br) k(ar * m + br, ac * m + bc) = s * b(br, bc);
    }
  return k;
}

}  // namespace groupfix
