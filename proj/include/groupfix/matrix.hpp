#ifndef GROUPFIX_MATRIX_HPP
#define GROUPFIX_MATRIX_HPP

#include <complex>
#include <vector>

#include "groupfix/errors.hpp"

namespace groupfix {

using cplx = std::complex<double>;
using Vector = std::vector<cplx>;

// Dense square complex matrix, column-major storage. Column-major is a fixed
// global convention: vec() stacks columns and the supermatrix assembly in the
// rotation fit relies on it.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n) : n_(check_dim(n)), a_(static_cast<std::size_t>(n) * n) {}
  Matrix(int n, std::initializer_list<cplx> row_major);

  static Matrix identity(int n);

  int dim() const { return n_; }
  bool empty() const { return n_ == 0; }

  cplx& operator()(int r, int c) { return a_[static_cast<std::size_t>(c) * n_ + r]; }
  const cplx& operator()(int r, int c) const { return a_[static_cast<std::size_t>(c) * n_ + r]; }

  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }
  std::size_t size() const { return a_.size(); }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(cplx s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
  friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& x);

  Matrix adjoint() const;
  Matrix transpose() const;
  Matrix conjugate() const;

  // (M + M+)/2 and (M - M+)/2
  Matrix hermitian_part() const;
  Matrix antihermitian_part() const;

  cplx trace() const;

  bool all_finite() const;

 private:
  static int check_dim(int n) {
    if (n <= 0) throw DimensionError("matrix dimension must be positive");
    return n;
  }

  int n_ = 0;
  std::vector<cplx> a_;
};

void check_same_dim(const Matrix& a, const Matrix& b);

double frobenius_norm(const Matrix& m);
double frobenius_norm_sq(const Matrix& m);
double norm(const Vector& v);

// [A, B] = AB - BA
Matrix commutator(const Matrix& a, const Matrix& b);

// Column-major stacking; unvec is its inverse.
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, int n);

// Block matrix with (alpha, beta) block A(alpha,beta)*B; satisfies
// vec(B X A^T) = (A (x) B) vec(X).
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace groupfix

#endif
