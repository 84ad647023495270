#pragma once

#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace palrich {

/// Dense exact matrix over T (mpz_class or mpq_class).
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, T fill = T(0)) : r_(rows), c_(cols), a_(rows * cols, fill) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }

  T& operator()(int i, int j) { return a_[i * c_ + j]; }
  const T& operator()(int i, int j) const { return a_[i * c_ + j]; }

  bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

  Matrix operator+(const Matrix& o) const {
    check_same(o);
    Matrix m(r_, c_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] + o.a_[k];
    return m;
  }
  Matrix operator-(const Matrix& o) const {
    check_same(o);
    Matrix m(r_, c_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] - o.a_[k];
    return m;
  }
  Matrix operator*(const Matrix& o) const {
    if (c_ != o.r_) throw std::invalid_argument("matrix dimension mismatch");
    Matrix m(r_, o.c_);
    for (int i = 0; i < r_; ++i)
      for (int k = 0; k < c_; ++k) {
        const T& x = (*this)(i, k);
        if (x == 0) continue;
        for (int j = 0; j < o.c_; ++j) m(i, j) += x * o(k, j);
      }
    return m;
  }
  Matrix operator*(const T& s) const {
    Matrix m(r_, c_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] * s;
    return m;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    if (static_cast<int>(v.size()) != c_) throw std::invalid_argument("vector size mismatch");
    std::vector<T> w(r_, T(0));
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) w[i] += (*this)(i, j) * v[j];
    return w;
  }

  Matrix pow(unsigned long e) const {
    if (r_ != c_) throw std::invalid_argument("pow needs a square matrix");
    Matrix result = identity(r_);
    Matrix base = *this;
    while (e) {
      if (e & 1) result = result * base;
      base = base * base;
      e >>= 1;
    }
    return result;
  }

 private:
  void check_same(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix dimension mismatch");
  }
  int r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using IntMatrix = Matrix<mpz_class>;
using RatMatrix = Matrix<mpq_class>;

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = mpq_class(m(i, j));
  return r;
}

/// Exact inverse by Gauss-Jordan elimination; throws if singular.
inline RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse needs a square matrix");
  const int n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (a(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw std::domain_error("singular matrix");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    mpq_class d = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      mpq_class f = a(i, col);
      for (int j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

}  // namespace palrich
