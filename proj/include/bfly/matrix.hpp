#pragma once

// Small dense row-major matrices. Enough for GEPP experiments and butterfly
// construction; not a general linear algebra library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "bfly/permutation.hpp"

namespace bfly {

template <class T>
class BasicMatrix {
 public:
  using value_type = T;

  BasicMatrix() = default;
  BasicMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T{}) {}

  static BasicMatrix identity(std::size_t n) {
    BasicMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  T* row(std::size_t i) { return a_.data() + i * cols_; }
  const T* row(std::size_t i) const { return a_.data() + i * cols_; }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap_ranges(row(i), row(i) + cols_, row(j));
  }

  friend bool operator==(const BasicMatrix&, const BasicMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using DenseMatrix = BasicMatrix<double>;
using ComplexMatrix = BasicMatrix<std::complex<double>>;

template <class T>
BasicMatrix<T> operator*(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  BasicMatrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      if (aik == T{}) continue;
      const T* bk = b.row(k);
      T* ci = c.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  return c;
}

template <class T>
BasicMatrix<T> operator-(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
  BasicMatrix<T> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

template <class T>
BasicMatrix<T> scaled(const BasicMatrix<T>& a, T s) {
  BasicMatrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= s;
  return c;
}

template <class T>
BasicMatrix<T> transpose(const BasicMatrix<T>& a) {
  BasicMatrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

template <class T>
BasicMatrix<T> kron(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
  BasicMatrix<T> c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) c(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return c;
}

template <class T>
BasicMatrix<T> dsum(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
  BasicMatrix<T> c(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
  return c;
}

// Rows [r0, r0+nr) and columns [c0, c0+nc).
template <class T>
BasicMatrix<T> block(const BasicMatrix<T>& a, std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) {
  BasicMatrix<T> b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = a(r0 + i, c0 + j);
  return b;
}

template <class T>
void set_block(BasicMatrix<T>& a, std::size_t r0, std::size_t c0, const BasicMatrix<T>& b) {
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) a(r0 + i, c0 + j) = b(i, j);
}

template <class T>
double max_abs(const BasicMatrix<T>& a) {
  double m = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, static_cast<double>(std::abs(a(i, j))));
  return m;
}

template <class T>
double max_abs_diff(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("max_abs_diff: shape mismatch");
  double m = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, static_cast<double>(std::abs(a(i, j) - b(i, j))));
  return m;
}

// P_sigma e_k = e_{sigma(k)}, i.e. entry (sigma(k), k) is 1.
template <class T = double>
BasicMatrix<T> permutation_matrix(const Permutation& p) {
  BasicMatrix<T> m(p.size(), p.size());
  for (std::size_t k = 0; k < p.size(); ++k) m(p[k], k) = T{1};
  return m;
}

// Inverse of permutation_matrix; throws if `a` is not a 0/1 permutation matrix.
inline Permutation permutation_from_matrix(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("not square");
  std::vector<std::size_t> m(a.cols(), a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (a(i, j) == 1.0) {
        if (m[j] != a.rows()) throw std::invalid_argument("column with two ones");
        m[j] = i;
      } else if (a(i, j) != 0.0) {
        throw std::invalid_argument("entry not 0/1");
      }
    }
  return Permutation(std::move(m));
}

// P_sigma A: row k of A moves to row sigma(k).
template <class T>
BasicMatrix<T> permute_rows(const Permutation& p, const BasicMatrix<T>& a) {
  BasicMatrix<T> r(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) std::copy(a.row(k), a.row(k) + a.cols(), r.row(p[k]));
  return r;
}

inline void write_csv(std::ostream& os, const DenseMatrix& a) {
  char buf[32];
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", a(i, j));
      if (j) os << ',';
      os << buf;
    }
    os << '\n';
  }
}

}  // namespace bfly
