#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "staraut/error.hpp"

namespace staraut {

using Rational = mpq_class;

/// Dense matrix over the rationals, row-major. All arithmetic is exact.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    RationalMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("RationalMatrix: ragged rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static RationalMatrix column(const std::vector<Rational>& v) {
    RationalMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Rational> col(std::size_t j) const {
    std::vector<Rational> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (sgn(x) != 0) return false;
    return true;
  }

  RationalMatrix transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  RationalMatrix operator*(const RationalMatrix& o) const {
    if (cols_ != o.rows_) throw DimensionMismatch("RationalMatrix: product shape mismatch");
    RationalMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rational& a = (*this)(i, k);
        if (sgn(a) == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }
  RationalMatrix operator+(const RationalMatrix& o) const {
    check_same_shape(o);
    RationalMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
  }
  RationalMatrix operator-(const RationalMatrix& o) const {
    check_same_shape(o);
    RationalMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
  }
  RationalMatrix scaled(const Rational& s) const {
    RationalMatrix r = *this;
    for (auto& x : r.data_) x *= s;
    return r;
  }

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  const std::vector<Rational>& data() const { return data_; }

 private:
  void check_same_shape(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("RationalMatrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form together with its pivot columns.
struct RowEchelon {
  RationalMatrix reduced;
  std::vector<std::size_t> pivots;
};

inline RowEchelon mat_rref(RationalMatrix m) {
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

inline std::size_t mat_rank(const RationalMatrix& a) { return mat_rref(a).pivots.size(); }

/// Basis of the right kernel {x : A x = 0}. One vector per free column, in
/// increasing free-column order; each has a 1 in its free column and zeros
/// in the other free columns.
inline std::vector<std::vector<Rational>> mat_kernel(const RationalMatrix& a) {
  RowEchelon e = mat_rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(a.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of A x = b (free variables set to zero), or nullopt.
inline std::optional<std::vector<Rational>> mat_solve(const RationalMatrix& a, const std::vector<Rational>& b) {
  if (b.size() != a.rows()) throw DimensionMismatch("mat_solve: right-hand side length mismatch");
  RationalMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  RowEchelon e = mat_rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  std::vector<Rational> x(a.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, a.cols());
  return x;
}

inline bool mat_is_iso(const RationalMatrix& a) { return a.rows() == a.cols() && mat_rank(a) == a.rows(); }

inline std::optional<RationalMatrix> mat_inverse(const RationalMatrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  std::size_t n = a.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  RowEchelon e = mat_rref(std::move(aug));
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

/// Kronecker product; row index (i, k) -> i * B.rows() + k.
inline RationalMatrix mat_kron(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return r;
}

/// Block-diagonal direct sum.
inline RationalMatrix mat_dsum(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix r(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

inline std::string rational_to_string(const Rational& q) { return q.get_str(); }

inline Rational rational_from_string(const std::string& s) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw std::invalid_argument("not a rational: '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace staraut
