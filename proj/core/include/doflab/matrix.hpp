#pragma once

#include <cassert>
#include <cstddef>
#include <utility>
#include <vector>

#include "doflab/errors.hpp"
#include "doflab/scalar.hpp"

namespace doflab {

template <class S>
using Vec = std::vector<S>;

/// Dense row-major matrix over one scalar mode. Value type, immutable in
/// practice once built; algorithms copy.
template <class S>
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols, ScalarOps<S>::zero()) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ScalarOps<S>::one();
    return m;
  }

  static Mat from_rows(const std::vector<Vec<S>>& rows) {
    if (rows.empty()) throw InvalidInput("Mat::from_rows: no rows");
    Mat m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_)
        throw DimensionMismatch("Mat::from_rows: ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  S& at(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return e_[r * cols_ + c];
  }
  const S& at(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return e_[r * cols_ + c];
  }

  Vec<S> row(std::size_t r) const {
    Vec<S> v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = at(r, j);
    return v;
  }
  Vec<S> col(std::size_t c) const {
    Vec<S> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, c);
    return v;
  }

  void set_row(std::size_t r, const Vec<S>& v) {
    assert(v.size() == cols_);
    for (std::size_t j = 0; j < cols_; ++j) at(r, j) = v[j];
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Mat conj_transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t.at(j, i) = ScalarOps<S>::conj(at(i, j));
    return t;
  }

  /// Copy without the listed columns. `drop` must be sorted ascending.
  Mat without_cols(const std::vector<std::size_t>& drop) const {
    Mat m(rows_, cols_ - drop.size());
    for (std::size_t i = 0; i < rows_; ++i) {
      std::size_t out = 0, d = 0;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (d < drop.size() && drop[d] == j) {
          ++d;
          continue;
        }
        m.at(i, out++) = at(i, j);
      }
    }
    return m;
  }

  Mat without_row(std::size_t r) const {
    Mat m(rows_ - 1, cols_);
    for (std::size_t i = 0, out = 0; i < rows_; ++i) {
      if (i == r) continue;
      for (std::size_t j = 0; j < cols_; ++j) m.at(out, j) = at(i, j);
      ++out;
    }
    return m;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("Mat multiply shape");
    Mat c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (ScalarOps<S>::is_zero(a.at(i, k))) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    return c;
  }

  friend Mat operator-(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw DimensionMismatch("Mat subtract shape");
    Mat c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) c.e_[i] = a.e_[i] - b.e_[i];
    return c;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> e_;
};

// Row-vector helpers. Channel rows h and symbol rows are plain Vec<S>.

template <class S>
S dot(const Vec<S>& a, const Vec<S>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
  S acc = ScalarOps<S>::zero();
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

template <class S>
Vec<S> vec_add(const Vec<S>& a, const Vec<S>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vec_add: length mismatch");
  Vec<S> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

template <class S>
Vec<S> vec_sub(const Vec<S>& a, const Vec<S>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vec_sub: length mismatch");
  Vec<S> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

template <class S>
Vec<S> vec_scaled(const Vec<S>& a, const S& s) {
  Vec<S> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * s;
  return c;
}

template <class S>
bool vec_is_zero(const Vec<S>& a) {
  for (const S& v : a)
    if (!ScalarOps<S>::is_zero(v)) return false;
  return true;
}

template <class S>
double vec_abs_sq(const Vec<S>& a) {
  double acc = 0.0;
  for (const S& v : a) acc += ScalarOps<S>::abs_sq(v);
  return acc;
}

/// Row-vector times matrix: (1×n)·(n×m) -> 1×m.
template <class S>
Vec<S> row_times(const Vec<S>& v, const Mat<S>& m) {
  if (v.size() != m.rows()) throw DimensionMismatch("row_times shape");
  Vec<S> out(m.cols(), ScalarOps<S>::zero());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (ScalarOps<S>::is_zero(v[i])) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m.at(i, j);
  }
  return out;
}

}  // namespace doflab
