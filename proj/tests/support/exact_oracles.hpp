// Independent exact oracles for cross-checking the elimination-based
// numerics. Deliberately naive: determinants by Laplace expansion, rank by
// brute-force minor enumeration. Keep matrices small.
#pragma once

#include <random>
#include <vector>

#include "doflab/matrix.hpp"
#include "doflab/scalar.hpp"

namespace doflab::testing {

inline QComplex det_laplace(const Mat<QComplex>& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m.at(0, 0);
  QComplex acc;
  QComplex sign = ScalarOps<QComplex>::one();
  for (std::size_t j = 0; j < n; ++j) {
    if (!m.at(0, j).is_zero()) {
      Mat<QComplex> minor(n - 1, n - 1);
      for (std::size_t r = 1; r < n; ++r) {
        std::size_t out = 0;
        for (std::size_t c = 0; c < n; ++c) {
          if (c == j) continue;
          minor.at(r - 1, out++) = m.at(r, c);
        }
      }
      acc += sign * m.at(0, j) * det_laplace(minor);
    }
    sign = QComplex{} - sign;
  }
  return acc;
}

namespace detail {

inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - (k - i)) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline bool has_nonzero_minor(const Mat<QComplex>& m, std::size_t r) {
  std::vector<std::size_t> rows(r), cols(r);
  for (std::size_t i = 0; i < r; ++i) rows[i] = i;
  do {
    for (std::size_t i = 0; i < r; ++i) cols[i] = i;
    do {
      Mat<QComplex> sub(r, r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
          sub.at(i, j) = m.at(rows[i], cols[j]);
      if (!det_laplace(sub).is_zero()) return true;
    } while (next_combination(cols, m.cols()));
  } while (next_combination(rows, m.rows()));
  return false;
}

}  // namespace detail

/// Rank as the largest r with some nonzero r-by-r minor.
inline std::size_t minor_rank(const Mat<QComplex>& m) {
  std::size_t cap = std::min(m.rows(), m.cols());
  for (std::size_t r = cap; r >= 1; --r)
    if (detail::has_nonzero_minor(m, r)) return r;
  return 0;
}

/// v in rowspace(m), decided entirely by the minor oracle.
inline bool in_rowspace_minor(const Mat<QComplex>& m, const Vec<QComplex>& v) {
  Mat<QComplex> aug(m.rows() + 1, m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
  for (std::size_t c = 0; c < m.cols(); ++c) aug.at(m.rows(), c) = v[c];
  return minor_rank(aug) == minor_rank(m);
}

inline QComplex random_qc(std::mt19937_64& rng, long span = 6) {
  auto draw = [&](long s) {
    long num = static_cast<long>(rng() % (2 * s + 1)) - s;
    return rat_of(num, 1 + rng() % 4);
  };
  return QComplex{draw(span), draw(span)};
}

inline Mat<QComplex> random_mat(std::mt19937_64& rng, std::size_t r,
                                std::size_t c, long span = 6) {
  Mat<QComplex> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = random_qc(rng, span);
  return m;
}

}  // namespace doflab::testing
