#pragma once

#include <optional>
#include <vector>

#include "doflab/errors.hpp"
#include "doflab/matrix.hpp"
#include "doflab/scalar.hpp"

namespace doflab {

/// Relative singular-value cutoff for floating-point rank decisions. Channel
/// entries are O(1) and schemes span at most 12 slots, so generic draws stay
/// far above this.
inline constexpr double kFloatRankTol = 1e-9;

/// Exact rank by fraction-free (Bareiss) elimination. No rounding ever
/// happens; the result is the true rank of the rational matrix.
std::size_t rank(const Mat<QComplex>& m);

/// Floating rank: number of singular values above tol_rel times the largest.
std::size_t rank(const Mat<CDouble>& m, double tol_rel = kFloatRankTol);

/// Solves A·X = B exactly, any shape. Returns std::nullopt when the system is
/// inconsistent. Free variables are set to zero.
std::optional<Mat<QComplex>> solve_linear(const Mat<QComplex>& a,
                                          const Mat<QComplex>& b);

/// Zero-forcing receiver: W with W·G_D = I and W·G_{~D} = 0, where D is the
/// set of desired columns of G. Exists iff rank(G) = rank(G_{~D}) + |D|;
/// returns std::nullopt otherwise (a legal outcome, not an error).
std::optional<Mat<QComplex>> solve_zero_forcer(
    const Mat<QComplex>& g, const std::vector<std::size_t>& desired);

/// Floating variant; feasibility decided by SVD ranks at kFloatRankTol, the
/// returned W is the minimum-norm solution.
std::optional<Mat<CDouble>> solve_zero_forcer(
    const Mat<CDouble>& g, const std::vector<std::size_t>& desired);

namespace detail {

/// Gauss-Jordan inverse with partial pivoting (pivot_weight picks the pivot:
/// max |.|^2 in floating mode, first nonzero in exact mode).
template <class S>
std::optional<Mat<S>> try_invert(Mat<S> a) {
  if (a.empty() || a.rows() != a.cols()) return std::nullopt;
  const std::size_t n = a.rows();
  Mat<S> inv = Mat<S>::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    double best = ScalarOps<S>::pivot_weight(a.at(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      double w = ScalarOps<S>::pivot_weight(a.at(i, c));
      if (w > best) {
        best = w;
        piv = i;
      }
    }
    if (best == 0.0) return std::nullopt;
    a.swap_rows(c, piv);
    inv.swap_rows(c, piv);
    S p = a.at(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a.at(c, j) = a.at(c, j) / p;
      inv.at(c, j) = inv.at(c, j) / p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || ScalarOps<S>::is_zero(a.at(i, c))) continue;
      S f = a.at(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a.at(i, j) = a.at(i, j) - f * a.at(c, j);
        inv.at(i, j) = inv.at(i, j) - f * inv.at(c, j);
      }
    }
  }
  return inv;
}

/// Selects a maximal linearly independent subset of the given rows, in order.
/// Independence decided by residual after eliminating against the rows kept
/// so far (exact in exact mode, relative 1e-9 threshold in floating mode).
template <class S>
std::vector<std::size_t> independent_rows(const std::vector<Vec<S>>& rows) {
  std::vector<std::size_t> kept;
  std::vector<Vec<S>> echelon;            // reduced representatives
  std::vector<std::size_t> pivot_col;     // pivot column of each
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Vec<S> v = rows[r];
    double orig = vec_abs_sq(v);
    for (std::size_t k = 0; k < echelon.size(); ++k) {
      const S& lead = v[pivot_col[k]];
      if (ScalarOps<S>::is_zero(lead)) continue;
      S f = lead / echelon[k][pivot_col[k]];
      for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = v[j] - f * echelon[k][j];
    }
    std::size_t pc = v.size();
    double best = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      double w = ScalarOps<S>::pivot_weight(v[j]);
      if (w > best) {
        best = w;
        pc = j;
      }
    }
    bool nonzero = ScalarOps<S>::mode == Mode::exact
                       ? best > 0.0
                       : best > kFloatRankTol * kFloatRankTol * orig;
    if (!nonzero) continue;
    kept.push_back(r);
    echelon.push_back(std::move(v));
    pivot_col.push_back(pc);
  }
  return kept;
}

}  // namespace detail

/// Hermitian idempotent projector onto the orthogonal complement of the span
/// of the supplied 1×m rows: P = I - H^H (H H^H)^{-1} H for a maximal
/// independent subset H. For every supplied row h, h·P = 0 (identically zero
/// in exact mode); rank(P) = m - rank(rows); P·P = P; P = P^H.
template <class S>
Mat<S> orth_projector(const std::vector<Vec<S>>& rows, std::size_t m) {
  if (rows.empty()) throw InvalidInput("orth_projector: no rows");
  for (const auto& r : rows)
    if (r.size() != m) throw DimensionMismatch("orth_projector: row length");
  auto kept = detail::independent_rows(rows);
  if (kept.size() >= m)
    throw DegenerateProjector("orth_projector: rows span the whole space");
  std::vector<Vec<S>> basis;
  basis.reserve(kept.size());
  for (std::size_t r : kept) basis.push_back(rows[r]);
  Mat<S> h = Mat<S>::from_rows(basis);
  Mat<S> hh = h.conj_transpose();
  auto gram_inv = detail::try_invert(h * hh);
  if (!gram_inv)
    throw DegenerateChannel("orth_projector: singular Gram matrix");
  return Mat<S>::identity(m) - hh * (*gram_inv * h);
}

/// Right pseudo-inverse H^H (H H^H)^{-1} of a full-row-rank k×m matrix;
/// H · pinv = I_k.
template <class S>
Mat<S> right_pseudo_inverse(const Mat<S>& h) {
  if (h.empty() || h.rows() > h.cols())
    throw DimensionMismatch("right_pseudo_inverse: need rows <= cols");
  auto gram_inv = detail::try_invert(h * h.conj_transpose());
  if (!gram_inv)
    throw DegenerateChannel("right_pseudo_inverse: rank-deficient matrix");
  return h.conj_transpose() * *gram_inv;
}

}  // namespace doflab
