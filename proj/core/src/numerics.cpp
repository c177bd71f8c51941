#include "doflab/numerics.hpp"

#include <Eigen/Dense>

#include <cctype>
#include <cstddef>

namespace doflab {

Rat rat_from_string(const std::string& text) {
  if (text.empty()) throw InvalidInput("rational: empty string");
  // Plain decimals ("0.25") get converted to num/10^k before parsing.
  auto dot = text.find('.');
  std::string canonical = text;
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    if (frac_len == 0) throw InvalidInput("rational: trailing dot");
    std::string den = "1";
    den.append(frac_len, '0');
    canonical = digits + "/" + den;
  }
  try {
    Rat q(canonical, 10);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw InvalidInput("rational: cannot parse '" + text + "'");
  }
}

std::string to_string(const QComplex& v) {
  if (sgn(v.im) == 0) return v.re.get_str();
  Rat mag = abs(v.im);
  return v.re.get_str() + (sgn(v.im) < 0 ? "-" : "+") + mag.get_str() + "i";
}

std::size_t rank(const Mat<QComplex>& m) {
  if (m.empty()) throw InvalidInput("rank: empty matrix");
  Mat<QComplex> a = m;
  const std::size_t nr = a.rows(), nc = a.cols();
  QComplex prev = ScalarOps<QComplex>::one();
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t piv = nr;
    for (std::size_t i = r; i < nr; ++i) {
      if (!a.at(i, c).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv == nr) continue;
    a.swap_rows(r, piv);
    // One-step fraction-free update; dividing by the previous pivot keeps
    // entries at minor size (Bareiss).
    for (std::size_t i = r + 1; i < nr; ++i) {
      for (std::size_t j = c + 1; j < nc; ++j)
        a.at(i, j) = (a.at(r, c) * a.at(i, j) - a.at(i, c) * a.at(r, j)) / prev;
      a.at(i, c) = QComplex{};
    }
    prev = a.at(r, c);
    ++r;
  }
  return r;
}

namespace {

Eigen::MatrixXcd to_eigen(const Mat<CDouble>& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m.at(i, j);
  return e;
}

}  // namespace

std::size_t rank(const Mat<CDouble>& m, double tol_rel) {
  if (m.empty()) throw InvalidInput("rank: empty matrix");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol_rel * sv(0)) ++r;
  return r;
}

std::optional<Mat<QComplex>> solve_linear(const Mat<QComplex>& a_in,
                                          const Mat<QComplex>& b_in) {
  if (a_in.rows() != b_in.rows())
    throw DimensionMismatch("solve_linear: row count mismatch");
  Mat<QComplex> a = a_in;
  Mat<QComplex> b = b_in;
  const std::size_t nr = a.rows(), nc = a.cols(), k = b.cols();
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t piv = nr;
    for (std::size_t i = r; i < nr; ++i) {
      if (!a.at(i, c).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv == nr) continue;
    a.swap_rows(r, piv);
    b.swap_rows(r, piv);
    QComplex p = a.at(r, c);
    for (std::size_t j = c; j < nc; ++j) a.at(r, j) = a.at(r, j) / p;
    for (std::size_t j = 0; j < k; ++j) b.at(r, j) = b.at(r, j) / p;
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == r || a.at(i, c).is_zero()) continue;
      QComplex f = a.at(i, c);
      for (std::size_t j = c; j < nc; ++j)
        a.at(i, j) = a.at(i, j) - f * a.at(r, j);
      for (std::size_t j = 0; j < k; ++j)
        b.at(i, j) = b.at(i, j) - f * b.at(r, j);
    }
    pivots.emplace_back(r, c);
    ++r;
  }
  // Any leftover row with a nonzero right-hand side is an inconsistency.
  for (std::size_t i = r; i < nr; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (!b.at(i, j).is_zero()) return std::nullopt;
  Mat<QComplex> x(nc, k);
  for (auto [row, col] : pivots)
    for (std::size_t j = 0; j < k; ++j) x.at(col, j) = b.at(row, j);
  return x;
}

std::optional<Mat<QComplex>> solve_zero_forcer(
    const Mat<QComplex>& g, const std::vector<std::size_t>& desired) {
  if (g.empty()) throw InvalidInput("solve_zero_forcer: empty matrix");
  if (desired.empty()) throw InvalidInput("solve_zero_forcer: no targets");
  // W·G = E  <=>  G^T·W^T = E^T with E the desired-column selector.
  Mat<QComplex> at = g.transpose();  // S×n
  Mat<QComplex> bt(g.cols(), desired.size());
  for (std::size_t j = 0; j < desired.size(); ++j) {
    if (desired[j] >= g.cols())
      throw InvalidInput("solve_zero_forcer: column out of range");
    bt.at(desired[j], j) = ScalarOps<QComplex>::one();
  }
  auto xt = solve_linear(at, bt);
  if (!xt) return std::nullopt;
  return xt->transpose();
}

namespace {

std::size_t rank_above(const Eigen::MatrixXcd& m, double floor) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > floor) ++r;
  return r;
}

}  // namespace

std::optional<Mat<CDouble>> solve_zero_forcer(
    const Mat<CDouble>& g, const std::vector<std::size_t>& desired) {
  if (g.empty()) throw InvalidInput("solve_zero_forcer: empty matrix");
  if (desired.empty()) throw InvalidInput("solve_zero_forcer: no targets");
  std::vector<std::size_t> sorted = desired;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t d : sorted)
    if (d >= g.cols())
      throw InvalidInput("solve_zero_forcer: column out of range");
  // Both ranks in the existence criterion must be measured against one
  // scale, the largest singular value of the full G: an interference block
  // that is pure roundoff would otherwise look full-rank relative to itself.
  Eigen::MatrixXcd ge = to_eigen(g);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ge);
  if (svd.singularValues().size() == 0 || svd.singularValues()(0) <= 0.0)
    return std::nullopt;
  double floor = kFloatRankTol * svd.singularValues()(0);
  std::size_t r_all = rank_above(ge, floor);
  std::size_t r_intf =
      sorted.size() == g.cols()
          ? 0
          : rank_above(to_eigen(g.without_cols(sorted)), floor);
  if (r_all != r_intf + desired.size()) return std::nullopt;
  Eigen::MatrixXcd at = ge.transpose();
  Eigen::MatrixXcd bt = Eigen::MatrixXcd::Zero(g.cols(), desired.size());
  for (std::size_t j = 0; j < desired.size(); ++j) bt(desired[j], j) = 1.0;
  Eigen::MatrixXcd xt =
      at.completeOrthogonalDecomposition().solve(bt);  // minimum-norm
  // Belt check: the solve must actually satisfy the zero-forcing relations.
  if ((at * xt - bt).cwiseAbs().maxCoeff() > 1e-6) return std::nullopt;
  Mat<CDouble> w(desired.size(), g.rows());
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j) w.at(i, j) = xt(j, i);
  return w;
}

}  // namespace doflab
