#pragma once

// Dense linear algebra at the two scalar tiers: singular values / numeric
// rank over QScalar, and exact elimination over Rational.

#include "qcp/scalar.hpp"
#include "qcp/sparse.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qcp {

template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Singular values (descending) by one-sided Jacobi rotations on the columns.
inline std::vector<QScalar> singular_values(DenseMatrix<QScalar> a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const QScalar eps = boost::multiprecision::pow(QScalar(10), -static_cast<int>(QScalar::default_precision()));
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t qcol = p + 1; qcol < n; ++qcol) {
        QScalar alpha = 0, beta = 0, gamma = 0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += a(i, p) * a(i, p);
          beta += a(i, qcol) * a(i, qcol);
          gamma += a(i, p) * a(i, qcol);
        }
        if (gamma == 0 || abs(gamma) <= eps * sqrt(alpha * beta)) continue;
        rotated = true;
        QScalar zeta = (beta - alpha) / (2 * gamma);
        QScalar t = (zeta >= 0 ? 1 : -1) / (abs(zeta) + sqrt(1 + zeta * zeta));
        QScalar c = 1 / sqrt(1 + t * t);
        QScalar s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          QScalar x = a(i, p);
          QScalar y = a(i, qcol);
          a(i, p) = c * x - s * y;
          a(i, qcol) = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<QScalar> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    QScalar norm2 = 0;
    for (std::size_t i = 0; i < m; ++i) norm2 += a(i, j) * a(i, j);
    sv[j] = sqrt(norm2);
  }
  std::sort(sv.begin(), sv.end(), [](const QScalar& x, const QScalar& y) { return x > y; });
  return sv;
}

struct RankDecision {
  std::size_t rank = 0;
  /// Some singular value sits within a factor 10 of the threshold.
  bool ill_conditioned = false;
};

/// Rank with singular values counted when above `relative_threshold * sigma_max`.
inline RankDecision numeric_rank(const DenseMatrix<QScalar>& a, const QScalar& relative_threshold) {
  RankDecision out;
  if (a.rows() == 0 || a.cols() == 0) return out;
  // One-sided Jacobi works on columns, so orient the matrix tall.
  std::vector<QScalar> sv;
  if (a.cols() > a.rows()) {
    DenseMatrix<QScalar> t(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = a(r, c);
    sv = singular_values(std::move(t));
  } else {
    sv = singular_values(a);
  }
  if (sv.empty() || sv.front() == 0) return out;
  const QScalar cut = relative_threshold * sv.front();
  for (const auto& s : sv) {
    if (s > cut) ++out.rank;
    if (s > cut / 10 && s < cut * 10) out.ill_conditioned = true;
  }
  return out;
}

/// Dense copy of selected columns of a sparse matrix, keeping only rows that
/// carry an entry (zero rows do not change singular values).
inline DenseMatrix<QScalar> gather_columns(const SparseMatrix<QScalar>& m,
                                           const std::vector<std::size_t>& cols) {
  std::vector<std::size_t> rows;
  for (auto c : cols)
    for (const auto& e : m.column(c)) rows.push_back(e.row);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  DenseMatrix<QScalar> d(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& e : m.column(cols[j])) {
      auto r = static_cast<std::size_t>(std::lower_bound(rows.begin(), rows.end(), e.row) - rows.begin());
      d(r, j) = e.value;
    }
  return d;
}

/// Solves a x = b exactly. Returns nullopt if inconsistent; free variables are set to zero.
inline std::optional<std::vector<Rational>> solve_exact(DenseMatrix<Rational> a, std::vector<Rational> b) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) throw std::invalid_argument("solve_exact: rhs size mismatch");
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t piv = row;
    while (piv < m && a(piv, col) == 0) ++piv;
    if (piv == m) continue;
    if (piv != row) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(piv, c), a(row, c));
      std::swap(b[piv], b[row]);
    }
    const Rational inv = 1 / a(row, col);
    for (std::size_t c = col; c < n; ++c) a(row, c) *= inv;
    b[row] *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || a(r, col) == 0) continue;
      const Rational f = a(r, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(row, c);
      b[r] -= f * b[row];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r < m; ++r)
    if (b[r] != 0) return std::nullopt;
  std::vector<Rational> x(n, Rational(0));
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) x[pivot_cols[i]] = b[i];
  return x;
}

}  // namespace qcp
