#pragma once

// Column-compressed sparse matrices over an arbitrary scalar type.

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qcp {

template <typename T>
class SparseMatrix {
 public:
  struct Entry {
    std::size_t row;
    T value;
  };
  using Column = std::vector<Entry>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.columns_[i].push_back({i, T(1)});
    return m;
  }

  template <typename Range>
  static SparseMatrix diagonal(const Range& values) {
    SparseMatrix m(std::size(values), std::size(values));
    std::size_t i = 0;
    for (const auto& v : values) {
      if (v != 0) m.columns_[i].push_back({i, T(v)});
      ++i;
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const Column& column(std::size_t c) const { return columns_[c]; }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& col : columns_) n += col.size();
    return n;
  }

  /// Columns must be filled through this call; rows may arrive in any order.
  void set_column(std::size_t c, Column entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.row < b.row; });
    for (std::size_t i = 1; i < entries.size(); ++i) {
      if (entries[i].row == entries[i - 1].row) throw std::logic_error("duplicate sparse entry");
    }
    columns_[c] = std::move(entries);
  }

  T at(std::size_t r, std::size_t c) const {
    const auto& col = columns_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const Entry& e, std::size_t row) { return e.row < row; });
    return (it != col.end() && it->row == r) ? it->value : T(0);
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t c = 0; c < columns_.size(); ++c)
      for (const auto& e : columns_[c]) f(e.row, c, e.value);
  }

  SparseMatrix transpose() const {
    std::vector<Column> cols(rows_);
    for_each([&](std::size_t r, std::size_t c, const T& v) { cols[r].push_back({c, v}); });
    SparseMatrix t(cols_count(), rows_);
    t.columns_ = std::move(cols);
    return t;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("sparse product: shape mismatch");
    SparseMatrix out(a.rows(), b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
      std::map<std::size_t, T> acc;
      for (const auto& eb : b.columns_[c])
        for (const auto& ea : a.columns_[eb.row]) {
          auto [it, inserted] = acc.try_emplace(ea.row, T(ea.value * eb.value));
          if (!inserted) it->second += ea.value * eb.value;
        }
      Column col;
      col.reserve(acc.size());
      for (auto& [r, v] : acc) col.push_back({r, std::move(v)});
      out.columns_[c] = std::move(col);
    }
    return out;
  }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    return combine(a, b, T(1));
  }
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
    return combine(a, b, T(-1));
  }
  friend SparseMatrix operator*(const T& s, const SparseMatrix& m) {
    SparseMatrix out = m;
    for (auto& col : out.columns_)
      for (auto& e : col) e.value *= s;
    return out;
  }

  /// Largest |entry| together with its position (0,0 for an empty matrix).
  struct MaxEntry {
    T magnitude;
    std::size_t row = 0;
    std::size_t col = 0;
  };
  MaxEntry max_abs() const {
    MaxEntry best{T(0)};
    for_each([&](std::size_t r, std::size_t c, const T& v) {
      T mag = v < 0 ? T(-v) : v;
      if (mag > best.magnitude) best = {mag, r, c};
    });
    return best;
  }

 private:
  std::size_t cols_count() const { return columns_.size(); }

  static SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, const T& sign) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
      throw std::invalid_argument("sparse sum: shape mismatch");
    SparseMatrix out(a.rows(), a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) {
      const auto& ca = a.columns_[c];
      const auto& cb = b.columns_[c];
      Column col;
      std::size_t i = 0, j = 0;
      while (i < ca.size() || j < cb.size()) {
        if (j == cb.size() || (i < ca.size() && ca[i].row < cb[j].row)) {
          col.push_back(ca[i++]);
        } else if (i == ca.size() || cb[j].row < ca[i].row) {
          col.push_back({cb[j].row, T(sign * cb[j].value)});
          ++j;
        } else {
          col.push_back({ca[i].row, T(ca[i].value + sign * cb[j].value)});
          ++i;
          ++j;
        }
      }
      out.columns_[c] = std::move(col);
    }
    return out;
  }

  std::size_t rows_ = 0;
  std::vector<Column> columns_;
};

}  // namespace qcp
