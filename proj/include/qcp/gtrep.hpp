#pragma once

// Gelfand-Tsetlin bases of the irreducible U_q(su(l+1)) modules and the
// sparse matrices of K_k, E_k, F_k acting on them.
//
// Conventions:
//  * a tableau is stored row by row, top row (row l+1) first; entry m(i,j)
//    sits in row j at position i, 1 <= i <= j <= l+1;
//  * the top row is normalised so that m(l+1,l+1) = 0;
//  * bases are ordered lexicographically on the flattened entries;
//  * K_k acts diagonally by q^{a_k/2}, E_k raises entries of row k, and F_k is
//    the transpose of E_k (real orthonormal *-representation).

#include "qcp/qarith.hpp"
#include "qcp/scalar.hpp"
#include "qcp/sparse.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcp {

struct HighestWeight {
  std::vector<int> n;

  HighestWeight() = default;
  explicit HighestWeight(std::vector<int> labels) : n(std::move(labels)) {
    if (n.empty()) throw std::invalid_argument("highest weight needs at least one label");
    for (int v : n)
      if (v < 0) throw std::invalid_argument("highest weight labels must be non-negative");
  }

  int ell() const { return static_cast<int>(n.size()); }

  /// "1,0,2"
  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < n.size(); ++i) s += (i ? "," : "") + std::to_string(n[i]);
    return s;
  }

  friend bool operator==(const HighestWeight&, const HighestWeight&) = default;
};

class GTTableau {
 public:
  GTTableau() = default;
  /// `rank` is l+1, the length of the top row.
  GTTableau(int rank, std::vector<int> entries) : rank_(rank), entries_(std::move(entries)) {
    if (entries_.size() != static_cast<std::size_t>(rank * (rank + 1) / 2))
      throw std::invalid_argument("GT tableau: wrong number of entries");
  }

  int rank() const { return rank_; }
  const std::vector<int>& entries() const { return entries_; }

  int operator()(int i, int j) const { return entries_[offset(i, j)]; }
  int& operator()(int i, int j) { return entries_[offset(i, j)]; }

  /// l_{i,j} = m_{i,j} - i
  int shifted(int i, int j) const { return (*this)(i, j) - i; }

  int row_sum(int j) const {
    int s = 0;
    for (int i = 1; i <= j; ++i) s += (*this)(i, j);
    return s;
  }

  bool is_valid() const {
    for (int j = 1; j < rank_; ++j)
      for (int i = 1; i <= j; ++i)
        if ((*this)(i, j + 1) < (*this)(i, j) || (*this)(i, j) < (*this)(i + 1, j + 1)) return false;
    return true;
  }

  HighestWeight weight() const {
    std::vector<int> n(rank_ - 1);
    for (int i = 1; i < rank_; ++i) n[i - 1] = (*this)(i, rank_) - (*this)(i + 1, rank_);
    return HighestWeight(std::move(n));
  }

  /// Rows separated by '|', top row first: "2 1 0|2 0|1".
  std::string str() const {
    std::string s;
    for (int j = rank_; j >= 1; --j) {
      for (int i = 1; i <= j; ++i) s += std::to_string((*this)(i, j)) + (i < j ? " " : "");
      if (j > 1) s += "|";
    }
    return s;
  }

  friend auto operator<=>(const GTTableau&, const GTTableau&) = default;
  friend bool operator==(const GTTableau&, const GTTableau&) = default;

 private:
  std::size_t offset(int i, int j) const {
    // rows rank, rank-1, ..., j+1 precede row j
    const int before = rank_ * (rank_ + 1) / 2 - j * (j + 1) / 2;
    return static_cast<std::size_t>(before + i - 1);
  }

  int rank_ = 0;
  std::vector<int> entries_;
};

/// Top row (m_{1,l+1}, ..., m_{l+1,l+1}) with m_{l+1,l+1} = 0.
inline std::vector<int> top_row(const HighestWeight& w) {
  std::vector<int> top(w.n.size() + 1, 0);
  for (int i = w.ell() - 1; i >= 0; --i) top[i] = top[i + 1] + w.n[i];
  return top;
}

/// Weyl dimension formula for su(l+1): prod_{i<j} (m_i - m_j + j - i) / (j - i).
inline BigInt weyl_dimension(const HighestWeight& w) {
  const auto top = top_row(w);
  BigInt num = 1, den = 1;
  for (std::size_t i = 0; i < top.size(); ++i)
    for (std::size_t j = i + 1; j < top.size(); ++j) {
      num *= top[i] - top[j] + static_cast<int>(j - i);
      den *= static_cast<int>(j - i);
    }
  return num / den;
}

namespace detail {

inline void fill_rows(GTTableau& t, int i, int j, std::vector<GTTableau>& out) {
  if (j == 0) {
    out.push_back(t);
    return;
  }
  const int hi = t(i, j + 1);
  const int lo = t(i + 1, j + 1);
  for (int v = lo; v <= hi; ++v) {
    t(i, j) = v;
    if (i < j) fill_rows(t, i + 1, j, out);
    else fill_rows(t, 1, j - 1, out);
  }
}

}  // namespace detail

/// All interlacing tableaux of the given highest weight, in lexicographic order.
inline std::vector<GTTableau> enumerate_tableaux(const HighestWeight& w) {
  const int rank = w.ell() + 1;
  GTTableau t(rank, std::vector<int>(static_cast<std::size_t>(rank * (rank + 1) / 2), 0));
  const auto top = top_row(w);
  for (int i = 1; i <= rank; ++i) t(i, rank) = top[i - 1];
  std::vector<GTTableau> out;
  detail::fill_rows(t, 1, rank - 1, out);
  return out;
}

/// Basis vector |i> (1 <= i <= l+1) of the defining representation
/// n = (0,...,0,1): top row (1,...,1,0), all other entries 1 except the
/// diagonal entries m_{j,j} = 0 for j >= i.
inline GTTableau fundamental_tableau(int ell, int i) {
  if (i < 1 || i > ell + 1) throw std::out_of_range("fundamental_tableau: index out of range");
  const int rank = ell + 1;
  GTTableau t(rank, std::vector<int>(static_cast<std::size_t>(rank * (rank + 1) / 2), 1));
  t(rank, rank) = 0;
  for (int j = i; j <= ell; ++j) t(j, j) = 0;
  return t;
}

/// a_k = 2 sum_i m_{i,k} - sum_i m_{i,k-1} - sum_i m_{i,k+1}; K_k acts by q^{a_k/2}.
inline int weight_exponent(int k, const GTTableau& t) {
  if (k < 1 || k >= t.rank()) throw std::out_of_range("weight_exponent: k out of range");
  return 2 * t.row_sum(k) - (k > 1 ? t.row_sum(k - 1) : 0) - t.row_sum(k + 1);
}

/// t with m_{j,k} replaced by m_{j,k} + 1 (possibly not interlacing).
inline GTTableau raised(const GTTableau& t, int k, int j) {
  GTTableau r = t;
  r(j, k) += 1;
  return r;
}

/// Exact value at q of the squared coefficient (A^j_k)^2, i.e.
///   - prod_{i<=k+1} [l_{i,k+1} - l_{j,k}] prod_{i<=k-1} [l_{i,k-1} - l_{j,k} - 1]
///     / prod_{i != j} [l_{i,k} - l_{j,k}] [l_{i,k} - l_{j,k} - 1].
/// nullopt when the raised tableau breaks interlacing.
inline std::optional<Rational> raise_radicand(int k, int j, const GTTableau& t, QIntTable& qint) {
  if (k < 1 || k >= t.rank() || j < 1 || j > k) throw std::out_of_range("raise_radicand: bad (k, j)");
  if (!raised(t, k, j).is_valid()) return std::nullopt;
  const int lj = t.shifted(j, k);
  Rational num = -1;
  for (int i = 1; i <= k + 1; ++i) num *= qint(t.shifted(i, k + 1) - lj);
  for (int i = 1; i <= k - 1; ++i) num *= qint(t.shifted(i, k - 1) - lj - 1);
  Rational den = 1;
  for (int i = 1; i <= k; ++i) {
    if (i == j) continue;
    den *= qint(t.shifted(i, k) - lj) * qint(t.shifted(i, k) - lj - 1);
  }
  if (den == 0) throw std::logic_error("raise_radicand: vanishing denominator on " + t.str());
  return num / den;
}

/// A^j_k >= 0; zero when the raised tableau is not admissible.
inline QScalar raise_coeff(int k, int j, const GTTableau& t, QIntTable& qint) {
  auto r = raise_radicand(k, j, t, qint);
  if (!r || *r == 0) return QScalar(0);
  if (*r < 0) {
    throw std::logic_error("negative radicand for A^" + std::to_string(j) + "_" + std::to_string(k) +
                           " on tableau " + t.str());
  }
  return sqrt(to_scalar(*r));
}

class IrrepModule;
inline IrrepModule build_irrep(const HighestWeight& w, RationalQ q, unsigned digits, std::size_t dim_cap);

inline constexpr std::size_t kDefaultDimCap = 20000;

/// Thrown when a requested module exceeds the configured dimension cap.
class DimensionCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

class IrrepModule {
 public:
  const HighestWeight& weight() const { return weight_; }
  int ell() const { return weight_.ell(); }
  const RationalQ& q() const { return q_; }
  unsigned precision() const { return digits_; }
  const std::vector<GTTableau>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }

  std::optional<std::size_t> index_of(const GTTableau& t) const {
    auto it = std::lower_bound(basis_.begin(), basis_.end(), t);
    if (it == basis_.end() || *it != t) return std::nullopt;
    return static_cast<std::size_t>(it - basis_.begin());
  }

  /// a_k of basis vector `idx`.
  int exponent(int k, std::size_t idx) const { return exponents_[k - 1][idx]; }

  const SparseMatrix<QScalar>& K(int k) const { return K_[k - 1]; }
  const SparseMatrix<QScalar>& Kinv(int k) const { return Kinv_[k - 1]; }
  const SparseMatrix<QScalar>& E(int k) const { return E_[k - 1]; }
  const SparseMatrix<QScalar>& F(int k) const { return F_[k - 1]; }

  const SparseMatrix<QScalar>& op(char kind, int k) const {
    switch (kind) {
      case 'K': return K(k);
      case 'E': return E(k);
      case 'F': return F(k);
      default: throw std::invalid_argument(std::string("unknown operator kind ") + kind);
    }
  }

 private:
  friend IrrepModule build_irrep(const HighestWeight&, RationalQ, unsigned, std::size_t);
  IrrepModule() = default;

  HighestWeight weight_;
  RationalQ q_;
  unsigned digits_ = kDefaultPrecision;
  std::vector<GTTableau> basis_;
  std::vector<std::vector<int>> exponents_;
  std::vector<SparseMatrix<QScalar>> K_, Kinv_, E_, F_;
};

/// Builds all generator matrices of V_n at q with `digits` working precision.
inline IrrepModule build_irrep(const HighestWeight& w, RationalQ q, unsigned digits,
                               std::size_t dim_cap = kDefaultDimCap) {
  const BigInt expected = weyl_dimension(w);
  if (expected > BigInt(dim_cap)) {
    throw DimensionCapExceeded("irrep " + w.str() + " has dimension " + expected.str() +
                               " above the cap " + std::to_string(dim_cap));
  }
  WorkingPrecision guard(digits);
  IrrepModule mod;
  mod.weight_ = w;
  mod.q_ = q;
  mod.digits_ = digits;
  mod.basis_ = enumerate_tableaux(w);
  const int ell = w.ell();
  const std::size_t dim = mod.basis_.size();

  QIntTable qint(q);
  const QScalar sqrt_q = sqrt(q.value());
  const QScalar inv_sqrt_q = 1 / sqrt_q;

  mod.exponents_.assign(ell, std::vector<int>(dim));
  for (int k = 1; k <= ell; ++k) {
    std::vector<QScalar> kdiag(dim), kinv(dim);
    for (std::size_t c = 0; c < dim; ++c) {
      const int a = weight_exponent(k, mod.basis_[c]);
      mod.exponents_[k - 1][c] = a;
      kdiag[c] = pow(sqrt_q, a);
      kinv[c] = pow(inv_sqrt_q, a);
    }
    mod.K_.push_back(SparseMatrix<QScalar>::diagonal(kdiag));
    mod.Kinv_.push_back(SparseMatrix<QScalar>::diagonal(kinv));

    SparseMatrix<QScalar> e(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) {
      const GTTableau& t = mod.basis_[c];
      SparseMatrix<QScalar>::Column col;
      for (int j = 1; j <= k; ++j) {
        QScalar v = raise_coeff(k, j, t, qint);
        if (v == 0) continue;
        auto target = mod.index_of(raised(t, k, j));
        if (!target) throw std::logic_error("raised tableau missing from basis: " + t.str());
        col.push_back({*target, std::move(v)});
      }
      e.set_column(c, std::move(col));
    }
    mod.F_.push_back(e.transpose());
    mod.E_.push_back(std::move(e));
  }
  return mod;
}

struct RelationResidual {
  std::string relation;
  int i = 0;
  int j = 0;
  QScalar residual;
  std::size_t row = 0;
  std::size_t col = 0;
  bool pass = true;
};

/// Checks the defining relations of U_q(su(l+1)) (and their F-transposes)
/// on a built module; one record per relation instance.
inline std::vector<RelationResidual> verify_relations(const IrrepModule& mod, const QScalar& tol) {
  using M = SparseMatrix<QScalar>;
  WorkingPrecision guard(mod.precision());
  const int ell = mod.ell();
  const std::size_t dim = mod.dim();
  const QScalar q = mod.q().value();
  const QScalar q_inv = 1 / q;
  const QScalar sqrt_q = sqrt(q);
  const QScalar inv_sqrt_q = 1 / sqrt_q;
  const M id = M::identity(dim);
  std::vector<RelationResidual> out;

  auto record = [&](std::string name, int i, int j, const M& lhs, const M& rhs) {
    auto worst = (lhs - rhs).max_abs();
    out.push_back({std::move(name), i, j, worst.magnitude, worst.row, worst.col, worst.magnitude <= tol});
  };

  for (int i = 1; i <= ell; ++i) {
    record("K_i K_i^-1 = 1", i, i, mod.K(i) * mod.Kinv(i), id);
    for (int j = i + 1; j <= ell; ++j) record("K_i K_j = K_j K_i", i, j, mod.K(i) * mod.K(j), mod.K(j) * mod.K(i));
  }

  for (int i = 1; i <= ell; ++i) {
    for (int j = 1; j <= ell; ++j) {
      const M& E = mod.E(i);
      const M& F = mod.F(i);
      const M& Kj = mod.K(j);
      const int gap = std::abs(i - j);
      if (gap == 0) {
        record("E_i K_i = q^-1 K_i E_i", i, j, E * Kj, q_inv * (Kj * E));
        record("F_i K_i = q K_i F_i", i, j, F * Kj, q * (Kj * F));
      } else if (gap == 1) {
        record("E_i K_j = q^1/2 K_j E_i", i, j, E * Kj, sqrt_q * (Kj * E));
        record("F_i K_j = q^-1/2 K_j F_i", i, j, F * Kj, inv_sqrt_q * (Kj * F));
      } else {
        record("E_i K_j = K_j E_i", i, j, E * Kj, Kj * E);
        record("F_i K_j = K_j F_i", i, j, F * Kj, Kj * F);
      }
    }
  }

  const QScalar inv_qdiff = 1 / (q - q_inv);
  for (int i = 1; i <= ell; ++i) {
    for (int j = 1; j <= ell; ++j) {
      M lhs = mod.E(i) * mod.F(j) - mod.F(j) * mod.E(i);
      M rhs(dim, dim);
      if (i == j) {
        const M k2 = mod.K(i) * mod.K(i);
        const M kinv2 = mod.Kinv(i) * mod.Kinv(i);
        rhs = inv_qdiff * (k2 - kinv2);
      }
      record("E_i F_j - F_j E_i = delta_ij (K_i^2 - K_i^-2)/(q - q^-1)", i, j, lhs, rhs);
    }
  }

  const QScalar qsum = q + q_inv;
  for (int i = 1; i <= ell; ++i) {
    for (int j = 1; j <= ell; ++j) {
      const int gap = std::abs(i - j);
      if (gap > 1 && i < j) {
        record("E_i E_j = E_j E_i", i, j, mod.E(i) * mod.E(j), mod.E(j) * mod.E(i));
        record("F_i F_j = F_j F_i", i, j, mod.F(i) * mod.F(j), mod.F(j) * mod.F(i));
      }
      if (gap == 1) {
        const M& Ei = mod.E(i);
        const M& Ej = mod.E(j);
        M serre = Ei * Ei * Ej - qsum * (Ei * Ej * Ei) + Ej * Ei * Ei;
        record("E_i^2 E_j - [2] E_i E_j E_i + E_j E_i^2 = 0", i, j, serre, M(dim, dim));
        const M& Fi = mod.F(i);
        const M& Fj = mod.F(j);
        M serre_f = Fi * Fi * Fj - qsum * (Fi * Fj * Fi) + Fj * Fi * Fi;
        record("F_i^2 F_j - [2] F_i F_j F_i + F_j F_i^2 = 0", i, j, serre_f, M(dim, dim));
      }
    }
  }
  return out;
}

/// Coordinate-list export of one generator matrix, 0-based indices into the
/// lexicographic basis; values carry the module's full working precision.
inline std::string export_matrix(const IrrepModule& mod, char kind, int k) {
  std::ostringstream os;
  os << "# irrep ℓ=" << mod.ell() << " n=" << mod.weight().str() << " op=" << kind << k
     << " q=" << mod.q().str() << " precision=" << mod.precision() << "\n";
  mod.op(kind, k).for_each([&](std::size_t r, std::size_t c, const QScalar& v) {
    os << r << " " << c << " " << format_scalar(v, mod.precision()) << "\n";
  });
  return os.str();
}

}  // namespace qcp
