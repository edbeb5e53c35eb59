#pragma once

// Sections of the line bundles L_N over quantum projective space, organised
// in blocks V_n with n = (n1, 0, ..., 0, n1 + N) (or (n1 - N, 0, ..., 0, n1)
// for N < 0). A section in block n is a matrix coefficient whose right index
// runs over the constrained tableaux below; the left index is free.

#include "qcp/gtrep.hpp"
#include "qcp/linalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qcp {

inline HighestWeight block_weight(int ell, int N, int n1) {
  if (ell < 1 || n1 < 0) throw std::invalid_argument("block_weight: need ell >= 1 and n1 >= 0");
  std::vector<int> n(static_cast<std::size_t>(ell), 0);
  if (ell == 1) {
    n[0] = 2 * n1 + std::abs(N);
  } else if (N >= 0) {
    n.front() = n1;
    n.back() = n1 + N;
  } else {
    n.front() = n1 - N;
    n.back() = n1;
  }
  return HighestWeight(std::move(n));
}

struct LineBundleBlock {
  int ell = 0;
  int N = 0;
  int n1 = 0;
  HighestWeight weight;
  std::vector<GTTableau> section_basis;
};

/// Basis vectors of `mod` fixed by K_i and killed by E_i, F_i for i < ell,
/// with K_1 K_2^2 ... K_ell^ell acting by q^{N ell / 2}. The GT basis is adapted
/// to su(ell) inside su(ell+1), so the joint kernel is spanned by basis vectors
/// and the test can be made one vector at a time.
inline std::vector<std::size_t> ln_conditions_indices(const IrrepModule& mod, int N) {
  const int ell = mod.ell();
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < mod.dim(); ++c) {
    bool ok = true;
    long twisted = 0;
    for (int i = 1; i <= ell; ++i) {
      twisted += static_cast<long>(i) * mod.exponent(i, c);
      if (i < ell && (mod.exponent(i, c) != 0 || !mod.E(i).column(c).empty() || !mod.F(i).column(c).empty())) {
        ok = false;
        break;
      }
    }
    if (ok && twisted == static_cast<long>(N) * ell) out.push_back(c);
  }
  return out;
}

inline std::vector<GTTableau> ln_conditions_filter(int ell, int N, const HighestWeight& w,
                                                   const RationalQ& q = RationalQ{1, 2},
                                                   unsigned digits = kMinPrecision,
                                                   std::size_t dim_cap = kDefaultDimCap) {
  if (w.ell() != ell) throw std::invalid_argument("ln_conditions_filter: weight rank does not match ell");
  auto mod = build_irrep(w, q, digits, dim_cap);
  std::vector<GTTableau> out;
  for (auto c : ln_conditions_indices(mod, N)) out.push_back(mod.basis()[c]);
  return out;
}

/// Tableaux of weight w with all rows below the top equal to a constant m and
/// top row (x, m, ..., m, 2m - x - N).
inline std::vector<GTTableau> ln_shape_tableaux(int ell, int N, const HighestWeight& w) {
  const auto top = top_row(w);
  const int rank = ell + 1;
  const int x = top.front();
  int m = 0;
  if (ell == 1) {
    if ((top[0] + top[1] + N) % 2 != 0) return {};
    m = (top[0] + top[1] + N) / 2;
  } else {
    m = top[1];
    for (int i = 2; i < rank; ++i)
      if (top[i - 1] != m) return {};
  }
  if (top.back() != 2 * m - x - N) return {};
  GTTableau t(rank, std::vector<int>(static_cast<std::size_t>(rank * (rank + 1) / 2), m));
  for (int i = 1; i <= rank; ++i) t(i, rank) = top[i - 1];
  if (!t.is_valid()) return {};
  return {t};
}

inline LineBundleBlock line_bundle_block(int ell, int N, int n1) {
  LineBundleBlock b{ell, N, n1, block_weight(ell, N, n1), {}};
  b.section_basis = ln_shape_tableaux(ell, N, b.weight);
  return b;
}

/// Non-increasing sequences m >= x_1 >= ... >= x_ell >= m - N, counted one by one.
inline std::uint64_t ker_El_combinatorial(int ell, int N) {
  if (N < 0) return 0;
  // count[v] = sequences of the current length ending at value v (offset from m - N)
  std::vector<std::uint64_t> count(static_cast<std::size_t>(N) + 1, 1);
  for (int len = 2; len <= ell; ++len) {
    std::vector<std::uint64_t> next(count.size(), 0);
    for (std::size_t v = 0; v < count.size(); ++v)
      for (std::size_t u = v; u < count.size(); ++u) next[v] += count[u];
    count = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto c : count) total += c;
  return total;
}

struct KernelBlock {
  int n1 = 0;
  HighestWeight weight;
  std::size_t dim_irrep = 0;
  std::size_t constrained = 0;    // |C|, tableaux passing the L_N conditions
  std::size_t dim_constrained = 0;  // dim_irrep * |C|
  std::size_t dim_kernel = 0;
  bool ill_conditioned = false;
};

/// E_ell acts on the constrained index only, so on the block it is I (x) M with
/// M = E_ell restricted to the constrained columns; its kernel has dimension
/// dim V_n * nullity(M).
inline std::vector<KernelBlock> ker_El_numeric(int ell, int N, int n1_max, const RationalQ& q,
                                               unsigned digits, std::size_t dim_cap = kDefaultDimCap) {
  if (n1_max < 0) throw std::invalid_argument("ker_El_numeric: n1_max must be non-negative");
  WorkingPrecision guard(digits);
  const QScalar threshold = pow(QScalar(10), -static_cast<int>(digits / 2));
  std::vector<KernelBlock> out;
  for (int n1 = 0; n1 <= n1_max; ++n1) {
    KernelBlock b;
    b.n1 = n1;
    b.weight = block_weight(ell, N, n1);
    auto mod = build_irrep(b.weight, q, digits, dim_cap);
    const auto cols = ln_conditions_indices(mod, N);
    b.dim_irrep = mod.dim();
    b.constrained = cols.size();
    b.dim_constrained = mod.dim() * cols.size();
    const auto rank = numeric_rank(gather_columns(mod.E(ell), cols), threshold);
    b.dim_kernel = mod.dim() * (cols.size() - rank.rank);
    b.ill_conditioned = rank.ill_conditioned;
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace qcp
