#pragma once

// Dolbeault operator on CP^1_q sections, and the two scalar identities of the
// CP^2_q degree computation. Spins are stored doubled (l2 = 2l).

#include "qcp/linalg.hpp"
#include "qcp/qarith.hpp"
#include "qcp/sparse.hpp"

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

namespace qcp {

struct Cp1Section {
  int l2 = 0;  // 2l
  int m2 = 0;  // 2m
  friend bool operator==(const Cp1Section&, const Cp1Section&) = default;
};

/// Basis |l, N/2, m> of L_N with l <= l_max, ordered by l then m.
inline std::vector<Cp1Section> cp1_sections(int N, int l_max2) {
  std::vector<Cp1Section> out;
  for (int l2 = std::abs(N); l2 <= l_max2; l2 += 2)
    for (int m2 = -l2; m2 <= l2; m2 += 2) out.push_back({l2, m2});
  return out;
}

/// [l - N/2 + 1][l + N/2] as an exact rational.
inline Rational cp1_radicand(int N, int l2, QIntTable& qint) {
  return qint((l2 - N) / 2 + 1) * qint((l2 + N) / 2);
}

struct TruncatedComplex {
  int N = 0;
  int l_max2 = 0;
  std::vector<Cp1Section> source;  // L_N
  std::vector<Cp1Section> target;  // L_{N-2}
  SparseMatrix<QScalar> op;
};

inline TruncatedComplex cp1_dolbeault_matrix(int N, int l_max2, const RationalQ& q, unsigned digits) {
  if (l_max2 < std::abs(N)) throw std::invalid_argument("cp1_dolbeault_matrix: need l_max >= |N|/2");
  WorkingPrecision guard(digits);
  TruncatedComplex c{N, l_max2, cp1_sections(N, l_max2), cp1_sections(N - 2, l_max2), {}};
  c.op = SparseMatrix<QScalar>(c.target.size(), c.source.size());
  QIntTable qint(q);
  // both bases are sorted by (l2, m2), so a merge finds the matching target
  std::size_t t = 0;
  for (std::size_t s = 0; s < c.source.size(); ++s) {
    const auto& src = c.source[s];
    while (t < c.target.size() &&
           (c.target[t].l2 < src.l2 || (c.target[t].l2 == src.l2 && c.target[t].m2 < src.m2)))
      ++t;
    if (t == c.target.size() || !(c.target[t] == src)) continue;
    const Rational r = cp1_radicand(N, src.l2, qint);
    if (r == 0) continue;
    c.op.set_column(s, {{t, sqrt(to_scalar(r))}});
  }
  return c;
}

struct EulerReport {
  int N = 0;
  int l_max2 = 0;
  std::size_t dim_ker = 0;
  std::size_t dim_coker = 0;
  long chi = 0;
  bool ill_conditioned = false;
  std::optional<long> chi_previous;  // at l_max - 1, when l_max - 1 >= |N|/2
  bool stable = true;
};

namespace detail {

struct KerCoker {
  std::size_t ker = 0;
  std::size_t coker = 0;
  bool ill = false;
};

inline KerCoker cp1_ker_coker(const TruncatedComplex& c, unsigned digits) {
  const QScalar threshold = pow(QScalar(10), -static_cast<int>(digits / 2));
  KerCoker out;
  std::size_t s = 0, t = 0;
  while (s < c.source.size() || t < c.target.size()) {
    const int l2_src = s < c.source.size() ? c.source[s].l2 : c.l_max2 + 1;
    const int l2_tgt = t < c.target.size() ? c.target[t].l2 : c.l_max2 + 1;
    const int l2 = std::min(l2_src, l2_tgt);
    const std::size_t block = static_cast<std::size_t>(l2 + 1);
    if (l2_tgt != l2) {  // source block without target: all of it is kernel
      out.ker += block;
      s += block;
      continue;
    }
    if (l2_src != l2) {  // target block without source: structural cokernel
      out.coker += block;
      t += block;
      continue;
    }
    DenseMatrix<QScalar> d(block, block);
    for (std::size_t j = 0; j < block; ++j) d(j, j) = c.op.at(t + j, s + j);
    const auto rank = numeric_rank(d, threshold);
    out.ker += block - rank.rank;
    out.coker += block - rank.rank;
    out.ill = out.ill || rank.ill_conditioned;
    s += block;
    t += block;
  }
  return out;
}

}  // namespace detail

/// Kernel and cokernel of the truncated complex 0 -> L_N -> L_{N-2} -> 0. The
/// truncation at l_max is compared against l_max - 1 for stability.
inline EulerReport cp1_euler_characteristic(int N, int l_max2, const RationalQ& q, unsigned digits) {
  WorkingPrecision guard(digits);
  EulerReport r;
  r.N = N;
  r.l_max2 = l_max2;
  const auto kc = detail::cp1_ker_coker(cp1_dolbeault_matrix(N, l_max2, q, digits), digits);
  r.dim_ker = kc.ker;
  r.dim_coker = kc.coker;
  r.chi = static_cast<long>(kc.ker) - static_cast<long>(kc.coker);
  r.ill_conditioned = kc.ill;
  if (l_max2 - 2 >= std::abs(N)) {
    const auto prev = detail::cp1_ker_coker(cp1_dolbeault_matrix(N, l_max2 - 2, q, digits), digits);
    r.chi_previous = static_cast<long>(prev.ker) - static_cast<long>(prev.coker);
    r.stable = *r.chi_previous == r.chi;
  }
  return r;
}

struct Cp2IdentityRow {
  int n = 0;
  RationalQ q;
  QScalar residual_cancel;  // t^{1,1,0} component
  QScalar residual_total;   // t^0 component
  bool pass = true;
};

/// For x = sqrt([n][n+5]/([2][3])) and y = sqrt([n+2][n+3]/[2]) checks
/// -x - x + 2x = 0 and -y - y = -2y, where 2x and 2y are formed as the square
/// roots of four times the radicand.
inline std::vector<Cp2IdentityRow> cp2_coefficient_identity(const std::vector<int>& ns,
                                                            const std::vector<RationalQ>& qs, unsigned digits) {
  WorkingPrecision guard(digits);
  const QScalar tol = pow(QScalar(10), -static_cast<int>(digits / 2));
  std::vector<Cp2IdentityRow> out;
  for (const auto& q : qs) {
    QIntTable qint(q);
    for (int n : ns) {
      if (n < 0) throw std::invalid_argument("cp2_coefficient_identity: n must be non-negative");
      const Rational rx = qint(n) * qint(n + 5) / (qint(2) * qint(3));
      const Rational ry = qint(n + 2) * qint(n + 3) / qint(2);
      const QScalar x = sqrt(to_scalar(rx));
      const QScalar y = sqrt(to_scalar(ry));
      Cp2IdentityRow row{n, q, {}, {}, true};
      row.residual_cancel = abs(-x - x + sqrt(to_scalar(4 * rx)));
      row.residual_total = abs((-y - y) - (-sqrt(to_scalar(4 * ry))));
      row.pass = row.residual_cancel <= tol && row.residual_total <= tol;
      out.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace qcp
