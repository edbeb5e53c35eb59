#include "qcp/gtrep.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qcp;

namespace {

const RationalQ kHalf{1, 2};

QScalar tol(const char* s) { return QScalar(s); }

// Random valid tableau of weight w, built row by row from the interlacing bounds.
GTTableau random_tableau(const HighestWeight& w, std::mt19937& rng) {
  const int rank = w.ell() + 1;
  GTTableau t(rank, std::vector<int>(static_cast<std::size_t>(rank * (rank + 1) / 2), 0));
  const auto top = top_row(w);
  for (int i = 1; i <= rank; ++i) t(i, rank) = top[i - 1];
  for (int j = rank - 1; j >= 1; --j)
    for (int i = 1; i <= j; ++i) {
      std::uniform_int_distribution<int> d(t(i + 1, j + 1), t(i, j + 1));
      t(i, j) = d(rng);
    }
  return t;
}

}  // namespace

TEST(Enumerate, SmallCases) {
  EXPECT_EQ(enumerate_tableaux(HighestWeight({1})).size(), 2u);
  EXPECT_EQ(enumerate_tableaux(HighestWeight({0, 1})).size(), 3u);
  EXPECT_EQ(enumerate_tableaux(HighestWeight({1, 1})).size(), 8u);
  EXPECT_EQ(weyl_dimension(HighestWeight({1, 1})), 8);
}

TEST(Enumerate, SpinHalfBasis) {
  auto basis = enumerate_tableaux(HighestWeight({1}));
  ASSERT_EQ(basis.size(), 2u);
  EXPECT_EQ(basis[0].str(), "1 0|0");
  EXPECT_EQ(basis[1].str(), "1 0|1");
}

TEST(Enumerate, MatchesWeylDimensionAndIsOrdered) {
  const std::vector<std::vector<int>> weights = {
      {0}, {3}, {2, 0}, {2, 3}, {1, 0, 1}, {0, 2, 1}, {1, 1, 1}, {2, 0, 0, 1}, {1, 0, 1, 0}};
  for (const auto& n : weights) {
    const HighestWeight w(n);
    const auto basis = enumerate_tableaux(w);
    EXPECT_EQ(BigInt(basis.size()), weyl_dimension(w)) << w.str();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      EXPECT_TRUE(basis[i].is_valid());
      EXPECT_EQ(basis[i].weight(), w);
      EXPECT_EQ(basis[i](w.ell() + 1, w.ell() + 1), 0);
      if (i > 0) {
        EXPECT_LT(basis[i - 1], basis[i]);
      }
    }
  }
}

TEST(WeightExponent, Examples) {
  auto basis = enumerate_tableaux(HighestWeight({1}));
  EXPECT_EQ(weight_exponent(1, basis[1]), 1);  // m11 = 1
  EXPECT_EQ(weight_exponent(1, basis[0]), -1);
  for (const auto& t : enumerate_tableaux(HighestWeight({0, 0, 0})))
    for (int k = 1; k <= 3; ++k) EXPECT_EQ(weight_exponent(k, t), 0);
}

TEST(WeightExponent, DefiningRepresentation) {
  for (int ell = 1; ell <= 4; ++ell)
    for (int j = 1; j <= ell + 1; ++j) {
      const auto t = fundamental_tableau(ell, j);
      ASSERT_TRUE(t.is_valid());
      for (int r = 1; r <= ell; ++r) {
        EXPECT_EQ(weight_exponent(r, t), int(r + 1 == j) - int(r == j)) << ell << " " << j << " " << r;
      }
    }
}

TEST(RaiseCoeff, DefiningRepresentationIsOne) {
  WorkingPrecision guard(60);
  QIntTable qint(kHalf);
  for (int ell = 1; ell <= 5; ++ell)
    for (int r = 1; r <= ell; ++r) {
      EXPECT_EQ(raise_coeff(r, r, fundamental_tableau(ell, r), qint), QScalar(1));
      EXPECT_EQ(raised(fundamental_tableau(ell, r), r, r), fundamental_tableau(ell, r + 1));
    }
}

TEST(RaiseCoeff, BrokenInterlacingGivesZero) {
  WorkingPrecision guard(60);
  QIntTable qint(kHalf);
  auto basis = enumerate_tableaux(HighestWeight({1}));
  EXPECT_EQ(raise_coeff(1, 1, basis[1], qint), QScalar(0));
  EXPECT_FALSE(raise_radicand(1, 1, basis[1], qint).has_value());
}

// The two E_2 radicands written out for su(3): the first is used as printed,
// the second carries a dropped overall sign (its factor [m33 - m22 - 1] is
// negative on every valid tableau) and is compared in absolute value.
TEST(RaiseCoeff, MatchesExplicitSu3Radicands) {
  std::mt19937 rng(2024);
  QIntTable b(RationalQ{1, 2});
  const std::vector<HighestWeight> weights = {HighestWeight({3, 2}), HighestWeight({2, 4}),
                                              HighestWeight({5, 1})};
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = random_tableau(weights[trial % 3], rng);
    const int m11 = t(1, 1), m12 = t(1, 2), m22 = t(2, 2), m13 = t(1, 3), m23 = t(2, 3), m33 = t(3, 3);
    if (auto r1 = raise_radicand(2, 1, t, b)) {
      const Rational display = b(m13 - m12) * b(m23 - m12 - 1) * b(m33 - m12 - 2) * b(m12 - m11 + 1) /
                               (b(m12 - m22 + 1) * b(m12 - m22 + 2));
      EXPECT_EQ(*r1, display) << t.str();
      ++checked;
    }
    if (auto r2 = raise_radicand(2, 2, t, b)) {
      const Rational display = b(m13 - m22 + 1) * b(m23 - m22) * b(m33 - m22 - 1) * b(m11 - m22) /
                               (b(m12 - m22 + 1) * b(m12 - m22));
      EXPECT_EQ(*r2, -display) << t.str();
      EXPECT_GE(*r2, 0);
      ++checked;
    }
  }
  EXPECT_GT(checked, 20);
}

// F_2 = E_2^T: lowering coefficients equal the raising coefficient of the
// lowered tableau, i.e. the su(3) lowering radicands
//   [m13-m12+1][m23-m12][m33-m12-1][m12-m11] / ([m12-m22][m12-m22+1])        (m12 -> m12-1)
//   [m13-m22+2][m23-m22+1][m22-m33][m11-m22+1] / ([m12-m22+1][m12-m22+2])    (m22 -> m22-1)
TEST(RaiseCoeff, TransposeGivesSu3LoweringRadicands) {
  WorkingPrecision guard(60);
  auto mod = build_irrep(HighestWeight({2, 3}), kHalf, 60);
  QIntTable b(kHalf);
  for (std::size_t c = 0; c < mod.dim(); ++c) {
    const auto& t = mod.basis()[c];
    const int m11 = t(1, 1), m12 = t(1, 2), m22 = t(2, 2), m13 = t(1, 3), m23 = t(2, 3), m33 = t(3, 3);
    auto lowered = [&](int i) {
      GTTableau l = t;
      l(i, 2) -= 1;
      return l;
    };
    for (int i = 1; i <= 2; ++i) {
      auto target = mod.index_of(lowered(i));
      if (!target || !lowered(i).is_valid()) continue;
      const QScalar f = mod.F(2).at(*target, c);
      const Rational expected =
          i == 1 ? b(m13 - m12 + 1) * b(m23 - m12) * b(m33 - m12 - 1) * b(m12 - m11) /
                       (b(m12 - m22) * b(m12 - m22 + 1))
                 : b(m13 - m22 + 2) * b(m23 - m22 + 1) * b(m22 - m33) * b(m11 - m22 + 1) /
                       (b(m12 - m22 + 1) * b(m12 - m22 + 2));
      EXPECT_LT(abs(f * f - to_scalar(expected)), tol("1e-50") * (1 + f * f)) << t.str() << " i=" << i;
    }
  }
}

TEST(BuildIrrep, Su2MatchesSpinFormula) {
  WorkingPrecision guard(60);
  for (int two_j : {1, 2, 3, 6}) {
    auto mod = build_irrep(HighestWeight({two_j}), kHalf, 60);
    const QScalar l = QScalar(two_j) / 2;
    for (std::size_t c = 0; c < mod.dim(); ++c) {
      const int m11 = mod.basis()[c](1, 1);
      // |l, m> with m = l - m11; E sends m to m - 1
      const int l_minus_m = m11;
      const int l_plus_m = two_j - m11;
      const QScalar expected =
          l_minus_m + 1 <= two_j ? sqrt(eval(q_int(l_minus_m + 1) * q_int(l_plus_m), kHalf)) : QScalar(0);
      QScalar actual = 0;
      for (const auto& e : mod.E(1).column(c)) actual = e.value;
      EXPECT_LT(abs(actual - expected), tol("1e-55") * (1 + expected)) << "2l=" << two_j << " m11=" << m11;
    }
    (void)l;
  }
}

TEST(BuildIrrep, DefiningRepresentationPairing) {
  WorkingPrecision guard(60);
  for (int ell = 1; ell <= 4; ++ell) {
    std::vector<int> n(ell, 0);
    n.back() = 1;
    auto mod = build_irrep(HighestWeight(n), kHalf, 60);
    ASSERT_EQ(mod.dim(), static_cast<std::size_t>(ell + 1));
    for (int r = 1; r <= ell; ++r)
      for (int i = 1; i <= ell + 1; ++i)
        for (int j = 1; j <= ell + 1; ++j) {
          auto row = *mod.index_of(fundamental_tableau(ell, i));
          auto col = *mod.index_of(fundamental_tableau(ell, j));
          const QScalar expected = (i == r + 1 && j == r) ? 1 : 0;
          EXPECT_LT(abs(mod.E(r).at(row, col) - expected), tol("1e-50"));
        }
  }
}

TEST(BuildIrrep, TrivialRepresentation) {
  auto mod = build_irrep(HighestWeight({0, 0, 0}), kHalf, 60);
  ASSERT_EQ(mod.dim(), 1u);
  for (int k = 1; k <= 3; ++k) {
    EXPECT_EQ(mod.E(k).nonzeros(), 0u);
    EXPECT_EQ(mod.F(k).nonzeros(), 0u);
    EXPECT_EQ(mod.K(k).at(0, 0), QScalar(1));
  }
}

TEST(BuildIrrep, DimensionCap) {
  EXPECT_THROW(build_irrep(HighestWeight({4, 4, 4}), kHalf, 60, 100), DimensionCapExceeded);
  EXPECT_NO_THROW(build_irrep(HighestWeight({1, 1}), kHalf, 60, 8));
}

TEST(BuildIrrep, StructuralInvariants) {
  WorkingPrecision guard(60);
  for (const auto& n : std::vector<std::vector<int>>{{2, 1}, {1, 0, 2}, {1, 1, 0, 1}}) {
    auto mod = build_irrep(HighestWeight(n), RationalQ{3, 4}, 60);
    const int ell = mod.ell();
    const QScalar sqrt_q = sqrt(mod.q().value());
    for (int k = 1; k <= ell; ++k) {
      for (std::size_t c = 0; c < mod.dim(); ++c) {
        const auto& col = mod.E(k).column(c);
        EXPECT_LE(col.size(), static_cast<std::size_t>(k));
        const int a = mod.exponent(k, c);
        EXPECT_EQ(mod.K(k).at(c, c), pow(sqrt_q, a));
        for (const auto& e : col) {
          EXPECT_GT(e.value, 0);
          const auto& target = mod.basis()[e.row];
          EXPECT_TRUE(target.is_valid());
          // weight bookkeeping: E_k shifts a_k by +2 and neighbours by -1
          for (int r = 1; r <= ell; ++r) {
            const int shift = r == k ? 2 : (std::abs(r - k) == 1 ? -1 : 0);
            EXPECT_EQ(mod.exponent(r, e.row), mod.exponent(r, c) + shift);
          }
          EXPECT_EQ(mod.F(k).at(c, e.row), e.value);
        }
      }
      auto comm = mod.E(k) * mod.F(k) - mod.F(k) * mod.E(k);
      comm.for_each([&](std::size_t r, std::size_t c, const QScalar& v) {
        if (r != c) {
          EXPECT_LT(abs(v), tol("1e-50"));
        }
      });
    }
    EXPECT_EQ(mod.F(1).nonzeros(), mod.E(1).nonzeros());
  }
}

TEST(VerifyRelations, Su2Fundamental) {
  auto mod = build_irrep(HighestWeight({1}), kHalf, 60);
  WorkingPrecision guard(60);
  for (const auto& r : verify_relations(mod, tol("1e-50"))) {
    EXPECT_TRUE(r.pass) << r.relation << " residual " << r.residual;
  }
}

TEST(VerifyRelations, Su3Adjoint) {
  auto mod = build_irrep(HighestWeight({1, 1}), kHalf, 60);
  WorkingPrecision guard(60);
  const auto report = verify_relations(mod, tol("1e-40"));
  EXPECT_GT(report.size(), 10u);
  for (const auto& r : report) EXPECT_TRUE(r.pass) << r.relation << " " << r.i << "," << r.j;
}

TEST(VerifyRelations, Su4SerrePairs) {
  auto mod = build_irrep(HighestWeight({1, 0, 1}), kHalf, 60);
  WorkingPrecision guard(60);
  int serre = 0;
  for (const auto& r : verify_relations(mod, tol("1e-40"))) {
    EXPECT_TRUE(r.pass) << r.relation << " " << r.i << "," << r.j;
    if (r.relation.starts_with("E_i^2 E_j")) ++serre;
  }
  EXPECT_EQ(serre, 4);  // (1,2), (2,1), (2,3), (3,2)
}

TEST(VerifyRelations, GenericParameter) {
  auto mod = build_irrep(HighestWeight({2, 1, 1}), RationalQ{9, 10}, 80);
  WorkingPrecision guard(80);
  for (const auto& r : verify_relations(mod, tol("1e-60"))) EXPECT_TRUE(r.pass) << r.relation;
}

TEST(Export, HeaderAndEntries) {
  auto mod = build_irrep(HighestWeight({0, 1}), kHalf, 40);
  const std::string text = export_matrix(mod, 'E', 1);
  EXPECT_EQ(text.substr(0, text.find('\n')), "# irrep ℓ=2 n=0,1 op=E1 q=1/2 precision=40");
  // exactly one entry: |2> <- |1>
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
}
