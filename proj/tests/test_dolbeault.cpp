#include "qcp/dolbeault.hpp"
#include "qcp/gtrep.hpp"

#include <gtest/gtest.h>

using namespace qcp;

namespace {

const RationalQ kHalf{1, 2};

}  // namespace

TEST(Cp1Sections, Basis) {
  const auto s = cp1_sections(1, 3);
  ASSERT_EQ(s.size(), 6u);  // l = 1/2 (2 states) and l = 3/2 (4 states)
  EXPECT_EQ(s.front(), (Cp1Section{1, -1}));
  EXPECT_EQ(s.back(), (Cp1Section{3, 3}));
  EXPECT_EQ(cp1_sections(-2, 4).size(), 3u + 5u);
  EXPECT_EQ(cp1_sections(3, 2).size(), 0u);
}

TEST(Cp1Matrix, Coefficients) {
  WorkingPrecision guard(60);
  QIntTable qint(kHalf);
  EXPECT_EQ(cp1_radicand(0, 0, qint), 0);   // sqrt([1][0]): constants are holomorphic
  EXPECT_EQ(cp1_radicand(-2, 2, qint), 0);  // l + N/2 = 0
  for (int l2 = 1; l2 <= 9; l2 += 2) {
    // N = 1: sqrt([l + 1/2]^2) = [l + 1/2]
    EXPECT_EQ(cp1_radicand(1, l2, qint), qint((l2 + 1) / 2) * qint((l2 + 1) / 2));
  }
  const auto c = cp1_dolbeault_matrix(1, 5, kHalf, 60);
  for (std::size_t s = 0; s < c.source.size(); ++s) {
    const int l2 = c.source[s].l2;
    const QScalar expected = eval(q_int((l2 + 1) / 2), kHalf);
    ASSERT_EQ(c.op.column(s).size(), 1u);
    EXPECT_LT(abs(c.op.column(s)[0].value - expected), QScalar("1e-55"));
  }
}

TEST(Cp1Matrix, BlockDiagonal) {
  for (int N = -4; N <= 4; ++N) {
    const auto c = cp1_dolbeault_matrix(N, 12 + (N & 1), RationalQ{3, 4}, 40);
    c.op.for_each([&](std::size_t r, std::size_t col, const QScalar&) {
      EXPECT_EQ(c.target[r], c.source[col]) << N;
    });
  }
}

TEST(Cp1Matrix, MatchesSu2IrrepAction) {
  WorkingPrecision guard(60);
  for (int N = -3; N <= 3; ++N) {
    const auto c = cp1_dolbeault_matrix(N, 9 + (N & 1) - 1, kHalf, 60);
    for (std::size_t s = 0; s < c.source.size(); ++s) {
      const int l2 = c.source[s].l2;
      // |l, N/2> is the GT vector with m11 = l - N/2; E raises m11 by one
      auto mod = build_irrep(HighestWeight({l2}), kHalf, 60);
      const int m11 = (l2 - N) / 2;
      const auto from = *mod.index_of(GTTableau(2, {l2, 0, m11}));
      const QScalar gt = m11 + 1 <= l2 ? mod.E(1).at(*mod.index_of(GTTableau(2, {l2, 0, m11 + 1})), from) : QScalar(0);
      const QScalar dol = c.op.column(s).empty() ? QScalar(0) : c.op.column(s)[0].value;
      EXPECT_LT(abs(gt - dol), QScalar("1e-55")) << "N=" << N << " 2l=" << l2;
    }
  }
}

TEST(Euler, Examples) {
  auto r = cp1_euler_characteristic(0, 16, kHalf, 60);
  EXPECT_EQ(r.dim_ker, 1u);
  EXPECT_EQ(r.dim_coker, 0u);
  EXPECT_EQ(r.chi, 1);
  r = cp1_euler_characteristic(2, 16, kHalf, 60);
  EXPECT_EQ(r.dim_ker, 0u);
  EXPECT_EQ(r.dim_coker, 1u);
  EXPECT_EQ(r.chi, -1);
  r = cp1_euler_characteristic(-2, 16, kHalf, 60);
  EXPECT_EQ(r.dim_ker, 3u);
  EXPECT_EQ(r.dim_coker, 0u);
  EXPECT_EQ(r.chi, 3);
}

TEST(Euler, RiemannRochAndStability) {
  for (const auto& q : {RationalQ{1, 2}, RationalQ{9, 10}})
    for (int N = -6; N <= 6; ++N) {
      for (int l_max2 : {16, 20}) {
        const auto r = cp1_euler_characteristic(N, l_max2 - (std::abs(N) & 1), q, 60);
        EXPECT_EQ(r.chi, 1 - N) << "N=" << N;
        EXPECT_TRUE(r.stable);
        EXPECT_FALSE(r.ill_conditioned);
        EXPECT_EQ(r.dim_ker, N <= 0 ? static_cast<std::size_t>(1 - N) : 0u);
      }
      const auto a = cp1_euler_characteristic(N, 12 + (N & 1), q, 40);
      const auto b = cp1_euler_characteristic(N, 16 + (N & 1), q, 40);
      EXPECT_EQ(a.chi, b.chi);
    }
}

TEST(Cp2Identity, Ranges) {
  const auto rows = cp2_coefficient_identity({0, 1, 20}, {RationalQ{1, 2}, RationalQ{9, 10}}, 60);
  ASSERT_EQ(rows.size(), 6u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.pass) << r.n << " " << r.q.str();
    EXPECT_LE(r.residual_cancel, QScalar("1e-30"));
    EXPECT_LE(r.residual_total, QScalar("1e-30"));
  }
  EXPECT_THROW(cp2_coefficient_identity({-1}, {kHalf}, 60), std::invalid_argument);
}
