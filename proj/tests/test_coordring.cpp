#include "qcp/coordring.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace qcp;

namespace {

std::uint64_t binom(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

// Every word of the given length over g letters.
std::vector<std::vector<int>> all_words(int g, int len) {
  std::vector<std::vector<int>> out{{}};
  for (int i = 0; i < len; ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& w : out)
      for (int x = 1; x <= g; ++x) {
        next.push_back(w);
        next.back().push_back(x);
      }
    out = std::move(next);
  }
  return out;
}

// Product of generator words expanded through the polynomial ring.
QPolynomial word_polynomial(const std::vector<int>& word, int g) {
  QPolynomial p(g);
  p.add(QMonomial(std::vector<int>(static_cast<std::size_t>(g), 0)), QLaurent(1));
  for (int x : word) p = p * QPolynomial::generator(g, x);
  return p;
}

}  // namespace

TEST(NormalOrder, Examples) {
  EXPECT_EQ(normal_order({2, 1}, 2), (OrderedWord{-1, QMonomial({1, 1})}));
  EXPECT_EQ(normal_order({1, 2}, 2), (OrderedWord{0, QMonomial({1, 1})}));
  EXPECT_EQ(normal_order({3, 2, 1}, 3), (OrderedWord{-3, QMonomial({1, 1, 1})}));
  EXPECT_EQ(normal_order({}, 3), (OrderedWord{0, QMonomial({0, 0, 0})}));
  EXPECT_EQ(normal_order({2, 1}, 2).coefficient(), QLaurent::monomial(-1));
  EXPECT_THROW(normal_order({4}, 3), std::out_of_range);
}

TEST(NormalOrder, AllSwapOrdersOfReversedTriple) {
  const auto forms = rewrite_normal_forms({3, 2, 1});
  ASSERT_EQ(forms.size(), 1u);
  EXPECT_EQ(forms.begin()->first, -3);
  EXPECT_EQ(forms.begin()->second, (std::vector<int>{1, 2, 3}));
}

TEST(NormalOrder, Confluence) {
  for (int g = 1; g <= 4; ++g)
    for (int len = 0; len <= 6; ++len)
      for (const auto& w : all_words(g, len)) {
        const auto forms = rewrite_normal_forms(w);
        ASSERT_EQ(forms.size(), 1u);
        const auto direct = normal_order(w, g);
        EXPECT_EQ(forms.begin()->first, direct.exponent);
        EXPECT_EQ(forms.begin()->second, direct.monomial.word());
      }
}

TEST(Polynomial, RelationsHold) {
  const int g = 3;
  for (int i = 1; i <= g; ++i)
    for (int j = i + 1; j <= g; ++j) {
      const auto zi = QPolynomial::generator(g, i);
      const auto zj = QPolynomial::generator(g, j);
      EXPECT_TRUE((zi * zj - QLaurent::monomial(1) * (zj * zi)).is_zero());
    }
}

TEST(Polynomial, AssociativeAndMatchesNormalOrder) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> gen(1, 4), len(0, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> w;
    for (int i = len(rng); i > 0; --i) w.push_back(gen(rng));
    const auto p = word_polynomial(w, 4);
    const auto nf = normal_order(w, 4);
    ASSERT_EQ(p.terms().size(), 1u);
    EXPECT_EQ(p.terms().begin()->first, nf.monomial);
    EXPECT_EQ(p.terms().begin()->second, nf.coefficient());
  }
}

TEST(GradedDim, Values) {
  EXPECT_EQ(graded_dim(2, 3), 4u);
  EXPECT_EQ(graded_dim(3, 0), 1u);
  EXPECT_EQ(graded_dim(3, 2), 6u);
  for (int g = 1; g <= 5; ++g)
    for (int N = 0; N <= 10; ++N) EXPECT_EQ(graded_dim(g, N), binom(N + g - 1, g - 1));
}

TEST(GradedDim, MonomialsAreDistinctAndHomogeneous) {
  auto ms = monomials_of_degree(3, 4);
  for (const auto& m : ms) EXPECT_EQ(m.degree(), 4);
  std::sort(ms.begin(), ms.end());
  EXPECT_EQ(std::adjacent_find(ms.begin(), ms.end()), ms.end());
}

TEST(TensorFactorize, Examples) {
  auto f = tensor_factorize(QMonomial({1, 1}), 1);
  EXPECT_EQ(f.k, 2);
  EXPECT_EQ(f.r, (std::vector<int>{1, 0}));
  EXPECT_EQ(f.R, 0);
  EXPECT_EQ(f.Z1, QMonomial({1, 0}));
  EXPECT_EQ(f.Z2, QMonomial({0, 1}));

  f = tensor_factorize(QMonomial({0, 2}), 1);
  EXPECT_EQ(f.Z1, QMonomial({0, 1}));
  EXPECT_EQ(f.Z2, QMonomial({0, 1}));
  EXPECT_EQ(f.R, 0);

  f = tensor_factorize(QMonomial({1, 2, 1}), 2);
  EXPECT_EQ(f.k, 2);
  EXPECT_EQ(f.r, (std::vector<int>{1, 1, 0}));
  EXPECT_EQ(normal_order([&] {
              auto w = f.Z1.word();
              auto w2 = f.Z2.word();
              w.insert(w.end(), w2.begin(), w2.end());
              return w;
            }(), 3).exponent,
            -f.R);
}

TEST(TensorFactorize, ExplicitPartitionCarriesExponent) {
  // Z1 = z_2, Z2 = z_1: one inversion
  auto f = tensor_factorize(QMonomial({1, 1}), std::vector<int>{0, 1});
  EXPECT_EQ(f.R, 1);
  // Z1 = z_2 z_3, Z2 = z_1^2 z_2: r = (0,1,1), s - r = (2,1,0); R = 1*2 + 1*3 = 5
  f = tensor_factorize(QMonomial({2, 2, 1}), std::vector<int>{0, 1, 1});
  EXPECT_EQ(f.R, 5);
}

TEST(TensorFactorize, RejectsBadDegree) {
  EXPECT_THROW(tensor_factorize(QMonomial({1, 1}), 3), std::invalid_argument);
  EXPECT_THROW(tensor_factorize(QMonomial({1, 1}), -1), std::invalid_argument);
  EXPECT_THROW(tensor_factorize(QMonomial({1, 1}), std::vector<int>{2, 0}), std::invalid_argument);
}

TEST(TensorFactorize, ExhaustiveSmallDegrees) {
  std::size_t checked = 0;
  for (int g = 1; g <= 4; ++g)
    for (int d = 0; d <= 8; ++d)
      for (const auto& Z : monomials_of_degree(g, d))
        for (int N = 0; N <= d; ++N) {
          EXPECT_NO_THROW(tensor_factorize(Z, N));
          for (const auto& r : monomials_of_degree(g, N)) {
            bool fits = true;
            for (int i = 0; i < g; ++i) fits = fits && r.s[static_cast<std::size_t>(i)] <= Z.s[static_cast<std::size_t>(i)];
            if (!fits) continue;
            const auto f = tensor_factorize(Z, r.s);
            // independent route: multiply through the polynomial ring
            const auto prod = QPolynomial(g) + word_polynomial(f.Z1.word(), g) * word_polynomial(f.Z2.word(), g);
            ASSERT_EQ(prod.terms().size(), 1u);
            EXPECT_EQ(prod.terms().begin()->first, Z);
            EXPECT_EQ(prod.terms().begin()->second, QLaurent::monomial(-f.R));
            ++checked;
          }
        }
  EXPECT_GT(checked, 1000u);
}
