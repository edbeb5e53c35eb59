#pragma once

// Polynomials in q-commuting generators z_1..z_g with z_i z_j = q z_j z_i for
// i < j. Monomials are kept in the normal order z_1^{s_1} ... z_g^{s_g}.

#include "qcp/qarith.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcp {

struct QMonomial {
  std::vector<int> s;

  QMonomial() = default;
  explicit QMonomial(std::vector<int> exponents) : s(std::move(exponents)) {
    for (int v : s)
      if (v < 0) throw std::invalid_argument("monomial exponents must be non-negative");
  }

  int generators() const { return static_cast<int>(s.size()); }
  int degree() const {
    int d = 0;
    for (int v : s) d += v;
    return d;
  }

  /// Generator indices (1-based) in normal order.
  std::vector<int> word() const {
    std::vector<int> w;
    for (std::size_t i = 0; i < s.size(); ++i) w.insert(w.end(), static_cast<std::size_t>(s[i]), static_cast<int>(i) + 1);
    return w;
  }

  /// "z^[1,0,2]"
  std::string str() const {
    std::string out = "z^[";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "]";
  }

  friend auto operator<=>(const QMonomial&, const QMonomial&) = default;
};

struct OrderedWord {
  int exponent = 0;  // the word equals q^exponent times the monomial
  QMonomial monomial;

  QLaurent coefficient() const { return QLaurent::monomial(exponent); }
  friend bool operator==(const OrderedWord&, const OrderedWord&) = default;
};

inline OrderedWord normal_order(const std::vector<int>& word, int g) {
  if (g < 1) throw std::invalid_argument("normal_order: need at least one generator");
  std::vector<int> s(static_cast<std::size_t>(g), 0);
  int inversions = 0;
  for (int x : word) {
    if (x < 1 || x > g) throw std::out_of_range("normal_order: generator index out of range");
    for (int y = x + 1; y <= g; ++y) inversions += s[static_cast<std::size_t>(y - 1)];
    ++s[static_cast<std::size_t>(x - 1)];
  }
  return {-inversions, QMonomial(std::move(s))};
}

/// Every result reachable by rewriting z_j z_i -> q^{-1} z_i z_j (i < j) at any
/// adjacent position until no rewrite applies. Confluence means one element.
inline std::set<std::pair<int, std::vector<int>>> rewrite_normal_forms(const std::vector<int>& word) {
  std::map<std::vector<int>, std::set<std::pair<int, std::vector<int>>>> memo;
  auto explore = [&](auto&& self, const std::vector<int>& w) -> const std::set<std::pair<int, std::vector<int>>>& {
    if (auto it = memo.find(w); it != memo.end()) return it->second;
    std::set<std::pair<int, std::vector<int>>> out;
    bool terminal = true;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] <= w[i + 1]) continue;
      terminal = false;
      auto next = w;
      std::swap(next[i], next[i + 1]);
      for (const auto& [e, nf] : self(self, next)) out.insert({e - 1, nf});
    }
    if (terminal) out.insert({0, w});
    return memo.emplace(w, std::move(out)).first->second;
  };
  return explore(explore, word);
}

/// z^a z^b = q^{-sum_{i>j} a_i b_j} z^{a+b}.
inline OrderedWord multiply(const QMonomial& a, const QMonomial& b) {
  if (a.generators() != b.generators()) throw std::invalid_argument("multiply: generator count mismatch");
  int e = 0;
  int prefix_b = 0;  // sum of b_j for j < i
  std::vector<int> s(a.s.size());
  for (std::size_t i = 0; i < a.s.size(); ++i) {
    e -= a.s[i] * prefix_b;
    prefix_b += b.s[i];
    s[i] = a.s[i] + b.s[i];
  }
  return {e, QMonomial(std::move(s))};
}

class QPolynomial {
 public:
  QPolynomial() = default;
  explicit QPolynomial(int g) : g_(g) {}

  static QPolynomial generator(int g, int i) {
    QPolynomial p(g);
    std::vector<int> s(static_cast<std::size_t>(g), 0);
    s.at(static_cast<std::size_t>(i - 1)) = 1;
    p.add(QMonomial(std::move(s)), QLaurent(1));
    return p;
  }

  int generators() const { return g_; }
  const std::map<QMonomial, QLaurent>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const QMonomial& m, const QLaurent& c) {
    if (m.generators() != g_) throw std::invalid_argument("QPolynomial: generator count mismatch");
    auto& slot = terms_[m];
    slot = slot + c;
    if (slot.is_zero()) terms_.erase(m);
  }

  friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) {
    for (const auto& [m, c] : b.terms_) a.add(m, c);
    return a;
  }
  friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) {
    for (const auto& [m, c] : b.terms_) a.add(m, -c);
    return a;
  }
  friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
    QPolynomial out(a.g_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        auto prod = multiply(ma, mb);
        out.add(prod.monomial, (ca * cb).shifted(prod.exponent));
      }
    return out;
  }
  friend QPolynomial operator*(const QLaurent& c, QPolynomial p) {
    QPolynomial out(p.g_);
    for (const auto& [m, v] : p.terms_) out.add(m, c * v);
    return out;
  }
  friend bool operator==(const QPolynomial&, const QPolynomial&) = default;

 private:
  int g_ = 0;
  std::map<QMonomial, QLaurent> terms_;
};

inline std::vector<QMonomial> monomials_of_degree(int g, int N) {
  if (g < 1 || N < 0) throw std::invalid_argument("monomials_of_degree: need g >= 1 and N >= 0");
  std::vector<QMonomial> out;
  std::vector<int> s(static_cast<std::size_t>(g), 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == g - 1) {
      s[static_cast<std::size_t>(i)] = left;
      out.emplace_back(s);
      return;
    }
    for (int v = left; v >= 0; --v) {
      s[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, N);
  return out;
}

inline std::size_t graded_dim(int g, int N) { return monomials_of_degree(g, N).size(); }

struct Factorization {
  int k = 0;        // 1-based split index
  std::vector<int> r;
  int R = 0;
  QMonomial Z1;
  QMonomial Z2;
};

/// R = sum_j r_j * sum_{i<j} (s_i - r_i), so that Z1 Z2 = q^{-R} Z for
/// Z1 = z^r, Z2 = z^{s-r}.
inline Factorization tensor_factorize(const QMonomial& Z, const std::vector<int>& r) {
  if (r.size() != Z.s.size()) throw std::invalid_argument("tensor_factorize: partition length mismatch");
  Factorization f;
  f.r = r;
  std::vector<int> rest(r.size());
  int before = 0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (r[j] < 0 || r[j] > Z.s[j]) throw std::invalid_argument("tensor_factorize: need 0 <= r_i <= s_i");
    f.R += r[j] * before;
    rest[j] = Z.s[j] - r[j];
    before += rest[j];
    if (r[j] > 0) f.k = static_cast<int>(j) + 1;
  }
  f.Z1 = QMonomial(r);
  f.Z2 = QMonomial(std::move(rest));
  auto w = f.Z1.word();
  const auto w2 = f.Z2.word();
  w.insert(w.end(), w2.begin(), w2.end());
  if (normal_order(w, Z.generators()) != OrderedWord{-f.R, Z}) {
    throw std::logic_error("tensor_factorize: Z1 Z2 != q^-R Z for " + Z.str());
  }
  return f;
}

/// Greedy split: r_i = s_i up to the first index k with s_1 + ... + s_k > N,
/// where r_k takes what is left of N.
inline Factorization tensor_factorize(const QMonomial& Z, int N) {
  if (N < 0 || N > Z.degree()) {
    throw std::invalid_argument("tensor_factorize: degree " + std::to_string(N) + " does not split " + Z.str());
  }
  std::vector<int> r(Z.s.size(), 0);
  int left = N;
  int k = Z.generators();
  for (std::size_t i = 0; i < Z.s.size(); ++i) {
    if (Z.s[i] > left) {
      r[i] = left;
      k = static_cast<int>(i) + 1;
      break;
    }
    r[i] = Z.s[i];
    left -= Z.s[i];
  }
  auto f = tensor_factorize(Z, r);
  f.k = k;
  return f;
}

}  // namespace qcp
