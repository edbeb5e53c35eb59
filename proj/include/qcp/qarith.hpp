#pragma once

// Exact q-arithmetic. QLaurent is an integer Laurent polynomial in q; the
// q-integers, q-factorials, q-binomials and q-multinomials live there and are
// only turned into numbers by an explicit evaluation at a rational q.

#include "qcp/scalar.hpp"

#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcp {

/// Raised when an exact division leaves a remainder. Never expected in
/// correct code: every q-binomial/multinomial quotient is exact.
class InexactDivision : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class QLaurent {
 public:
  using Terms = std::map<int, BigInt>;

  QLaurent() = default;
  QLaurent(long c) { add_term(0, BigInt(c)); }  // NOLINT: implicit constant
  static QLaurent monomial(int exponent, BigInt coeff = 1) {
    QLaurent p;
    p.add_term(exponent, std::move(coeff));
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int min_exponent() const { return terms_.begin()->first; }
  int max_exponent() const { return terms_.rbegin()->first; }
  BigInt coefficient(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  void add_term(int exponent, const BigInt& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponent, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  QLaurent& operator+=(const QLaurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  QLaurent& operator-=(const QLaurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend QLaurent operator+(QLaurent a, const QLaurent& b) { return a += b; }
  friend QLaurent operator-(QLaurent a, const QLaurent& b) { return a -= b; }
  QLaurent operator-() const {
    QLaurent r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  friend QLaurent operator*(const QLaurent& a, const QLaurent& b) {
    QLaurent r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  QLaurent& operator*=(const QLaurent& o) { return *this = *this * o; }

  /// Multiplication by q^k.
  QLaurent shifted(int k) const {
    QLaurent r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e + k, c);
    return r;
  }

  /// The substitution q -> q^{-1}.
  QLaurent mirrored() const {
    QLaurent r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
    return r;
  }

  bool is_palindromic() const { return *this == mirrored(); }

  /// Exact long division; throws InexactDivision on a nonzero remainder.
  QLaurent divided_exactly(const QLaurent& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("division of a Laurent polynomial by zero");
    QLaurent quotient;
    QLaurent rest = *this;
    const int lead_exp = divisor.max_exponent();
    const BigInt& lead = divisor.terms_.rbegin()->second;
    const int span = lead_exp - divisor.min_exponent();
    while (!rest.is_zero() && rest.max_exponent() - rest.min_exponent() >= span) {
      const auto& [re, rc] = *rest.terms_.rbegin();
      if (rc % lead != 0) break;
      QLaurent step = monomial(re - lead_exp, rc / lead);
      quotient += step;
      rest -= step * divisor;
    }
    if (!rest.is_zero()) {
      throw InexactDivision("inexact division: (" + str() + ") / (" + divisor.str() + ")");
    }
    return quotient;
  }

  /// Exact value at a rational q.
  Rational evaluate_exact(const RationalQ& q) const {
    const Rational qq = q.exact();
    const Rational qinv = 1 / qq;
    Rational sum = 0;
    for (const auto& [e, c] : terms_) sum += Rational(c) * pow_rational(e >= 0 ? qq : qinv, std::abs(e));
    return sum;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string cs = c.str();
      if (!out.empty()) out += (c < 0) ? " - " : " + ";
      else if (c < 0) out += "-";
      if (c < 0) cs = cs.substr(1);
      if (e == 0) {
        out += cs;
        continue;
      }
      if (cs != "1") out += cs + "*";
      out += (e == 1) ? "q" : "q^" + std::to_string(e);
    }
    return out;
  }

  friend bool operator==(const QLaurent&, const QLaurent&) = default;

 private:
  static Rational pow_rational(const Rational& base, int exp) {
    Rational r = 1;
    Rational b = base;
    for (; exp > 0; exp >>= 1) {
      if (exp & 1) r *= b;
      b *= b;
    }
    return r;
  }

  Terms terms_;
};

/// [z] = (q^z - q^{-z}) / (q - q^{-1}); q^{z-1} + q^{z-3} + ... + q^{1-z} for z > 0.
inline QLaurent q_int(int z) {
  if (z == 0) return {};
  if (z < 0) return -q_int(-z);
  QLaurent p;
  for (int e = z - 1; e >= 1 - z; e -= 2) p.add_term(e, 1);
  return p;
}

inline QLaurent q_factorial(int n) {
  if (n < 0) throw std::invalid_argument("q_factorial: negative argument");
  QLaurent p = 1;
  for (int i = 2; i <= n; ++i) p *= q_int(i);
  return p;
}

inline QLaurent q_binomial(int n, int m) {
  if (m < 0 || m > n) throw std::invalid_argument("q_binomial: need 0 <= m <= n");
  return q_factorial(n).divided_exactly(q_factorial(m) * q_factorial(n - m));
}

/// [j_1,...,j_k]! = q^{-sum_{r<s} j_r j_s} [j_1+...+j_k]! / ([j_1]!...[j_k]!).
inline QLaurent q_multinomial(std::span<const int> parts) {
  int total = 0;
  long cross = 0;
  QLaurent denom = 1;
  for (int j : parts) {
    if (j < 0) throw std::invalid_argument("q_multinomial: negative part");
    cross += static_cast<long>(total) * j;
    total += j;
    denom *= q_factorial(j);
  }
  return q_factorial(total).divided_exactly(denom).shifted(-static_cast<int>(cross));
}

inline QLaurent q_multinomial(std::initializer_list<int> parts) {
  return q_multinomial(std::span<const int>(parts.begin(), parts.size()));
}

/// Numeric value at q. Uses the current working precision; `digits` (if
/// nonzero) installs a temporary one.
inline QScalar eval(const QLaurent& p, const RationalQ& q, unsigned digits = 0) {
  std::optional<WorkingPrecision> guard;
  if (digits != 0) guard.emplace(digits);
  const QScalar qv = q.value();
  const QScalar qinv = 1 / qv;
  QScalar sum = 0;
  for (const auto& [e, c] : p.terms()) {
    sum += QScalar(c) * boost::multiprecision::pow(e >= 0 ? qv : qinv, std::abs(e));
  }
  return sum;
}

/// Memoised exact values [z] at a fixed rational q.
class QIntTable {
 public:
  explicit QIntTable(RationalQ q) : q_(q) {}

  const RationalQ& q() const { return q_; }

  const Rational& operator()(int z) {
    auto it = cache_.find(z);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(z, q_int(z).evaluate_exact(q_)).first->second;
  }

 private:
  RationalQ q_;
  std::map<int, Rational> cache_;
};

}  // namespace qcp
