#pragma once

// Shuffle combinatorics for the twisted cyclic cocycle on CP^ell_q. Patterns
// are strings over 'A' (holomorphic derivative) and 'B' (antiholomorphic),
// handled as formal symbols phi_pattern; the cochains psi only enter through
// their coboundaries phi_tail - phi_head.

#include "qcp/coordring.hpp"
#include "qcp/linalg.hpp"
#include "qcp/scalar.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcp {

using DerivPattern = std::string;

/// "∂∂̄∂̄∂"
inline std::string pretty_pattern(const DerivPattern& p) {
  std::string out;
  for (char c : p) out += c == 'A' ? "∂" : "∂̄";
  return out;
}

inline std::vector<DerivPattern> enumerate_shuffles(int ell) {
  if (ell < 1) throw std::invalid_argument("enumerate_shuffles: ell must be positive");
  DerivPattern p(static_cast<std::size_t>(ell), 'A');
  p.append(static_cast<std::size_t>(ell), 'B');
  std::vector<DerivPattern> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Equal up to swapping one pair of neighbouring, distinct letters.
inline bool adjacent_patterns(const DerivPattern& a, const DerivPattern& b) {
  if (a.size() != b.size()) return false;
  std::size_t first = a.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) {
      first = i;
      break;
    }
  if (first + 1 >= a.size()) return false;
  if (a[first] != b[first + 1] || a[first + 1] != b[first]) return false;
  return std::equal(a.begin() + static_cast<long>(first) + 2, a.end(), b.begin() + static_cast<long>(first) + 2);
}

/// Number of (B, A) pairs in order; an adjacent swap changes it by one.
inline int inversions(const DerivPattern& p) {
  int inv = 0, bs = 0;
  for (char c : p) {
    if (c == 'B') ++bs;
    else inv += bs;
  }
  return inv;
}

class FormalCochain {
 public:
  void add(const DerivPattern& p, const Rational& c) {
    auto& slot = combo_[p];
    slot += c;
    if (slot == 0) combo_.erase(p);
  }
  Rational coefficient(const DerivPattern& p) const {
    auto it = combo_.find(p);
    return it == combo_.end() ? Rational(0) : it->second;
  }
  const std::map<DerivPattern, Rational>& terms() const { return combo_; }
  friend bool operator==(const FormalCochain&, const FormalCochain&) = default;

 private:
  std::map<DerivPattern, Rational> combo_;
};

/// tau = sum of phi over all shuffles.
inline FormalCochain fundamental_cocycle(int ell) {
  FormalCochain tau;
  for (const auto& p : enumerate_shuffles(ell)) tau.add(p, 1);
  return tau;
}

struct ShuffleChains {
  int ell = 0;
  std::vector<DerivPattern> chain1;  // starts at A^ell B^ell
  std::vector<DerivPattern> chain2;  // starts at B^ell A^ell
  int bridge = 0;                    // 1-based k with chain1.back() adjacent to chain2[k-1]
};

namespace detail {

/// Chains with chain2 the letter-swapped image of chain1, so chain1 has to
/// pick one pattern from each complementary pair. Complementation reverses the
/// lexicographic order, so the partner of pattern i is pattern n - 1 - i.
class SymmetricChainSearch {
 public:
  explicit SymmetricChainSearch(int ell) : nodes_(enumerate_shuffles(ell)), adj_(nodes_.size()) {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      for (std::size_t j = 0; j < nodes_.size(); ++j)
        if (adjacent_patterns(nodes_[i], nodes_[j])) adj_[i].push_back(j);
    r_ = nodes_.size() / 2;
    for (const auto& p : nodes_) odd_.push_back(inversions(p) % 2 == 1);
  }

  /// Bridge into the second member of chain2.
  std::optional<ShuffleChains> run(int ell) {
    used_.assign(nodes_.size(), false);
    path_.assign(1, 0);
    mark(0, true);
    if (!extend()) return std::nullopt;
    ShuffleChains out;
    out.ell = ell;
    for (auto i : path_) {
      out.chain1.push_back(nodes_[i]);
      out.chain2.push_back(nodes_[partner(i)]);
    }
    out.bridge = 2;
    return out;
  }

 private:
  std::size_t partner(std::size_t i) const { return nodes_.size() - 1 - i; }
  void mark(std::size_t i, bool v) {
    used_[i] = v;
    used_[partner(i)] = v;
  }

  bool extend() {
    if (path_.size() == r_) return adjacent_patterns(nodes_[path_.back()], nodes_[partner(path_[1])]);
    if (!prune()) return false;
    for (auto next : adj_[path_.back()]) {
      if (used_[next]) continue;
      mark(next, true);
      path_.push_back(next);
      if (extend()) return true;
      path_.pop_back();
      mark(next, false);
    }
    return false;
  }

  /// Every unused pair must stay reachable from the current end through
  /// unused patterns.
  bool prune() const {
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<std::size_t> stack{path_.back()};
    std::size_t pairs = 0;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : adj_[v])
        if (!used_[w] && !seen[w]) {
          seen[w] = true;
          if (!seen[partner(w)]) ++pairs;
          stack.push_back(w);
        }
    }
    if (pairs != r_ - path_.size()) return false;
    // Chain members alternate in inversion parity, and partners share parity
    // when ell is even; when ell is odd every pair offers both parities.
    std::size_t odd_pairs = 0, even_pairs = 0, mixed = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (used_[i] || partner(i) < i) continue;
      if (odd_[i] != odd_[partner(i)]) ++mixed;
      else if (odd_[i]) ++odd_pairs;
      else ++even_pairs;
    }
    std::size_t need_odd = 0;
    for (std::size_t pos = path_.size(); pos < r_; ++pos) need_odd += (odd_[0] + pos) % 2;
    if (need_odd < odd_pairs || need_odd > odd_pairs + mixed) return false;
    // The path still has to finish next to the partner of pi_2.
    if (path_.size() >= 2) {
      bool end_available = false;
      for (auto w : adj_[partner(path_[1])]) end_available = end_available || !used_[w];
      if (!end_available) return false;
    }
    // A pair neither of whose patterns has two free neighbours can only be
    // the last one visited.
    std::size_t dead_ends = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (used_[i] || partner(i) < i) continue;
      bool interior = false;
      for (auto v : {i, partner(i)}) {
        std::size_t free = 0;
        for (auto w : adj_[v]) free += !used_[w] || w == path_.back();
        interior = interior || free >= 2;
      }
      if (!interior && ++dead_ends > 1) return false;
    }
    return true;
  }

  std::vector<DerivPattern> nodes_;
  std::vector<std::vector<std::size_t>> adj_;
  std::size_t r_ = 0;
  std::vector<bool> used_;
  std::vector<bool> odd_;
  std::vector<std::size_t> path_;
};

class ChainSearch {
 public:
  explicit ChainSearch(int ell) : nodes_(enumerate_shuffles(ell)), adj_(nodes_.size()) {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      for (std::size_t j = 0; j < nodes_.size(); ++j)
        if (adjacent_patterns(nodes_[i], nodes_[j])) adj_[i].push_back(j);  // lexicographic
    r_ = nodes_.size() / 2;
    start2_ = nodes_.size() - 1;
    for (const auto& p : nodes_) odd_.push_back(inversions(p) % 2 == 1);
  }

  /// First chain pair in lexicographic DFS order; `bridge_to` restricts the
  /// chain2 member adjacent to the end of chain1.
  std::optional<ShuffleChains> run(std::optional<std::size_t> bridge_to, int ell) {
    visited_.assign(nodes_.size(), false);
    path1_.clear();
    bridge_to_ = bridge_to;
    visited_[0] = true;
    path1_.push_back(0);
    if (!extend1()) return std::nullopt;
    ShuffleChains out;
    out.ell = ell;
    for (auto i : path1_) out.chain1.push_back(nodes_[i]);
    for (auto i : path2_) out.chain2.push_back(nodes_[i]);
    for (std::size_t k = 0; k < path2_.size(); ++k)
      if (adjacent_patterns(out.chain1.back(), out.chain2[k])) {
        if (bridge_to_ && k + 1 != *bridge_to_) continue;
        out.bridge = static_cast<int>(k) + 1;
        break;
      }
    return out;
  }

 private:
  bool extend1() {
    if (path1_.size() == r_) {
      if (!bridge_possible()) return false;
      path2_.assign(1, start2_);
      visited_[start2_] = true;
      if (extend2()) return true;
      visited_[start2_] = false;
      return false;
    }
    if (!prune1()) return false;
    for (auto next : adj_[path1_.back()]) {
      if (visited_[next] || next == start2_) continue;
      visited_[next] = true;
      path1_.push_back(next);
      if (extend1()) return true;
      path1_.pop_back();
      visited_[next] = false;
    }
    return false;
  }

  bool extend2() {
    if (path2_.size() == r_) return bridge_exists();
    if (!connected_rest(path2_.back())) return false;
    for (auto next : adj_[path2_.back()]) {
      if (visited_[next]) continue;
      visited_[next] = true;
      path2_.push_back(next);
      if (extend2()) return true;
      path2_.pop_back();
      visited_[next] = false;
    }
    return false;
  }

  bool bridge_possible() const {
    for (auto n : adj_[path1_.back()])
      if (!visited_[n] && (!bridge_to_ || *bridge_to_ != 2 || n == adj_[start2_].front())) return true;
    return false;
  }

  bool bridge_exists() const {
    for (std::size_t k = 0; k < path2_.size(); ++k)
      if (adjacent_patterns(nodes_[path1_.back()], nodes_[path2_[k]]) && (!bridge_to_ || k + 1 == *bridge_to_))
        return true;
    return false;
  }

  /// Components of the unvisited graph: besides the one holding the chain2
  /// start, at most one more, of exactly the size still owed by chain1.
  bool prune1() const {
    const std::size_t owed = r_ - path1_.size();
    // Chain members alternate in inversion parity: the odd patterns left must
    // be exactly the odd positions still to fill in both chains.
    std::size_t odd_left = 0, odd_slots = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) odd_left += !visited_[i] && odd_[i];
    for (std::size_t pos = path1_.size(); pos < r_; ++pos) odd_slots += (odd_[0] + pos) % 2;
    for (std::size_t pos = 0; pos < r_; ++pos) odd_slots += (odd_[start2_] + pos) % 2;
    if (odd_left != odd_slots) return false;
    std::vector<int> comp(nodes_.size(), -1);
    int other = -1;
    std::size_t other_size = 0;
    int label = 0;
    for (std::size_t s = 0; s < nodes_.size(); ++s) {
      if (visited_[s] || comp[s] >= 0) continue;
      std::size_t size = 0;
      bool has_start2 = false;
      std::vector<std::size_t> stack{s};
      comp[s] = label;
      while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        ++size;
        has_start2 = has_start2 || v == start2_;
        for (auto w : adj_[v])
          if (!visited_[w] && comp[w] < 0) {
            comp[w] = label;
            stack.push_back(w);
          }
      }
      if (has_start2) {
        if (size < r_) return false;
      } else {
        if (other >= 0) return false;
        other = label;
        other_size = size;
      }
      ++label;
    }
    if (other < 0) return true;
    if (other_size != owed) return false;
    for (auto w : adj_[path1_.back()])
      if (!visited_[w] && comp[w] == other) return true;
    return false;
  }

  bool connected_rest(std::size_t from) const {
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<std::size_t> stack;
    for (auto w : adj_[from])
      if (!visited_[w] && !seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    std::size_t reached = 0;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      ++reached;
      for (auto w : adj_[v])
        if (!visited_[w] && !seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    return reached == r_ - path2_.size();
  }

  std::vector<DerivPattern> nodes_;
  std::vector<std::vector<std::size_t>> adj_;
  std::size_t r_ = 0;
  std::size_t start2_ = 0;
  std::vector<bool> visited_;
  std::vector<bool> odd_;
  std::vector<std::size_t> path1_, path2_;
  std::optional<std::size_t> bridge_to_;
};

}  // namespace detail

/// Two chains of adjacent patterns covering all shuffles, joined by one bridge.
/// A bridge into the second member of chain2 is tried first: that placement
/// reproduces the closed-form coefficients. The complement-symmetric search is
/// tried before the unrestricted one, which is exponential already at ell = 3.
/// nullopt when the search is exhausted. Inversion parity alternates along a
/// chain, so two chains of length r cover at most two more even patterns than
/// odd ones; for even ell >= 4 the surplus is binom(ell, ell/2) and the search
/// fails at its root.
inline std::optional<ShuffleChains> find_chains(int ell) {
  if (ell < 1) throw std::invalid_argument("find_chains: ell must be positive");
  if (ell >= 2)
    if (auto c = detail::SymmetricChainSearch(ell).run(ell)) return c;
  detail::ChainSearch search(ell);
  if (ell >= 2)
    if (auto c = search.run(std::size_t{2}, ell)) return c;
  return search.run(std::nullopt, ell);
}

class ChainSearchExhausted : public std::runtime_error {
 public:
  explicit ChainSearchExhausted(int ell)
      : std::runtime_error("build_chains: no partition into two adjacent-swap chains exists for ell = " +
                           std::to_string(ell)),
        ell_(ell) {}
  int ell() const { return ell_; }

 private:
  int ell_;
};

inline ShuffleChains build_chains(int ell) {
  if (auto c = find_chains(ell)) return *c;
  throw ChainSearchExhausted(ell);
}

struct ChainEdge {
  DerivPattern tail;
  DerivPattern head;
};

/// x_1..x_{r-1} along chain1, x_r the bridge, x_{r+1}..x_{2r-1} along chain2.
inline std::vector<ChainEdge> chain_edges(const ShuffleChains& c) {
  std::vector<ChainEdge> e;
  for (std::size_t i = 0; i + 1 < c.chain1.size(); ++i) e.push_back({c.chain1[i], c.chain1[i + 1]});
  e.push_back({c.chain1.back(), c.chain2[static_cast<std::size_t>(c.bridge - 1)]});
  for (std::size_t i = 0; i + 1 < c.chain2.size(); ++i) e.push_back({c.chain2[i], c.chain2[i + 1]});
  return e;
}

struct CocycleSolution {
  ShuffleChains chains;
  Rational m;
  std::vector<Rational> x;
  Rational k;
  std::vector<Rational> closed_form;  // -(2r - i) m, and -m at i = r + 1
  std::vector<int> sign_flipped;      // 1-based indices where x_i = -closed_form_i != 0
  bool k_matches = false;             // k = 2 r m
  bool magnitudes_match = false;      // |x_i| = |closed_form_i| for all i
};

/// Solves m tau - k phi_{pi_1} = sum_e x_e (phi_tail(e) - phi_head(e)) exactly.
inline CocycleSolution solve_cocycle_system(const ShuffleChains& chains, const Rational& m) {
  const auto patterns = enumerate_shuffles(chains.ell);
  const auto edges = chain_edges(chains);
  const std::size_t n = patterns.size();
  const std::size_t r = n / 2;
  std::map<DerivPattern, std::size_t> row;
  for (std::size_t i = 0; i < n; ++i) row[patterns[i]] = i;

  DenseMatrix<Rational> a(n, edges.size() + 1);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    a(row.at(edges[e].tail), e) += 1;
    a(row.at(edges[e].head), e) -= 1;
  }
  a(row.at(chains.chain1.front()), edges.size()) = 1;
  auto sol = solve_exact(std::move(a), std::vector<Rational>(n, m));
  if (!sol) throw std::runtime_error("solve_cocycle_system: inconsistent system for ell = " + std::to_string(chains.ell));

  CocycleSolution out;
  out.chains = chains;
  out.m = m;
  out.x.assign(sol->begin(), sol->end() - 1);
  out.k = sol->back();
  out.k_matches = out.k == Rational(static_cast<long>(2 * r)) * m;
  out.magnitudes_match = true;
  for (std::size_t i = 1; i <= out.x.size(); ++i) {
    const Rational expected = i == r + 1 ? Rational(-m) : Rational(-static_cast<long>(2 * r - i) * m);
    out.closed_form.push_back(expected);
    const Rational& got = out.x[i - 1];
    if (abs(got) != abs(expected)) out.magnitudes_match = false;
    if (got != expected && got == -expected) out.sign_flipped.push_back(static_cast<int>(i));
  }
  return out;
}

/// Breadth-first spanning tree of the adjacency graph, rooted at A^ell B^ell,
/// neighbours in lexicographic order.
inline std::vector<ChainEdge> spanning_tree_edges(int ell) {
  const auto patterns = enumerate_shuffles(ell);
  std::vector<bool> seen(patterns.size(), false);
  std::vector<std::size_t> queue{0};
  seen[0] = true;
  std::vector<ChainEdge> edges;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto v = queue[head];
    for (std::size_t w = 0; w < patterns.size(); ++w)
      if (!seen[w] && adjacent_patterns(patterns[v], patterns[w])) {
        seen[w] = true;
        queue.push_back(w);
        edges.push_back({patterns[v], patterns[w]});
      }
  }
  return edges;
}

struct MembershipCertificate {
  bool member = false;
  bool from_chains = false;  // pairs come from build_chains, else from a spanning tree
  std::vector<ChainEdge> pairs;
  std::vector<Rational> coefficients;  // tau - 2r phi_1 = sum c (phi_tail - phi_head)
};

/// tau - 2r phi_{A^ell B^ell} as an exact combination of differences of
/// adjacent patterns. Uses the chain pairs when chains exist and a spanning
/// tree of the adjacency graph otherwise.
inline MembershipCertificate verify_membership(int ell) {
  const auto patterns = enumerate_shuffles(ell);
  MembershipCertificate cert;
  if (auto chains = find_chains(ell)) {
    cert.pairs = chain_edges(*chains);
    cert.from_chains = true;
  } else {
    cert.pairs = spanning_tree_edges(ell);
  }
  const long two_r = static_cast<long>(patterns.size());

  FormalCochain target = fundamental_cocycle(ell);
  target.add(patterns.front(), Rational(-two_r));

  std::map<DerivPattern, std::size_t> row;
  for (std::size_t i = 0; i < patterns.size(); ++i) row[patterns[i]] = i;
  DenseMatrix<Rational> a(patterns.size(), cert.pairs.size());
  for (std::size_t e = 0; e < cert.pairs.size(); ++e) {
    a(row.at(cert.pairs[e].tail), e) += 1;
    a(row.at(cert.pairs[e].head), e) -= 1;
  }
  std::vector<Rational> b;
  for (const auto& p : patterns) b.push_back(target.coefficient(p));
  auto sol = solve_exact(std::move(a), std::move(b));
  if (!sol) return cert;
  cert.coefficients = *sol;

  FormalCochain rebuilt;
  for (std::size_t e = 0; e < cert.pairs.size(); ++e) {
    rebuilt.add(cert.pairs[e].tail, cert.coefficients[e]);
    rebuilt.add(cert.pairs[e].head, -cert.coefficients[e]);
  }
  cert.member = rebuilt == target;
  return cert;
}

// ---------------------------------------------------------------------------
// Twisted Hochschild coboundary on a finite-dimensional toy algebra.

/// q-commuting polynomials in g generators modulo total degree > D, with the
/// automorphism z_i -> c_i z_i.
class ToyAlgebra {
 public:
  ToyAlgebra(int g, int max_degree, Rational q, std::vector<Rational> sigma)
      : g_(g), q_(std::move(q)), sigma_(std::move(sigma)) {
    if (static_cast<int>(sigma_.size()) != g) throw std::invalid_argument("ToyAlgebra: one eigenvalue per generator");
    for (int d = 0; d <= max_degree; ++d)
      for (auto& m : monomials_of_degree(g, d)) basis_.push_back(std::move(m));
    std::map<QMonomial, int> index;
    for (std::size_t i = 0; i < basis_.size(); ++i) index[basis_[i]] = static_cast<int>(i);
    for (const auto& m : basis_) {
      Rational e = 1;
      for (int i = 0; i < g; ++i)
        for (int p = 0; p < m.s[static_cast<std::size_t>(i)]; ++p) e *= sigma_[static_cast<std::size_t>(i)];
      eigen_.push_back(e);
    }
    const std::size_t d = basis_.size();
    product_.resize(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        auto p = multiply(basis_[i], basis_[j]);
        auto it = index.find(p.monomial);
        if (it == index.end()) continue;  // truncated
        Rational c = 1;
        const Rational base = p.exponent < 0 ? Rational(1 / q_) : q_;
        for (int t = 0; t < std::abs(p.exponent); ++t) c *= base;
        product_[i * d + j] = {it->second, c};
      }
  }

  struct Product {
    int index = -1;  // -1: zero
    Rational coeff;
  };

  std::size_t dim() const { return basis_.size(); }
  const std::vector<QMonomial>& basis() const { return basis_; }
  const Product& product(int i, int j) const { return product_[static_cast<std::size_t>(i) * basis_.size() + static_cast<std::size_t>(j)]; }
  /// sigma(e_i) = eigenvalue(i) e_i
  const Rational& eigenvalue(int i) const { return eigen_[static_cast<std::size_t>(i)]; }

 private:
  int g_;
  Rational q_;
  std::vector<Rational> sigma_;
  std::vector<QMonomial> basis_;
  std::vector<Rational> eigen_;
  std::vector<Product> product_;
};

/// A multilinear functional of degree n, evaluated on basis index tuples.
struct Cochain {
  int degree = 0;
  std::function<Rational(const std::vector<int>&)> eval;
};

/// (b_sigma phi)(a_0..a_{n+1}) = sum_{i=0}^{n} (-1)^i phi(.., a_i a_{i+1}, ..)
///                               + (-1)^{n+1} phi(sigma(a_{n+1}) a_0, a_1, .., a_n)
inline Cochain twisted_coboundary(const ToyAlgebra& alg, Cochain phi) {
  const int n = phi.degree;
  auto f = [&alg, n, phi = std::move(phi)](const std::vector<int>& a) {
    Rational total = 0;
    std::vector<int> args(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
      const auto& p = alg.product(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(i) + 1]);
      if (p.index < 0) continue;
      std::size_t t = 0;
      for (int j = 0; j <= n + 1; ++j) {
        if (j == i + 1) continue;
        args[t++] = j == i ? p.index : a[static_cast<std::size_t>(j)];
      }
      const Rational v = p.coeff * phi.eval(args);
      if (i % 2 == 0) total += v;
      else total -= v;
    }
    const int last = a[static_cast<std::size_t>(n) + 1];
    const auto& p = alg.product(last, a[0]);
    if (p.index >= 0) {
      args[0] = p.index;
      for (int j = 1; j <= n; ++j) args[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j)];
      const Rational v = alg.eigenvalue(last) * p.coeff * phi.eval(args);
      if ((n + 1) % 2 == 0) total += v;
      else total -= v;
    }
    return total;
  };
  return {n + 1, std::move(f)};
}

/// (lambda_sigma phi)(a_0..a_n) = (-1)^n phi(sigma(a_n), a_0, .., a_{n-1})
inline Cochain cyclic_twist(const ToyAlgebra& alg, Cochain phi) {
  const int n = phi.degree;
  auto f = [&alg, n, phi = std::move(phi)](const std::vector<int>& a) {
    std::vector<int> args(a.size());
    args[0] = a.back();
    std::copy(a.begin(), a.end() - 1, args.begin() + 1);
    Rational v = alg.eigenvalue(a.back()) * phi.eval(args);
    return n % 2 == 0 ? v : Rational(-v);
  };
  return {n, std::move(f)};
}

inline Cochain power(const ToyAlgebra& alg, Cochain phi, int times) {
  for (int i = 0; i < times; ++i) phi = cyclic_twist(alg, std::move(phi));
  return phi;
}

/// Dense random cochain; with `invariant`, supported on tuples whose sigma
/// eigenvalues multiply to one, which makes it lambda^{n+1}-fixed.
inline Cochain random_cochain(const ToyAlgebra& alg, int n, std::mt19937& rng, bool invariant) {
  std::size_t size = 1;
  for (int i = 0; i <= n; ++i) size *= alg.dim();
  auto values = std::make_shared<std::vector<Rational>>(size);
  std::uniform_int_distribution<int> dist(-5, 5);
  std::vector<int> idx(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t flat = 0; flat < size; ++flat) {
    std::size_t rest = flat;
    Rational e = 1;
    for (int i = n; i >= 0; --i) {
      idx[static_cast<std::size_t>(i)] = static_cast<int>(rest % alg.dim());
      rest /= alg.dim();
      e *= alg.eigenvalue(idx[static_cast<std::size_t>(i)]);
    }
    const int v = dist(rng);
    (*values)[flat] = (!invariant || e == 1) ? Rational(v) : Rational(0);
  }
  const std::size_t d = alg.dim();
  return {n, [values, d](const std::vector<int>& a) {
            std::size_t flat = 0;
            for (int x : a) flat = flat * d + static_cast<std::size_t>(x);
            return (*values)[flat];
          }};
}

struct CoboundaryReport {
  int n = 0;
  std::vector<Rational> sigma;
  std::size_t cochains = 0;
  std::size_t tuples_per_cochain = 0;
  bool exhaustive = false;
  std::size_t square_nonzero = 0;      // tuples where b_sigma^2 phi != 0
  std::size_t image_nonzero = 0;       // tuples where b_sigma phi != 0 (non-vacuity)
  std::size_t invariance_failures = 0; // lambda-fixedness lost (input or image)
  bool pass = false;
};

/// Checks b_sigma^2 = 0 and that b_sigma maps lambda^{n+1}-fixed cochains to
/// lambda^{n+2}-fixed ones, on `cochains` random cochains of degree n.
inline CoboundaryReport twisted_coboundary_check(int n, std::size_t samples, std::vector<Rational> sigma,
                                                 std::size_t cochains = 50, int max_degree = 2,
                                                 unsigned seed = 1) {
  if (n < 0 || n > 4) throw std::invalid_argument("twisted_coboundary_check: need 0 <= n <= 4");
  const int g = static_cast<int>(sigma.size());
  ToyAlgebra alg(g, max_degree, Rational(1, 2), sigma);
  std::mt19937 rng(seed);
  CoboundaryReport rep;
  rep.n = n;
  rep.sigma = std::move(sigma);
  rep.cochains = cochains;

  auto tuples_of = [&](std::size_t len) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= alg.dim();
    std::vector<std::vector<int>> out;
    std::uniform_int_distribution<int> pick(0, static_cast<int>(alg.dim()) - 1);
    if (total <= samples) {
      for (std::size_t flat = 0; flat < total; ++flat) {
        std::vector<int> t(len);
        std::size_t rest = flat;
        for (std::size_t i = len; i-- > 0;) {
          t[i] = static_cast<int>(rest % alg.dim());
          rest /= alg.dim();
        }
        out.push_back(std::move(t));
      }
    } else {
      for (std::size_t s = 0; s < samples; ++s) {
        std::vector<int> t(len);
        for (auto& x : t) x = pick(rng);
        out.push_back(std::move(t));
      }
    }
    return std::pair{out, total <= samples};
  };

  for (std::size_t c = 0; c < cochains; ++c) {
    auto phi = random_cochain(alg, n, rng, false);
    auto b1 = twisted_coboundary(alg, phi);
    auto b2 = twisted_coboundary(alg, b1);
    auto [tuples2, exhaustive] = tuples_of(static_cast<std::size_t>(n) + 3);
    rep.exhaustive = exhaustive;
    rep.tuples_per_cochain = tuples2.size();
    for (const auto& t : tuples2)
      if (b2.eval(t) != 0) ++rep.square_nonzero;
    auto [tuples1, ex1] = tuples_of(static_cast<std::size_t>(n) + 2);
    (void)ex1;
    for (const auto& t : tuples1)
      if (b1.eval(t) != 0) ++rep.image_nonzero;

    auto inv = random_cochain(alg, n, rng, true);
    auto [tuples0, ex0] = tuples_of(static_cast<std::size_t>(n) + 1);
    (void)ex0;
    auto fixed = power(alg, inv, n + 1);
    for (const auto& t : tuples0)
      if (fixed.eval(t) != inv.eval(t)) ++rep.invariance_failures;
    auto binv = twisted_coboundary(alg, inv);
    auto twisted = power(alg, binv, n + 2);
    for (const auto& t : tuples1)
      if (twisted.eval(t) != binv.eval(t)) ++rep.invariance_failures;
  }
  rep.pass = rep.square_nonzero == 0 && rep.invariance_failures == 0 && rep.image_nonzero > 0;
  return rep;
}

}  // namespace qcp
