#pragma once

// Slow, obviously-correct reference implementations used only by the tests.

#include "cayley/abelian.hpp"
#include "cayley/digraph.hpp"
#include "cayley/mdd.hpp"
#include "cayley/presentation.hpp"
#include "cayley/zmatrix.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using cayley::CayleyDigraph;
using cayley::GroupElement;
using cayley::IntMatrix;
using cayley::Integer;
using cayley::InvariantFactors;
using cayley::Point;

/// Size of the subgroup generated by `gens`: closure under addition.
inline std::int64_t subgroup_size(const InvariantFactors& g, const std::vector<GroupElement>& gens) {
  std::set<GroupElement> seen{g.zero()};
  std::vector<GroupElement> frontier{g.zero()};
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const auto& x : frontier)
      for (const auto& t : gens) {
        GroupElement y = cayley::add(g, x, t);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return static_cast<std::int64_t>(seen.size());
}

/// All (s_1, ..., s_d) with s_i | s_{i+1} and product n, by trying every
/// d-tuple of divisors of n.
inline std::vector<std::vector<std::int64_t>> divisor_chains(std::int64_t n, std::size_t d) {
  std::vector<std::int64_t> divs;
  for (std::int64_t k = 1; k <= n; ++k)
    if (n % k == 0) divs.push_back(k);
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::size_t> pick(d, 0);
  while (true) {
    std::vector<std::int64_t> t(d);
    std::int64_t prod = 1;
    bool chain = true;
    for (std::size_t i = 0; i < d; ++i) {
      t[i] = divs[pick[i]];
      prod *= t[i];
      if (i && t[i] % t[i - 1] != 0) chain = false;
    }
    if (chain && prod == n) out.push_back(t);
    std::size_t i = d;
    while (i > 0 && ++pick[i - 1] == divs.size()) pick[--i] = 0;
    if (i == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Integer minor(const IntMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  IntMatrix sub(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) sub(r, c) = m(rows[r], cols[c]);
  return cayley::det(sub);
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask[i]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(mask.begin(), mask.end()));
}

/// Invariant factors from determinantal divisors: s_k = D_k / D_{k-1}, D_k
/// the gcd of all k x k minors. Zero factors are reported as 0.
inline std::vector<Integer> invariant_factors_by_minors(const IntMatrix& m) {
  const std::size_t r = std::min(m.rows(), m.cols());
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= r; ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    subsets(m.rows(), k, rs);
    subsets(m.cols(), k, cs);
    Integer dk = 0;
    for (const auto& a : rs)
      for (const auto& b : cs) dk = cayley::gcd(dk, minor(m, a, b));
    if (dk == 0 || prev == 0) {
      out.push_back(0);
      prev = 0;
      continue;
    }
    out.push_back(dk / prev);
    prev = dk;
  }
  return out;
}

/// Calls f on every nonnegative d-vector of 1-norm exactly `total`.
template <class F>
void compositions(std::size_t d, std::int64_t total, F&& f) {
  Point a(d, 0);
  auto rec = [&](auto&& self, std::size_t pos, std::int64_t left) -> void {
    if (pos + 1 == d) {
      a[pos] = left;
      f(a);
      return;
    }
    for (std::int64_t v = left; v >= 0; --v) {
      a[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, total);
}

/// Minimal nonnegative word length of every element, found by enumerating
/// exponent vectors by increasing norm (no graph search).
inline std::map<GroupElement, std::int64_t> word_lengths(const CayleyDigraph& g) {
  std::map<GroupElement, std::int64_t> out;
  for (std::int64_t norm = 0; static_cast<std::int64_t>(out.size()) < g.order(); ++norm) {
    compositions(g.degree(), norm, [&](const Point& a) { out.emplace(cayley::phi(g, a), norm); });
    if (norm > g.order()) break;
  }
  return out;
}

/// For each element, the lex-least exponent vector among those of minimal
/// norm.
inline std::set<Point> lex_min_representatives(const CayleyDigraph& g) {
  std::map<GroupElement, std::int64_t> len = word_lengths(g);
  std::map<GroupElement, Point> best;
  std::int64_t top = 0;
  for (const auto& [e, l] : len) top = std::max(top, l);
  for (std::int64_t norm = 0; norm <= top; ++norm)
    compositions(g.degree(), norm, [&](const Point& a) {
      GroupElement e = cayley::phi(g, a);
      if (len.at(e) != norm) return;
      auto it = best.find(e);
      if (it == best.end() || a < it->second) best[e] = a;
    });
  std::set<Point> out;
  for (const auto& [e, a] : best) out.insert(a);
  return out;
}

inline bool downward_closed(const std::set<Point>& pts) {
  for (const auto& p : pts)
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] > 0) {
        Point q = p;
        --q[i];
        if (!pts.contains(q)) return false;
      }
  return true;
}

/// Every cyclic digraph Cay(Z_n, T) with |T| = d, T a generating set of
/// distinct nonzero residues listed increasingly.
inline std::vector<CayleyDigraph> cyclic_digraphs(std::int64_t n, std::size_t d) {
  std::vector<CayleyDigraph> out;
  std::vector<std::int64_t> pick(d);
  auto rec = [&](auto&& self, std::size_t pos, std::int64_t from) -> void {
    if (pos == d) {
      std::int64_t g = n;
      for (auto v : pick) g = std::gcd(g, v);
      if (g != 1) return;
      std::vector<cayley::Lift> lifts;
      for (auto v : pick) lifts.push_back({v});
      out.emplace_back(InvariantFactors({n}), lifts);
      return;
    }
    for (std::int64_t v = from; v < n; ++v) {
      pick[pos] = v;
      self(self, pos + 1, v + 1);
    }
  };
  rec(rec, 0, 1);
  return out;
}

/// A random cyclic digraph of order n in [lo, hi] and degree d.
inline CayleyDigraph random_cyclic(std::mt19937& rng, std::int64_t lo, std::int64_t hi, std::size_t d) {
  std::uniform_int_distribution<std::int64_t> order(lo, hi);
  while (true) {
    std::int64_t n = order(rng);
    if (n - 1 < static_cast<std::int64_t>(d)) continue;
    std::uniform_int_distribution<std::int64_t> res(1, n - 1);
    std::set<std::int64_t> t;
    while (t.size() < d) t.insert(res(rng));
    std::int64_t g = n;
    for (auto v : t) g = std::gcd(g, v);
    if (g != 1) continue;
    std::vector<cayley::Lift> lifts;
    for (auto v : t) lifts.push_back({v});
    return CayleyDigraph(InvariantFactors({n}), lifts);
  }
}

/// A digraph with a proper generating set: the U-columns of the Smith form of
/// a random d x d matrix with 2 <= |det| <= max_order.
inline CayleyDigraph random_proper(std::mt19937& rng, std::size_t d, std::int64_t max_order, int spread = 5) {
  std::uniform_int_distribution<int> entry(-spread, spread);
  while (true) {
    IntMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = entry(rng);
    Integer n = cayley::abs(cayley::det(m));
    if (n < 2 || n > max_order) continue;
    auto p = cayley::proper_generating_set(m);
    try {
      return CayleyDigraph(p.group, p.lifts);
    } catch (const std::invalid_argument&) {
      // a zero or repeated generator; draw again
    }
  }
}

}  // namespace oracle
