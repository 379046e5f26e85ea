#pragma once

// Cayley digraphs Cay(G, T) on finite Abelian groups: BFS distances,
// diameter, solid density and dilation.

#include "cayley/abelian.hpp"
#include "cayley/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cayley {

using Lift = std::vector<std::int64_t>;

/// A Cayley digraph with an ordered generating set.
///
/// Each generator is kept both as the integer vector it was given with (its
/// lift) and reduced into the group. The lift is what dilation acts on:
/// Cay(Z_3 + Z_24, {(0,1),(-1,3)}) dilates to a different digraph than the
/// same generators written as (0,1),(2,3).
class CayleyDigraph {
 public:
  CayleyDigraph() = default;

  /// Groups of smaller rank than the generator count are padded with leading
  /// Z_1 summands (and lifts with leading zeros). Throws std::invalid_argument
  /// if a generator is zero, repeated, or the set does not generate.
  CayleyDigraph(InvariantFactors group, std::vector<Lift> lifts) : lifts_(std::move(lifts)) {
    if (lifts_.empty()) throw std::invalid_argument("a Cayley digraph needs at least one generator");
    const std::size_t given_rank = group.rank();
    const std::size_t d = lifts_.size();
    if (given_rank > d)
      throw std::invalid_argument("group rank " + std::to_string(given_rank) + " exceeds degree " +
                                  std::to_string(d));
    for (auto& lift : lifts_) {
      if (lift.size() != given_rank)
        throw std::invalid_argument("generator has " + std::to_string(lift.size()) +
                                    " coordinates, group has rank " + std::to_string(given_rank));
      lift.insert(lift.begin(), d - given_rank, 0);
    }
    group_ = group.padded(d);
    std::set<GroupElement> seen;
    for (const auto& lift : lifts_) {
      GroupElement e = group_.reduce(lift);
      if (e.is_zero()) throw std::invalid_argument("generating set contains the identity");
      if (!seen.insert(e).second) throw std::invalid_argument("generating set has a repeated element");
      gens_.push_back(std::move(e));
    }
    if (!generates(group_, gens_)) throw std::invalid_argument("generators do not generate the group");
  }

  const InvariantFactors& group() const { return group_; }
  std::size_t degree() const { return gens_.size(); }
  std::int64_t order() const { return group_.order(); }
  const std::vector<GroupElement>& gens() const { return gens_; }
  const std::vector<Lift>& lifts() const { return lifts_; }

  /// `Cay([3,24],{(0,1),(-1,3)})`, generators printed as lifts.
  std::string str() const {
    std::string s = "Cay(" + group_.str() + ",{";
    for (std::size_t j = 0; j < lifts_.size(); ++j) {
      if (j) s += ",";
      s += "(";
      for (std::size_t i = 0; i < lifts_[j].size(); ++i) {
        if (i) s += ",";
        s += std::to_string(lifts_[j][i]);
      }
      s += ")";
    }
    return s + "})";
  }

  friend bool operator==(const CayleyDigraph& a, const CayleyDigraph& b) {
    return a.group_ == b.group_ && a.lifts_ == b.lifts_;
  }

 private:
  InvariantFactors group_;
  std::vector<Lift> lifts_;
  std::vector<GroupElement> gens_;
};

/// Exact BFS distances from the identity, indexed by InvariantFactors::index.
struct DistanceProfile {
  InvariantFactors group;
  std::vector<std::uint32_t> dist;

  std::uint32_t at(const GroupElement& e) const { return dist[static_cast<std::size_t>(group.index(e))]; }
  std::uint32_t max() const { return dist.empty() ? 0 : *std::max_element(dist.begin(), dist.end()); }
};

/// Mixed-radix successor computation for BFS over a fixed group.
class GroupIndexer {
 public:
  explicit GroupIndexer(const InvariantFactors& g) : group_(g), stride_(g.rank()) {
    std::int64_t s = 1;
    for (std::size_t i = g.rank(); i-- > 0;) {
      stride_[i] = s;
      s *= g[i];
    }
  }

  const InvariantFactors& group() const { return group_; }
  std::int64_t size() const { return group_.order(); }

  /// Index of element(idx) + gen, where gen is already reduced.
  std::int64_t add(std::int64_t idx, const GroupElement& gen) const {
    std::int64_t out = 0;
    for (std::size_t i = 0; i < group_.rank(); ++i) {
      std::int64_t c = (idx / stride_[i]) % group_[i] + gen.coords[i];
      if (c >= group_[i]) c -= group_[i];
      out += c * stride_[i];
    }
    return out;
  }

 private:
  InvariantFactors group_;
  std::vector<std::int64_t> stride_;
};

namespace detail {

inline constexpr std::uint32_t kUnreached = 0xffffffffu;

// BFS from index 0 using `step(idx, j)` for the j-th generator. Stops early
// and returns kUnreached once a vertex at depth > cutoff is discovered.
// Returns the eccentricity of the identity, or kUnreached if some vertex is
// not reachable.
template <class Step>
std::uint32_t bfs(std::int64_t n, std::size_t degree, Step&& step, std::vector<std::uint32_t>& dist,
                  std::vector<std::int64_t>& queue, std::uint32_t cutoff = kUnreached) {
  dist.assign(static_cast<std::size_t>(n), kUnreached);
  queue.resize(static_cast<std::size_t>(n));
  std::size_t head = 0, tail = 0;
  dist[0] = 0;
  queue[tail++] = 0;
  std::uint32_t ecc = 0;
  while (head < tail) {
    std::int64_t v = queue[head++];
    std::uint32_t dv = dist[static_cast<std::size_t>(v)];
    for (std::size_t j = 0; j < degree; ++j) {
      std::int64_t w = step(v, j);
      auto& dw = dist[static_cast<std::size_t>(w)];
      if (dw != kUnreached) continue;
      dw = dv + 1;
      if (dw > cutoff) return kUnreached;
      ecc = dw;
      queue[tail++] = w;
    }
  }
  return static_cast<std::int64_t>(tail) == n ? ecc : kUnreached;
}

}  // namespace detail

inline DistanceProfile distance_profile(const CayleyDigraph& g) {
  GroupIndexer indexer(g.group());
  DistanceProfile out{g.group(), {}};
  std::vector<std::int64_t> queue;
  const auto& gens = g.gens();
  std::uint32_t ecc = detail::bfs(
      g.order(), g.degree(), [&](std::int64_t v, std::size_t j) { return indexer.add(v, gens[j]); },
      out.dist, queue);
  if (ecc == detail::kUnreached) throw std::logic_error("Cayley digraph is not strongly connected");
  return out;
}

/// k(Cay(G,T)); one BFS from the identity suffices by vertex transitivity.
inline std::int64_t diameter(const CayleyDigraph& g) { return distance_profile(g).max(); }

/// n / (k + d)^d, exact.
inline Rational solid_density(const CayleyDigraph& g) {
  Integer solid = Integer(diameter(g)) + g.degree();
  return Rational(Integer(g.order()), pow(solid, static_cast<unsigned>(g.degree())));
}

/// mCay(G,T) = Cay(mG, T): every modulus times m, same generator lifts. The
/// result is only guaranteed to behave as a dilate when T is proper.
inline CayleyDigraph dilate_digraph(const CayleyDigraph& g, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("dilation factor must be at least 1");
  return CayleyDigraph(g.group().scaled(m), g.lifts());
}

/// m-dilates of the densest known digraphs of degree 2 and 3:
/// mUpsilon_2 = Cay(Z_m + Z_3m, {(0,1),(1,-1)}) with diameter 3m-2 and
/// mUpsilon_3 = Cay(Z_m + Z_m + Z_84m, {(1,10,-38),(0,1,-3),(0,-2,7)}) with
/// diameter 10m-3.
inline CayleyDigraph upsilon(std::size_t d, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("dilation factor must be at least 1");
  if (d == 2) return CayleyDigraph(InvariantFactors({m, 3 * m}), {{0, 1}, {1, -1}});
  if (d == 3)
    return CayleyDigraph(InvariantFactors({m, m, 84 * m}), {{1, 10, -38}, {0, 1, -3}, {0, -2, 7}});
  throw std::invalid_argument("upsilon is only defined for degree 2 or 3");
}

}  // namespace cayley
