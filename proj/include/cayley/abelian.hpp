#pragma once

// Finite Abelian groups in invariant-factor form Z_{s_1} + ... + Z_{s_d}
// with s_1 | s_2 | ... | s_d.

#include "cayley/integer.hpp"
#include "cayley/zmatrix.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cayley {

/// An element of Z_{s_1} + ... + Z_{s_d}, coordinates in [0, s_i).
struct GroupElement {
  std::vector<std::int64_t> coords;

  std::size_t rank() const { return coords.size(); }
  bool is_zero() const {
    for (auto c : coords)
      if (c != 0) return false;
    return true;
  }
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

class InvariantFactors {
 public:
  InvariantFactors() = default;

  /// Throws std::invalid_argument unless every modulus is positive and each
  /// divides the next.
  explicit InvariantFactors(std::vector<std::int64_t> moduli) : s_(std::move(moduli)) {
    if (s_.empty()) throw std::invalid_argument("a group needs at least one modulus");
    order_ = 1;
    for (std::size_t i = 0; i < s_.size(); ++i) {
      if (s_[i] < 1) throw std::invalid_argument("moduli must be positive");
      if (i > 0 && s_[i] % s_[i - 1] != 0)
        throw std::invalid_argument("moduli " + std::to_string(s_[i - 1]) + " and " +
                                    std::to_string(s_[i]) + " do not form a divisibility chain");
      if (order_ > std::numeric_limits<std::int64_t>::max() / s_[i])
        throw std::overflow_error("group order overflows 64 bits");
      order_ *= s_[i];
    }
  }

  std::size_t rank() const { return s_.size(); }
  std::int64_t order() const { return order_; }
  std::int64_t operator[](std::size_t i) const { return s_[i]; }
  const std::vector<std::int64_t>& moduli() const { return s_; }
  std::int64_t exponent() const { return s_.back(); }

  /// True when at most the last modulus exceeds 1.
  bool cyclic() const {
    for (std::size_t i = 0; i + 1 < s_.size(); ++i)
      if (s_[i] != 1) return false;
    return true;
  }

  /// Pads with leading 1s up to `rank`.
  InvariantFactors padded(std::size_t rank) const {
    if (rank < s_.size()) throw std::invalid_argument("cannot pad a group to a smaller rank");
    std::vector<std::int64_t> s(rank - s_.size(), 1);
    s.insert(s.end(), s_.begin(), s_.end());
    return InvariantFactors(std::move(s));
  }

  InvariantFactors scaled(std::int64_t m) const {
    if (m < 1) throw std::invalid_argument("dilation factor must be positive");
    std::vector<std::int64_t> s = s_;
    for (auto& v : s) v *= m;
    return InvariantFactors(std::move(s));
  }

  GroupElement reduce(std::span<const std::int64_t> raw) const {
    if (raw.size() != s_.size())
      throw std::invalid_argument("element has " + std::to_string(raw.size()) +
                                  " coordinates, group has rank " + std::to_string(s_.size()));
    GroupElement e;
    e.coords.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) e.coords[i] = mod_floor(raw[i], s_[i]);
    return e;
  }

  GroupElement zero() const { return GroupElement{std::vector<std::int64_t>(s_.size(), 0)}; }

  bool contains(const GroupElement& e) const {
    if (e.rank() != rank()) return false;
    for (std::size_t i = 0; i < s_.size(); ++i)
      if (e.coords[i] < 0 || e.coords[i] >= s_[i]) return false;
    return true;
  }

  /// Mixed-radix index; the last coordinate varies fastest, so index order is
  /// lexicographic order on coordinates.
  std::int64_t index(const GroupElement& e) const {
    if (!contains(e)) throw std::invalid_argument("element is not a reduced member of the group");
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < s_.size(); ++i) idx = idx * s_[i] + e.coords[i];
    return idx;
  }

  GroupElement element_at(std::int64_t idx) const {
    GroupElement e;
    e.coords.resize(s_.size());
    for (std::size_t i = s_.size(); i-- > 0;) {
      e.coords[i] = idx % s_[i];
      idx /= s_[i];
    }
    return e;
  }

  std::string str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < s_.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(s_[i]);
    }
    return out + "]";
  }

  friend bool operator==(const InvariantFactors& a, const InvariantFactors& b) { return a.s_ == b.s_; }
  friend auto operator<=>(const InvariantFactors& a, const InvariantFactors& b) { return a.s_ <=> b.s_; }

 private:
  std::vector<std::int64_t> s_;
  std::int64_t order_ = 1;
};

inline GroupElement add(const InvariantFactors& g, const GroupElement& a, const GroupElement& b) {
  if (a.rank() != g.rank() || b.rank() != g.rank())
    throw std::invalid_argument("element rank does not match the group");
  if (!g.contains(a) || !g.contains(b)) throw std::invalid_argument("element is not reduced modulo the group");
  GroupElement out;
  out.coords.resize(g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i) out.coords[i] = mod_floor(a.coords[i] + b.coords[i], g[i]);
  return out;
}

inline GroupElement multiply(const InvariantFactors& g, std::int64_t k, const GroupElement& a) {
  GroupElement out;
  out.coords.resize(g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i) {
    Integer v = Integer(k) * a.coords[i];
    out.coords[i] = to_int64(mod_floor(v, Integer(g[i])));
  }
  return out;
}

/// The divisibility chain of the same length presenting Z_{m_1} + ... + Z_{m_k}.
/// Pairwise (gcd, lcm) replacement, which is the Smith form of diag(m).
inline InvariantFactors canonical_invariant_factors(std::vector<std::int64_t> moduli) {
  if (moduli.empty()) throw std::invalid_argument("empty modulus list");
  for (auto m : moduli)
    if (m <= 0) throw std::invalid_argument("moduli must be positive");
  for (std::size_t i = 0; i < moduli.size(); ++i)
    for (std::size_t j = i + 1; j < moduli.size(); ++j) {
      std::int64_t g = gcd64(moduli[i], moduli[j]);
      std::int64_t l = moduli[i] / g * moduli[j];
      moduli[i] = g;
      moduli[j] = l;
    }
  return InvariantFactors(std::move(moduli));
}

namespace detail {
inline void enumerate_chains(std::int64_t remaining, std::size_t slots, std::int64_t prev,
                             std::vector<std::int64_t>& chain,
                             std::vector<InvariantFactors>& out) {
  if (slots == 1) {
    if (remaining % prev == 0) {
      chain.push_back(remaining);
      out.emplace_back(chain);
      chain.pop_back();
    }
    return;
  }
  // The remaining `slots` values are all multiples of s >= prev, so s^slots | remaining.
  for (std::int64_t s = prev; s <= remaining; s += prev) {
    std::int64_t power = 1;
    bool fits = true;
    for (std::size_t k = 0; k < slots; ++k) {
      if (power > remaining / s) {
        fits = false;
        break;
      }
      power *= s;
    }
    if (!fits) break;
    if (remaining % power != 0) continue;
    chain.push_back(s);
    enumerate_chains(remaining / s, slots - 1, s, chain, out);
    chain.pop_back();
  }
}
}  // namespace detail

/// Every Abelian group of order n as a length-d divisibility chain, in
/// lexicographic order.
inline std::vector<InvariantFactors> enumerate_groups(std::int64_t n, std::size_t d) {
  if (n < 1 || d < 1) throw std::invalid_argument("enumerate_groups needs n >= 1 and d >= 1");
  std::vector<InvariantFactors> out;
  std::vector<std::int64_t> chain;
  detail::enumerate_chains(n, d, 1, chain, out);
  return out;
}

/// True iff `gens` generate the whole group: the Smith form of
/// [gens as columns | diag(s)] has all invariant factors equal to 1.
inline bool generates(const InvariantFactors& g, std::span<const GroupElement> gens) {
  if (gens.empty()) return g.order() == 1;
  const std::size_t d = g.rank();
  IntMatrix m(d, gens.size() + d);
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (gens[j].rank() != d) throw std::invalid_argument("generator rank does not match the group");
    for (std::size_t i = 0; i < d; ++i) m(i, j) = gens[j].coords[i];
  }
  for (std::size_t i = 0; i < d; ++i) m(i, gens.size() + i) = g[i];
  for (const auto& f : invariant_factors(m))
    if (f != 1) return false;
  return true;
}

}  // namespace cayley
