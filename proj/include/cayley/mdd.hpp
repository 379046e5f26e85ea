#pragma once

// Minimum distance diagrams: construction, verification, dilation, and the
// degree-2 L-shape description.
//
// A point a in N^d stands for the unit cube [a, a+1]. Diameters are measured
// at the far corner of the cubes, so the solid diameter of an MDD is
// d + max |a|_1 and equals k(Gamma) + d.

#include "cayley/abelian.hpp"
#include "cayley/digraph.hpp"
#include "cayley/presentation.hpp"
#include "cayley/zmatrix.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cayley {

using Point = std::vector<std::int64_t>;

inline std::int64_t norm1(const Point& a) {
  std::int64_t s = 0;
  for (auto v : a) s += v < 0 ? -v : v;
  return s;
}

/// a_1 g_1 + ... + a_d g_d. Coordinates may be negative.
inline GroupElement phi(const CayleyDigraph& g, std::span<const std::int64_t> a) {
  if (a.size() != g.degree())
    throw std::invalid_argument("lattice vector has " + std::to_string(a.size()) +
                                " coordinates, digraph has degree " + std::to_string(g.degree()));
  const auto& G = g.group();
  GroupElement out = G.zero();
  for (std::size_t j = 0; j < a.size(); ++j) out = add(G, out, multiply(G, a[j], g.gens()[j]));
  return out;
}

class MddConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Mdd {
  CayleyDigraph source;
  std::vector<Point> points;  // sorted lexicographically
  bool corrective_pass_used = false;

  std::size_t degree() const { return source.degree(); }
  std::size_t size() const { return points.size(); }
};

namespace detail {

// Visits every a in N^d with |a|_1 = total in lexicographic order until
// `visit` returns true.
inline bool for_each_composition(std::size_t d, std::int64_t total, Point& a, std::size_t pos,
                                 const std::function<bool(const Point&)>& visit) {
  if (pos + 1 == d) {
    a[pos] = total;
    return visit(a);
  }
  for (std::int64_t v = 0; v <= total; ++v) {
    a[pos] = v;
    if (for_each_composition(d, total - v, a, pos + 1, visit)) return true;
  }
  return false;
}

}  // namespace detail

/// Builds an MDD by choosing, for every element in increasing BFS distance,
/// the lexicographically smallest representative of minimum norm whose
/// lower box is already present.
///
/// The lexicographically smallest minimum-norm representatives are computed
/// by relaxing along BFS arcs. Because lexicographic order is translation
/// invariant, these representatives are always downward closed; each choice
/// is still checked, and a failed check falls back to an explicit scan over
/// all minimum-norm representatives (recorded in corrective_pass_used).
inline Mdd build_mdd(const CayleyDigraph& g) {
  const DistanceProfile profile = distance_profile(g);
  const auto& G = g.group();
  const std::size_t d = g.degree();
  const auto n = static_cast<std::size_t>(g.order());
  GroupIndexer indexer(G);

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return profile.dist[a] < profile.dist[b]; });

  std::vector<Point> rep(n);
  rep[0] = Point(d, 0);
  for (std::size_t v : order) {
    for (std::size_t j = 0; j < d; ++j) {
      auto w = static_cast<std::size_t>(indexer.add(static_cast<std::int64_t>(v), g.gens()[j]));
      if (profile.dist[w] != profile.dist[v] + 1) continue;
      Point cand = rep[v];
      ++cand[j];
      if (rep[w].empty() || cand < rep[w]) rep[w] = std::move(cand);
    }
  }

  Mdd out{g, {}, false};
  std::set<Point> chosen;
  auto claimable = [&](const Point& a) {
    for (std::size_t i = 0; i < d; ++i) {
      if (a[i] == 0) continue;
      Point b = a;
      --b[i];
      if (!chosen.contains(b)) return false;
    }
    return true;
  };
  for (std::size_t v : order) {
    const auto target = static_cast<std::int64_t>(v);
    if (!claimable(rep[v])) {
      out.corrective_pass_used = true;
      std::optional<Point> found;
      Point scratch(d, 0);
      detail::for_each_composition(d, profile.dist[v], scratch, 0, [&](const Point& a) {
        if (G.index(phi(g, a)) == target && claimable(a)) {
          found = a;
          return true;
        }
        return false;
      });
      if (!found)
        throw MddConstructionError("MDD construction exhausted at element " +
                                   std::to_string(target) + " of " + g.str());
      rep[v] = *found;
    }
    chosen.insert(rep[v]);
  }
  out.points.assign(chosen.begin(), chosen.end());
  return out;
}

/// Checks the three defining conditions against an independent BFS:
/// phi is a bijection onto G, the set is downward closed, and every point
/// has norm equal to the distance of its image.
inline bool verify_mdd(const Mdd& h) {
  const CayleyDigraph& g = h.source;
  const auto& G = g.group();
  const std::size_t d = g.degree();
  if (h.points.size() != static_cast<std::size_t>(g.order())) return false;
  const DistanceProfile profile = distance_profile(g);
  std::vector<char> hit(h.points.size(), 0);
  std::set<Point> members(h.points.begin(), h.points.end());
  if (members.size() != h.points.size()) return false;
  for (const auto& a : h.points) {
    if (a.size() != d) return false;
    for (auto c : a)
      if (c < 0) return false;
    GroupElement e = phi(g, a);
    auto idx = static_cast<std::size_t>(G.index(e));
    if (hit[idx]) return false;
    hit[idx] = 1;
    if (norm1(a) != static_cast<std::int64_t>(profile.dist[idx])) return false;
    for (std::size_t i = 0; i < d; ++i) {
      if (a[i] == 0) continue;
      Point b = a;
      --b[i];
      if (!members.contains(b)) return false;
    }
  }
  return true;
}

/// d + max |a|_1 over the points; equals diameter(source) + d.
inline std::int64_t solid_diameter(const Mdd& h) {
  std::int64_t best = 0;
  for (const auto& a : h.points) best = std::max(best, norm1(a));
  return best + static_cast<std::int64_t>(h.degree());
}

/// Replaces every cube a by the m^d cubes m*a + alpha, 0 <= alpha_i < m, and
/// the source by its m-dilate.
inline Mdd dilate_mdd(const Mdd& h, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("dilation factor must be at least 1");
  const std::size_t d = h.degree();
  Mdd out{dilate_digraph(h.source, m), {}, h.corrective_pass_used};
  std::size_t cube = 1;
  for (std::size_t i = 0; i < d; ++i) cube *= static_cast<std::size_t>(m);
  out.points.reserve(h.points.size() * cube);
  Point alpha(d, 0);
  for (const auto& a : h.points) {
    std::fill(alpha.begin(), alpha.end(), 0);
    for (;;) {
      Point p(d);
      for (std::size_t i = 0; i < d; ++i) p[i] = m * a[i] + alpha[i];
      out.points.push_back(std::move(p));
      std::size_t i = d;
      while (i > 0 && alpha[i - 1] == m - 1) alpha[--i] = 0;
      if (i == 0) break;
      ++alpha[i - 1];
    }
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

/// L(l,h,w,y): the l x h rectangle with the w x y block removed from its
/// upper right corner. Rectangles have w = 0 or y = 0; the nonzero one records
/// the shift of the tessellation.
struct LShape {
  std::int64_t l = 0, h = 0, w = 0, y = 0;

  std::int64_t area() const { return l * h - w * y; }
  bool rectangle() const { return w == 0 || y == 0; }
  bool contains(std::int64_t x, std::int64_t z) const {
    if (x < 0 || z < 0 || x >= l || z >= h) return false;
    return !(x >= l - w && z >= h - y);
  }
  std::string str() const {
    return "L(" + std::to_string(l) + "," + std::to_string(h) + "," + std::to_string(w) + "," +
           std::to_string(y) + ")";
  }
  friend bool operator==(const LShape&, const LShape&) = default;
};

/// D(H) = l + h - min(w, y).
inline std::int64_t lshape_solid_diameter(const LShape& s) { return s.l + s.h - std::min(s.w, s.y); }

/// Columns m_1 = (l, -y) and m_2 = (-w, h) of the translation lattice.
inline IntMatrix lshape_tessellation_matrix(const LShape& s) {
  IntMatrix m(2, 2);
  m(0, 0) = s.l;
  m(0, 1) = -s.w;
  m(1, 0) = -s.y;
  m(1, 1) = s.h;
  return m;
}

/// n = lh - wy, s_1 = gcd(l,h,w,y), la = yb, wa = hb, and
/// (l-y)(h-w) >= 0 with at most one vanishing factor.
inline bool lshape_validate(const LShape& s, const CayleyDigraph& g) {
  if (g.degree() != 2) return false;
  if (s.l < 1 || s.h < 1 || s.w < 0 || s.y < 0 || s.w >= s.l || s.y >= s.h) return false;
  const auto& G = g.group();
  const GroupElement& a = g.gens()[0];
  const GroupElement& b = g.gens()[1];
  if (s.area() != g.order()) return false;
  if (gcd64(gcd64(s.l, s.h), gcd64(s.w, s.y)) != G[0]) return false;
  if (multiply(G, s.l, a) != multiply(G, s.y, b)) return false;
  if (multiply(G, s.w, a) != multiply(G, s.h, b)) return false;
  const std::int64_t f1 = s.l - s.y, f2 = s.h - s.w;
  if (f1 * f2 < 0) return false;
  if (f1 == 0 && f2 == 0) return false;
  return true;
}

/// The L-shape whose cubes are exactly the MDD's points. For rectangles the
/// shift (w or y) is recovered from the generators.
inline LShape extract_lshape(const Mdd& h) {
  if (h.degree() != 2) throw std::invalid_argument("extract_lshape needs a degree-2 MDD");
  std::vector<std::int64_t> heights;
  for (const auto& p : h.points) {
    if (p[0] < 0 || p[1] < 0) throw std::logic_error("MDD has a point outside the first quadrant");
    if (static_cast<std::size_t>(p[0]) >= heights.size()) heights.resize(static_cast<std::size_t>(p[0]) + 1, 0);
    heights[static_cast<std::size_t>(p[0])] = std::max(heights[static_cast<std::size_t>(p[0])], p[1] + 1);
  }
  std::int64_t filled = 0;
  for (auto v : heights) filled += v;
  if (heights.empty() || filled != static_cast<std::int64_t>(h.points.size()))
    throw std::logic_error("MDD columns have gaps; not an L-shape");
  for (std::size_t x = 1; x < heights.size(); ++x)
    if (heights[x] > heights[x - 1]) throw std::logic_error("MDD column heights increase; not an L-shape");
  const auto l = static_cast<std::int64_t>(heights.size());
  const std::int64_t top = heights.front(), low = heights.back();
  std::int64_t w = 0;
  for (auto v : heights) {
    if (v != top && v != low) throw std::logic_error("MDD has more than two column heights; not an L-shape");
    if (v == low) ++w;
  }
  if (top != low) return LShape{l, top, w, top - low};

  const auto& G = h.source.group();
  const GroupElement& a = h.source.gens()[0];
  const GroupElement& b = h.source.gens()[1];
  if (multiply(G, top, b).is_zero()) {
    GroupElement la = multiply(G, l, a);
    for (std::int64_t y = 0; y < top; ++y)
      if (multiply(G, y, b) == la) return LShape{l, top, 0, y};
  }
  if (multiply(G, l, a).is_zero()) {
    GroupElement hb = multiply(G, top, b);
    for (std::int64_t x = 0; x < l; ++x)
      if (multiply(G, x, a) == hb) return LShape{l, top, x, 0};
  }
  throw std::logic_error("rectangle does not tessellate by a sheared lattice");
}

/// Lift matrix T whose j-th column is the j-th generator lift.
inline IntMatrix lift_matrix(const CayleyDigraph& g) {
  const std::size_t d = g.degree();
  IntMatrix t(d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) t(i, j) = g.lifts()[j][i];
  return t;
}

/// Evidence that the generator lifts are the U-columns of a Smith form
/// S = T M V of a tessellation matrix M.
struct ProperWitness {
  IntMatrix M;
  IntMatrix V;
};

/// Checks that `m` is a basis of the translation lattice ker(phi).
inline bool is_tessellation_matrix(const CayleyDigraph& g, const IntMatrix& m) {
  const std::size_t d = g.degree();
  if (m.rows() != d || m.cols() != d) return false;
  if (abs(det(m)) != g.order()) return false;
  for (std::size_t c = 0; c < d; ++c) {
    Point col(d);
    for (std::size_t r = 0; r < d; ++r) col[r] = to_int64(m(r, c));
    if (!phi(g, col).is_zero()) return false;
  }
  return true;
}

/// If the generator lifts are proper, the tessellation matrix M and a
/// unimodular V with diag(s) = T M V, where T is the lift matrix.
///
/// With M any basis of ker(phi), T M = S W for an integer W, and
/// V = W^{-1} is integral exactly when |det T| = 1. Changing the basis of
/// ker(phi) only changes V, so the answer does not depend on M.
///
/// For d = 2 without a supplied M, M is read off the L-shape of build_mdd.
/// Otherwise M defaults to T^{-1} S. Throws std::invalid_argument when a
/// supplied M is not a tessellation matrix of g.
inline std::optional<ProperWitness> properness_witness(const CayleyDigraph& g,
                                                       const std::optional<IntMatrix>& supplied = {}) {
  const std::size_t d = g.degree();
  const IntMatrix t = lift_matrix(g);
  if (!is_unimodular(t)) return std::nullopt;
  IntMatrix s(d, d);
  for (std::size_t i = 0; i < d; ++i) s(i, i) = g.group()[i];

  IntMatrix m;
  if (supplied) {
    m = *supplied;
  } else if (d == 2) {
    m = lshape_tessellation_matrix(extract_lshape(build_mdd(g)));
  } else {
    // T^{-1} from the Smith form of the unimodular T: I = U_t T V_t.
    SnfDecomposition st = smith_normal_form(t);
    m = st.V * st.U * s;
  }
  if (!is_tessellation_matrix(g, m))
    throw std::invalid_argument("matrix is not a tessellation matrix of " + g.str());

  // W = S^{-1} T M, integral because T m_j lies in S Z^d.
  IntMatrix w = t * m;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) w(i, j) /= g.group()[i];
  SnfDecomposition sw = smith_normal_form(w);
  IntMatrix v = sw.V * sw.U;
  if (t * m * v != s) throw std::logic_error("properness witness failed S = T M V");
  return ProperWitness{std::move(m), std::move(v)};
}

/// True iff the generator lifts equal the columns u_i = U e_i of some Smith
/// decomposition diag(s) = U M V of a tessellation matrix M of g.
inline bool is_proper(const CayleyDigraph& g, const std::optional<IntMatrix>& supplied = {}) {
  return properness_witness(g, supplied).has_value();
}

/// dilate_digraph after checking properness.
inline CayleyDigraph dilate_digraph_strict(const CayleyDigraph& g, std::int64_t m) {
  if (!is_proper(g)) throw std::invalid_argument(g.str() + " does not have a proper generating set");
  return dilate_digraph(g, m);
}

}  // namespace cayley
