#pragma once

// Group presentations Z^d / M Z^d read off the Smith normal form.

#include "cayley/abelian.hpp"
#include "cayley/zmatrix.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cayley {

/// The group Z_{s_1} + ... + Z_{s_d} from S = U M V together with the columns
/// u_i = U e_i, both as integer vectors (`lifts`) and reduced into the group.
/// Cay(Z^d / M Z^d, {e_i}) is isomorphic to Cay(group, gens).
struct ProperGeneratingSet {
  InvariantFactors group;
  std::vector<std::vector<std::int64_t>> lifts;
  std::vector<GroupElement> gens;
  SnfDecomposition snf;
};

inline ProperGeneratingSet proper_generating_set(const IntMatrix& m) {
  if (!m.square()) throw std::invalid_argument("proper_generating_set expects a square matrix");
  if (det(m) == 0) throw std::invalid_argument("proper_generating_set: singular matrix");
  ProperGeneratingSet out;
  out.snf = smith_normal_form(m);
  const std::size_t d = m.rows();
  std::vector<std::int64_t> s(d);
  for (std::size_t i = 0; i < d; ++i) s[i] = to_int64(out.snf.S(i, i));
  out.group = InvariantFactors(std::move(s));
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<std::int64_t> lift(d);
    for (std::size_t i = 0; i < d; ++i) lift[i] = to_int64(out.snf.U(i, j));
    out.gens.push_back(out.group.reduce(lift));
    out.lifts.push_back(std::move(lift));
  }
  return out;
}

}  // namespace cayley
