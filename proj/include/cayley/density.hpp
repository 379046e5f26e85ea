#pragma once

// Exact bounds built from the global solid density Delta_d: the lower bound
// l(d,n) on the optimal diameter, tightness, the tightness coefficient and
// the maximum order N(d,k).
//
// Everything here is integer or rational arithmetic. Ceilings of irrational
// d-th roots are decided by comparing integer powers, never by floating
// point. Fractional parts follow the convention {x} = ceil(x) - x.

#include "cayley/digraph.hpp"
#include "cayley/integer.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cayley {

enum class DensityStatus { proven, conjectural };

struct DensityConstant {
  std::size_t degree;
  Rational delta;
  DensityStatus status;
};

/// Delta_1 = 1 and Delta_2 = 1/3 are known. 21/250 for degree 3 is the
/// largest solid density of any known digraph and is only conjectured to be
/// Delta_3; results derived from it are printed with a prime.
inline const std::vector<DensityConstant>& density_registry() {
  static const std::vector<DensityConstant> registry{
      {1, Rational(1), DensityStatus::proven},
      {2, Rational(1, 3), DensityStatus::proven},
      {3, Rational(21, 250), DensityStatus::conjectural},
  };
  return registry;
}

class UnknownDegreeError : public std::out_of_range {
 public:
  explicit UnknownDegreeError(std::size_t d)
      : std::out_of_range("no global solid density is registered for degree " + std::to_string(d)) {}
};

/// A digraph or search result contradicts a proven bound.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A degree-3 result beats the conjectured density 21/250.
class ConjectureRefutation : public std::runtime_error {
 public:
  ConjectureRefutation(const std::string& what, std::string witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

inline const DensityConstant& density_constant(std::size_t d) {
  for (const auto& c : density_registry())
    if (c.degree == d) return c;
  throw UnknownDegreeError(d);
}

inline bool is_conjectural(std::size_t d) { return density_constant(d).status == DensityStatus::conjectural; }

/// Least integer x >= 1 with x^d >= r.
inline Integer ceil_root(const Rational& r, unsigned d) {
  if (r <= 0) throw std::domain_error("ceil_root needs a positive argument");
  if (d == 0) throw std::domain_error("ceil_root needs a positive degree");
  const Integer p = boost::multiprecision::numerator(r);
  const Integer q = boost::multiprecision::denominator(r);
  auto enough = [&](const Integer& x) { return pow(x, d) * q >= p; };
  Integer lo = 1, hi = 1;
  while (!enough(hi)) {
    lo = hi + 1;
    hi *= 2;
  }
  while (lo < hi) {
    Integer mid = (lo + hi) / 2;
    if (enough(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

inline Rational normalized_order(std::size_t d, const Integer& n) {
  if (n < 1) throw std::domain_error("order must be positive");
  return Rational(n) / density_constant(d).delta;
}

/// l(d,n) = ceil((n / Delta_d)^(1/d)) - d.
inline Integer lower_bound(std::size_t d, const Integer& n) {
  return ceil_root(normalized_order(d, n), static_cast<unsigned>(d)) - d;
}

/// N(d,k) = floor(Delta_d (k+d)^d).
inline Integer max_order(std::size_t d, const Integer& k) {
  if (k < 0) throw std::domain_error("diameter must be nonnegative");
  Rational v = density_constant(d).delta * Rational(pow(k + d, static_cast<unsigned>(d)));
  return boost::multiprecision::numerator(v) / boost::multiprecision::denominator(v);
}

/// t(d, Gamma) = k(Gamma) - l(d, n). A negative value for a proven degree
/// throws InternalConsistencyError; for degree 3 it throws
/// ConjectureRefutation carrying the digraph.
inline Integer tightness(const CayleyDigraph& g) {
  const std::size_t d = g.degree();
  Integer t = Integer(diameter(g)) - lower_bound(d, g.order());
  if (t < 0) {
    std::string msg = g.str() + " has diameter below the lower bound";
    if (is_conjectural(d)) throw ConjectureRefutation(msg, g.str());
    throw InternalConsistencyError(msg);
  }
  return t;
}

/// x in C_d iff Delta_d x^d is an integer, i.e. q_d | x^d for Delta_d = s_d/q_d.
inline bool in_Cd(const Integer& x, std::size_t d) {
  const Integer q = boost::multiprecision::denominator(density_constant(d).delta);
  return pow(x, static_cast<unsigned>(d)) % q == 0;
}

/// The least positive x in C_d: for q_d = prod p_i^alpha_i, x_d = prod
/// p_i^ceil(alpha_i / d).
inline Integer min_attaining_x(std::size_t d) {
  Integer q = boost::multiprecision::denominator(density_constant(d).delta);
  Integer x = 1;
  for (Integer p = 2; p * p <= q; ++p) {
    unsigned alpha = 0;
    while (q % p == 0) {
      q /= p;
      ++alpha;
    }
    if (alpha) x *= pow(p, static_cast<unsigned>((alpha + d - 1) / d));
  }
  if (q > 1) x *= q;
  return x;
}

/// Either a finite count of consecutive tight dilates or INFINITE.
struct TightnessCoefficient {
  bool infinite = false;
  Integer value = 0;

  static TightnessCoefficient unbounded() { return {true, 0}; }
  std::string str() const { return infinite ? "INFINITE" : value.str(); }
  friend bool operator==(const TightnessCoefficient&, const TightnessCoefficient&) = default;
};

/// True iff n / Delta_d is the d-th power of an integer x (then x is in C_d).
inline bool attains_density_order(std::size_t d, const Integer& n) {
  Rational r = normalized_order(d, n);
  if (boost::multiprecision::denominator(r) != 1) return false;
  Integer x = ceil_root(r, static_cast<unsigned>(d));
  return Rational(pow(x, static_cast<unsigned>(d))) == r;
}

/// The coefficient through beta(d,n) = 1 / {x}, x = (n/Delta_d)^(1/d):
/// c is the largest m with m {x} < 1, i.e. (m ceil(x) - 1)^d < m^d x^d,
/// found by exponential then binary search on that integer inequality.
inline TightnessCoefficient tightness_coefficient_by_beta(std::size_t d, const Integer& n) {
  if (attains_density_order(d, n)) return TightnessCoefficient::unbounded();
  const Rational r = normalized_order(d, n);
  const auto e = static_cast<unsigned>(d);
  const Integer X = ceil_root(r, e);
  auto below = [&](const Integer& m) { return Rational(pow(m * X - 1, e)) < Rational(pow(m, e)) * r; };
  Integer lo = 1, hi = 2;  // below(1) holds by definition of X
  while (below(hi)) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    if (below(mid))
      lo = mid;
    else
      hi = mid;
  }
  return {false, lo};
}

/// c(d,n): the number of consecutive m >= 1 with
/// ceil(m (n/Delta_d)^(1/d)) = m ceil((n/Delta_d)^(1/d)), or INFINITE when
/// n = Delta_d x^d for an integer x. Counts the dilates of a tight digraph of
/// order n that stay tight; the value depends only on d and n, whether or not
/// a tight digraph of that order exists.
///
/// Computed by testing m = 1, 2, ... directly, and checked against the
/// beta-based inequality.
inline TightnessCoefficient tightness_coefficient(std::size_t d, const Integer& n) {
  const TightnessCoefficient by_beta = tightness_coefficient_by_beta(d, n);
  if (by_beta.infinite) return by_beta;
  const Rational r = normalized_order(d, n);
  const auto e = static_cast<unsigned>(d);
  const Integer X = ceil_root(r, e);
  Integer m = 1;
  for (;; ++m) {
    if (ceil_root(Rational(pow(m, e)) * r, e) != m * X) break;
    if (m > by_beta.value + 1)
      throw std::logic_error("tightness coefficient loop did not terminate at the beta bound");
  }
  TightnessCoefficient by_loop{false, m - 1};
  if (!(by_loop == by_beta))
    throw std::logic_error("tightness coefficient routes disagree: loop " + by_loop.str() + ", beta " +
                           by_beta.str());
  return by_loop;
}

}  // namespace cayley
