#pragma once

// Exhaustive computation of kappa(d,n), the least diameter of a degree-d
// Cayley digraph of order n over any Abelian group, and the gap table
// kappa(d,n) - l(d,n).

#include "cayley/abelian.hpp"
#include "cayley/density.hpp"
#include "cayley/digraph.hpp"
#include "cayley/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace cayley {

/// Which exact automorphisms are quotiented out of the generating sets.
///   none:        sorted sets only
///   units:       also x -> u x for every unit u modulo the group exponent
///   full_listed: also permutations of coordinates with equal moduli
enum class Symmetry { none, units, full_listed };

inline std::string to_string(Symmetry s) {
  switch (s) {
    case Symmetry::none: return "none";
    case Symmetry::units: return "units";
    case Symmetry::full_listed: return "full-listed";
  }
  return "?";
}

inline Symmetry parse_symmetry(const std::string& s) {
  if (s == "none") return Symmetry::none;
  if (s == "units") return Symmetry::units;
  if (s == "full-listed") return Symmetry::full_listed;
  throw std::invalid_argument("unknown symmetry level '" + s + "'");
}

struct SearchSpec {
  std::size_t d = 2;
  std::int64_t n = 2;
  // Stop as soon as a generating set reaches l(d,n). For degree 3 this also
  // needs conjectural_prune, since l'(3,n) is only conjectured to be a bound.
  bool prune_with_lower_bound = false;
  bool conjectural_prune = false;
  Symmetry symmetry = Symmetry::units;
  unsigned workers = 1;

  bool pruning_active() const {
    if (!prune_with_lower_bound) return false;
    return !is_conjectural(d) || conjectural_prune;
  }

  /// Settings that identify a result; the worker count is not one of them.
  nlohmann::json settings() const {
    return nlohmann::json{{"prune", pruning_active()},
                          {"conjectural_prune", pruning_active() && is_conjectural(d)},
                          {"symmetry", to_string(symmetry)}};
  }
};

struct KappaRecord {
  std::size_t d = 0;
  std::int64_t n = 0;
  std::int64_t kappa = 0;
  CayleyDigraph witness;
  nlohmann::json settings;
  std::int64_t millis = 0;

  nlohmann::json to_json() const {
    return nlohmann::json{{"d", d},          {"n", n},
                          {"kappa", kappa},  {"witness", io::to_json(witness)},
                          {"settings", settings}, {"millis", millis}};
  }

  static KappaRecord from_json(const nlohmann::json& j) {
    KappaRecord r;
    r.d = j.at("d").get<std::size_t>();
    r.n = j.at("n").get<std::int64_t>();
    r.kappa = j.at("kappa").get<std::int64_t>();
    r.witness = io::digraph_from_json(j.at("witness"));
    r.settings = j.at("settings");
    r.millis = j.at("millis").get<std::int64_t>();
    if (!r.settings.is_object()) throw std::invalid_argument("settings must be an object");
    if (r.witness.degree() != r.d || r.witness.order() != r.n)
      throw std::invalid_argument("witness does not match (d, n)");
    return r;
  }

  std::string line() const { return to_json().dump(); }
};

/// Searches for degree-3 orders beyond this need the long-running opt-in.
inline bool is_long_running(std::size_t d, std::int64_t n) {
  if (d <= 1) return false;
  if (d == 2) return n > 2000;
  return n > 128;
}

namespace detail {

struct GroupWork {
  InvariantFactors group;
  std::vector<std::int32_t> add_table;  // n*n, empty for large groups
  std::vector<std::vector<std::int32_t>> automorphisms;
  std::vector<std::int32_t> orbit_min;
  std::vector<GroupElement> elements;
  GroupIndexer indexer;

  explicit GroupWork(const InvariantFactors& g, Symmetry symmetry) : group(g), indexer(g) {
    const std::int64_t n = g.order();
    elements.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) elements.push_back(g.element_at(i));
    if (n <= 2048) {
      add_table.resize(static_cast<std::size_t>(n * n));
      for (std::int64_t a = 0; a < n; ++a)
        for (std::int64_t b = 0; b < n; ++b)
          add_table[static_cast<std::size_t>(a * n + b)] =
              static_cast<std::int32_t>(g.index(add(g, elements[a], elements[b])));
    }
    build_automorphisms(symmetry);
    orbit_min.resize(static_cast<std::size_t>(n));
    for (std::int64_t e = 0; e < n; ++e) {
      std::int32_t best = static_cast<std::int32_t>(e);
      for (const auto& a : automorphisms) best = std::min(best, a[static_cast<std::size_t>(e)]);
      orbit_min[static_cast<std::size_t>(e)] = best;
    }
  }

  void build_automorphisms(Symmetry symmetry) {
    const std::int64_t n = group.order();
    const std::size_t r = group.rank();
    std::vector<std::int64_t> units{1};
    if (symmetry != Symmetry::none) {
      units.clear();
      for (std::int64_t u = 1; u < std::max<std::int64_t>(group.exponent(), 2); ++u)
        if (gcd64(u, group.exponent()) == 1) units.push_back(u);
    }
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    if (symmetry == Symmetry::full_listed) {
      do {
        bool ok = true;
        for (std::size_t i = 0; i < r; ++i)
          if (group[perm[i]] != group[i]) ok = false;
        if (ok) perms.push_back(perm);
      } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
      perms.push_back(perm);
    }
    for (std::int64_t u : units)
      for (const auto& p : perms) {
        std::vector<std::int32_t> map(static_cast<std::size_t>(n));
        for (std::int64_t e = 0; e < n; ++e) {
          GroupElement x = multiply(group, u, elements[static_cast<std::size_t>(e)]);
          GroupElement y = x;
          for (std::size_t i = 0; i < r; ++i) y.coords[i] = x.coords[p[i]];
          map[static_cast<std::size_t>(e)] = static_cast<std::int32_t>(group.index(y));
        }
        automorphisms.push_back(std::move(map));
      }
  }

  // True iff the sorted set is lexicographically least in its orbit.
  bool canonical(const std::vector<std::int32_t>& set, std::vector<std::int32_t>& scratch) const {
    std::int32_t lowest = set.front();
    for (auto s : set) lowest = std::min(lowest, orbit_min[static_cast<std::size_t>(s)]);
    if (lowest != set.front()) return false;
    for (const auto& a : automorphisms) {
      scratch.clear();
      for (auto s : set) scratch.push_back(a[static_cast<std::size_t>(s)]);
      std::sort(scratch.begin(), scratch.end());
      if (scratch < set) return false;
    }
    return true;
  }

  std::uint32_t eccentricity(const std::vector<std::int32_t>& set, std::vector<std::uint32_t>& dist,
                             std::vector<std::int64_t>& queue, std::uint32_t cutoff) const {
    const std::int64_t n = group.order();
    if (!add_table.empty()) {
      return bfs(
          n, set.size(),
          [&](std::int64_t v, std::size_t j) {
            return static_cast<std::int64_t>(add_table[static_cast<std::size_t>(v * n + set[j])]);
          },
          dist, queue, cutoff);
    }
    return bfs(
        n, set.size(),
        [&](std::int64_t v, std::size_t j) {
          return indexer.add(v, elements[static_cast<std::size_t>(set[j])]);
        },
        dist, queue, cutoff);
  }
};

struct Candidate {
  std::uint32_t k = kUnreached;
  std::size_t group = 0;
  std::vector<std::int32_t> set;

  bool better_than(const Candidate& o) const {
    return std::tie(k, group, set) < std::tie(o.k, o.group, o.set);
  }
};

}  // namespace detail

/// kappa(d,n) by exhaustive search over every group of order n and every
/// d-subset of nonzero elements that generates it. The witness is the least
/// minimizer in (group enumeration order, sorted element indices) order, so
/// the record does not depend on the worker count or the symmetry level.
inline KappaRecord kappa(const SearchSpec& spec) {
  if (spec.n < 2 || spec.d < 1) throw std::invalid_argument("kappa needs n >= 2 and d >= 1");
  if (spec.workers < 1) throw std::invalid_argument("kappa needs at least one worker");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t d = spec.d;
  const std::int64_t n = spec.n;
  if (static_cast<std::int64_t>(d) > n - 1)
    throw std::invalid_argument("no degree-" + std::to_string(d) + " digraph of order " + std::to_string(n));

  const bool pruning = spec.pruning_active();
  const auto ell = static_cast<std::uint32_t>(to_int64(lower_bound(d, n)));

  std::vector<detail::GroupWork> groups;
  for (const auto& g : enumerate_groups(n, d)) groups.emplace_back(g, spec.symmetry);

  // Work unit = (group, smallest element of the set).
  std::vector<std::pair<std::size_t, std::int32_t>> units;
  for (std::size_t gi = 0; gi < groups.size(); ++gi)
    for (std::int32_t first = 1; first + static_cast<std::int64_t>(d) - 1 < n; ++first)
      if (groups[gi].orbit_min[static_cast<std::size_t>(first)] == first) units.emplace_back(gi, first);

  std::atomic<std::size_t> next_unit{0};
  std::atomic<std::uint32_t> best_k{detail::kUnreached};
  std::atomic<std::size_t> stop_unit{units.size()};  // units after this one cannot improve
  std::mutex reduce_mutex;
  detail::Candidate best;

  auto worker = [&]() {
    std::vector<std::uint32_t> dist;
    std::vector<std::int64_t> queue;
    std::vector<std::int32_t> set(d), scratch;
    detail::Candidate local;
    for (;;) {
      std::size_t u = next_unit.fetch_add(1);
      if (u >= units.size() || u > stop_unit.load()) break;
      const auto& work = groups[units[u].first];
      set[0] = units[u].second;
      bool unit_done = false;

      // Odometer over set[1] < ... < set[d-1], all > set[0].
      auto visit = [&]() {
        if (!work.canonical(set, scratch)) return;
        std::uint32_t cutoff = best_k.load(std::memory_order_relaxed);
        std::uint32_t k = work.eccentricity(set, dist, queue, cutoff);
        if (k == detail::kUnreached) return;
        detail::Candidate cand{k, units[u].first, set};
        if (cand.better_than(local)) local = cand;
        std::uint32_t cur = best_k.load();
        while (k < cur && !best_k.compare_exchange_weak(cur, k)) {
        }
        if (pruning && k == ell) {
          std::size_t cur_stop = stop_unit.load();
          while (u < cur_stop && !stop_unit.compare_exchange_weak(cur_stop, u)) {
          }
          unit_done = true;
        }
      };

      if (d == 1) {
        visit();
      } else {
        std::size_t pos = 1;
        set[1] = set[0];
        while (!unit_done) {
          // Advance set[pos]; positions after it restart just above it.
          ++set[pos];
          if (set[pos] + static_cast<std::int64_t>(d - 1 - pos) >= n) {
            if (pos == 1) break;
            --pos;
            continue;
          }
          if (pos + 1 < d) {
            ++pos;
            set[pos] = set[pos - 1];
            continue;
          }
          visit();
        }
      }
    }
    std::lock_guard<std::mutex> lock(reduce_mutex);
    if (local.better_than(best)) best = local;
  };

  std::vector<std::thread> threads;
  for (unsigned i = 1; i < spec.workers; ++i) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  if (best.k == detail::kUnreached)
    throw std::invalid_argument("no degree-" + std::to_string(d) + " digraph of order " + std::to_string(n));

  const auto& work = groups[best.group];
  std::vector<Lift> lifts;
  for (auto idx : best.set) lifts.push_back(work.elements[static_cast<std::size_t>(idx)].coords);
  KappaRecord rec;
  rec.d = d;
  rec.n = n;
  rec.kappa = best.k;
  rec.witness = CayleyDigraph(work.group, std::move(lifts));
  rec.settings = spec.settings();
  rec.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                   .count();

  if (rec.kappa < static_cast<std::int64_t>(ell)) {
    std::string msg = "kappa(" + std::to_string(d) + "," + std::to_string(n) + ") = " +
                      std::to_string(rec.kappa) + " is below the lower bound " + std::to_string(ell);
    if (is_conjectural(d)) throw ConjectureRefutation(msg, io::digraph_literal(rec.witness));
    throw InternalConsistencyError(msg);
  }
  return rec;
}

class CacheConflict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Append-only store of KappaRecords, one JSON object per line.
class KappaCache {
 public:
  explicit KappaCache(std::filesystem::path path) : path_(std::move(path)) {
    std::ifstream in(path_);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      try {
        KappaRecord r = KappaRecord::from_json(nlohmann::json::parse(line));
        insert(r);
      } catch (const CacheConflict&) {
        throw;
      } catch (const std::exception& e) {
        warnings_.push_back(path_.string() + ":" + std::to_string(lineno) + ": skipped corrupt record (" +
                            e.what() + ")");
      }
    }
  }

  const std::filesystem::path& path() const { return path_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  std::optional<KappaRecord> get(std::size_t d, std::int64_t n, const nlohmann::json& settings) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = records_.find(key(d, n, settings));
    if (it == records_.end()) return std::nullopt;
    return it->second;
  }

  /// Stores a record. Re-putting an identical result is a no-op; a different
  /// kappa for the same (d, n) under any settings is a CacheConflict.
  void put(const KappaRecord& r) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!insert(r)) return;
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot write cache file " + path_.string());
    out << r.line() << "\n";
  }

 private:
  static std::string key(std::size_t d, std::int64_t n, const nlohmann::json& settings) {
    return std::to_string(d) + ":" + std::to_string(n) + ":" + settings.dump();
  }

  // Returns false when an equivalent record is already present.
  bool insert(const KappaRecord& r) {
    auto dn = std::make_pair(r.d, r.n);
    auto known = kappa_by_dn_.find(dn);
    if (known != kappa_by_dn_.end() && known->second != r.kappa)
      throw CacheConflict("inconsistent kappa(" + std::to_string(r.d) + "," + std::to_string(r.n) + "): " +
                          std::to_string(known->second) + " vs " + std::to_string(r.kappa));
    kappa_by_dn_[dn] = r.kappa;
    return records_.emplace(key(r.d, r.n, r.settings), r).second;
  }

  std::filesystem::path path_;
  std::map<std::string, KappaRecord> records_;
  std::map<std::pair<std::size_t, std::int64_t>, std::int64_t> kappa_by_dn_;
  std::vector<std::string> warnings_;
  mutable std::mutex mutex_;
};

/// kappa from the cache when present, otherwise searched and stored.
inline KappaRecord cached_kappa(const SearchSpec& spec, KappaCache* cache) {
  if (cache) {
    if (auto r = cache->get(spec.d, spec.n, spec.settings())) return *r;
  }
  KappaRecord r = kappa(spec);
  if (cache) cache->put(r);
  return r;
}

struct GapRow {
  std::int64_t n = 0;
  std::int64_t kappa = 0;
  std::int64_t ell = 0;
  std::int64_t gap() const { return kappa - ell; }
};

/// (n, kappa(d,n) - l(d,n)) for n_from <= n <= n_to.
inline std::vector<GapRow> gap_table(std::size_t d, std::int64_t n_from, std::int64_t n_to, SearchSpec base,
                                     KappaCache* cache = nullptr) {
  if (n_from > n_to) throw std::invalid_argument("empty gap range");
  std::vector<GapRow> rows;
  base.d = d;
  for (std::int64_t n = n_from; n <= n_to; ++n) {
    base.n = n;
    KappaRecord r = cached_kappa(base, cache);
    rows.push_back(GapRow{n, r.kappa, to_int64(lower_bound(d, n))});
  }
  return rows;
}

}  // namespace cayley
