#pragma once

// Text formats: group, element and matrix literals, the digraph JSON literal,
// and the MDD point file.

#include "cayley/abelian.hpp"
#include "cayley/digraph.hpp"
#include "cayley/mdd.hpp"
#include "cayley/zmatrix.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cayley::io {

using nlohmann::json;

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {
inline json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed ") + what + " literal '" + text + "'");
  }
}

inline std::vector<std::int64_t> int_list(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be a bracketed list");
  std::vector<std::int64_t> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError(std::string(what) + " entries must be integers");
    out.push_back(v.get<std::int64_t>());
  }
  return out;
}
}  // namespace detail

/// `[1,1,16]`
inline InvariantFactors parse_group(const std::string& text) {
  return InvariantFactors(detail::int_list(detail::parse_json(text, "group"), "group"));
}

/// `(0,1,-12)`; brackets are accepted too. Returns the raw integer vector.
inline std::vector<std::int64_t> parse_vector(std::string text) {
  for (auto& c : text) {
    if (c == '(') c = '[';
    if (c == ')') c = ']';
  }
  return detail::int_list(detail::parse_json(text, "element"), "element");
}

/// `[[2,-1],[-1,2]]`
inline IntMatrix parse_matrix(const std::string& text) {
  json j = detail::parse_json(text, "matrix");
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty list of rows");
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& row : j) rows.push_back(detail::int_list(row, "matrix row"));
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw ParseError("matrix rows differ in length");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

inline json to_json(const CayleyDigraph& g) {
  return json{{"moduli", g.group().moduli()}, {"gens", g.lifts()}};
}

inline CayleyDigraph digraph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("moduli") || !j.contains("gens"))
    throw ParseError("digraph literal needs \"moduli\" and \"gens\"");
  InvariantFactors group(detail::int_list(j["moduli"], "moduli"));
  if (!j["gens"].is_array()) throw ParseError("\"gens\" must be a list of vectors");
  std::vector<Lift> lifts;
  for (const auto& g : j["gens"]) lifts.push_back(detail::int_list(g, "generator"));
  return CayleyDigraph(std::move(group), std::move(lifts));
}

/// `{"moduli":[3,24],"gens":[[0,1],[-1,3]]}`
inline CayleyDigraph parse_digraph(const std::string& text) {
  return digraph_from_json(detail::parse_json(text, "digraph"));
}

inline std::string digraph_literal(const CayleyDigraph& g) { return to_json(g).dump(); }

/// One point per line, coordinates separated by spaces, after a
/// `# digraph <literal>` header.
inline void write_mdd(std::ostream& os, const Mdd& h) {
  os << "# digraph " << digraph_literal(h.source) << "\n";
  os << "# points " << h.points.size() << "\n";
  for (const auto& p : h.points) {
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i];
    os << "\n";
  }
}

inline Mdd read_mdd(std::istream& is) {
  std::string line;
  std::optional<CayleyDigraph> source;
  std::vector<Point> points;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string tag = "# digraph ";
      if (line.rfind(tag, 0) == 0) source = parse_digraph(line.substr(tag.size()));
      continue;
    }
    std::istringstream ls(line);
    Point p;
    std::int64_t v;
    while (ls >> v) p.push_back(v);
    if (!ls.eof()) throw ParseError("bad MDD point line '" + line + "'");
    points.push_back(std::move(p));
  }
  if (!source) throw ParseError("MDD file has no '# digraph' header");
  for (const auto& p : points)
    if (p.size() != source->degree()) throw ParseError("MDD point dimension does not match the digraph");
  std::sort(points.begin(), points.end());
  return Mdd{*source, std::move(points), false};
}

}  // namespace cayley::io
