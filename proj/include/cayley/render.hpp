#pragma once

// Plain-text, CSV and SVG renderings of MDDs and gap tables.

#include "cayley/kappa.hpp"
#include "cayley/mdd.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cayley::render {

inline constexpr int kCell = 16;

/// Unit squares of a degree-2 MDD, y axis pointing up.
inline std::string mdd_svg(const Mdd& h) {
  if (h.degree() != 2) throw std::invalid_argument("SVG rendering needs a degree-2 MDD");
  std::int64_t w = 0, ht = 0;
  for (const auto& p : h.points) {
    w = std::max(w, p[0] + 1);
    ht = std::max(ht, p[1] + 1);
  }
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w * kCell + 2 << "\" height=\""
     << ht * kCell + 2 << "\">\n";
  os << "<title>" << h.source.str() << "</title>\n";
  for (const auto& p : h.points)
    os << "<rect x=\"" << p[0] * kCell + 1 << "\" y=\"" << (ht - 1 - p[1]) * kCell + 1 << "\" width=\"" << kCell
       << "\" height=\"" << kCell << "\" fill=\"#9cc3e6\" stroke=\"#1f4e79\"/>\n";
  os << "</svg>\n";
  return os.str();
}

/// One text grid per value of the last coordinate; '#' marks a cube.
inline std::string mdd_layers_text(const Mdd& h) {
  if (h.degree() != 3) throw std::invalid_argument("layer rendering needs a degree-3 MDD");
  std::int64_t nx = 0, ny = 0, nz = 0;
  for (const auto& p : h.points) {
    nx = std::max(nx, p[0] + 1);
    ny = std::max(ny, p[1] + 1);
    nz = std::max(nz, p[2] + 1);
  }
  std::set<Point> members(h.points.begin(), h.points.end());
  std::ostringstream os;
  for (std::int64_t z = 0; z < nz; ++z) {
    os << "layer " << z << "\n";
    for (std::int64_t y = ny - 1; y >= 0; --y) {
      for (std::int64_t x = 0; x < nx; ++x) os << (members.contains(Point{x, y, z}) ? '#' : '.');
      os << "\n";
    }
  }
  return os.str();
}

inline std::string mdd_layers_csv(const Mdd& h) {
  if (h.degree() != 3) throw std::invalid_argument("layer rendering needs a degree-3 MDD");
  std::vector<Point> pts = h.points;
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return std::tie(a[2], a[1], a[0]) < std::tie(b[2], b[1], b[0]);
  });
  std::ostringstream os;
  os << "layer,x,y\n";
  for (const auto& p : pts) os << p[2] << "," << p[0] << "," << p[1] << "\n";
  return os.str();
}

inline void write_gaps_csv(std::ostream& os, const std::vector<GapRow>& rows) {
  os << "n,gap\n";
  for (const auto& r : rows) os << r.n << "," << r.gap() << "\n";
}

/// Point plot of gap against n.
inline std::string gaps_svg(const std::vector<GapRow>& rows) {
  const int width = 640, height = 240, margin = 30;
  std::int64_t lo = rows.empty() ? 0 : rows.front().n, hi = rows.empty() ? 1 : rows.back().n;
  std::int64_t top = 1;
  for (const auto& r : rows) top = std::max(top, r.gap());
  auto px = [&](std::int64_t n) { return margin + (hi == lo ? 0.0 : double(n - lo) * (width - 2 * margin) / double(hi - lo)); };
  auto py = [&](std::int64_t g) { return height - margin - double(g) * (height - 2 * margin) / double(top); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  os << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
     << height - margin << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << margin << "\" y=\"" << height - 8 << "\" font-size=\"10\">" << lo << "</text>\n";
  os << "<text x=\"" << width - margin << "\" y=\"" << height - 8 << "\" font-size=\"10\">" << hi << "</text>\n";
  os << "<text x=\"4\" y=\"" << margin << "\" font-size=\"10\">" << top << "</text>\n";
  for (const auto& r : rows)
    os << "<circle cx=\"" << px(r.n) << "\" cy=\"" << py(r.gap()) << "\" r=\"2\" fill=\"#1f4e79\"/>\n";
  os << "</svg>\n";
  return os.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

inline void render_gaps_csv(const std::vector<GapRow>& rows, const std::filesystem::path& path) {
  std::ostringstream os;
  write_gaps_csv(os, rows);
  write_file(path, os.str());
}

}  // namespace cayley::render
