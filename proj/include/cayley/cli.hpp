#pragma once

// Command-line front end. `run` is the whole program; tools/cayley.cpp only
// forwards argv and the standard streams.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or malformed input,
// 3 internal-consistency violation, 4 degree-3 result beating 21/250.

#include "cayley/density.hpp"
#include "cayley/digraph.hpp"
#include "cayley/io.hpp"
#include "cayley/kappa.hpp"
#include "cayley/mdd.hpp"
#include "cayley/presentation.hpp"
#include "cayley/render.hpp"
#include "cayley/zmatrix.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace cayley::cli {

using nlohmann::json;

enum class Format { human, csv, jsonl };

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitConsistency = 3;
inline constexpr int kExitRefutation = 4;

inline constexpr const char* kCacheEnv = "CAYLEY_KAPPA_CACHE";

/// Rows of a table plus their human rendering.
struct Table {
  std::vector<std::string> columns;
  std::vector<json> rows;
  std::string human;
};

namespace detail {

inline std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline void emit(std::ostream& out, Format format, const Table& t) {
  switch (format) {
    case Format::human:
      out << t.human;
      break;
    case Format::csv:
      for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
      out << "\n";
      for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < t.columns.size(); ++i)
          out << (i ? "," : "") << (row.contains(t.columns[i]) ? csv_cell(row[t.columns[i]]) : "");
        out << "\n";
      }
      break;
    case Format::jsonl:
      for (const auto& row : t.rows) out << row.dump() << "\n";
      break;
  }
}

inline Table single(json row, std::string human) {
  Table t;
  for (auto it = row.begin(); it != row.end(); ++it) t.columns.push_back(it.key());
  t.rows.push_back(std::move(row));
  t.human = std::move(human);
  return t;
}

// Appends the prime used for values derived from the conjectured Delta_3.
inline std::string primed(const std::string& v, std::size_t d) {
  return density_constant(d).status == DensityStatus::conjectural ? v + "'" : v;
}

inline std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

inline json matrix_json(const IntMatrix& m) { return json::parse(m.str()); }

inline std::unique_ptr<KappaCache> open_cache(const std::string& flag, std::ostream& err) {
  std::string path = flag;
  if (path.empty()) {
    if (const char* env = std::getenv(kCacheEnv)) path = env;
  }
  if (path.empty()) return nullptr;
  auto cache = std::make_unique<KappaCache>(path);
  for (const auto& w : cache->warnings()) err << "warning: " << w << "\n";
  return cache;
}

inline Table table1() {
  const CayleyDigraph seeds[] = {CayleyDigraph(InvariantFactors({1, 72}), {{-1, 4}, {-3, 11}}),
                                 CayleyDigraph(InvariantFactors({3, 24}), {{0, 1}, {-1, 3}})};
  Table t;
  t.columns = {"m", "order", "digraph", "lshape", "k", "ell"};
  std::ostringstream h;
  h << pad("m", 3) << pad("order", 7) << pad("digraph", 34) << pad("L-shape", 18) << pad("k", 5) << "l\n";
  for (std::int64_t m = 1; m <= 4; ++m)
    for (const auto& seed : seeds) {
      CayleyDigraph g = dilate_digraph(seed, m);
      LShape shape = extract_lshape(build_mdd(g));
      std::int64_t k = diameter(g);
      std::string ell = lower_bound(2, g.order()).str();
      t.rows.push_back(json{{"m", m}, {"order", g.order()}, {"digraph", io::to_json(g)}, {"lshape", shape.str()},
                            {"k", k}, {"ell", std::stoll(ell)}});
      h << pad(std::to_string(m), 3) << pad(std::to_string(g.order()), 7) << pad(g.str(), 34)
        << pad(shape.str(), 18) << pad(std::to_string(k), 5) << ell << "\n";
    }
  h << "c(2,72) = " << tightness_coefficient(2, 72).str() << "\n";
  t.human = h.str();
  return t;
}

inline Table table2() {
  const CayleyDigraph seed(InvariantFactors({1, 1, 16}), {{0, 0, 1}, {0, 1, -12}, {1, 0, -11}});
  Table t;
  t.columns = {"m", "order", "digraph", "k", "ell"};
  std::ostringstream h;
  h << pad("m", 3) << pad("order", 7) << pad("digraph", 48) << pad("k", 5) << "l'\n";
  for (std::int64_t m = 1; m <= 5; ++m) {
    CayleyDigraph g = dilate_digraph(seed, m);
    std::int64_t k = diameter(g);
    std::string ell = lower_bound(3, g.order()).str();
    t.rows.push_back(json{{"m", m}, {"order", g.order()}, {"digraph", io::to_json(g)}, {"k", k},
                          {"ell", primed(ell, 3)}});
    h << pad(std::to_string(m), 3) << pad(std::to_string(g.order()), 7) << pad(g.str(), 48)
      << pad(std::to_string(k), 5) << primed(ell, 3) << "\n";
  }
  h << "c'(3,16) = " << tightness_coefficient(3, 16).str() << "\n";
  t.human = h.str();
  return t;
}

inline Table gaps_table(std::size_t d, const std::vector<GapRow>& rows) {
  Table t;
  t.columns = {"n", "gap"};
  std::ostringstream h;
  h << pad("n", 6) << pad("kappa", 7) << pad(primed("l", d), 6) << "gap\n";
  for (const auto& r : rows) {
    t.rows.push_back(json{{"n", r.n}, {"gap", r.gap()}});
    h << pad(std::to_string(r.n), 6) << pad(std::to_string(r.kappa), 7)
      << pad(primed(std::to_string(r.ell), d), 6) << r.gap() << "\n";
  }
  t.human = h.str();
  return t;
}

inline void check_density(const CayleyDigraph& g, const Rational& delta) {
  const std::size_t d = g.degree();
  bool known = false;
  for (const auto& c : density_registry()) known = known || c.degree == d;
  if (!known) return;
  const auto& c = density_constant(d);
  if (delta <= c.delta) return;
  std::string msg = g.str() + " has solid density " + to_string(delta) + " above " + to_string(c.delta);
  if (c.status == DensityStatus::conjectural) throw ConjectureRefutation(msg, io::digraph_literal(g));
  throw InternalConsistencyError(msg);
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cayley digraphs on finite Abelian groups: diameters, minimum distance diagrams, "
               "dilation, density bounds and exhaustive kappa(d,n) search",
               "cayley"};
  app.require_subcommand(1);
  std::string format_name = "human";
  app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"human", "csv", "jsonl"}));

  std::string matrix_text, digraph_text, file_text, out_path, render_as, cache_path, symmetry_name = "units",
                                                                              csv_path, svg_path;
  std::int64_t m = 1, n = 0, k = -1, x = 0, from = 0, to = 0;
  std::size_t d = 0;
  unsigned jobs = 1;
  bool strict = false, no_prune = false, conjectural_prune = false, long_running = false, coefficient = false,
       min_x = false;

  auto* snf = app.add_subcommand("snf", "Smith normal form S = U M V");
  snf->add_option("--matrix", matrix_text, "Matrix literal, e.g. [[2,-1],[-1,2]]")->required();

  auto* proper = app.add_subcommand("proper", "Proper generating set of a matrix, or properness of a digraph");
  proper->add_option("--matrix", matrix_text, "Tessellation matrix literal");
  proper->add_option("--digraph", digraph_text, "Digraph literal to test for properness");

  auto* diam = app.add_subcommand("diameter", "BFS diameter");
  diam->add_option("--digraph", digraph_text, "Digraph literal")->required();

  auto* dens = app.add_subcommand("density", "Solid density n/(k+d)^d");
  dens->add_option("--digraph", digraph_text, "Digraph literal")->required();

  auto* mdd = app.add_subcommand("mdd", "Minimum distance diagrams");
  mdd->require_subcommand(1);
  auto* mdd_build = mdd->add_subcommand("build", "Build an MDD and write it in the point-file format");
  mdd_build->add_option("--digraph", digraph_text, "Digraph literal")->required();
  mdd_build->add_option("--out", out_path, "Write the point file here instead of stdout");
  auto* mdd_verify = mdd->add_subcommand("verify", "Check an MDD point file against a fresh BFS");
  mdd_verify->add_option("--file", file_text, "MDD point file")->required()->check(CLI::ExistingFile);
  auto* mdd_render = mdd->add_subcommand("render", "Render an MDD point file");
  mdd_render->add_option("--file", file_text, "MDD point file")->required()->check(CLI::ExistingFile);
  mdd_render->add_option("--as", render_as, "svg (degree 2), layers or layers-csv (degree 3)")
      ->required()
      ->check(CLI::IsMember({"svg", "layers", "layers-csv"}));
  mdd_render->add_option("--out", out_path, "Output path (default stdout)");
  auto* mdd_lshape = mdd->add_subcommand("lshape", "L-shape of a degree-2 digraph");
  mdd_lshape->add_option("--digraph", digraph_text, "Digraph literal")->required();

  auto* dil = app.add_subcommand("dilate", "m-dilate of a digraph or of an MDD point file");
  dil->add_option("--digraph", digraph_text, "Digraph literal");
  dil->add_option("--mdd-file", file_text, "MDD point file")->check(CLI::ExistingFile);
  dil->add_option("-m", m, "Dilation factor")->required()->check(CLI::PositiveNumber);
  dil->add_flag("--strict", strict, "Refuse generating sets that are not proper");
  dil->add_option("--out", out_path, "Output path for a dilated MDD");

  auto* bound = app.add_subcommand("bound", "Lower bound l(d,n) and maximum order N(d,k)");
  bound->add_option("-d", d, "Degree")->required();
  bound->add_option("-n", n, "Order");
  bound->add_option("-k", k, "Diameter (for N(d,k))");

  auto* tight = app.add_subcommand("tight", "Tightness, tightness coefficient, C_d membership, x_d");
  tight->add_option("--digraph", digraph_text, "Digraph literal (tightness)");
  tight->add_option("-d", d, "Degree");
  tight->add_option("-n", n, "Order (tightness coefficient)");
  tight->add_option("-x", x, "Test x for membership in C_d");
  tight->add_flag("--min-x", min_x, "Least positive integer in C_d");
  tight->add_flag("--coefficient", coefficient, "Tightness coefficient c(d,n) (default when -n is given)");

  auto add_search_options = [&](CLI::App* sub) {
    sub->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--no-prune", no_prune, "Never stop early at the lower bound");
    sub->add_flag("--conjectural-prune", conjectural_prune, "Allow early exit at l'(3,n) for degree 3");
    sub->add_option("--symmetry", symmetry_name, "none, units or full-listed")
        ->check(CLI::IsMember({"none", "units", "full-listed"}));
    sub->add_flag("--long", long_running, "Allow searches beyond desk scale");
    sub->add_option("--cache", cache_path, std::string("Result cache (default $") + kCacheEnv + ")");
  };
  auto* kap = app.add_subcommand("kappa", "Exhaustive kappa(d,n)");
  kap->add_option("-d", d, "Degree")->required();
  kap->add_option("-n", n, "Order")->required();
  add_search_options(kap);

  auto* gaps = app.add_subcommand("gaps", "kappa(d,n) - l(d,n) over a range of orders");
  gaps->add_option("-d", d, "Degree")->required();
  gaps->add_option("--from", from, "First order")->required();
  gaps->add_option("--to", to, "Last order")->required();
  gaps->add_option("--csv", csv_path, "Also write n,gap CSV here");
  gaps->add_option("--svg", svg_path, "Also write an SVG plot here");
  add_search_options(gaps);

  auto* t1 = app.add_subcommand("table1", "Three dilations of two tight degree-2 digraphs of order 72");
  auto* t2 = app.add_subcommand("table2", "Four dilations of Cay(Z_16,{1,4,5})");

  auto* ups = app.add_subcommand("upsilon", "The m-dilate of Upsilon_2 or Upsilon_3");
  ups->add_option("-d", d, "Degree (2 or 3)")->required();
  ups->add_option("-m", m, "Dilation factor")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const Format format = format_name == "csv" ? Format::csv : format_name == "jsonl" ? Format::jsonl : Format::human;
  auto emit = [&](const Table& t) { detail::emit(out, format, t); };
  auto usage = [&](const std::string& msg) {
    err << "error: " << msg << "\n";
    return kExitUsage;
  };
  auto search_spec = [&]() {
    SearchSpec s;
    s.d = d;
    s.prune_with_lower_bound = !no_prune;
    s.conjectural_prune = conjectural_prune;
    s.symmetry = parse_symmetry(symmetry_name);
    s.workers = jobs;
    return s;
  };

  try {
    if (snf->parsed()) {
      IntMatrix mat = io::parse_matrix(matrix_text);
      SnfDecomposition s = smith_normal_form(mat);
      json factors = json::array();
      for (const auto& f : s.invariant_factors()) factors.push_back(json::parse(f.str()));
      emit(detail::single(json{{"S", detail::matrix_json(s.S)},
                               {"U", detail::matrix_json(s.U)},
                               {"V", detail::matrix_json(s.V)},
                               {"invariant_factors", factors}},
                          "S = " + s.S.str() + "\nU = " + s.U.str() + "\nV = " + s.V.str() + "\n"));
    } else if (proper->parsed()) {
      if (!digraph_text.empty()) {
        CayleyDigraph g = io::parse_digraph(digraph_text);
        std::optional<IntMatrix> supplied;
        if (!matrix_text.empty()) supplied = io::parse_matrix(matrix_text);
        auto witness = properness_witness(g, supplied);
        json row{{"digraph", io::to_json(g)}, {"proper", witness.has_value()}};
        std::string human = g.str() + (witness ? " is proper" : " is not proper");
        if (witness) {
          row["M"] = detail::matrix_json(witness->M);
          row["V"] = detail::matrix_json(witness->V);
          human += ": diag(s) = T M V with M = " + witness->M.str() + ", V = " + witness->V.str();
        }
        emit(detail::single(row, human + "\n"));
      } else if (!matrix_text.empty()) {
        ProperGeneratingSet p = proper_generating_set(io::parse_matrix(matrix_text));
        CayleyDigraph g(p.group, p.lifts);
        emit(detail::single(json{{"digraph", io::to_json(g)}, {"U", detail::matrix_json(p.snf.U)}},
                            g.str() + "\n"));
      } else {
        return usage("proper needs --matrix or --digraph");
      }
    } else if (diam->parsed()) {
      CayleyDigraph g = io::parse_digraph(digraph_text);
      std::int64_t kk = diameter(g);
      emit(detail::single(json{{"digraph", io::to_json(g)}, {"order", g.order()}, {"degree", g.degree()},
                               {"diameter", kk}},
                          std::to_string(kk) + "\n"));
    } else if (dens->parsed()) {
      CayleyDigraph g = io::parse_digraph(digraph_text);
      Rational delta = solid_density(g);
      detail::check_density(g, delta);
      json row{{"digraph", io::to_json(g)}, {"density", to_string(delta)}};
      std::string human = to_string(delta);
      bool known = g.degree() <= 3;
      if (known) {
        const auto& c = density_constant(g.degree());
        row["delta"] = detail::primed(to_string(c.delta), g.degree());
        row["attains"] = delta == c.delta;
        human += " (Delta = " + detail::primed(to_string(c.delta), g.degree()) + ")";
      }
      emit(detail::single(row, human + "\n"));
    } else if (mdd_build->parsed()) {
      CayleyDigraph g = io::parse_digraph(digraph_text);
      Mdd h = build_mdd(g);
      if (h.corrective_pass_used) err << "note: MDD construction used the corrective pass\n";
      std::ostringstream file;
      io::write_mdd(file, h);
      if (!out_path.empty()) {
        render::write_file(out_path, file.str());
        emit(detail::single(json{{"digraph", io::to_json(g)}, {"points", h.size()},
                                 {"solid_diameter", solid_diameter(h)}, {"path", out_path}},
                            "wrote " + std::to_string(h.size()) + " cubes, solid diameter " +
                                std::to_string(solid_diameter(h)) + ", to " + out_path + "\n"));
      } else {
        out << file.str();
      }
    } else if (mdd_verify->parsed()) {
      std::ifstream in(file_text);
      Mdd h = io::read_mdd(in);
      bool ok = verify_mdd(h);
      json row{{"digraph", io::to_json(h.source)}, {"valid", ok}};
      std::string human = ok ? "valid MDD" : "not an MDD";
      if (ok) {
        row["solid_diameter"] = solid_diameter(h);
        human += ", solid diameter " + std::to_string(solid_diameter(h));
      }
      emit(detail::single(row, human + "\n"));
      return ok ? kExitOk : kExitFailure;
    } else if (mdd_render->parsed()) {
      std::ifstream in(file_text);
      Mdd h = io::read_mdd(in);
      std::string text = render_as == "svg"      ? render::mdd_svg(h)
                         : render_as == "layers" ? render::mdd_layers_text(h)
                                                 : render::mdd_layers_csv(h);
      if (out_path.empty())
        out << text;
      else
        render::write_file(out_path, text);
    } else if (mdd_lshape->parsed()) {
      CayleyDigraph g = io::parse_digraph(digraph_text);
      if (g.degree() != 2) return usage("lshape needs a degree-2 digraph");
      LShape s = extract_lshape(build_mdd(g));
      emit(detail::single(json{{"digraph", io::to_json(g)}, {"lshape", s.str()},
                               {"valid", lshape_validate(s, g)}, {"solid_diameter", lshape_solid_diameter(s)},
                               {"tessellation", detail::matrix_json(lshape_tessellation_matrix(s))}},
                          s.str() + " D=" + std::to_string(lshape_solid_diameter(s)) + " M=" +
                              lshape_tessellation_matrix(s).str() + "\n"));
    } else if (dil->parsed()) {
      if (digraph_text.empty() == file_text.empty()) return usage("dilate needs exactly one of --digraph, --mdd-file");
      if (!digraph_text.empty()) {
        CayleyDigraph g = io::parse_digraph(digraph_text);
        CayleyDigraph mg = strict ? dilate_digraph_strict(g, m) : dilate_digraph(g, m);
        emit(detail::single(json{{"digraph", io::to_json(mg)}}, mg.str() + "\n"));
      } else {
        std::ifstream in(file_text);
        Mdd h = dilate_mdd(io::read_mdd(in), m);
        std::ostringstream file;
        io::write_mdd(file, h);
        if (out_path.empty())
          out << file.str();
        else
          render::write_file(out_path, file.str());
      }
    } else if (bound->parsed()) {
      if (n <= 0 && k < 0) return usage("bound needs -n (for l) or -k (for N)");
      json row{{"d", d}};
      std::string human;
      if (n > 0) {
        std::string ell = lower_bound(d, n).str();
        row["n"] = n;
        row["ell"] = detail::primed(ell, d);
        human += detail::primed(ell, d) + "\n";
      }
      if (k >= 0) {
        std::string big_n = max_order(d, k).str();
        row["k"] = k;
        row["max_order"] = detail::primed(big_n, d);
        human += detail::primed(big_n, d) + "\n";
      }
      emit(detail::single(row, human));
    } else if (tight->parsed()) {
      if (!digraph_text.empty()) {
        CayleyDigraph g = io::parse_digraph(digraph_text);
        std::string t = tightness(g).str();
        emit(detail::single(json{{"digraph", io::to_json(g)}, {"tightness", detail::primed(t, g.degree())}},
                            detail::primed(t, g.degree()) + "\n"));
      } else if (d == 0) {
        return usage("tight needs --digraph or -d");
      } else if (min_x) {
        std::string v = min_attaining_x(d).str();
        emit(detail::single(json{{"d", d}, {"min_x", detail::primed(v, d)}}, detail::primed(v, d) + "\n"));
      } else if (x > 0) {
        bool in = in_Cd(x, d);
        emit(detail::single(json{{"d", d}, {"x", x}, {"in_Cd", in}}, std::string(in ? "true" : "false") + "\n"));
      } else if (n > 0) {
        std::string c = tightness_coefficient(d, n).str();
        emit(detail::single(json{{"d", d}, {"n", n}, {"coefficient", detail::primed(c, d)}},
                            detail::primed(c, d) + "\n"));
      } else {
        return usage("tight needs one of -n, -x, --min-x");
      }
    } else if (kap->parsed()) {
      if (is_long_running(d, n) && !long_running)
        return usage("kappa(" + std::to_string(d) + "," + std::to_string(n) + ") is a long-running search; pass --long");
      auto cache = detail::open_cache(cache_path, err);
      SearchSpec s = search_spec();
      s.n = n;
      KappaRecord r = cached_kappa(s, cache.get());
      std::string ell = detail::primed(lower_bound(d, n).str(), d);
      json row = r.to_json();
      row["ell"] = ell;
      emit(detail::single(row, "kappa(" + std::to_string(d) + "," + std::to_string(n) + ") = " +
                                   std::to_string(r.kappa) + "  (l = " + ell + ", witness " + r.witness.str() +
                                   ")\n"));
    } else if (gaps->parsed()) {
      if (from < 2 || to < from) return usage("gaps needs 2 <= --from <= --to");
      if (is_long_running(d, to) && !long_running)
        return usage("gap range up to " + std::to_string(to) + " is a long-running search; pass --long");
      auto cache = detail::open_cache(cache_path, err);
      std::vector<GapRow> rows = gap_table(d, from, to, search_spec(), cache.get());
      if (!csv_path.empty()) render::render_gaps_csv(rows, csv_path);
      if (!svg_path.empty()) render::write_file(svg_path, render::gaps_svg(rows));
      emit(detail::gaps_table(d, rows));
    } else if (t1->parsed()) {
      emit(detail::table1());
    } else if (t2->parsed()) {
      emit(detail::table2());
    } else if (ups->parsed()) {
      CayleyDigraph g = upsilon(d, m);
      std::int64_t kk = diameter(g);
      Rational delta = solid_density(g);
      emit(detail::single(json{{"digraph", io::to_json(g)}, {"diameter", kk}, {"density", to_string(delta)}},
                          g.str() + " k=" + std::to_string(kk) + " density=" + to_string(delta) + "\n"));
    }
  } catch (const ConjectureRefutation& e) {
    err << "conjecture refutation: " << e.what() << "\n";
    out << json{{"refutation", e.what()}, {"witness", e.witness()}}.dump() << "\n";
    return kExitRefutation;
  } catch (const InternalConsistencyError& e) {
    err << "internal consistency violation: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const CacheConflict& e) {
    err << "internal consistency violation: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const std::invalid_argument& e) {
    return usage(e.what());
  } catch (const std::domain_error& e) {
    return usage(e.what());
  } catch (const std::out_of_range& e) {
    return usage(e.what());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace cayley::cli
