#include "cayley/io.hpp"
#include "cayley/render.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace cayley;

TEST(ParseTest, Literals) {
  EXPECT_EQ(io::parse_group("[1,1,16]"), InvariantFactors({1, 1, 16}));
  EXPECT_EQ(io::parse_vector("(0,1,-12)"), (std::vector<std::int64_t>{0, 1, -12}));
  EXPECT_EQ(io::parse_vector("[3]"), (std::vector<std::int64_t>{3}));
  EXPECT_EQ(io::parse_matrix("[[2,-1],[-1,2]]"), (IntMatrix{{2, -1}, {-1, 2}}));
}

TEST(ParseTest, MalformedInputs) {
  EXPECT_THROW(io::parse_group("[1,1,16"), io::ParseError);
  EXPECT_THROW(io::parse_group("[2,3]"), std::invalid_argument);
  EXPECT_THROW(io::parse_group("[1.5]"), io::ParseError);
  EXPECT_THROW(io::parse_vector("(0,a)"), io::ParseError);
  EXPECT_THROW(io::parse_matrix("[[1,2],[3]]"), io::ParseError);
  EXPECT_THROW(io::parse_matrix("[]"), io::ParseError);
  EXPECT_THROW(io::parse_digraph(R"({"moduli":[16]})"), io::ParseError);
  EXPECT_THROW(io::parse_digraph(R"({"moduli":[16],"gens":[[4]]})"), std::invalid_argument);
}

TEST(DigraphLiteralTest, RoundTrip) {
  CayleyDigraph g = io::parse_digraph(R"({"moduli":[3,24],"gens":[[0,1],[-1,3]]})");
  EXPECT_EQ(g, CayleyDigraph(InvariantFactors({3, 24}), {{0, 1}, {-1, 3}}));
  EXPECT_EQ(io::parse_digraph(io::digraph_literal(g)), g);
  EXPECT_EQ(io::parse_digraph(io::digraph_literal(upsilon(3, 2))), upsilon(3, 2));
}

TEST(MddFileTest, RoundTrip) {
  CayleyDigraph g(InvariantFactors({1, 1, 16}), {{0, 0, 1}, {0, 1, -12}, {1, 0, -11}});
  Mdd h = build_mdd(g);
  std::stringstream ss;
  io::write_mdd(ss, h);
  Mdd back = io::read_mdd(ss);
  EXPECT_EQ(back.source, h.source);
  EXPECT_EQ(back.points, h.points);
  EXPECT_TRUE(verify_mdd(back));
}

TEST(MddFileTest, Format) {
  std::stringstream ss;
  io::write_mdd(ss, build_mdd(upsilon(2, 1)));
  EXPECT_EQ(ss.str(), "# digraph {\"gens\":[[0,1],[1,-1]],\"moduli\":[1,3]}\n# points 3\n0 0\n0 1\n1 0\n");
}

TEST(MddFileTest, Errors) {
  std::stringstream none("0 0\n1 0\n");
  EXPECT_THROW(io::read_mdd(none), io::ParseError);
  std::stringstream bad("# digraph {\"moduli\":[3],\"gens\":[[1],[2]]}\n0 x\n");
  EXPECT_THROW(io::read_mdd(bad), io::ParseError);
  std::stringstream dim("# digraph {\"moduli\":[3],\"gens\":[[1],[2]]}\n0 0 0\n");
  EXPECT_THROW(io::read_mdd(dim), io::ParseError);
}

TEST(RenderTest, SvgHasOneRectPerCube) {
  std::string svg = render::mdd_svg(build_mdd(upsilon(2, 2)));
  std::size_t rects = 0;
  for (std::size_t pos = svg.find("<rect"); pos != std::string::npos; pos = svg.find("<rect", pos + 1)) ++rects;
  EXPECT_EQ(rects, 12u);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_THROW(render::mdd_svg(build_mdd(upsilon(3, 1))), std::invalid_argument);
}

TEST(RenderTest, Layers) {
  CayleyDigraph g(InvariantFactors({1, 1, 16}), {{0, 0, 1}, {0, 1, -12}, {1, 0, -11}});
  Mdd h = build_mdd(g);
  std::string text = render::mdd_layers_text(h);
  EXPECT_EQ(std::count(text.begin(), text.end(), '#'), 16);
  std::string csv = render::mdd_layers_csv(h);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 17);
  EXPECT_EQ(csv.rfind("layer,x,y\n", 0), 0u);
  EXPECT_THROW(render::mdd_layers_text(build_mdd(upsilon(2, 1))), std::invalid_argument);
}
