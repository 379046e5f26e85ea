#include "cayley/density.hpp"
#include "cayley/digraph.hpp"
#include "cayley/mdd.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cayley;

namespace {
CayleyDigraph cyclic(std::int64_t n, std::vector<std::int64_t> gens) {
  std::vector<Lift> lifts;
  for (auto g : gens) lifts.push_back({g});
  return CayleyDigraph(InvariantFactors({n}), lifts);
}
}  // namespace

TEST(CayleyDigraphTest, RejectsBadGeneratingSets) {
  EXPECT_THROW(cyclic(16, {4}), std::invalid_argument);
  EXPECT_THROW(cyclic(16, {0, 1}), std::invalid_argument);
  EXPECT_THROW(cyclic(16, {1, 17}), std::invalid_argument);
  EXPECT_THROW(CayleyDigraph(InvariantFactors({2, 2, 4}), {{0, 0, 1}, {0, 1, 0}}), std::invalid_argument);
  EXPECT_THROW(CayleyDigraph(InvariantFactors({1, 3}), {{0, 1, 0}}), std::invalid_argument);
}

TEST(CayleyDigraphTest, PadsGroupToDegree) {
  CayleyDigraph g = cyclic(16, {1, 4, 5});
  EXPECT_EQ(g.group(), InvariantFactors({1, 1, 16}));
  EXPECT_EQ(g.degree(), 3u);
  EXPECT_EQ(g.order(), 16);
  EXPECT_EQ(g.lifts()[1], (Lift{0, 0, 4}));
  EXPECT_EQ(g.str(), "Cay([1,1,16],{(0,0,1),(0,0,4),(0,0,5)})");
}

TEST(DiameterTest, Examples) {
  EXPECT_EQ(diameter(cyclic(3, {2, 1})), 1);
  EXPECT_EQ(diameter(cyclic(16, {1, 4, 5})), 3);
  for (std::int64_t n = 2; n <= 30; ++n) EXPECT_EQ(diameter(cyclic(n, {1})), n - 1);
  EXPECT_EQ(diameter(CayleyDigraph(InvariantFactors({6, 48}), {{0, 1}, {-1, 3}})), 28);
}

TEST(DistanceProfileTest, Examples) {
  CayleyDigraph u = cyclic(3, {2, 1});
  auto p = distance_profile(u);
  EXPECT_EQ(p.at(GroupElement{{0, 0}}), 0u);
  EXPECT_EQ(p.at(GroupElement{{0, 1}}), 1u);
  EXPECT_EQ(p.at(GroupElement{{0, 2}}), 1u);
  EXPECT_EQ(distance_profile(cyclic(7, {1, 2})).at(GroupElement{{0, 6}}), 3u);
  // The group is padded to the degree, so unpadded elements are foreign.
  EXPECT_THROW(p.at(GroupElement{{1}}), std::invalid_argument);
}

TEST(DistanceProfileTest, MatchesWordEnumerationForSmallOrders) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 150; ++trial) {
    CayleyDigraph g = oracle::random_cyclic(rng, 2, 50, 1 + trial % 3);
    auto profile = distance_profile(g);
    auto words = oracle::word_lengths(g);
    ASSERT_EQ(static_cast<std::int64_t>(words.size()), g.order());
    for (const auto& [e, len] : words) EXPECT_EQ(profile.at(e), len) << g.str();
    EXPECT_EQ(diameter(g), static_cast<std::int64_t>(profile.max()));
  }
}

TEST(DistanceProfileTest, NonCyclicGroupsMatchWordEnumeration) {
  const std::vector<CayleyDigraph> cases{
      CayleyDigraph(InvariantFactors({3, 24}), {{0, 1}, {-1, 3}}),
      CayleyDigraph(InvariantFactors({2, 2, 4}), {{1, 0, 0}, {0, 1, 1}, {0, 0, 1}}),
      CayleyDigraph(InvariantFactors({1, 2, 8}), {{0, 1, 3}, {0, 0, 1}, {0, 1, 7}}),
  };
  for (const auto& g : cases) {
    auto profile = distance_profile(g);
    for (const auto& [e, len] : oracle::word_lengths(g)) EXPECT_EQ(profile.at(e), len) << g.str();
  }
}

TEST(SolidDensityTest, Examples) {
  EXPECT_EQ(solid_density(upsilon(2, 1)), Rational(1, 3));
  EXPECT_EQ(solid_density(upsilon(3, 1)), Rational(21, 250));
  EXPECT_EQ(solid_density(cyclic(2, {1})), Rational(1));
  EXPECT_EQ(solid_density(cyclic(16, {1, 4, 5})), Rational(16, 216));
}

TEST(SolidDensityTest, NeverExceedsKnownConstants) {
  for (std::int64_t n = 2; n <= 40; ++n)
    for (std::size_t d = 1; d <= 3; ++d)
      for (const auto& g : oracle::cyclic_digraphs(n, d)) {
        const Rational delta = solid_density(g);
        EXPECT_LE(delta, density_constant(d).delta) << g.str();
      }
}

TEST(DilateDigraphTest, Examples) {
  CayleyDigraph g2(InvariantFactors({3, 24}), {{0, 1}, {-1, 3}});
  EXPECT_EQ(dilate_digraph(g2, 2), CayleyDigraph(InvariantFactors({6, 48}), {{0, 1}, {-1, 3}}));
  EXPECT_EQ(dilate_digraph(g2, 1), g2);
  CayleyDigraph b(InvariantFactors({1, 1, 16}), {{0, 0, 1}, {0, 1, -12}, {1, 0, -11}});
  CayleyDigraph five = dilate_digraph(b, 5);
  EXPECT_EQ(five.group(), InvariantFactors({5, 5, 80}));
  EXPECT_EQ(diameter(five), 27);
  EXPECT_THROW(dilate_digraph(b, 0), std::invalid_argument);
}

TEST(UpsilonTest, Examples) {
  EXPECT_EQ(upsilon(2, 1), CayleyDigraph(InvariantFactors({1, 3}), {{0, 1}, {1, -1}}));
  CayleyDigraph u3 = upsilon(3, 1);
  EXPECT_EQ(u3, CayleyDigraph(InvariantFactors({1, 1, 84}), {{1, 10, -38}, {0, 1, -3}, {0, -2, 7}}));
  EXPECT_EQ(diameter(u3), 7);
  CayleyDigraph u32 = upsilon(3, 2);
  EXPECT_EQ(u32.order(), 672);
  EXPECT_EQ(diameter(u32), 17);
  EXPECT_EQ(diameter(upsilon(3, 3)), 27);
  EXPECT_THROW(upsilon(4, 1), std::invalid_argument);
  EXPECT_THROW(upsilon(2, 0), std::invalid_argument);
}

TEST(DilatingMethodTest, DiameterFormulaOnProperDigraphs) {
  std::mt19937 rng(17);
  int proper = 0;
  for (; proper < 120; ++proper) {
    CayleyDigraph g = oracle::random_proper(rng, 1 + proper % 3, 60);
    ASSERT_TRUE(is_proper(g)) << g.str();
    const std::int64_t k = diameter(g), d = static_cast<std::int64_t>(g.degree());
    for (std::int64_t m = 2; m <= 3; ++m) EXPECT_EQ(diameter(dilate_digraph(g, m)), m * (k + d) - d) << g.str();
  }
}
