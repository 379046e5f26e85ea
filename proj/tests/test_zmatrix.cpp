#include "cayley/presentation.hpp"
#include "cayley/zmatrix.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace cayley;

namespace {

void expect_valid_snf(const IntMatrix& m, const SnfDecomposition& s) {
  EXPECT_EQ(s.U * m * s.V, s.S) << m;
  EXPECT_TRUE(is_unimodular(s.U));
  EXPECT_TRUE(is_unimodular(s.V));
  const std::size_t d = m.rows();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j) {
        EXPECT_EQ(s.S(i, j), 0);
      }
  for (std::size_t i = 0; i < d; ++i) EXPECT_GE(s.S(i, i), 0);
  for (std::size_t i = 0; i + 1 < d; ++i)
    if (s.S(i, i) != 0) {
      EXPECT_EQ(s.S(i + 1, i + 1) % s.S(i, i), 0);
    }
}

// True if multiplication by some unit of Z_n carries `got` onto `want` as
// sets; both live in a group whose only nontrivial factor is the last one.
bool related_by_unit(const InvariantFactors& g, const std::vector<GroupElement>& got,
                     std::vector<std::int64_t> want) {
  const std::int64_t n = g[g.rank() - 1];
  std::sort(want.begin(), want.end());
  for (std::int64_t u = 1; u < n; ++u) {
    if (std::gcd(u, n) != 1) continue;
    std::vector<std::int64_t> image;
    for (const auto& e : got) image.push_back(e.coords.back() * u % n);
    std::sort(image.begin(), image.end());
    if (image == want) return true;
  }
  return false;
}

const IntMatrix kUpsilon2{{2, -1}, {-1, 2}};
const IntMatrix kFour{{-1, -1, 0}, {-1, 0, -4}, {1, -3, 0}};

}  // namespace

TEST(DetTest, Examples) {
  EXPECT_EQ(det(kUpsilon2), 3);
  EXPECT_EQ(det(kFour), 16);
  EXPECT_EQ(det(IntMatrix::identity(3)), 1);
  EXPECT_EQ(det(IntMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(det(IntMatrix{{1, 2}, {2, 4}}), 0);
  EXPECT_THROW(det(IntMatrix(2, 3)), std::invalid_argument);
}

TEST(SnfTest, Examples) {
  auto s2 = smith_normal_form(kUpsilon2);
  EXPECT_EQ(s2.S, (IntMatrix{{1, 0}, {0, 3}}));
  expect_valid_snf(kUpsilon2, s2);

  auto s3 = smith_normal_form(kFour);
  EXPECT_EQ(s3.S, (IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 16}}));
  expect_valid_snf(kFour, s3);

  auto id = smith_normal_form(IntMatrix::identity(3));
  EXPECT_EQ(id.S, IntMatrix::identity(3));
  expect_valid_snf(IntMatrix::identity(3), id);
}

TEST(SnfTest, SingularMatrixHasZeroFactor) {
  IntMatrix m{{2, 4}, {1, 2}};
  auto s = smith_normal_form(m);
  expect_valid_snf(m, s);
  EXPECT_EQ(s.S(1, 1), 0);
}

TEST(SnfTest, RandomMatricesMatchDeterminantalDivisors) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> entry(-9, 9);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = 2 + trial % 3;
    IntMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = entry(rng);
    auto s = smith_normal_form(m);
    expect_valid_snf(m, s);
    auto oracle = oracle::invariant_factors_by_minors(m);
    for (std::size_t i = 0; i < d; ++i) EXPECT_EQ(s.S(i, i), oracle[i]) << m;
  }
}

TEST(SnfTest, InvariantUnderUnimodularChangeOfBasis) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> entry(-100, 100), small(-3, 3);
  auto random_unimodular = [&](std::size_t d) {
    IntMatrix u = IntMatrix::identity(d);
    for (int step = 0; step < 6; ++step) {
      std::size_t i = rng() % d, j = rng() % d;
      if (i != j) u.add_row(i, j, small(rng));
      if (rng() % 3 == 0) u.swap_rows(i, j);
    }
    return u;
  };
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + trial % 4;
    IntMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = entry(rng);
    IntMatrix p = random_unimodular(d), q = random_unimodular(d);
    ASSERT_TRUE(is_unimodular(p) && is_unimodular(q));
    auto s = smith_normal_form(m);
    auto t = smith_normal_form(p * m * q);
    expect_valid_snf(p * m * q, t);
    EXPECT_EQ(s.S, t.S) << m;
    Integer prod = 1;
    for (std::size_t i = 0; i < d; ++i) prod *= s.S(i, i);
    EXPECT_EQ(prod, abs(det(m)));
  }
}

TEST(SnfTest, RectangularInvariantFactors) {
  IntMatrix m{{2, 0, 4}, {0, 6, 0}};
  EXPECT_EQ(invariant_factors(m), oracle::invariant_factors_by_minors(m));
}

TEST(ScaleTest, Examples) {
  EXPECT_EQ(scale(kUpsilon2, 1), kUpsilon2);
  IntMatrix twice = scale(kUpsilon2, 2);
  EXPECT_EQ(twice, (IntMatrix{{4, -2}, {-2, 4}}));
  EXPECT_EQ(smith_normal_form(twice).S, (IntMatrix{{2, 0}, {0, 6}}));
  EXPECT_EQ(scale(IntMatrix{{1, 0}, {0, 3}}, 3), (IntMatrix{{3, 0}, {0, 9}}));
  EXPECT_THROW(scale(kUpsilon2, 0), std::invalid_argument);
}

TEST(ProperGeneratingSetTest, Examples) {
  // U is not unique, so the generators are only fixed up to a group
  // automorphism: {(0,1),(1,-1)} = {1,2} in Z_3 and
  // {(0,0,1),(0,1,-12),(1,0,-11)} = {1,4,5} in Z_16.
  auto p2 = proper_generating_set(kUpsilon2);
  EXPECT_EQ(p2.group, InvariantFactors({1, 3}));
  EXPECT_TRUE(related_by_unit(p2.group, p2.gens, {1, 2}));
  EXPECT_EQ(p2.snf.U * kUpsilon2 * p2.snf.V, p2.snf.S);

  auto p3 = proper_generating_set(kFour);
  EXPECT_EQ(p3.group, InvariantFactors({1, 1, 16}));
  EXPECT_TRUE(related_by_unit(p3.group, p3.gens, {1, 4, 5}));
  EXPECT_FALSE(related_by_unit(p3.group, p3.gens, {1, 2, 5}));
  EXPECT_TRUE(generates(p3.group, p3.gens));
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(p3.gens[j], p3.group.reduce(p3.lifts[j]));

  // The lifts are the columns of U.
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(Integer(p3.lifts[j][i]), p3.snf.U(i, j));
}

TEST(ProperGeneratingSetTest, DiagonalCase) {
  for (std::int64_t n = 2; n <= 20; ++n) {
    IntMatrix m = IntMatrix::diagonal({1, n});
    auto p = proper_generating_set(m);
    EXPECT_EQ(p.group, InvariantFactors({1, n}));
    EXPECT_EQ(p.snf.U * m * p.snf.V, p.snf.S);
    EXPECT_EQ(oracle::subgroup_size(p.group, p.gens), n);
  }
}

TEST(ProperGeneratingSetTest, RandomMatricesGenerate) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> entry(-6, 6);
  int checked = 0;
  while (checked < 100) {
    IntMatrix m(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) m(i, j) = entry(rng);
    if (det(m) == 0 || abs(det(m)) > 200) continue;
    auto p = proper_generating_set(m);
    EXPECT_EQ(p.group.order(), to_int64(abs(det(m))));
    EXPECT_EQ(oracle::subgroup_size(p.group, p.gens), p.group.order());
    ++checked;
  }
}

TEST(ProperGeneratingSetTest, Errors) {
  EXPECT_THROW(proper_generating_set(IntMatrix(2, 3)), std::invalid_argument);
  EXPECT_THROW(proper_generating_set(IntMatrix{{1, 2}, {2, 4}}), std::invalid_argument);
}
