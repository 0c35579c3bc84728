#include <gtest/gtest.h>

#include "vclab/group.hpp"

using namespace vclab;

TEST(GroupModel, CyclicArithmetic) {
  const auto g = GroupModel::cyclic(12);
  EXPECT_EQ(g.order(), 12);
  EXPECT_EQ(g.multiply_index(7, 8), 3);
  EXPECT_EQ(g.inverse_index(5), 7);
  EXPECT_EQ(g.multiply(g.element(4), g.inverse(g.element(4))), g.identity());
}

TEST(GroupModel, ProductIsComponentwise) {
  const auto g = GroupModel::product({2, 3});
  EXPECT_EQ(g.order(), 6);
  for (std::int64_t a = 0; a < 6; ++a)
    for (std::int64_t b = 0; b < 6; ++b) EXPECT_EQ(g.multiply_index(a, b), g.multiply_index(b, a));
  for (std::int64_t a = 0; a < 6; ++a) EXPECT_EQ(g.multiply_index(a, g.inverse_index(a)), g.index_of(g.identity()));
}

TEST(GroupModel, RejectsBadDescriptors) {
  EXPECT_THROW(GroupModel::cyclic(0), InvalidInput);
  EXPECT_THROW(GroupModel::product({}), InvalidInput);
  EXPECT_THROW(GroupModel::reals(1, 1), InvalidInput);
  EXPECT_THROW(parse_group("dihedral:4"), InvalidInput);
  EXPECT_THROW(GroupModel::reals(0, 1).order(), ModelMismatch);
}

TEST(GroupModel, JsonRoundTrip) {
  for (const auto& text : {"cyclic:12", "product:2x3x5"}) {
    const auto g = parse_group(text);
    const auto back = group_from_json(to_json(g));
    EXPECT_EQ(back.order(), g.order());
    EXPECT_EQ(back.orders(), g.orders());
  }
  EXPECT_EQ(to_json(GroupModel::cyclic(12)), nlohmann::json::parse(R"({"kind":"cyclic","n":12})"));
}

TEST(Haar, NormalizedCountingMeasure) {
  const auto g = GroupModel::cyclic(12);
  const auto s = FiniteSubset::of({0, 1, 2});
  EXPECT_EQ(haar_measure(g, s), Rational(1, 4));
  for (std::int64_t t = 0; t < 12; ++t) EXPECT_EQ(haar_measure(g, translate(g, s, t)), Rational(1, 4));
  EXPECT_EQ(translate(g, s, 11).indices, (std::vector<std::int64_t>{0, 1, 11}));
}

TEST(Haar, LebesgueOnIntervalUnions) {
  const auto r = GroupModel::reals(0, 1);
  EXPECT_EQ(haar_measure(r, parse_set("[0,1/2] u (3/4,1) u {2}")), Rational(3, 4));
}

TEST(Sampling, FiniteRegionAndSeededRepeatability) {
  const auto g = GroupModel::cyclic(100);
  const auto region = FiniteSubset::of({3, 17, 42});
  Rng a(5), b(5);
  for (int i = 0; i < 200; ++i) {
    const auto x = sample_uniform(g, region, a);
    EXPECT_TRUE(region.contains(g.index_of(x)));
    EXPECT_EQ(x, sample_uniform(g, region, b));
  }
}

TEST(Sampling, RealsStayInsideRegion) {
  const auto r = GroupModel::reals(0, 1);
  const auto region = parse_set("[0,1/8] u [1/2,5/8)");
  Rng rng(11);
  for (int i = 0; i < 200; ++i) EXPECT_TRUE(region.contains(std::get<Rational>(sample_uniform(r, region, rng))));
  EXPECT_THROW(sample_uniform(r, parse_set("{1/3}"), rng), Unsampleable);
}

TEST(Rng, SplitSeedsAreStable) {
  EXPECT_EQ(derive_seed(7, "witness"), derive_seed(7, "witness"));
  EXPECT_NE(derive_seed(7, "witness"), derive_seed(7, "border-sweep"));
  EXPECT_NE(derive_seed(7, 1), derive_seed(8, 1));
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto v = rng.uniform_int(-4, 4);
    EXPECT_GE(v, -4);
    EXPECT_LE(v, 4);
  }
}
