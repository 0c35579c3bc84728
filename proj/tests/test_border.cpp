#include <gtest/gtest.h>

#include "oracles.hpp"
#include "vclab/border_lab.hpp"

using namespace vclab;

TEST(Counterexample, SingleIntervalBudget) {
  CounterexampleSpec spec;
  const auto ce = counterexample_points(spec);
  ASSERT_EQ(ce.sequences.size(), 1U);
  EXPECT_EQ(ce.sequences[0].gap.stage, 1);
  for (const auto& p : ce.points) EXPECT_TRUE(ce.sequences[0].gap.interval.contains(p));
  EXPECT_TRUE(is_difference_injective(ce.points));
}

TEST(Counterexample, DifferenceInjectiveAtGrowingBudgets) {
  for (const auto& [intervals, per] : std::vector<std::pair<int, int>>{{3, 5}, {7, 3}, {15, 6}, {31, 3}}) {
    CounterexampleSpec spec;
    spec.interval_budget = intervals;
    spec.per_interval_budget = per;
    const auto ce = counterexample_points(spec);
    EXPECT_TRUE(is_difference_injective(ce.points)) << intervals << "x" << per;
    EXPECT_TRUE(std::is_sorted(ce.points.begin(), ce.points.end()));
  }
}

TEST(Counterexample, PointsApproachGapEnds) {
  CounterexampleSpec spec;
  spec.interval_budget = 3;
  spec.per_interval_budget = 6;
  for (const auto& seq : counterexample_points(spec).sequences) {
    const auto& g = seq.gap.interval;
    for (const auto& [k, c] : seq.points) {
      EXPECT_TRUE(g.contains(c));
      const Rational bound = g.length() * pow2_neg(static_cast<unsigned>(std::abs(k)));
      if (k > 0) {
        EXPECT_LE(Rational(g.hi - c), bound);
      } else if (k < 0) {
        EXPECT_LE(Rational(c - g.lo), bound);
      }
    }
  }
}

TEST(Counterexample, InjectivityCheckCatchesRepeats) {
  EXPECT_FALSE(is_difference_injective({0, 1, 2}));
  EXPECT_TRUE(is_difference_injective({0, 1, 3}));
  EXPECT_FALSE(is_difference_injective({0, 0}));
}

TEST(NoShatter, PairUniquenessAndPatternCount) {
  CounterexampleSpec spec;
  spec.interval_budget = 15;
  spec.per_interval_budget = 4;
  const auto ce = counterexample_points(spec);
  const auto rep = no_shatter3_check(ce.points, candidate_triples(ce.points, 500, 11), 2);
  EXPECT_TRUE(rep.pair_uniqueness);
  EXPECT_EQ(rep.max_translates_per_pair, 1U);
  EXPECT_LT(rep.max_patterns, 8);
  EXPECT_FALSE(rep.shattered_triple.has_value());
  std::vector<Rational> sx = ce.points;
  for (std::size_t i = 0; i + 1 < sx.size() && i < 30; ++i)
    EXPECT_LE(translates_containing_pair(sx, sx[i], sx[i + 1]), 1U);
}

TEST(NoShatter, BlockConstructionShatters) {
  // Block 10k + {pattern k}: the translate by -10k cuts out pattern k.
  std::vector<Rational> x;
  for (int k = 1; k < 8; ++k)
    for (int i = 0; i < 3; ++i)
      if (k >> i & 1) x.push_back(10 * k + i);
  const auto rep = no_shatter3_check(x, {{Rational(0), Rational(1), Rational(2)}});
  EXPECT_EQ(rep.max_patterns, 8);
  EXPECT_TRUE(rep.shattered_triple.has_value());
  EXPECT_FALSE(rep.pair_uniqueness);
}

TEST(RBorder, MatchesOracle) {
  EXPECT_EQ(r_border_measure(parse_set("[0,1/2]"), Rational(1, 100)), parse_rational(oracle::kBorderHalfAt100));
  EXPECT_EQ(r_border_measure(parse_set("[0,1/3]"), Rational(1, 64)), parse_rational(oracle::kBorderThirdAt64));
  const FatCantor k;
  const auto k4 = k.stage(4);
  for (int j = 4; j <= 12; ++j)
    EXPECT_EQ(r_border_measure(k4, pow2_neg(static_cast<unsigned>(j))),
              parse_rational(oracle::kBorderK4[static_cast<std::size_t>(j - 4)]))
        << j;
  EXPECT_THROW(r_border_measure(k4, 0), InvalidInput);
}

TEST(RBorder, ClosedSetsDecayLinearly) {
  Rng rng(5);
  const auto sets = std::vector<ConstructibleSet1D>{random_closed_set(rng), random_closed_set(rng), random_closed_set(rng)};
  const auto rows = border_convergence_experiment(sets, dyadic_radii(4, 12), 3);
  ASSERT_EQ(rows.size(), 27U);
  for (const auto& r : rows) EXPECT_TRUE(r.holds()) << r.set_id << " " << to_string(r.r);
  EXPECT_EQ(rows[0].set_id, "F0");
  EXPECT_EQ(rows.back().set_id, "F2");
  for (const auto& s : sets) EXPECT_EQ(closure(s), s);
}

TEST(RBorder, CounterexampleStaysAboveStageMeasure) {
  const FatCantor k;
  for (const auto& row : counterexample_border_rows(6, 2)) {
    EXPECT_FALSE(row.upper);
    EXPECT_TRUE(row.holds()) << row.set_id;
    EXPECT_GE(row.value, Rational(3, 5));
  }
}

TEST(BorderCsv, HeaderAndFloatColumns) {
  std::ostringstream os;
  write_border_csv(os, {{"F0", Rational(1, 16), 2, Rational(1, 4), Rational(1, 2), true}});
  EXPECT_EQ(os.str(),
            "set_id,kind,r,r_float,boundary_points,r_border_measure,r_border_float,bound,bound_float,holds\n"
            "F0,upper,1/16,0.0625,2,1/4,0.25,1/2,0.5,true\n");
}

TEST(DensityReport, Examples) {
  const auto r = density_report(parse_set("[0,1/2] u (3/4,1)"), Interval::closed(0, 1));
  EXPECT_TRUE(r.hyp_x && r.hyp_xc);
  EXPECT_EQ(r.border_measure, 0);
  ASSERT_TRUE(r.identity.has_value());
  EXPECT_TRUE(*r.identity);
  EXPECT_TRUE(r.consistent);

  const auto empty = density_report(ConstructibleSet1D{}, Interval::closed(0, 1));
  EXPECT_TRUE(empty.hyp_x && empty.hyp_xc && empty.consistent);

  CounterexampleSpec spec;
  spec.interval_budget = 3;
  spec.per_interval_budget = 2;
  const auto ce = density_report(counterexample_points(spec).as_set(), Interval::closed(0, 1));
  EXPECT_FALSE(ce.hyp_x);
  EXPECT_FALSE(ce.identity.has_value());
  EXPECT_TRUE(ce.consistent);
}

TEST(DensityReport, RandomSetsAreConsistent) {
  Rng rng(17);
  for (int i = 0; i < 300; ++i) {
    const auto x = random_constructible_set(rng);
    const auto r = density_report(x, Interval::closed(0, 1));
    EXPECT_TRUE(r.consistent) << to_string(x);
    if (r.identity) {
      EXPECT_TRUE(*r.identity);
    }
  }
}
