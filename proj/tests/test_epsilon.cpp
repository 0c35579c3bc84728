#include <gtest/gtest.h>

#include "vclab/epsilon.hpp"

using namespace vclab;

namespace {

FiniteSubset arc(std::int64_t len) {
  std::vector<std::int64_t> idx;
  for (std::int64_t i = 0; i < len; ++i) idx.push_back(i);
  return FiniteSubset::of(idx);
}

}  // namespace

TEST(EpsilonApproximation, DeviationMatchesRowByRowRecompute) {
  const auto g = GroupModel::cyclic(150);
  const auto sys = SetSystem::translates(g, arc(40));
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(s);
    const auto e = epsilon_approximation(g, sys, Rational(1, 10), 120, rng);
    EXPECT_EQ(e.points.size(), 120U);
    EXPECT_EQ(e.sup_deviation, sup_deviation(g, sys, e.points));
    EXPECT_EQ(e.success, e.sup_deviation < Rational(1, 10));
    EXPECT_FALSE(e.approximate);
  }
}

TEST(EpsilonApproximation, WholeGroupIsExact) {
  const auto g = GroupModel::cyclic(30);
  const auto sys = SetSystem::translates(g, arc(7));
  std::vector<std::int64_t> all(30);
  for (std::int64_t i = 0; i < 30; ++i) all[static_cast<std::size_t>(i)] = i;
  EXPECT_EQ(sup_deviation(g, sys, all), 0);
  EXPECT_EQ(sup_deviation(g, sys, {0}), Rational(23, 30));
}

TEST(EpsilonApproximation, RejectsForeignFamily) {
  const auto sys = SetSystem::translates(GroupModel::cyclic(10), arc(3));
  Rng rng(1);
  EXPECT_THROW(epsilon_approximation(GroupModel::cyclic(12), sys, Rational(1, 10), 5, rng), ModelMismatch);
}

TEST(Sweep, DeterministicAcrossJobCounts) {
  const auto g = GroupModel::cyclic(200);
  const auto sys = SetSystem::translates(g, arc(60));
  SweepConfig cfg;
  cfg.epsilon = Rational(1, 10);
  cfg.trials = 30;
  cfg.seed = 77;
  cfg.grid = {10, 50, 200, 400};
  const auto one = sample_complexity_sweep(g, sys, cfg);
  cfg.jobs = 4;
  const auto four = sample_complexity_sweep(g, sys, cfg);
  std::ostringstream a, b;
  write_sweep_csv(a, one);
  write_sweep_csv(b, four);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "N,trials,successes,min_sup_deviation,max_sup_deviation");
  for (std::size_t i = 1; i < one.rows.size(); ++i) EXPECT_GE(one.rows[i].smoothed_rate, one.rows[i - 1].smoothed_rate);
}

TEST(Sweep, DefaultGridEndsAtCap) {
  const auto grid = default_sweep_grid(2000);
  EXPECT_EQ(grid.front(), 1);
  EXPECT_EQ(grid.back(), 2000);
  EXPECT_TRUE(std::is_sorted(grid.begin(), grid.end()));
  EXPECT_GT(classical_sample_bound(2, Rational(1, 20)), 2000);
}

TEST(HittingSet, ArcOfTwentyInZ100) {
  const auto g = GroupModel::cyclic(100);
  const auto x = arc(20);
  const auto u = arc(100);
  HittingSetConfig cfg;
  cfg.seed = 3;
  const auto h = hitting_set_for_translates(g, x, u, cfg);
  EXPECT_LE(h.points.size(), 25U);
  EXPECT_LE(h.attempts, 20);
  EXPECT_FALSE(first_missed_translate(g, x, h.points, u).has_value());
  EXPECT_TRUE(covering_check(g, x, h.points, u).covered);
  // Fewer than 100/20 points can never hit all 100 translates.
  EXPECT_GE(h.points.size(), 5U);
}

TEST(HittingSet, FailureModes) {
  const auto g = GroupModel::cyclic(100);
  EXPECT_THROW(hitting_set_for_translates(g, FiniteSubset{}, arc(100)), InvalidInput);
  HittingSetConfig tiny;
  tiny.sample_size = 1;
  tiny.retries = 2;
  EXPECT_THROW(hitting_set_for_translates(g, arc(2), arc(100), tiny), HittingSetFailure);
}

TEST(Covering, ReportsUncoveredElement) {
  const auto g = GroupModel::cyclic(10);
  const auto res = covering_check(g, arc(2), {0}, arc(10));
  EXPECT_FALSE(res.covered);
  ASSERT_TRUE(res.counterexample.has_value());
  EXPECT_FALSE(covering_check(g, arc(2), {0}, FiniteSubset::of({*res.counterexample})).covered);
  EXPECT_TRUE(covering_check(g, arc(5), {0, 5}, arc(10)).covered);
}
