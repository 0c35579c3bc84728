#include <gtest/gtest.h>

#include "naive_vc.hpp"
#include "oracles.hpp"
#include "vclab/fat_cantor.hpp"
#include "vclab/vc.hpp"

using namespace vclab;

namespace {

struct Random {
  SetSystem sys;
  naive::Family fam;
  int n;
};

Random random_family(Rng& rng, int n, int members) {
  naive::Family fam;
  std::vector<Row> rows;
  for (int i = 0; i < members; ++i) {
    std::vector<bool> bits(static_cast<std::size_t>(n));
    Row r(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
      if (rng.uniform_below(2)) {
        bits[static_cast<std::size_t>(j)] = true;
        r.set(static_cast<std::size_t>(j));
      }
    fam.push_back(bits);
    rows.push_back(r);
  }
  std::vector<std::string> labels;
  for (int j = 0; j < n; ++j) labels.push_back("e" + std::to_string(j));
  return {SetSystem(labels, rows), fam, n};
}

}  // namespace

TEST(VcDimension, AgreesWithNaiveOracle) {
  Rng rng(derive_seed(2024, "vc-tests"));
  for (int t = 0; t < 200; ++t) {
    const int n = static_cast<int>(rng.uniform_int(1, 10));
    const int members = static_cast<int>(rng.uniform_int(1, 40));
    const auto r = random_family(rng, n, members);
    const auto res = vc_dimension(r.sys);
    ASSERT_EQ(res.dimension, naive::vc_dimension(r.fam, n)) << "family " << t;
    EXPECT_TRUE(verify_report(r.sys, res.certificate));
    EXPECT_EQ(static_cast<int>(res.certificate.points.size()), res.dimension);
    EXPECT_TRUE(sauer_shelah_check(r.sys, res.dimension).first);
    if (members <= 12) {
      EXPECT_EQ(dual_vc_dimension(r.sys).dimension, naive::dual_vc_dimension(r.fam, n)) << t;
    }
  }
}

TEST(VcDimension, ArcTranslatesInZ12) {
  const auto sys = SetSystem::translates(GroupModel::cyclic(12), FiniteSubset::of({0, 1, 2}));
  EXPECT_EQ(sys.family_size(), 12U);
  EXPECT_EQ(vc_dimension(sys).dimension, oracle::kArc3Z12Vc);
  EXPECT_EQ(dual_vc_dimension(sys).dimension, oracle::kArc3Z12DualVc);
  EXPECT_EQ(sys.translator(5), 5);
}

TEST(VcDimension, EdgeCases) {
  EXPECT_EQ(vc_dimension(SetSystem::from_subsets(4, {})).dimension, -1);
  EXPECT_EQ(vc_dimension(SetSystem::from_subsets(4, {{}})).dimension, 0);
  EXPECT_EQ(vc_dimension(SetSystem::from_subsets(3, {{}, {0}, {1}, {0, 1}})).dimension, 2);
  // Duplicate rows collapse.
  EXPECT_EQ(SetSystem::from_subsets(3, {{0}, {0}, {1}}).family_size(), 2U);
  EXPECT_THROW(SetSystem::from_subsets(2, {{2}}), InvalidInput);
}

TEST(VcDimension, BudgetExceededCarriesLowerBound) {
  Rng rng(9);
  const auto r = random_family(rng, 10, 400);
  try {
    vc_dimension(r.sys, 5);
    FAIL() << "expected budget exhaustion";
  } catch (const BudgetExceeded& e) {
    EXPECT_GE(e.lower_bound(), 0);
    EXPECT_LE(e.lower_bound(), naive::vc_dimension(r.fam, 10));
  }
}

TEST(Shattering, ReportsWitnessesPerMask) {
  const auto sys = SetSystem::from_subsets(3, {{}, {0}, {1}, {0, 1}, {2}});
  const auto rep = is_shattered(sys, {0, 1});
  EXPECT_TRUE(rep.shattered());
  EXPECT_EQ(rep.realized(), 4U);
  EXPECT_FALSE(is_shattered(sys, {0, 2}).shattered());
  EXPECT_THROW(is_shattered(sys, {0, 0}), InvalidInput);
  EXPECT_THROW(is_shattered(sys, {5}), InvalidInput);
}

TEST(SauerShelah, TableAndBinomials) {
  EXPECT_EQ(binomial_sum(5, 2), 16U);
  EXPECT_EQ(binomial_sum(3, 5), 8U);
  const auto sys = SetSystem::translates(GroupModel::cyclic(12), FiniteSubset::of({0, 1, 2}));
  const auto [ok, rows] = sauer_shelah_check(sys, 2);
  EXPECT_TRUE(ok);
  for (const auto& row : rows) EXPECT_LE(row.max_traces, row.bound);
  EXPECT_TRUE(assouad_consistent(2, 2));
  EXPECT_FALSE(assouad_consistent(1, 4));
}

TEST(Averages, ExactEmpiricalFrequencies) {
  EXPECT_EQ(av(std::vector<std::int64_t>{0, 1, 5, 5}, FiniteSubset::of({1, 5})), Rational(3, 4));
  EXPECT_EQ(av(std::vector<Rational>{0, Rational(1, 2), 2}, parse_set("[0,1/2)")), Rational(1, 3));
  const FatCantor k;
  EXPECT_EQ(av(std::vector<Rational>{0, Rational(1, 2)}, k.as_lazy_set(), 10), Rational(1, 2));
  EXPECT_EQ(av_if(std::vector<int>{1, 2, 3, 4}, [](int v) { return v % 2 == 0; }), Rational(1, 2));
  EXPECT_THROW(av(std::vector<Rational>{}, parse_set("[0,1]")), InvalidInput);
}

TEST(TranslateVc, IntervalTranslatesReachTwo) {
  TranslateSearch cfg;
  cfg.max_k = 3;
  const auto x = parse_set("[0,1/3]");
  const auto res = translate_vc_dimension(x, cfg);
  EXPECT_EQ(res.lower_bound, 2);
  EXPECT_EQ(res.searched_up_to, 3);
  EXPECT_TRUE(verify_translate_certificate(x, res.certificate));
  auto broken = res.certificate;
  broken.translators.back() = Rational(100);
  EXPECT_FALSE(verify_translate_certificate(x, broken));
}

TEST(TranslateVc, TwoIntervalsShatterMore) {
  TranslateSearch cfg;
  cfg.max_k = 3;
  const auto x = parse_set("[0,1/8] u [1/2,5/8]");
  const auto res = translate_vc_dimension(x, cfg);
  EXPECT_GE(res.lower_bound, 2);
  EXPECT_TRUE(verify_translate_certificate(x, res.certificate));
}
