// Acceptance run: one [PASS]/[FAIL] line per criterion, exit status 0 iff
// all criteria pass.

#include <unistd.h>

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "cli_runner.hpp"
#include "naive_vc.hpp"
#include "oracles.hpp"
#include "vclab/vclab.hpp"

using namespace vclab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string secs(double s) {
  std::ostringstream os;
  os.precision(3);
  os << s << "s";
  return os.str();
}

FiniteSubset arc(std::int64_t len) {
  std::vector<std::int64_t> idx;
  for (std::int64_t i = 0; i < len; ++i) idx.push_back(i);
  return FiniteSubset::of(idx);
}

Outcome ac1() {
  const auto t0 = std::chrono::steady_clock::now();
  const FatCantor k;
  for (int m = 0; m <= 12; ++m) {
    const Rational expect = Rational(3, 5) + Rational(2, 5) * pow2_neg(static_cast<unsigned>(m));
    if (expect != parse_rational(oracle::kStageMeasure[static_cast<std::size_t>(m)]))
      return {false, "oracle table disagrees with the closed form at m=" + std::to_string(m)};
    if (k.stage(m).measure() != expect) return {false, "stage " + std::to_string(m)};
  }
  const double s = seconds_since(t0);
  return {s < 1.0, "m = 0..12 exact, " + secs(s)};
}

Outcome ac2() {
  const auto inst = fat_cantor_parity_instance();
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(derive_seed(7, "witness"));
  const auto w = construct_witness(inst, 5, {}, rng);
  const auto c = verify_witness(w, inst);
  const double s = seconds_since(t0);
  if (!c.ok || c.conditions != 160) return {false, "depth 5: " + c.reason};
  for (int depth = 1; depth <= 4; ++depth)
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Rng r(derive_seed(seed, "witness"));
      const auto cw = verify_witness(construct_witness(inst, depth, {}, r), inst);
      if (!cw.ok || cw.conditions != (static_cast<std::size_t>(depth) << depth))
        return {false, "depth " + std::to_string(depth) + " seed " + std::to_string(seed)};
    }
  return {s < 60.0, "depth 5: 160/160 conditions in " + secs(s) + "; depths 1-4 x 10 seeds verified"};
}

Outcome ac3() {
  const FatCantor k;
  std::string detail;
  for (const auto& [ut, vt] : oracle::kOverlapK6) {
    const Rational u = parse_rational(ut);
    const Rational ov = overlap_measure(k, 6, u);
    const Rational floor = Rational(1, 5) - abs(u) - Rational(4, 5) * pow2_neg(6);
    if (ov != parse_rational(vt) || ov < Rational(1, 10) || ov < floor) return {false, "u=" + std::string(ut)};
    detail += std::string(detail.empty() ? "" : ", ") + ut + ":" + to_string(ov);
  }
  return {true, detail};
}

Outcome ac4() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = GroupModel::cyclic(1000);
  const auto sys = SetSystem::translates(g, arc(300));
  SweepConfig cfg;
  cfg.epsilon = Rational(1, 20);
  cfg.trials = 100;
  cfg.cap = 2000;
  cfg.seed = derive_seed(0, "eps-approx");
  const auto res = sample_complexity_sweep(g, sys, cfg);
  const double s = seconds_since(t0);
  if (!res.smallest_n) return {false, "no N <= 2000 reached 95/100"};
  for (const auto& row : res.rows)
    if (row.n == *res.smallest_n && row.successes < 95) return {false, "rate below target"};
  return {*res.smallest_n <= 2000 && s < 30.0, "N = " + std::to_string(*res.smallest_n) + ", " + secs(s)};
}

Outcome ac5() {
  Rng rng(derive_seed(5, "acceptance-vc"));
  for (int t = 0; t < 200; ++t) {
    const int n = static_cast<int>(rng.uniform_int(1, 10));
    const int members = static_cast<int>(rng.uniform_int(1, 48));
    naive::Family fam;
    std::vector<Row> rows;
    for (int i = 0; i < members; ++i) {
      std::vector<bool> bits(static_cast<std::size_t>(n));
      Row r(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j)
        if (rng.uniform_below(3) == 0) {
          bits[static_cast<std::size_t>(j)] = true;
          r.set(static_cast<std::size_t>(j));
        }
      fam.push_back(bits);
      rows.push_back(r);
    }
    std::vector<std::string> labels;
    for (int j = 0; j < n; ++j) labels.push_back(std::to_string(j));
    const SetSystem sys(labels, rows);
    const auto res = vc_dimension(sys);
    if (res.dimension != naive::vc_dimension(fam, n)) return {false, "family " + std::to_string(t)};
    if (!sauer_shelah_check(sys).first) return {false, "Sauer-Shelah table, family " + std::to_string(t)};
  }
  const auto arc3 = vc_dimension(SetSystem::translates(GroupModel::cyclic(12), arc(3))).dimension;
  return {arc3 == 2, "200 families agree; arc:3 in Z_12 = " + std::to_string(arc3)};
}

Outcome ac6() {
  const auto g = GroupModel::cyclic(100);
  const auto x = arc(20), u = arc(100);
  HittingSetConfig cfg;
  cfg.seed = derive_seed(6, "hitting");
  const auto h = hitting_set_for_translates(g, x, u, cfg);
  const bool covered = covering_check(g, x, h.points, u).covered;
  return {h.points.size() <= 25 && h.attempts <= 20 && covered,
          std::to_string(h.points.size()) + " points after " + std::to_string(h.attempts) + " attempt(s), covered=" +
              (covered ? "true" : "false")};
}

Outcome ac7() {
  Rng rng(derive_seed(7, "border"));
  std::vector<ConstructibleSet1D> sets;
  for (int i = 0; i < 20; ++i) sets.push_back(random_closed_set(rng));
  const auto radii = dyadic_radii(4, 12);
  const auto rows = border_convergence_experiment(sets, radii);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].holds()) return {false, rows[i].set_id + " at r=" + to_string(rows[i].r)};
    if (i % radii.size() && rows[i].value > rows[i - 1].value) return {false, rows[i].set_id + " not decreasing"};
  }
  Rational worst = 1;
  for (const auto& row : counterexample_border_rows(8)) {
    if (row.value < Rational(3, 5) || !row.holds()) return {false, row.set_id};
    worst = min(worst, row.value);
  }
  return {true, "180 closed-set cells within 4r*|boundary|; counterexample m<=8 min " + to_string(worst)};
}

Outcome ac8() {
  std::size_t largest = 0;
  for (const auto& [intervals, per] : std::vector<std::pair<int, int>>{{1, 1}, {3, 5}, {7, 3}, {15, 4}, {40, 2}}) {
    CounterexampleSpec spec;
    spec.interval_budget = intervals;
    spec.per_interval_budget = per;
    const auto ce = counterexample_points(spec);
    if (!is_difference_injective(ce.points)) return {false, "injectivity at " + std::to_string(ce.points.size())};
    largest = std::max(largest, ce.points.size());
  }
  CounterexampleSpec spec;
  spec.interval_budget = 40;
  spec.per_interval_budget = 2;
  const auto pts = counterexample_points(spec).points;
  // Exhaustive pair check by direct enumeration of translates.
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (translates_containing_pair(pts, pts[i], pts[j]) > 1) return {false, "pair uniqueness"};
  const auto rep = no_shatter3_check(pts, candidate_triples(pts, 1000, derive_seed(8, "triples")));
  if (!rep.pair_uniqueness || rep.max_patterns >= 8) return {false, "a triple realized all 8 patterns"};
  return {largest >= 200, "injective up to " + std::to_string(largest) + " points; all pairs unique; max patterns " +
                              std::to_string(rep.max_patterns) + " over 1000 triples"};
}

Outcome ac9() {
  Rng rng(derive_seed(9, "density"));
  std::size_t both = 0;
  for (int i = 0; i < 500; ++i) {
    const auto r = density_report(random_constructible_set(rng), Interval::closed(0, 1));
    if (!r.consistent) return {false, "set " + std::to_string(i)};
    if (r.hyp_x && r.hyp_xc) {
      ++both;
      if (!r.identity || !*r.identity) return {false, "identity, set " + std::to_string(i)};
    }
  }
  const auto ce = density_report(counterexample_points(matched_counterexample_spec(4)).as_set(), Interval::closed(0, 1));
  if (ce.hyp_x || !ce.consistent) return {false, "counterexample truncation"};
  return {true, "500 consistent, identity checked on " + std::to_string(both) + "; truncation fails its hypothesis"};
}

Outcome ac10() {
  const std::vector<std::pair<std::string, std::string>> runs{
      {"vcdim", "vcdim --group cyclic:12 --set arc:3 --dual --out A"},
      {"vcdim-reals", "vcdim --group reals --set '[0,1/8] u [1/2,5/8]' --max-k 3 --out A"},
      {"eps-approx", "eps-approx --seed 4 --group cyclic:300 --set arc:90 --epsilon 1/10 --trials 40 --cap 600 --out A"},
      {"steinhaus", "steinhaus --stage 6 --out A"},
      {"witness", "witness --depth 4 --seed 11 --out A"},
      {"border-sweep", "border-sweep --seed 4 --sets 5 --rmin 4 --rmax 10 --counterexample-max-m 5 --jobs 2 --out A"},
      {"counterexample", "counterexample --seed 4 --intervals 15 --per-interval 3 --triples 300 --out A"},
      {"theorem5-report", "theorem5-report --seed 4 --random 100 --out A"},
      {"selftest", "selftest --seed 4 --out A"},
  };
  const auto dir = cli::scratch_dir("acceptance");
  std::string detail;
  bool ok = true;
  for (const auto& [name, args] : runs) {
    std::string artifact[2], out[2];
    for (int i = 0; i < 2; ++i) {
      const auto sub = dir / (name + std::to_string(i));
      const auto r = cli::run(args, sub);
      if (r.code != 0) {
        ok = false;
        detail += name + " exit " + std::to_string(r.code) + "; ";
      }
      artifact[i] = cli::read_file(sub / "A");
      out[i] = r.out;
    }
    if (artifact[0].empty() || artifact[0] != artifact[1] || out[0] != out[1]) {
      ok = false;
      detail += name + " differs; ";
    }
  }
  fs::remove_all(dir);
  return {ok, ok ? std::to_string(runs.size()) + " invocations byte-identical across two runs" : detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exact stage measures", ac1},   {"witness construction", ac2}, {"quantitative Steinhaus", ac3},
      {"epsilon-approximation", ac4},  {"VC oracle agreement", ac5},  {"covering", ac6},
      {"border dichotomy", ac7},       {"counterexample combinatorics", ac8},
      {"density-hypothesis consistency", ac9}, {"determinism", ac10}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << "AC" << i + 1 << " " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
