#pragma once

// Randomized invariant suite behind `vclab selftest`. Every check is seeded
// and exact; each returns a name, a verdict and a short detail string.

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "vclab/border_lab.hpp"
#include "vclab/constructible_set.hpp"
#include "vclab/epsilon.hpp"
#include "vclab/fat_cantor.hpp"
#include "vclab/group.hpp"
#include "vclab/rng.hpp"
#include "vclab/tame_pair.hpp"
#include "vclab/vc.hpp"

namespace vclab {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

namespace checks {

inline CheckResult group_axioms(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "group_axioms"));
  const std::vector<GroupModel> finite{GroupModel::cyclic(12), GroupModel::product({2, 3, 5})};
  for (const auto& g : finite) {
    const auto n = g.order();
    for (int t = 0; t < 2000; ++t) {
      const auto a = g.element(rng.uniform_int(0, n - 1)), b = g.element(rng.uniform_int(0, n - 1)),
                 c = g.element(rng.uniform_int(0, n - 1));
      if (g.multiply(g.multiply(a, b), c) != g.multiply(a, g.multiply(b, c))) return {"group axioms", false, "associativity"};
      if (g.multiply(a, g.identity()) != a || g.multiply(a, g.inverse(a)) != g.identity())
        return {"group axioms", false, "identity/inverse"};
    }
  }
  const auto r = GroupModel::reals(0, 1);
  for (int t = 0; t < 2000; ++t) {
    auto q = [&] { return make_rational(static_cast<long>(rng.uniform_int(-1000, 1000)), static_cast<long>(rng.uniform_int(1, 97))); };
    const GroupElement a = q(), b = q(), c = q();
    if (r.multiply(r.multiply(a, b), c) != r.multiply(a, r.multiply(b, c)) || r.multiply(a, r.inverse(a)) != r.identity())
      return {"group axioms", false, "reals"};
  }
  return {"group axioms", true, "cyclic:12, product:2x3x5, reals"};
}

inline CheckResult left_invariance(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "left_invariance"));
  const auto g = GroupModel::cyclic(30);
  for (int t = 0; t < 500; ++t) {
    std::vector<std::int64_t> idx;
    for (int i = 0; i < 8; ++i) idx.push_back(rng.uniform_int(0, 29));
    const auto s = FiniteSubset::of(idx);
    if (haar_measure(g, translate(g, s, rng.uniform_int(0, 29))) != haar_measure(g, s)) return {"left invariance", false, "finite"};
    const auto a = random_constructible_set(rng);
    if (translate(a, make_rational(static_cast<long>(rng.uniform_int(-50, 50)), 7)).measure() != a.measure())
      return {"left invariance", false, "reals"};
  }
  return {"left invariance", true, "500 finite and 500 interval-union sets"};
}

inline CheckResult boolean_laws(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "boolean_laws"));
  const Interval w = Interval::closed(-1, 2);
  for (int t = 0; t < 300; ++t) {
    const auto a = random_constructible_set(rng), b = random_constructible_set(rng), c = random_constructible_set(rng);
    if (complement(set_union(a, b), w) != intersection(complement(a, w), complement(b, w))) return {"boolean laws", false, "De Morgan"};
    if (intersection(a, set_union(b, c)) != set_union(intersection(a, b), intersection(a, c)))
      return {"boolean laws", false, "distributivity"};
    if (set_union(a, intersection(a, b)) != a) return {"boolean laws", false, "absorption"};
    // The window ends are border points of any complement taken inside it.
    const auto inner = ConstructibleSet1D::open(w.lo, w.hi);
    if (border(a) != intersection(border(complement(a, w)), inner)) return {"boolean laws", false, "border of complement"};
    if (border(a).measure() != 0) return {"boolean laws", false, "border measure"};
    if (closure(closure(a)) != closure(a) || interior(interior(a)) != interior(a) || !is_subset(interior(a), a) ||
        !is_subset(a, closure(a)))
      return {"boolean laws", false, "closure/interior"};
    if (border(a) != intersection(intersection(closure(a), closure(complement(a, w))), inner)) return {"boolean laws", false, "border identity"};
    if (!a.empty()) {
      // {0} - D is the reflection of D.
      const auto d = minkowski_diff(a, a);
      if (!d.contains(0) || d != minkowski_diff(ConstructibleSet1D::point(0), d)) return {"boolean laws", false, "difference set"};
    }
  }
  return {"boolean laws", true, "300 random triples"};
}

inline CheckResult cantor_stages() {
  FatCantor k;
  const auto lazy = k.as_lazy_set();
  for (int m = 0; m <= 12; ++m) {
    if (k.stage(m).measure() != Rational(3, 5) + Rational(2, 5) * pow2_neg(static_cast<unsigned>(m)))
      return {"fat Cantor stages", false, "measure at stage " + std::to_string(m)};
    if (!lazy.check_monotone(m) || !lazy.check_measure_formula(m)) return {"fat Cantor stages", false, "lazy stage " + std::to_string(m)};
  }
  return {"fat Cantor stages", true, "stages 0..12"};
}

inline bool naive_shattered(const SetSystem& sys, std::uint64_t subset) {
  std::set<std::uint64_t> traces;
  for (const auto& r : sys.rows()) traces.insert(r.to_ulong() & subset);
  return traces.size() == (std::uint64_t{1} << __builtin_popcountll(subset));
}

inline int naive_vc(const SetSystem& sys) {
  if (sys.family_size() == 0) return -1;
  int best = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << sys.ground_size()); ++s)
    if (naive_shattered(sys, s)) best = std::max(best, __builtin_popcountll(s));
  return best;
}

inline SetSystem random_family(Rng& rng, std::size_t n, std::size_t rows) {
  std::vector<Row> out;
  for (std::size_t i = 0; i < rows; ++i) out.emplace_back(n, rng.uniform_below(std::uint64_t{1} << n));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return SetSystem(labels, out);
}

inline CheckResult vc_agreement(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "vc_agreement"));
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 8));
    const auto sys = random_family(rng, n, static_cast<std::size_t>(rng.uniform_int(1, 24)));
    const auto r = vc_dimension(sys);
    if (r.dimension != naive_vc(sys) || !verify_report(sys, r.certificate)) return {"VC oracle", false, "family " + std::to_string(t)};
    if (!sauer_shelah_check(sys, r.dimension).first) return {"VC oracle", false, "Sauer-Shelah"};
    if (!assouad_consistent(r.dimension, dual_vc_dimension(sys).dimension)) return {"VC oracle", false, "dual bound"};
  }
  const auto arc = vc_dimension(SetSystem::translates(GroupModel::cyclic(12), FiniteSubset::of({0, 1, 2})));
  if (arc.dimension != 2) return {"VC oracle", false, "arc:3 in Z_12"};
  return {"VC oracle", true, "100 random families, arc:3 in Z_12 = 2"};
}

inline CheckResult epsilon_recompute(std::uint64_t seed) {
  const auto g = GroupModel::cyclic(200);
  std::vector<std::int64_t> arc;
  for (int i = 0; i < 60; ++i) arc.push_back(i);
  const auto sys = SetSystem::translates(g, FiniteSubset::of(arc));
  for (int t = 0; t < 10; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const auto e = epsilon_approximation(g, sys, Rational(1, 10), 150, rng);
    if (e.sup_deviation != sup_deviation(g, sys, e.points)) return {"epsilon recompute", false, "trial " + std::to_string(t)};
  }
  return {"epsilon recompute", true, "fast and row-by-row deviations agree"};
}

inline CheckResult hitting_covering(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "hitting_covering"));
  const auto g = GroupModel::cyclic(60);
  for (int t = 0; t < 40; ++t) {
    std::vector<std::int64_t> xs, us, pts;
    for (int i = 0; i < 10; ++i) xs.push_back(rng.uniform_int(0, 59));
    for (int i = 0; i < 20; ++i) us.push_back(rng.uniform_int(0, 59));
    for (int i = 0; i < 4; ++i) pts.push_back(rng.uniform_int(0, 59));
    const auto x = FiniteSubset::of(xs), u = FiniteSubset::of(us);
    const bool hit = !first_missed_translate(g, x, pts, u).has_value();
    if (hit != covering_check(g, x, pts, u).covered) return {"hitting/covering", false, "instance " + std::to_string(t)};
  }
  return {"hitting/covering", true, "40 random instances"};
}

inline CheckResult witness_round_trip(std::uint64_t seed) {
  const auto inst = fat_cantor_parity_instance();
  for (int depth = 0; depth <= 3; ++depth) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(depth)));
    const auto w = construct_witness(inst, depth, {}, rng);
    if (!verify_witness(w, inst).ok) return {"witness round trip", false, "depth " + std::to_string(depth)};
    if (!verify_witness(witness_from_json(nlohmann::json::parse(to_json(w).dump())), inst).ok)
      return {"witness round trip", false, "reload at depth " + std::to_string(depth)};
  }
  return {"witness round trip", true, "depths 0..3"};
}

inline CheckResult counterexample_structure(std::uint64_t seed) {
  CounterexampleSpec spec;
  spec.interval_budget = 7;
  spec.per_interval_budget = 3;
  const auto ce = counterexample_points(spec);
  if (!is_difference_injective(ce.points)) return {"counterexample", false, "injectivity"};
  const auto rep = no_shatter3_check(ce.points, candidate_triples(ce.points, 200, seed));
  if (!rep.pair_uniqueness || rep.max_patterns >= 8) return {"counterexample", false, "three-point patterns"};
  return {"counterexample", true, std::to_string(ce.points.size()) + " points, max patterns " + std::to_string(rep.max_patterns)};
}

inline CheckResult border_bounds(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "border_bounds"));
  for (int t = 0; t < 20; ++t) {
    const auto f = random_closed_set(rng);
    const auto bp = boundary_point_count(f);
    for (const auto& r : dyadic_radii(4, 8))
      if (r_border_measure(f, r) > 4 * r * static_cast<unsigned long>(bp)) return {"border bounds", false, "set " + std::to_string(t)};
  }
  return {"border bounds", true, "20 closed sets, r = 2^-4..2^-8"};
}

inline CheckResult density_consistency(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "density"));
  for (int t = 0; t < 200; ++t)
    if (!density_report(random_constructible_set(rng), Interval::closed(0, 1)).consistent)
      return {"density hypotheses", false, "set " + std::to_string(t)};
  return {"density hypotheses", true, "200 random constructible sets"};
}

}  // namespace checks

inline std::vector<CheckResult> invariant_suite(std::uint64_t seed) {
  return {checks::group_axioms(seed),       checks::left_invariance(seed),    checks::boolean_laws(seed),
          checks::cantor_stages(),          checks::vc_agreement(seed),       checks::epsilon_recompute(seed),
          checks::hitting_covering(seed),   checks::witness_round_trip(seed), checks::counterexample_structure(seed),
          checks::border_bounds(seed),      checks::density_consistency(seed)};
}

}  // namespace vclab
