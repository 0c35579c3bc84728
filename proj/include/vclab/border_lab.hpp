#pragma once

// The fat Cantor counterexample (difference-injective points accumulating at
// every removed interval's ends) and the border-measure experiments around it.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "vclab/constructible_set.hpp"
#include "vclab/errors.hpp"
#include "vclab/fat_cantor.hpp"
#include "vclab/parallel.hpp"
#include "vclab/rational.hpp"
#include "vclab/rng.hpp"

namespace vclab {

// ---------------------------------------------------------------------------
// Counterexample points

struct CounterexampleSpec {
  FatCantorSpec cantor;
  /// Removed intervals are taken in (stage, left-to-right) order; the first
  /// `interval_budget` of them receive points.
  std::int64_t interval_budget = 1;
  /// Points c_k with |k| <= per_interval_budget in every interval ...
  int per_interval_budget = 1;
  /// ... unless this per-stage table is given (index = stage - 1).
  std::vector<int> per_stage_budget;
};

struct PointSequence {
  Gap gap;
  std::vector<std::pair<int, Rational>> points;  ///< (k, c_k), increasing in k
};

struct Counterexample {
  std::vector<PointSequence> sequences;
  std::vector<Rational> points;  ///< all points, sorted

  ConstructibleSet1D as_set() const { return ConstructibleSet1D::points_set(points); }
};

namespace detail {

/// Perturbation offsets 0, ±1/2, ±1/3, ±2/3, ±1/4, ±3/4, ... (reduced
/// fractions in the open interval (-1, 1) by growing denominator).
class PerturbationSequence {
 public:
  Rational next() {
    if (!started_) {
      started_ = true;
      return 0;
    }
    for (;;) {
      if (negative_) {
        negative_ = false;
        return -current_;
      }
      ++num_;
      if (num_ >= den_) {
        ++den_;
        num_ = 1;
      }
      if (std::gcd(num_, den_) != 1) continue;
      current_ = Rational(num_, den_);
      negative_ = true;
      return current_;
    }
  }

 private:
  bool started_ = false;
  bool negative_ = false;
  long num_ = 0, den_ = 2;
  Rational current_;
};

}  // namespace detail

/// All pairwise differences y - x (x != y) distinct, i.e. all unordered
/// distances distinct.
inline bool is_difference_injective(const std::vector<Rational>& pts) {
  std::unordered_set<Rational, RationalHash> seen;
  seen.reserve(pts.size() * pts.size() / 2 + 1);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      Rational d = abs(Rational(pts[j] - pts[i]));
      if (d == 0 || !seen.insert(std::move(d)).second) return false;
    }
  return true;
}

/// Target position of c_k in (a, b) before perturbation, and the maximal
/// perturbation width: c_0 = midpoint, c_k -> b, c_{-k} -> a geometrically.
inline std::pair<Rational, Rational> counterexample_anchor(const Interval& gap, int k) {
  const Rational len = gap.length();
  const unsigned ak = static_cast<unsigned>(k < 0 ? -k : k);
  Rational base = k == 0 ? gap.midpoint() : (k > 0 ? Rational(gap.hi - len * pow2_neg(ak + 1)) : Rational(gap.lo + len * pow2_neg(ak + 1)));
  return {std::move(base), len * pow2_neg(ak + 3)};
}

/// Greedy construction in (stage, interval, |k|) order. Each candidate is the
/// anchor shifted by the first perturbation whose new distances are neither
/// already used nor repeated among themselves, which keeps every pairwise
/// difference distinct.
inline Counterexample counterexample_points(const CounterexampleSpec& spec) {
  if (spec.interval_budget < 1 || (spec.per_stage_budget.empty() && spec.per_interval_budget < 0))
    throw InvalidInput("counterexample budgets must be positive");
  const FatCantor k(spec.cantor);
  Counterexample out;
  std::unordered_set<Rational, RationalHash> used;
  std::vector<Rational> placed;
  std::int64_t remaining = spec.interval_budget;
  for (int stage = 1; remaining > 0; ++stage) {
    if (stage > spec.cantor.max_stage) throw InvalidInput("interval budget exceeds the available stages");
    const int budget = spec.per_stage_budget.empty()
                           ? spec.per_interval_budget
                           : spec.per_stage_budget[std::min<std::size_t>(static_cast<std::size_t>(stage - 1),
                                                                         spec.per_stage_budget.size() - 1)];
    for (auto& gap : k.gaps_in(stage, stage, spec.cantor.lo, spec.cantor.hi)) {
      if (remaining-- <= 0) break;
      PointSequence seq{gap, {}};
      std::vector<int> order{0};
      for (int j = 1; j <= budget; ++j) {
        order.push_back(-j);
        order.push_back(j);
      }
      for (int kk : order) {
        const auto [base, width] = counterexample_anchor(gap.interval, kk);
        detail::PerturbationSequence perturb;
        for (int tries = 0;; ++tries) {
          if (tries > 100000) throw Error("greedy counterexample construction stalled");
          Rational c = base + width * perturb.next();
          std::vector<Rational> fresh;
          fresh.reserve(placed.size());
          std::unordered_set<Rational, RationalHash> mine;
          bool ok = true;
          for (const auto& p : placed) {
            Rational d = abs(Rational(c - p));
            if (d == 0 || used.count(d) || !mine.insert(d).second) {
              ok = false;
              break;
            }
            fresh.push_back(std::move(d));
          }
          if (!ok) continue;
          for (auto& d : fresh) used.insert(std::move(d));
          placed.push_back(c);
          seq.points.emplace_back(kk, std::move(c));
          break;
        }
      }
      std::sort(seq.points.begin(), seq.points.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      out.sequences.push_back(std::move(seq));
    }
  }
  out.points = std::move(placed);
  std::sort(out.points.begin(), out.points.end());
  if (!is_difference_injective(out.points)) throw Error("counterexample construction lost difference-injectivity");
  return out;
}

/// Budgets matched to r = 2^-m: every gap of stage <= m, with
/// max(1, m - 2j + 2) points on each side at stage j, so that every point of
/// K_m lies within r of some c_k.
inline CounterexampleSpec matched_counterexample_spec(int m, FatCantorSpec cantor = {}) {
  if (m < 1) throw InvalidInput("matched budgets need m >= 1");
  CounterexampleSpec spec;
  spec.cantor = std::move(cantor);
  spec.interval_budget = (std::int64_t{1} << m) - 1;
  for (int j = 1; j <= m; ++j) spec.per_stage_budget.push_back(std::max(1, m - 2 * j + 2));
  return spec;
}

// ---------------------------------------------------------------------------
// Three-point non-shattering

struct NoShatterReport {
  std::size_t triples = 0;
  int max_patterns = 0;  ///< over all triples, counting the empty pattern
  std::optional<std::array<Rational, 3>> shattered_triple;
  std::size_t max_translates_per_pair = 0;  ///< via difference multiplicities
  bool pair_uniqueness = true;
};

/// Distinct patterns on {a,b,c} cut out by translates t + X. Only
/// t in {a,b,c} - X can realize a nonempty pattern; far translates give the
/// empty one.
inline int realized_patterns(const std::vector<Rational>& sorted_x, const std::array<Rational, 3>& tri) {
  auto in = [&](const Rational& v) { return std::binary_search(sorted_x.begin(), sorted_x.end(), v); };
  std::array<bool, 8> seen{};
  seen[0] = true;
  for (const auto& p : tri)
    for (const auto& x : sorted_x) {
      const Rational t = p - x;
      unsigned mask = 0;
      for (unsigned i = 0; i < 3; ++i)
        if (in(tri[i] - t)) mask |= 1U << i;
      seen[mask] = true;
    }
  return static_cast<int>(std::count(seen.begin(), seen.end(), true));
}

/// Number of translates t + X containing both a and b (direct enumeration).
inline std::size_t translates_containing_pair(const std::vector<Rational>& sorted_x, const Rational& a, const Rational& b) {
  std::size_t n = 0;
  for (const auto& x : sorted_x)
    if (std::binary_search(sorted_x.begin(), sorted_x.end(), Rational(b - a + x))) ++n;
  return n;
}

/// Seeded candidate triples: even draws are three points of X, odd draws
/// replace the third point by c + (b - a), which lies in the translate of X
/// through a and b whenever that translate exists.
inline std::vector<std::array<Rational, 3>> candidate_triples(const std::vector<Rational>& x, std::size_t count,
                                                              std::uint64_t seed) {
  if (x.size() < 3) throw InvalidInput("need at least three points for triples");
  std::vector<std::array<Rational, 3>> out;
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    std::vector<std::size_t> idx(x.size());
    for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = j;
    for (std::size_t j = 0; j < 3; ++j) std::swap(idx[j], idx[j + rng.uniform_below(idx.size() - j)]);
    std::array<Rational, 3> tri{x[idx[0]], x[idx[1]], x[idx[2]]};
    if (i % 2 == 1) tri[2] = x[idx[2]] + (x[idx[1]] - x[idx[0]]);
    if (tri[2] == tri[0] || tri[2] == tri[1]) tri[2] = x[idx[2]];
    out.push_back(std::move(tri));
  }
  return out;
}

inline NoShatterReport no_shatter3_check(const std::vector<Rational>& x_points,
                                         const std::vector<std::array<Rational, 3>>& triples, unsigned jobs = 1) {
  std::vector<Rational> sx = x_points;
  std::sort(sx.begin(), sx.end());
  NoShatterReport rep;
  rep.triples = triples.size();
  std::vector<int> counts(triples.size());
  parallel_for(triples.size(), jobs, [&](std::size_t i) { counts[i] = realized_patterns(sx, triples[i]); });
  for (std::size_t i = 0; i < triples.size(); ++i) {
    rep.max_patterns = std::max(rep.max_patterns, counts[i]);
    if (counts[i] == 8 && !rep.shattered_triple) rep.shattered_triple = triples[i];
  }
  // #{t : a, b in t + X} = #{(x, y) in X^2 : y - x = b - a}; bounding every
  // nonzero difference's multiplicity bounds all pairs at once.
  std::unordered_map<Rational, std::size_t, RationalHash> mult;
  for (std::size_t i = 0; i < sx.size(); ++i)
    for (std::size_t j = i + 1; j < sx.size(); ++j) rep.max_translates_per_pair = std::max(rep.max_translates_per_pair, ++mult[Rational(sx[j] - sx[i])]);
  rep.pair_uniqueness = rep.max_translates_per_pair <= 1;
  return rep;
}

// ---------------------------------------------------------------------------
// Border measures

/// mu(N_r(A) ∩ N_r(R \ A)). The complement is taken in the reals (a window
/// padded by 2r past A), so every boundary point contributes its full 2r.
inline Rational r_border_measure(const ConstructibleSet1D& a, const Rational& r) {
  if (!(r > 0)) throw InvalidInput("r must be positive");
  if (a.empty()) return 0;
  const Interval hull = Interval::closed(*a.infimum() - 2 * r, *a.supremum() + 2 * r);
  return intersection(r_neighborhood(a, r), r_neighborhood(complement(a, hull), r)).measure();
}

/// Number of boundary points of a constructible set (its border is finite).
inline std::size_t boundary_point_count(const ConstructibleSet1D& a) {
  const auto b = border(a);
  return b.points().size() + b.intervals().size();
}

/// Random closed interval union on the grid of multiples of 1/64 in [0, 1].
inline ConstructibleSet1D random_closed_set(Rng& rng) {
  const int pieces = static_cast<int>(rng.uniform_int(1, 5));
  std::vector<Interval> ivs;
  for (int i = 0; i < pieces; ++i) {
    auto a = rng.uniform_int(0, 63), b = rng.uniform_int(0, 64);
    if (a == b) b = a + 1;
    if (a > b) std::swap(a, b);
    ivs.push_back(Interval::closed(make_rational(static_cast<long>(a), 64), make_rational(static_cast<long>(b), 64)));
  }
  return ConstructibleSet1D::from_parts(ivs);
}

/// Random constructible set: intervals with random end types plus isolated
/// points, on the grid of multiples of 1/32 in [0, 1].
inline ConstructibleSet1D random_constructible_set(Rng& rng) {
  const int pieces = static_cast<int>(rng.uniform_int(0, 4));
  std::vector<Interval> ivs;
  for (int i = 0; i < pieces; ++i) {
    auto a = rng.uniform_int(0, 32), b = rng.uniform_int(0, 32);
    if (a > b) std::swap(a, b);
    const bool lc = rng.uniform_below(2) == 1, hc = rng.uniform_below(2) == 1;
    if (a == b && !(lc && hc)) continue;
    ivs.push_back({make_rational(static_cast<long>(a), 32), make_rational(static_cast<long>(b), 32), lc, hc});
  }
  std::vector<Rational> pts;
  const int npts = static_cast<int>(rng.uniform_int(0, 3));
  for (int i = 0; i < npts; ++i) pts.push_back(make_rational(static_cast<long>(rng.uniform_int(0, 32)), 32));
  return ConstructibleSet1D::from_parts(ivs, pts);
}

struct BorderRow {
  std::string set_id;
  Rational r;
  std::size_t boundary_points;
  Rational value;
  Rational bound;
  bool upper;  ///< bound is an upper bound (fixed sets) or a lower bound (counterexample)

  bool holds() const { return upper ? value <= bound : value >= bound; }
};

/// Closed VC-sets: r-border measures over an r schedule against the upper
/// bound 4r per boundary point. Cells (set, r) run in parallel; rows keep
/// (set, r) order.
inline std::vector<BorderRow> border_convergence_experiment(const std::vector<ConstructibleSet1D>& sets,
                                                              const std::vector<Rational>& radii, unsigned jobs = 1) {
  std::vector<BorderRow> rows(sets.size() * radii.size());
  parallel_for(rows.size(), jobs, [&](std::size_t cell) {
    const auto& s = sets[cell / radii.size()];
    const auto& r = radii[cell % radii.size()];
    const auto bp = boundary_point_count(s);
    rows[cell] = {"F" + std::to_string(cell / radii.size()), r, bp, r_border_measure(s, r),
                  Rational(4 * r * static_cast<unsigned long>(bp)), true};
  });
  return rows;
}

/// Counterexample truncations with budgets matched to r = 2^-m, m = 1..max_m,
/// against the lower bound mu(K_m).
inline std::vector<BorderRow> counterexample_border_rows(int max_m, unsigned jobs = 1, FatCantorSpec cantor = {}) {
  std::vector<BorderRow> rows(static_cast<std::size_t>(std::max(0, max_m)));
  const FatCantor k(cantor);
  parallel_for(rows.size(), jobs, [&](std::size_t i) {
    const int m = static_cast<int>(i) + 1;
    const auto x = counterexample_points(matched_counterexample_spec(m, cantor)).as_set();
    const Rational r = pow2_neg(static_cast<unsigned>(m));
    rows[i] = {"X" + std::to_string(m), r, x.points().size(), r_border_measure(x, r), k.closed_form_measure(m), false};
  });
  return rows;
}

/// r = 2^-j for j in [from, to].
inline std::vector<Rational> dyadic_radii(int from, int to) {
  std::vector<Rational> out;
  for (int j = from; j <= to; ++j) out.push_back(pow2_neg(static_cast<unsigned>(j)));
  return out;
}

inline void write_border_csv(std::ostream& os, const std::vector<BorderRow>& rows) {
  os << "set_id,kind,r,r_float,boundary_points,r_border_measure,r_border_float,bound,bound_float,holds\n";
  for (const auto& row : rows) {
    os << row.set_id << ',' << (row.upper ? "upper" : "lower") << ',' << to_string(row.r) << ',' << row.r.get_d() << ','
       << row.boundary_points << ',' << to_string(row.value) << ',' << row.value.get_d() << ',' << to_string(row.bound)
       << ',' << row.bound.get_d() << ',' << (row.holds() ? "true" : "false") << '\n';
  }
}

// ---------------------------------------------------------------------------
// Density hypotheses and the border identity

struct DensityReport {
  bool hyp_x = false;
  bool hyp_xc = false;
  Rational border_measure;
  std::optional<bool> identity;  ///< ∂X = cl(int X) ∩ cl(ext X), checked when both hypotheses hold
  bool consistent = false;
};

/// Both density hypotheses with the complement taken in the reals (the
/// window padded by 1 on each side stands in for the line).
inline DensityReport density_report(const ConstructibleSet1D& x, const Interval& window) {
  Rational lo = window.lo - 1, hi = window.hi + 1;
  if (auto v = x.infimum(); v && *v - 1 < lo) lo = *v - 1;
  if (auto v = x.supremum(); v && *v + 1 > hi) hi = *v + 1;
  const auto xc = complement(x, Interval::closed(lo, hi));
  DensityReport rep;
  rep.hyp_x = check_density_hypothesis(x);
  rep.hyp_xc = check_density_hypothesis(xc);
  const auto b = border(x);
  rep.border_measure = b.measure();
  if (rep.hyp_x && rep.hyp_xc) {
    const auto rhs = intersection(closure(interior(x)), closure(interior(xc)));
    rep.identity = (b == rhs);
    rep.consistent = rep.border_measure == 0 && *rep.identity;
  } else {
    rep.consistent = true;
  }
  return rep;
}

}  // namespace vclab
