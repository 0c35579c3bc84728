#pragma once

// Shattering witnesses for pairs (V_0, V_1) of disjoint open sets whose
// closures meet in positive measure. The construction follows the level-by-
// level induction: at level l every point x_λ gets a K_m component C_λ inside
// the neighbourhood that keeps all earlier conditions, the quantitative
// Steinhaus bound on C_λ ∩ K gives the radius r_l, and the 2^(l+1) new points
// are placed in lexicographic order while a composite shift G (|G| < r_l)
// moves each of them into its target set without pushing earlier ones out.
//
// Everything is exact; verify_witness re-derives all memberships from the
// lazy sets alone.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "vclab/constructible_set.hpp"
#include "vclab/errors.hpp"
#include "vclab/fat_cantor.hpp"
#include "vclab/lazy_set.hpp"
#include "vclab/parallel.hpp"
#include "vclab/rational.hpp"
#include "vclab/rng.hpp"
#include "vclab/vc.hpp"

namespace vclab {

struct TamePairInstance {
  LazyStagedSet v0;
  LazyStagedSet v1;
  /// Decreasing over-approximation of Δ (K_m ⊇ K); needed beyond depth 1.
  std::optional<FatCantor> delta;
  Rational delta_floor;  ///< certified lower bound on mu(δ)
  Interval window;

  const LazyStagedSet& target(int alpha) const { return alpha == 0 ? v0 : v1; }
};

/// V_0 = odd-stage gaps, V_1 = even-stage gaps of a fat Cantor set K, so that
/// cl(V_0) ∩ cl(V_1) ⊇ K.
inline TamePairInstance fat_cantor_parity_instance(FatCantorSpec spec = {}) {
  FatCantor k(std::move(spec));
  return {k.gaps_lazy_set(1), k.gaps_lazy_set(0), k, k.limit_measure(), k.window()};
}

/// V_0 = (-1, 0), V_1 = (0, 1); the closures meet only in {0}.
inline TamePairInstance toy_instance() {
  const auto v0 = ConstructibleSet1D::open(-1, 0), v1 = ConstructibleSet1D::open(0, 1);
  return {LazyStagedSet([v0](int) { return v0; }, Monotonicity::increasing),
          LazyStagedSet([v1](int) { return v1; }, Monotonicity::increasing), std::nullopt, 0,
          Interval::closed(-1, 1)};
}

/// Stages 0..max_stage: V_0 and V_1 disjoint and made of open intervals.
inline bool check_instance(const TamePairInstance& inst, int max_stage) {
  for (int m = 0; m <= max_stage; ++m) {
    const auto& a = inst.v0.stage(m);
    const auto& b = inst.v1.stage(m);
    if (!intersection(a, b).empty()) return false;
    if (!(a == interior(a)) || !(b == interior(b))) return false;
  }
  return true;
}

/// The open interval of `set` at `stage` containing p, if any.
inline std::optional<Interval> containing_interval(const LazyStagedSet& set, int stage, const Rational& p) {
  const auto near = set.stage_near(stage, p, p);
  for (const auto& iv : near.intervals())
    if (iv.contains(p)) return iv;
  return std::nullopt;
}

inline Rational interval_slack(const Interval& iv, const Rational& p) { return min(Rational(p - iv.lo), Rational(iv.hi - p)); }

// ---------------------------------------------------------------------------
// Δ approximation and the quantitative Steinhaus step

struct DeltaApprox {
  int stage;
  std::optional<ConstructibleSet1D> set;  ///< K_m itself for m <= 24
  Rational component_length;
  Rational component_floor;  ///< certified mu(C ∩ Δ) for every component C of K_m
};

inline DeltaApprox density_refine(const TamePairInstance& inst, int stage) {
  if (!inst.delta) throw InsufficientStage("instance has no Δ-approximation");
  if (!(inst.delta_floor > 0)) throw InsufficientStage("measure floor of δ is zero: no positive density to certify");
  const auto& k = *inst.delta;
  DeltaApprox d{stage, std::nullopt, k.component_length(stage), k.component_k_measure(stage)};
  if (stage <= 24) d.set = k.stage(stage);
  if (!(d.component_floor > 0)) throw InsufficientStage("stage too coarse to certify positive density");
  return d;
}

struct SteinhausCertificate {
  Rational radius;         ///< r: every |u| <= r lies in ΔΔ^{-1}
  Rational density;        ///< d: mu(Δ ∩ (Δ + u)) >= d for |u| <= r
  Rational stage_bound;    ///< 2 mu(K_m) - mu(window ∪ (window + r)) for the stage itself
  Rational stage_slack;    ///< 2 (mu(K_m) - mu(K))
};

/// For A ⊆ window with mu(A) = f > L/2: mu(A ∩ (A + u)) >= 2f - (L + |u|).
/// With r = (2f - L)/2 this leaves d = r > 0 on the whole ball |u| <= r.
inline SteinhausCertificate steinhaus_neighborhood(const TamePairInstance& inst, int stage) {
  const Rational len = inst.window.length();
  if (!(2 * inst.delta_floor > len))
    throw QuantitativeRegime("measure floor " + to_string(inst.delta_floor) +
                             " does not exceed half the window; the finite-stage bound is unavailable");
  SteinhausCertificate c;
  c.radius = (2 * inst.delta_floor - len) / 2;
  c.density = 2 * inst.delta_floor - len - c.radius;
  if (inst.delta) {
    const Rational mk = inst.delta->closed_form_measure(stage);
    c.stage_bound = 2 * mk - (len + c.radius);
    c.stage_slack = 2 * (mk - inst.delta_floor);
  } else {
    c.stage_bound = c.density;
    c.stage_slack = 0;
  }
  return c;
}

/// Exact mu(K_m ∩ (K_m + u)).
inline Rational overlap_measure(const FatCantor& k, int m, const Rational& u) {
  const auto km = k.stage(m);
  return intersection(km, translate(km, u)).measure();
}

// ---------------------------------------------------------------------------
// Entry shifts

struct KeepCondition {
  Rational point;
  int target;  ///< informational: which V_j the point sits in
  Rational slack;
};

/// Smallest-stage shift g with g + x strictly inside an interval of `target`:
/// g is the distance to the nearest admissible interval midpoint, with
/// |g| <= max_shift and |g| < every keep slack.
inline Rational find_entry_shift(const Rational& x, const LazyStagedSet& target, const std::vector<KeepCondition>& keep,
                                 std::optional<Rational> max_shift, int budget) {
  std::optional<Rational> bound = max_shift;
  for (const auto& k : keep)
    if (!bound || k.slack < *bound) bound = k.slack;
  auto admissible = [&](const Rational& g) {
    const Rational a = abs(g);
    if (max_shift && a > *max_shift) return false;
    return std::all_of(keep.begin(), keep.end(), [&](const KeepCondition& k) { return a < k.slack; });
  };
  if (target.stage_contains(budget, x)) return 0;
  for (int s = 0; s <= budget; ++s) {
    const auto here = bound ? target.stage_near(s, x - *bound, x + *bound) : target.stage(s);
    std::optional<Rational> best;
    for (const auto& iv : here.intervals()) {
      Rational g = iv.midpoint() - x;
      if (!admissible(g)) continue;
      if (!best || abs(g) < abs(*best) || (abs(g) == abs(*best) && g < *best)) best = std::move(g);
    }
    if (best) return *best;
  }
  throw BudgetExceeded("no target interval within the admissible shift by stage " + std::to_string(budget), 0);
}

// ---------------------------------------------------------------------------
// Witnesses

/// η in {0,1}^n is stored as the integer whose bit (n-1-k) is η(k), so the
/// numeric order is the lexicographic order.
inline int eta_bit(std::uint64_t eta, int n, int k) { return static_cast<int>((eta >> static_cast<unsigned>(n - 1 - k)) & 1U); }

inline std::string eta_string(std::uint64_t eta, int n) {
  std::string s;
  for (int k = 0; k < n; ++k) s.push_back(static_cast<char>('0' + eta_bit(eta, n, k)));
  return s;
}

struct PlacementRecord {
  std::uint64_t eta;
  Rational point;       ///< x_η
  Rational shift;       ///< g_l^i
  int gap_stage;        ///< stage of the target interval
  Interval gap;         ///< target interval (the new point lands at its midpoint)
  Rational overlap_floor;  ///< certified mu(X_λ ∩ (X_λ - G)) before the shift
};

struct LevelRecord {
  int level;
  Rational radius;  ///< r_l
  std::vector<int> component_stage;  ///< m_λ
  std::vector<Interval> component;   ///< C_λ
  std::vector<Rational> density;     ///< 2 mu(C_λ ∩ K) - |C_λ| - r_l
  std::vector<PlacementRecord> placements;
};

struct ShatterWitness {
  int depth = 0;
  std::vector<Rational> translators;  ///< g_0..g_{n-1}
  std::vector<Rational> points;       ///< x_η, indexed as described at eta_bit
  int stage_bound = 0;
  std::vector<LevelRecord> levels;  ///< construction trace (not consulted by verification)
};

struct WitnessBudgets {
  int stage_window = 12;  ///< gap stages searched beyond the component stage
  int extra_point_stages = 6;  ///< deeper stages tried when locating x
};

namespace detail {

/// A persistent point of K in C, unused, within eps of y: endpoints of the
/// K_M component or gap containing y, M the first stage finer than eps.
inline std::optional<Rational> nearest_persistent(const FatCantor& k, const Rational& y, const Rational& eps,
                                                  const Interval& c, int from_stage, const std::set<Rational>& used,
                                                  int extra) {
  int m = from_stage;
  while (m < k.spec().max_stage && !(k.component_length(m) < eps)) ++m;
  for (int M = m; M <= std::min(m + extra, k.spec().max_stage); ++M) {
    std::vector<Rational> cand;
    if (auto comp = k.component_containing(M, y)) {
      cand = {comp->lo, comp->hi};
    } else if (auto gap = k.gap_containing(M, y)) {
      cand = {gap->interval.lo, gap->interval.hi};
    }
    std::optional<Rational> best;
    for (auto& x : cand) {
      if (!c.contains(x) || used.count(x) || !(abs(Rational(x - y)) < eps)) continue;
      if (!best || abs(Rational(x - y)) < abs(Rational(*best - y))) best = x;
    }
    if (best) return best;
  }
  return std::nullopt;
}

inline ShatterWitness toy_witness(const TamePairInstance& inst, int budget) {
  ShatterWitness w;
  w.depth = 1;
  w.translators = {0};
  for (int alpha = 0; alpha < 2; ++alpha) {
    int s = 0;
    while (s <= budget && inst.target(alpha).stage(s).intervals().empty()) ++s;
    if (s > budget) throw PartialWitness("target set stays empty within the stage budget", 0);
    w.points.push_back(inst.target(alpha).stage(s).intervals().front().midpoint());
    w.stage_bound = std::max(w.stage_bound, s);
  }
  return w;
}

}  // namespace detail

inline ShatterWitness construct_witness(const TamePairInstance& inst, int depth, const WitnessBudgets& budgets, Rng& rng) {
  if (depth < 0) throw InvalidInput("depth must be non-negative");
  if (depth == 0) return {};
  if (!inst.delta) {
    if (depth == 1) return detail::toy_witness(inst, 64);
    throw QuantitativeRegime("depth above 1 needs a Δ-approximation with density above one half");
  }
  steinhaus_neighborhood(inst, 0);
  const FatCantor& k = *inst.delta;

  ShatterWitness w;
  std::vector<Rational> parents{Rational(0)};  // level 0 has one parent whose component is the window
  std::set<Rational> used;
  for (int l = 0; l < depth; ++l) {
    LevelRecord rec;
    rec.level = l;
    const std::size_t nparents = std::size_t{1} << l;
    std::optional<Rational> radius;
    for (std::size_t lam = 0; lam < nparents; ++lam) {
      int m = 0;
      Interval c = inst.window;
      if (l > 0) {
        // W_λ: the ball around x_λ on which g_k + x' stays in V_{λ(k)}.
        std::optional<Rational> wl;
        for (int kk = 0; kk < l; ++kk) {
          const Rational p = w.translators[static_cast<std::size_t>(kk)] + parents[lam];
          const auto iv = containing_interval(inst.target(eta_bit(lam, l, kk)), w.stage_bound, p);
          if (!iv) throw PartialWitness("lost an earlier condition while opening neighbourhoods", l);
          const Rational s = interval_slack(*iv, p);
          if (!wl || s < *wl) wl = s;
        }
        while (m < k.spec().max_stage && !(k.component_length(m) < *wl)) ++m;
        const auto comp = k.component_containing(m, parents[lam]);
        if (!comp || !(k.component_length(m) < *wl)) throw PartialWitness("stage budget too small for W_λ", l);
        c = *comp;
      }
      const Rational f = k.component_k_measure(m);
      const Rational excess = 2 * f - k.component_length(m);
      if (!(excess > 0)) throw QuantitativeRegime("component density does not exceed one half");
      const Rational r = excess / 2;
      if (!radius || r < *radius) radius = r;
      rec.component_stage.push_back(m);
      rec.component.push_back(c);
      rec.density.push_back(excess);
    }
    rec.radius = *radius;
    for (auto& d : rec.density) d -= rec.radius;

    Rational shift = 0;  // composite g_l^i ... g_l^0
    std::vector<Rational> points(nparents * 2);
    for (std::uint64_t eta = 0; eta < 2 * nparents; ++eta) {
      const std::size_t lam = static_cast<std::size_t>(eta >> 1U);
      const int alpha = static_cast<int>(eta & 1U);
      const Interval& c = rec.component[lam];
      const int m = rec.component_stage[lam];
      // Room left: stay inside U_l and keep every placed point in its gap.
      Rational room = rec.radius - abs(shift);
      for (const auto& p : rec.placements) room = min(room, interval_slack(p.gap, Rational(shift + p.point)));
      if (!(room > 0)) throw PartialWitness("no room left for the next shift", l);
      const Rational eps = room / 4;

      std::optional<PlacementRecord> found;
      const int last = std::min(m + budgets.stage_window, k.spec().max_stage);
      std::set<Rational> seen;  // left ends of target intervals met at earlier stages
      for (int s = 1; s <= last && !found; ++s) {
        std::vector<Interval> fresh;
        const auto near = inst.target(alpha).stage_near(s, Rational(c.lo + shift), Rational(c.hi + shift));
        for (const auto& iv : near.intervals())
          if (seen.insert(iv.lo).second) fresh.push_back(iv);
        rng.shuffle(fresh);
        for (const auto& gap : fresh) {
          const Rational y = gap.midpoint() - shift;
          if (!c.contains(y)) continue;
          auto x = detail::nearest_persistent(k, y, eps, c, m, used, budgets.extra_point_stages);
          if (!x) continue;
          found = PlacementRecord{eta, *x, Rational(y - *x), s, gap,
                                  Rational(rec.density[lam] + rec.radius - abs(shift))};
          break;
        }
      }
      if (!found) throw PartialWitness("no target gap reachable for η = " + eta_string(eta, l + 1), l);
      shift += found->shift;
      used.insert(found->point);
      points[eta] = found->point;
      w.stage_bound = std::max(w.stage_bound, found->gap_stage);
      rec.placements.push_back(std::move(*found));
    }
    w.translators.push_back(shift);
    w.levels.push_back(std::move(rec));
    parents = std::move(points);
  }
  w.depth = depth;
  w.points = std::move(parents);
  return w;
}

struct WitnessCheck {
  bool ok = true;
  std::optional<std::pair<int, std::uint64_t>> failing;  ///< (k, η)
  std::string reason;
  std::optional<Rational> min_slack;
  std::size_t conditions = 0;
};

/// Re-evaluates every condition g_k + x_η ∈ V_η(k) at the recorded stage
/// bound, with positive slack, and checks that the points are distinct.
inline WitnessCheck verify_witness(const ShatterWitness& w, const TamePairInstance& inst, unsigned jobs = 1) {
  WitnessCheck out;
  const std::size_t npts = w.depth == 0 ? 0 : std::size_t{1} << w.depth;
  if (w.translators.size() != static_cast<std::size_t>(w.depth) || w.points.size() != npts) {
    out.ok = false;
    out.reason = "witness shape does not match its depth";
    return out;
  }
  std::set<Rational> distinct(w.points.begin(), w.points.end());
  if (distinct.size() != w.points.size()) {
    out.ok = false;
    out.reason = "points are not distinct";
    return out;
  }
  const std::size_t total = npts * static_cast<std::size_t>(w.depth);
  std::vector<std::optional<Rational>> slack(total);
  parallel_for(total, jobs, [&](std::size_t cell) {
    const int kk = static_cast<int>(cell / npts);
    const auto eta = static_cast<std::uint64_t>(cell % npts);
    const Rational p = w.translators[static_cast<std::size_t>(kk)] + w.points[eta];
    if (auto iv = containing_interval(inst.target(eta_bit(eta, w.depth, kk)), w.stage_bound, p)) slack[cell] = interval_slack(*iv, p);
  });
  out.conditions = total;
  for (std::size_t cell = 0; cell < total; ++cell) {
    const int kk = static_cast<int>(cell / npts);
    const auto eta = static_cast<std::uint64_t>(cell % npts);
    if (!slack[cell] || !(*slack[cell] > 0)) {
      out.ok = false;
      out.failing = std::make_pair(kk, eta);
      out.reason = "g_" + std::to_string(kk) + " + x_" + eta_string(eta, w.depth) + " is not in V_" +
                   std::to_string(eta_bit(eta, w.depth, kk)) + " at stage " + std::to_string(w.stage_bound);
      return out;
    }
    if (!out.min_slack || *slack[cell] < *out.min_slack) out.min_slack = slack[cell];
  }
  return out;
}

/// Ground set = witness points, one row {η : g_k + x_η ∈ V_0} per translator.
/// A valid depth-n witness makes these n rows generate all 2^n Venn cells.
inline SetSystem witness_pattern_system(const ShatterWitness& w, const TamePairInstance& inst) {
  std::vector<Row> rows;
  for (int kk = 0; kk < w.depth; ++kk) {
    Row r(w.points.size());
    for (std::size_t eta = 0; eta < w.points.size(); ++eta)
      r[eta] = containing_interval(inst.v0, w.stage_bound, Rational(w.translators[static_cast<std::size_t>(kk)] + w.points[eta])).has_value();
    rows.push_back(std::move(r));
  }
  std::vector<std::string> labels;
  for (std::size_t eta = 0; eta < w.points.size(); ++eta) labels.push_back(eta_string(eta, w.depth));
  return SetSystem(std::move(labels), rows);
}

// ---------------------------------------------------------------------------
// JSON (rationals as "p/q" strings)

inline nlohmann::json to_json(const ShatterWitness& w) {
  nlohmann::json j;
  j["depth"] = w.depth;
  j["stage_bound"] = w.stage_bound;
  j["translators"] = nlohmann::json::array();
  for (const auto& g : w.translators) j["translators"].push_back(to_string(g));
  j["points"] = nlohmann::json::object();
  for (std::size_t eta = 0; eta < w.points.size(); ++eta) j["points"][eta_string(eta, w.depth)] = to_string(w.points[eta]);
  j["levels"] = nlohmann::json::array();
  for (const auto& rec : w.levels) {
    nlohmann::json lv;
    lv["level"] = rec.level;
    lv["radius"] = to_string(rec.radius);
    lv["components"] = nlohmann::json::array();
    for (std::size_t i = 0; i < rec.component.size(); ++i)
      lv["components"].push_back({{"stage", rec.component_stage[i]},
                                  {"lo", to_string(rec.component[i].lo)},
                                  {"hi", to_string(rec.component[i].hi)},
                                  {"density", to_string(rec.density[i])}});
    lv["placements"] = nlohmann::json::array();
    for (const auto& p : rec.placements)
      lv["placements"].push_back({{"eta", eta_string(p.eta, rec.level + 1)},
                                  {"point", to_string(p.point)},
                                  {"shift", to_string(p.shift)},
                                  {"gap_stage", p.gap_stage},
                                  {"gap_lo", to_string(p.gap.lo)},
                                  {"gap_hi", to_string(p.gap.hi)},
                                  {"overlap_floor", to_string(p.overlap_floor)}});
    j["levels"].push_back(std::move(lv));
  }
  return j;
}

/// Reads the certificate part (translators, points, stage bound). The
/// construction trace is not needed for verification and is not restored.
inline ShatterWitness witness_from_json(const nlohmann::json& j) {
  ShatterWitness w;
  w.depth = j.at("depth").get<int>();
  if (w.depth < 0 || w.depth > 20) throw InvalidInput("witness depth out of range");
  w.stage_bound = j.at("stage_bound").get<int>();
  for (const auto& g : j.at("translators")) w.translators.push_back(parse_rational(g.get<std::string>()));
  const std::size_t npts = w.depth == 0 ? 0 : std::size_t{1} << w.depth;
  w.points.resize(npts);
  const auto& pts = j.at("points");
  if (pts.size() != npts) throw InvalidInput("witness has the wrong number of points");
  for (std::size_t eta = 0; eta < npts; ++eta) w.points[eta] = parse_rational(pts.at(eta_string(eta, w.depth)).get<std::string>());
  return w;
}

}  // namespace vclab
