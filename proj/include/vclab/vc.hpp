#pragma once

// Set systems, shattering, VC and dual VC dimension, Sauer-Shelah growth
// tables, the Av statistic, and a grid search for translate families of a
// constructible subset of the reals.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <nlohmann/json.hpp>

#include "vclab/constructible_set.hpp"
#include "vclab/errors.hpp"
#include "vclab/group.hpp"
#include "vclab/lazy_set.hpp"
#include "vclab/rational.hpp"

namespace vclab {

using Row = boost::dynamic_bitset<>;

/// Finite ground set with a deduplicated family of subsets (bitset rows).
class SetSystem {
 public:
  enum class Provenance { explicit_family, translate_family };

  SetSystem(std::vector<std::string> labels, const std::vector<Row>& rows) : labels_(std::move(labels)) {
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size()) throw InvalidInput("ground-set labels must be unique");
    for (const auto& r : rows) add_row(r, std::nullopt);
  }

  /// Ground set {0..n-1} labelled by index; members given as index lists.
  static SetSystem from_subsets(std::size_t n, const std::vector<std::vector<std::size_t>>& members) {
    std::vector<Row> rows;
    for (const auto& m : members) {
      Row r(n);
      for (auto i : m) {
        if (i >= n) throw InvalidInput("member element outside the ground set");
        r.set(i);
      }
      rows.push_back(std::move(r));
    }
    return SetSystem(index_labels(n), rows);
  }

  /// All translates gX of X in a finite model, over the whole carrier.
  static SetSystem translates(const GroupModel& model, const FiniteSubset& x) {
    const auto n = model.order();
    SetSystem sys(index_labels(static_cast<std::size_t>(n)), {});
    sys.provenance_ = Provenance::translate_family;
    for (std::int64_t g = 0; g < n; ++g) {
      Row r(static_cast<std::size_t>(n));
      for (auto i : translate(model, x, g).indices) r.set(static_cast<std::size_t>(i));
      sys.add_row(r, g);
    }
    return sys;
  }

  std::size_t ground_size() const { return labels_.size(); }
  std::size_t family_size() const { return rows_.size(); }
  const Row& row(std::size_t i) const { return rows_.at(i); }
  const std::vector<Row>& rows() const { return rows_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  Provenance provenance() const { return provenance_; }
  /// Translator that produced row i (translate families only).
  std::optional<std::int64_t> translator(std::size_t i) const { return translators_.at(i); }

  /// Dual system: ground set = family members, one row per original point.
  SetSystem transpose() const {
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < rows_.size(); ++j) labels.push_back("S" + std::to_string(j));
    std::vector<Row> rows;
    for (std::size_t p = 0; p < labels_.size(); ++p) {
      Row r(rows_.size());
      for (std::size_t j = 0; j < rows_.size(); ++j) r[j] = rows_[j][p];
      rows.push_back(std::move(r));
    }
    return SetSystem(std::move(labels), rows);
  }

 private:
  static std::vector<std::string> index_labels(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
  }

  void add_row(const Row& r, std::optional<std::int64_t> translator) {
    if (r.size() != labels_.size()) throw InvalidInput("row width differs from ground-set size");
    for (const auto& existing : rows_)
      if (existing == r) return;
    rows_.push_back(r);
    translators_.push_back(translator);
  }

  std::vector<std::string> labels_;
  std::vector<Row> rows_;
  std::vector<std::optional<std::int64_t>> translators_;
  Provenance provenance_ = Provenance::explicit_family;
};

/// Result of a shattering query. witnesses[mask] is a family row whose trace
/// on `points` is the subset selected by mask (bit i = points[i]).
struct ShatterReport {
  std::vector<std::size_t> points;
  std::vector<std::optional<std::size_t>> witnesses;

  bool shattered() const {
    return std::all_of(witnesses.begin(), witnesses.end(), [](const auto& w) { return w.has_value(); });
  }
  std::size_t realized() const {
    return static_cast<std::size_t>(std::count_if(witnesses.begin(), witnesses.end(), [](const auto& w) { return w.has_value(); }));
  }
};

inline std::uint64_t trace_mask(const Row& row, const std::vector<std::size_t>& points) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (row[points[i]]) mask |= std::uint64_t{1} << i;
  return mask;
}

inline ShatterReport is_shattered(const SetSystem& sys, const std::vector<std::size_t>& points) {
  if (points.size() > 30) throw InvalidInput("refusing to enumerate 2^k patterns for k > 30");
  std::vector<std::size_t> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InvalidInput("duplicate points");
  for (auto p : points)
    if (p >= sys.ground_size()) throw InvalidInput("point outside the ground set");
  ShatterReport rep{points, std::vector<std::optional<std::size_t>>(std::size_t{1} << points.size())};
  for (std::size_t j = 0; j < sys.family_size(); ++j) {
    auto& slot = rep.witnesses[trace_mask(sys.row(j), points)];
    if (!slot) slot = j;
  }
  return rep;
}

/// Re-checks every witness of a report against the family.
inline bool verify_report(const SetSystem& sys, const ShatterReport& rep) {
  for (std::size_t mask = 0; mask < rep.witnesses.size(); ++mask) {
    const auto& w = rep.witnesses[mask];
    if (w && (*w >= sys.family_size() || trace_mask(sys.row(*w), rep.points) != mask)) return false;
  }
  return true;
}

struct VcResult {
  int dimension = -1;  ///< -1 for the empty family (not even the empty set is shattered)
  ShatterReport certificate;
};

/// Exact VC dimension. Shattered sets are closed under subsets, so size-(k+1)
/// candidates are grown only from shattered size-k sets (increasing indices).
/// `budget` bounds the number of shattering checks.
inline VcResult vc_dimension(const SetSystem& sys, std::uint64_t budget = 50'000'000) {
  VcResult res;
  if (sys.family_size() == 0) return res;
  res.dimension = 0;
  res.certificate = is_shattered(sys, {});
  std::vector<std::vector<std::size_t>> level{{}};
  std::uint64_t checks = 0;
  for (std::size_t k = 1; k <= sys.ground_size() && (std::size_t{1} << k) <= sys.family_size(); ++k) {
    std::vector<std::vector<std::size_t>> next;
    std::set<std::vector<std::size_t>> prev(level.begin(), level.end());
    for (const auto& base : level) {
      const std::size_t start = base.empty() ? 0 : base.back() + 1;
      for (std::size_t p = start; p < sys.ground_size(); ++p) {
        auto cand = base;
        cand.push_back(p);
        // Every (k-1)-subset must already be shattered.
        bool all_sub = true;
        for (std::size_t drop = 0; drop + 1 < cand.size() && all_sub; ++drop) {
          auto sub = cand;
          sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
          all_sub = prev.count(sub) > 0;
        }
        if (!all_sub) continue;
        if (++checks > budget)
          throw BudgetExceeded("VC search budget exhausted", res.dimension);
        auto rep = is_shattered(sys, cand);
        if (rep.shattered()) {
          if (next.empty()) res.certificate = rep;
          next.push_back(std::move(cand));
        }
      }
    }
    if (next.empty()) break;
    res.dimension = static_cast<int>(k);
    level = std::move(next);
  }
  return res;
}

struct DualVcResult {
  int dimension = -1;
  std::vector<std::size_t> members;  ///< family rows whose Venn cells are all nonempty
};

/// Largest n with members X_1..X_n whose 2^n Venn cells all meet the ground set.
inline DualVcResult dual_vc_dimension(const SetSystem& sys, std::uint64_t budget = 50'000'000) {
  if (sys.family_size() == 0) return {};
  if (sys.ground_size() == 0) return {0, {}};
  const auto r = vc_dimension(sys.transpose(), budget);
  // Rows of the transpose are deduplicated points; its ground set is the family.
  return {r.dimension, r.certificate.points};
}

/// Assouad: dual VC < 2^(d+1) whenever VC = d.
inline bool assouad_consistent(int vc, int dual) { return vc < 0 || dual < 0 || dual < (1 << (vc + 1)); }

struct GrowthRow {
  std::size_t m;
  std::uint64_t max_traces;
  std::uint64_t bound;
};

inline std::uint64_t binomial_sum(std::size_t m, int d) {
  std::uint64_t total = 0, c = 1;
  for (int i = 0; i <= d && static_cast<std::size_t>(i) <= m; ++i) {
    total += c;
    c = c * (m - static_cast<std::size_t>(i)) / static_cast<std::uint64_t>(i + 1);
  }
  return total;
}

/// Growth table max_{|A|=m} |F ∩ A| against the Sauer-Shelah bound, by
/// exhaustion over all subsets of the ground set (at most 20 points).
inline std::pair<bool, std::vector<GrowthRow>> sauer_shelah_check(const SetSystem& sys, std::optional<int> d = {}) {
  const std::size_t n = sys.ground_size();
  if (n > 20) throw InvalidInput("Sauer-Shelah exhaustion is limited to 20 points");
  const int dim = d ? *d : vc_dimension(sys).dimension;
  std::vector<std::uint64_t> rows;
  for (const auto& r : sys.rows()) rows.push_back(r.to_ulong());
  std::vector<std::uint64_t> best(n + 1, 0);
  std::unordered_set<std::uint64_t> traces;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
    traces.clear();
    for (auto r : rows) traces.insert(r & a);
    auto& b = best[static_cast<std::size_t>(__builtin_popcountll(a))];
    b = std::max<std::uint64_t>(b, traces.size());
  }
  std::vector<GrowthRow> table;
  bool ok = true;
  for (std::size_t m = 0; m <= n; ++m) {
    const std::uint64_t bound = dim < 0 ? 0 : binomial_sum(m, dim);
    ok = ok && best[m] <= bound;
    table.push_back({m, best[m], bound});
  }
  return {ok, table};
}

// ---------------------------------------------------------------------------
// Av(x_1..x_n; S): fraction of points in S, counted with multiplicity.

template <class T, class Pred>
Rational av_if(const std::vector<T>& points, Pred&& in_set) {
  if (points.empty()) throw InvalidInput("Av needs at least one point");
  long hits = 0;
  for (const auto& p : points)
    if (in_set(p)) ++hits;
  return make_rational(hits, static_cast<long>(points.size()));
}

inline Rational av(const std::vector<Rational>& points, const ConstructibleSet1D& s) {
  return av_if(points, [&](const Rational& x) { return s.contains(x); });
}

inline Rational av(const std::vector<std::int64_t>& points, const FiniteSubset& s) {
  return av_if(points, [&](std::int64_t x) { return s.contains(x); });
}

/// Lazy sets: an undecided point at the budget is an error naming the point.
inline Rational av(const std::vector<Rational>& points, const LazyStagedSet& s, int budget) {
  return av_if(points, [&](const Rational& x) {
    switch (s.membership(x, budget)) {
      case Membership::in: return true;
      case Membership::out: return false;
      case Membership::undecided: break;
    }
    throw Undecided("membership of " + to_string(x) + " undecided at stage " + std::to_string(budget));
  });
}

// ---------------------------------------------------------------------------
// Translate families {t + X} of a constructible X in the reals.

struct TranslateSearch {
  Interval window = Interval::closed(0, 1);
  /// Translators range over this interval; defaults to the window.
  std::optional<Interval> translators;
  int dyadic_depth = 4;  ///< adds lo + (hi-lo)·j/2^depth to the point grid
  int max_k = 4;
  std::uint64_t max_checks = 2'000'000;
};

struct TranslateShatter {
  std::vector<Rational> points;
  std::vector<std::optional<Rational>> translators;  ///< per mask, as in ShatterReport
  bool shattered() const {
    return std::all_of(translators.begin(), translators.end(), [](const auto& t) { return t.has_value(); });
  }
};

struct TranslateVcResult {
  int lower_bound = 0;
  TranslateShatter certificate;
  int searched_up_to = 0;  ///< largest k searched completely
  std::string upper_status;
};

inline std::uint64_t translate_trace(const ConstructibleSet1D& x, const Rational& t, const std::vector<Rational>& pts) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (x.contains(pts[i] - t)) mask |= std::uint64_t{1} << i;
  return mask;
}

/// Decides exactly which patterns on `pts` are cut out by translates t + X with
/// t in `range`: membership of p in t + X only changes at t = p - e for
/// critical points e of X, so critical values and midpoints between them
/// cover every behaviour.
inline TranslateShatter translate_patterns(const ConstructibleSet1D& x, const Interval& range,
                                           const std::vector<Rational>& pts) {
  std::vector<Rational> crit{range.lo, range.hi};
  for (const auto& p : pts)
    for (const auto& e : x.critical_points()) {
      Rational t = p - e;
      if (range.lo <= t && t <= range.hi) crit.push_back(std::move(t));
    }
  std::sort(crit.begin(), crit.end());
  crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
  std::vector<Rational> cand = crit;
  for (std::size_t i = 0; i + 1 < crit.size(); ++i) cand.push_back((crit[i] + crit[i + 1]) / 2);
  TranslateShatter out{pts, std::vector<std::optional<Rational>>(std::size_t{1} << pts.size())};
  for (const auto& t : cand) {
    if (!range.contains(t)) continue;
    auto& slot = out.translators[translate_trace(x, t, pts)];
    if (!slot || abs(t) < abs(*slot) || (abs(t) == abs(*slot) && t < *slot)) slot = t;
  }
  return out;
}

/// Candidate points: critical points of X, midpoints between consecutive ones,
/// and a dyadic grid, all inside the window.
inline std::vector<Rational> translate_grid(const ConstructibleSet1D& x, const TranslateSearch& cfg) {
  const auto& w = cfg.window;
  std::vector<Rational> base{w.lo, w.hi};
  for (const auto& e : x.critical_points()) base.push_back(e);
  mpz_class cells = 1;
  cells <<= static_cast<unsigned>(cfg.dyadic_depth);
  for (mpz_class j = 0; j <= cells; ++j) base.push_back(Rational(w.lo + w.length() * Rational(j, cells)));
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  std::vector<Rational> grid = base;
  for (std::size_t i = 0; i + 1 < base.size(); ++i) grid.push_back((base[i] + base[i + 1]) / 2);
  std::vector<Rational> kept;
  for (auto& g : grid)
    if (w.contains(g)) kept.push_back(std::move(g));
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  return kept;
}

/// Lower bound with an explicit certificate; the upper side is only a search
/// outcome ("no shattered (k+1)-set on the grid"), never a proof.
inline TranslateVcResult translate_vc_dimension(const ConstructibleSet1D& x, const TranslateSearch& cfg = {}) {
  const Interval range = cfg.translators.value_or(cfg.window);
  const auto grid = translate_grid(x, cfg);
  TranslateVcResult res;
  res.certificate = translate_patterns(x, range, {});
  if (!res.certificate.shattered()) {
    res.lower_bound = -1;
    res.upper_status = "no translate in range";
    return res;
  }
  std::vector<std::vector<std::size_t>> level{{}};
  std::uint64_t checks = 0;
  for (int k = 1; k <= cfg.max_k; ++k) {
    std::vector<std::vector<std::size_t>> next;
    std::set<std::vector<std::size_t>> prev(level.begin(), level.end());
    for (const auto& base : level) {
      const std::size_t start = base.empty() ? 0 : base.back() + 1;
      for (std::size_t p = start; p < grid.size(); ++p) {
        auto cand = base;
        cand.push_back(p);
        bool all_sub = true;
        for (std::size_t drop = 0; drop + 1 < cand.size() && all_sub; ++drop) {
          auto sub = cand;
          sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
          all_sub = prev.count(sub) > 0;
        }
        if (!all_sub) continue;
        if (++checks > cfg.max_checks) throw BudgetExceeded("translate VC search budget exhausted", res.lower_bound);
        std::vector<Rational> pts;
        for (auto i : cand) pts.push_back(grid[i]);
        auto rep = translate_patterns(x, range, pts);
        if (rep.shattered()) {
          if (next.empty()) res.certificate = rep;
          next.push_back(std::move(cand));
        }
      }
    }
    res.searched_up_to = k;
    if (next.empty()) {
      res.upper_status = "no shattered " + std::to_string(k) + "-set found on a grid of " +
                         std::to_string(grid.size()) + " points (search outcome, not a proof)";
      return res;
    }
    res.lower_bound = k;
    level = std::move(next);
  }
  res.upper_status = "search stopped at k = " + std::to_string(cfg.max_k) + " with every level shattered";
  return res;
}

/// Independent re-check of a translate certificate by direct membership.
inline bool verify_translate_certificate(const ConstructibleSet1D& x, const TranslateShatter& c) {
  for (std::size_t mask = 0; mask < c.translators.size(); ++mask)
    if (c.translators[mask] && translate_trace(x, *c.translators[mask], c.points) != mask) return false;
  return true;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json to_json(const SetSystem& sys, const ShatterReport& rep) {
  nlohmann::json pts = nlohmann::json::array();
  for (auto p : rep.points) pts.push_back(sys.label(p));
  nlohmann::json wit = nlohmann::json::array();
  for (const auto& w : rep.witnesses) {
    if (!w) {
      wit.push_back(nullptr);
    } else if (auto t = sys.translator(*w)) {
      wit.push_back({{"row", *w}, {"translator", *t}});
    } else {
      wit.push_back({{"row", *w}});
    }
  }
  return {{"points", pts}, {"witnesses", wit}, {"shattered", rep.shattered()}};
}

inline nlohmann::json to_json(const TranslateShatter& c) {
  nlohmann::json pts = nlohmann::json::array(), tr = nlohmann::json::array();
  for (const auto& p : c.points) pts.push_back(to_string(p));
  for (const auto& t : c.translators) tr.push_back(t ? nlohmann::json(to_string(*t)) : nlohmann::json(nullptr));
  return {{"points", pts}, {"translators", tr}, {"shattered", c.shattered()}};
}

}  // namespace vclab
