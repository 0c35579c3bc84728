#pragma once

// Sampling-based epsilon-approximations with exact verification, the
// sample-size sweep, and the hitting-set / covering pattern over translates.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vclab/constructible_set.hpp"
#include "vclab/errors.hpp"
#include "vclab/group.hpp"
#include "vclab/parallel.hpp"
#include "vclab/rational.hpp"
#include "vclab/rng.hpp"
#include "vclab/vc.hpp"

namespace vclab {

struct EpsApprox {
  std::vector<std::int64_t> points;  ///< element indices, repetitions allowed
  Rational sup_deviation;
  bool success = false;
  bool approximate = false;  ///< true when the sup ran over a probe set only
};

namespace detail {

inline void require_family_on(const GroupModel& model, const SetSystem& sys) {
  if (!model.finite()) throw ModelMismatch("explicit families need a finite model");
  if (static_cast<std::int64_t>(sys.ground_size()) != model.order())
    throw ModelMismatch("family ground set is not the model carrier");
}

/// Members of each row as index lists, built once per family.
struct FamilyIndex {
  std::vector<std::vector<std::uint32_t>> members;

  explicit FamilyIndex(const SetSystem& sys) {
    for (const auto& r : sys.rows()) {
      std::vector<std::uint32_t> m;
      for (auto i = r.find_first(); i != Row::npos; i = r.find_next(i)) m.push_back(static_cast<std::uint32_t>(i));
      members.push_back(std::move(m));
    }
  }

  /// max over rows of |c·G - s·N| / (N·G), with c the sample count in the
  /// row and s the row size; integer arithmetic until the final division.
  Rational sup_deviation(const std::vector<std::int64_t>& points, std::int64_t group_order) const {
    if (members.empty() || points.empty()) return 0;
    std::vector<std::int64_t> hist(static_cast<std::size_t>(group_order), 0);
    for (auto p : points) ++hist[static_cast<std::size_t>(p)];
    const auto n = static_cast<std::int64_t>(points.size());
    std::int64_t worst = 0;
    for (const auto& m : members) {
      std::int64_t c = 0;
      for (auto i : m) c += hist[i];
      worst = std::max<std::int64_t>(worst, std::llabs(c * group_order - static_cast<std::int64_t>(m.size()) * n));
    }
    return make_rational(static_cast<long>(worst), static_cast<long>(n * group_order));
  }
};

}  // namespace detail

/// Exact sup over the family of |Av(points; S) - mu(S)|, evaluated row by row
/// through av() and haar_measure(). Empty family: 0 by convention.
inline Rational sup_deviation(const GroupModel& model, const SetSystem& sys, const std::vector<std::int64_t>& points) {
  detail::require_family_on(model, sys);
  Rational worst = 0;
  for (const auto& r : sys.rows()) {
    std::vector<std::int64_t> idx;
    for (auto i = r.find_first(); i != Row::npos; i = r.find_next(i)) idx.push_back(static_cast<std::int64_t>(i));
    const FiniteSubset s{idx};
    const Rational dev = abs(Rational(av(points, s) - haar_measure(model, s)));
    if (dev > worst) worst = dev;
  }
  return worst;
}

inline EpsApprox epsilon_approximation(const GroupModel& model, const SetSystem& sys, const Rational& epsilon,
                                       std::int64_t n, Rng& rng) {
  detail::require_family_on(model, sys);
  if (!(epsilon > 0)) throw InvalidInput("epsilon must be positive");
  if (n < 1) throw InvalidInput("sample size must be at least 1");
  EpsApprox out;
  out.points.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i)
    out.points.push_back(static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(model.order()))));
  out.sup_deviation = detail::FamilyIndex(sys).sup_deviation(out.points, model.order());
  out.success = out.sup_deviation < epsilon;
  return out;
}

/// Reals model: translates t + X restricted to the window, with the window's
/// normalized Lebesgue measure. The sup only covers the given probe
/// translators, so the result is flagged approximate.
inline EpsApprox epsilon_approximation_probe(const GroupModel& model, const ConstructibleSet1D& x,
                                             const std::vector<Rational>& probes, const Rational& epsilon,
                                             std::int64_t n, Rng& rng, std::vector<Rational>* sample = nullptr) {
  if (model.finite()) throw ModelMismatch("probe approximations need the reals model");
  if (!(epsilon > 0)) throw InvalidInput("epsilon must be positive");
  if (n < 1) throw InvalidInput("sample size must be at least 1");
  const auto window = model.window();
  const auto whole = ConstructibleSet1D::closed(window.lo, window.hi);
  std::vector<Rational> pts;
  for (std::int64_t i = 0; i < n; ++i) pts.push_back(std::get<Rational>(sample_uniform(model, whole, rng)));
  EpsApprox out;
  out.approximate = true;
  out.sup_deviation = 0;
  for (const auto& t : probes) {
    const auto s = intersection(translate(x, t), whole);
    const Rational dev = abs(Rational(av(pts, s) - s.measure() / window.length()));
    if (dev > out.sup_deviation) out.sup_deviation = dev;
  }
  out.success = out.sup_deviation < epsilon;
  if (sample) *sample = std::move(pts);
  return out;
}

// ---------------------------------------------------------------------------
// Sample-size sweep

struct SweepRow {
  std::int64_t n;
  std::int64_t trials;
  std::int64_t successes;
  Rational min_sup_deviation;
  Rational max_sup_deviation;
  Rational smoothed_rate;  ///< running minimum from the right, nondecreasing in n
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::optional<std::int64_t> smallest_n;  ///< first n whose smoothed rate reaches the target
};

struct SweepConfig {
  Rational epsilon = Rational(1, 20);
  std::int64_t trials = 100;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> grid;  ///< empty: default_sweep_grid(cap)
  std::int64_t cap = 0;            ///< 0: classical_sample_bound
  Rational target_rate = Rational(95, 100);
  unsigned jobs = 1;
};

/// The classical (k/eps^2)·ln(1/eps) size, used only as the sweep ceiling.
inline std::int64_t classical_sample_bound(int vc, const Rational& epsilon) {
  const double e = epsilon.get_d();
  const double k = std::max(1, vc);
  const double bound = k / (e * e) * std::max(1.0, std::log(1.0 / e));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(bound)));
}

/// 1, then 10·2^(j/2) rounded, up to and including the cap.
inline std::vector<std::int64_t> default_sweep_grid(std::int64_t cap) {
  std::vector<std::int64_t> g{1};
  for (int j = 0;; ++j) {
    const auto v = static_cast<std::int64_t>(std::llround(10.0 * std::pow(2.0, j / 2.0)));
    if (v >= cap) break;
    if (v > g.back()) g.push_back(v);
  }
  if (cap > g.back()) g.push_back(cap);
  return g;
}

inline std::uint64_t trial_seed(std::uint64_t seed, std::int64_t n, std::int64_t trial) {
  return derive_seed(derive_seed(seed, static_cast<std::uint64_t>(n)), static_cast<std::uint64_t>(trial));
}

inline SweepResult sample_complexity_sweep(const GroupModel& model, const SetSystem& sys, const SweepConfig& cfg) {
  detail::require_family_on(model, sys);
  SweepResult res;
  if (cfg.trials <= 0) return res;
  const auto cap = cfg.cap > 0 ? cfg.cap : classical_sample_bound(vc_dimension(sys).dimension, cfg.epsilon);
  const auto grid = cfg.grid.empty() ? default_sweep_grid(cap) : cfg.grid;
  const detail::FamilyIndex index(sys);
  const auto order = model.order();

  // One slot per (n, trial); filled in parallel, read in order.
  std::vector<Rational> dev(grid.size() * static_cast<std::size_t>(cfg.trials));
  parallel_for(dev.size(), cfg.jobs, [&](std::size_t cell) {
    const auto gi = cell / static_cast<std::size_t>(cfg.trials);
    const auto t = static_cast<std::int64_t>(cell % static_cast<std::size_t>(cfg.trials));
    Rng rng(trial_seed(cfg.seed, grid[gi], t));
    std::vector<std::int64_t> pts(static_cast<std::size_t>(grid[gi]));
    for (auto& p : pts) p = static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(order)));
    dev[cell] = index.sup_deviation(pts, order);
  });

  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    SweepRow row{grid[gi], cfg.trials, 0, 0, 0, 0};
    for (std::int64_t t = 0; t < cfg.trials; ++t) {
      const auto& d = dev[gi * static_cast<std::size_t>(cfg.trials) + static_cast<std::size_t>(t)];
      if (d < cfg.epsilon) ++row.successes;
      if (t == 0 || d < row.min_sup_deviation) row.min_sup_deviation = d;
      if (t == 0 || d > row.max_sup_deviation) row.max_sup_deviation = d;
    }
    res.rows.push_back(std::move(row));
  }
  Rational running = 1;
  for (auto it = res.rows.rbegin(); it != res.rows.rend(); ++it) {
    const Rational rate = make_rational(static_cast<long>(it->successes), static_cast<long>(it->trials));
    running = min(running, rate);
    it->smoothed_rate = running;
  }
  for (const auto& r : res.rows)
    if (r.smoothed_rate >= cfg.target_rate) {
      res.smallest_n = r.n;
      break;
    }
  return res;
}

inline void write_sweep_csv(std::ostream& os, const SweepResult& res) {
  os << "N,trials,successes,min_sup_deviation,max_sup_deviation\n";
  for (const auto& r : res.rows)
    os << r.n << ',' << r.trials << ',' << r.successes << ',' << to_string(r.min_sup_deviation) << ','
       << to_string(r.max_sup_deviation) << '\n';
}

// ---------------------------------------------------------------------------
// Hitting sets and coverings

struct HittingSetConfig {
  std::int64_t sample_size = 25;
  int retries = 20;
  std::uint64_t seed = 0;
};

struct HittingSet {
  std::vector<std::int64_t> points;
  int attempts = 0;
  Rational sample_deviation;  ///< sup deviation of the drawn sample over {gX : g in U}
};

/// Index of the first translator g in U whose translate gX misses every point.
inline std::optional<std::int64_t> first_missed_translate(const GroupModel& model, const FiniteSubset& x,
                                                          const std::vector<std::int64_t>& points,
                                                          const FiniteSubset& u) {
  for (auto g : u.indices) {
    const auto gx = translate(model, x, g);
    if (std::none_of(points.begin(), points.end(), [&](std::int64_t p) { return gx.contains(p); })) return g;
  }
  return std::nullopt;
}

/// Points meeting every translate gX, g in U: draw an i.i.d. sample (an
/// epsilon-approximation with epsilon at the measure floor hits every
/// translate), verify exactly, keep the shortest hitting prefix. Fresh derived
/// seeds on failure.
inline HittingSet hitting_set_for_translates(const GroupModel& model, const FiniteSubset& x, const FiniteSubset& u,
                                             const HittingSetConfig& cfg = {}) {
  if (!model.finite()) throw ModelMismatch("hitting sets are computed in finite models");
  if (haar_measure(model, x) == 0) throw InvalidInput("X has measure zero: no translate can be hit reliably");
  if (u.indices.empty()) return {{}, 0, 0};
  std::vector<Row> rows;
  for (auto g : u.indices) {
    Row r(static_cast<std::size_t>(model.order()));
    for (auto i : translate(model, x, g).indices) r.set(static_cast<std::size_t>(i));
    rows.push_back(std::move(r));
  }
  const SetSystem family(SetSystem::from_subsets(static_cast<std::size_t>(model.order()), {}).labels(), rows);
  std::optional<std::int64_t> missed;
  for (int attempt = 1; attempt <= cfg.retries; ++attempt) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(attempt)));
    auto approx = epsilon_approximation(model, family, haar_measure(model, x), cfg.sample_size, rng);
    missed = first_missed_translate(model, x, approx.points, u);
    if (missed) continue;
    // Shortest prefix that still hits everything.
    std::size_t lo = 1, hi = approx.points.size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      std::vector<std::int64_t> prefix(approx.points.begin(), approx.points.begin() + static_cast<std::ptrdiff_t>(mid));
      if (first_missed_translate(model, x, prefix, u)) lo = mid + 1;
      else hi = mid;
    }
    approx.points.resize(lo);
    return {std::move(approx.points), attempt, approx.sup_deviation};
  }
  throw HittingSetFailure("no hitting set within the retry budget", *missed);
}

struct CoveringResult {
  bool covered = false;
  std::optional<std::int64_t> counterexample;  ///< a g in U left uncovered
};

/// Checks U^{-1} ⊆ ∪_i X·x_i^{-1}, i.e. every g in U has some x_i in gX. For
/// a symmetric U this is the inclusion U ⊆ ∪_i X·x_i^{-1} itself.
inline CoveringResult covering_check(const GroupModel& model, const FiniteSubset& x,
                                     const std::vector<std::int64_t>& points, const FiniteSubset& u) {
  if (!model.finite()) throw ModelMismatch("covering checks are computed in finite models");
  std::vector<std::int64_t> cover;
  for (auto p : points) {
    const auto p_inv = model.inverse_index(p);
    for (auto e : x.indices) cover.push_back(model.multiply_index(e, p_inv));
  }
  const auto covered = FiniteSubset::of(std::move(cover));
  for (auto g : u.indices)
    if (!covered.contains(model.inverse_index(g))) return {false, g};
  return {true, std::nullopt};
}

}  // namespace vclab
