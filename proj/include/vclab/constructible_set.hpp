#pragma once

// Exact algebra of 1-D constructible sets: finite unions of rational intervals
// plus isolated rational points. All arithmetic is exact.

#include <algorithm>
#include <iterator>
#include <utility>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "vclab/errors.hpp"
#include "vclab/rational.hpp"

namespace vclab {

/// Non-degenerate interval with rational endpoints, lo < hi.
struct Interval {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = true;

  static Interval closed(Rational a, Rational b) { return {std::move(a), std::move(b), true, true}; }
  static Interval open(Rational a, Rational b) { return {std::move(a), std::move(b), false, false}; }

  Rational length() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }

  bool contains(const Rational& x) const {
    if (x < lo || x > hi) return false;
    if (x == lo) return lo_closed;
    if (x == hi) return hi_closed;
    return true;
  }

  /// Distance from x to the closure of the interval.
  Rational distance(const Rational& x) const {
    if (x < lo) return lo - x;
    if (x > hi) return x - hi;
    return 0;
  }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi && a.lo_closed == b.lo_closed && a.hi_closed == b.hi_closed;
  }
};

namespace detail {

// Cell decomposition: sorted cut points; `at[i]` is membership of cuts[i],
// `gap[i]` membership of the open gap left of cuts[i] (gap[n] is the right tail).
struct Cells {
  std::vector<Rational> cuts;
  std::vector<char> at;
  std::vector<char> gap;
};

// Re-expresses `c` over a finer sorted cut list that contains c.cuts.
inline Cells refine(const Cells& c, const std::vector<Rational>& cuts) {
  Cells out;
  out.cuts = cuts;
  out.at.resize(cuts.size());
  out.gap.resize(cuts.size() + 1);
  std::size_t j = 0;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    while (j < c.cuts.size() && c.cuts[j] < cuts[i]) ++j;
    out.gap[i] = c.gap[j];
    out.at[i] = (j < c.cuts.size() && c.cuts[j] == cuts[i]) ? c.at[j] : c.gap[j];
  }
  out.gap[cuts.size()] = c.gap[c.cuts.size()];
  return out;
}

inline std::vector<Rational> merge_cuts(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace detail

/// Finite union of pairwise disjoint, non-adjacent rational intervals together
/// with isolated rational points outside their closure. The representation is
/// canonical, so set equality is structural equality.
class ConstructibleSet1D {
 public:
  ConstructibleSet1D() = default;

  /// Canonicalizes an arbitrary (overlapping, unsorted) collection of pieces.
  static ConstructibleSet1D from_parts(const std::vector<Interval>& intervals,
                                       const std::vector<Rational>& points = {}) {
    std::vector<Rational> cuts;
    cuts.reserve(2 * intervals.size() + points.size());
    for (const auto& iv : intervals) {
      if (iv.hi < iv.lo) throw InvalidInput("interval with lo > hi");
      cuts.push_back(iv.lo);
      cuts.push_back(iv.hi);
    }
    for (const auto& p : points) cuts.push_back(p);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const std::size_t n = cuts.size();
    auto index = [&](const Rational& x) {
      return static_cast<std::size_t>(std::lower_bound(cuts.begin(), cuts.end(), x) - cuts.begin());
    };
    // Difference arrays over gap indices and cut indices.
    std::vector<long> gap_diff(n + 2, 0), cut_diff(n + 1, 0);
    std::vector<char> at(n, 0);
    for (const auto& iv : intervals) {
      const std::size_t il = index(iv.lo), ih = index(iv.hi);
      if (il == ih) {
        if (iv.lo_closed && iv.hi_closed) at[il] = 1;
        continue;
      }
      ++gap_diff[il + 1];
      --gap_diff[ih + 1];
      if (il + 1 < ih) {
        ++cut_diff[il + 1];
        --cut_diff[ih];
      }
      if (iv.lo_closed) at[il] = 1;
      if (iv.hi_closed) at[ih] = 1;
    }
    for (const auto& p : points) at[index(p)] = 1;

    detail::Cells cells;
    cells.cuts = std::move(cuts);
    cells.at.assign(n, 0);
    cells.gap.assign(n + 1, 0);
    long g = 0, c = 0;
    for (std::size_t i = 0; i <= n; ++i) {
      g += gap_diff[i];
      cells.gap[i] = g > 0;
      if (i < n) {
        c += cut_diff[i];
        cells.at[i] = at[i] || c > 0;
      }
    }
    return from_cells(cells);
  }

  static ConstructibleSet1D interval(Rational a, Rational b, bool lo_closed, bool hi_closed) {
    return from_parts({Interval{std::move(a), std::move(b), lo_closed, hi_closed}});
  }
  static ConstructibleSet1D closed(Rational a, Rational b) { return interval(std::move(a), std::move(b), true, true); }
  static ConstructibleSet1D open(Rational a, Rational b) { return interval(std::move(a), std::move(b), false, false); }
  static ConstructibleSet1D point(Rational p) { return from_parts({}, {std::move(p)}); }
  static ConstructibleSet1D points_set(const std::vector<Rational>& ps) { return from_parts({}, ps); }

  const std::vector<Interval>& intervals() const { return intervals_; }
  const std::vector<Rational>& points() const { return points_; }
  bool empty() const { return intervals_.empty() && points_.empty(); }
  std::size_t component_count() const { return intervals_.size() + points_.size(); }

  bool contains(const Rational& x) const {
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                               [](const Rational& v, const Interval& iv) { return v < iv.lo; });
    if (it != intervals_.begin() && std::prev(it)->contains(x)) return true;
    return std::binary_search(points_.begin(), points_.end(), x);
  }

  /// Lebesgue measure.
  Rational measure() const {
    Rational m = 0;
    for (const auto& iv : intervals_) m += iv.hi - iv.lo;
    return m;
  }

  std::optional<Rational> infimum() const {
    std::optional<Rational> r;
    if (!intervals_.empty()) r = intervals_.front().lo;
    if (!points_.empty() && (!r || points_.front() < *r)) r = points_.front();
    return r;
  }
  std::optional<Rational> supremum() const {
    std::optional<Rational> r;
    if (!intervals_.empty()) r = intervals_.back().hi;
    if (!points_.empty() && (!r || points_.back() > *r)) r = points_.back();
    return r;
  }

  /// Interval endpoints and isolated points, sorted. For a canonical set these
  /// are exactly the points of its topological border.
  std::vector<Rational> critical_points() const {
    std::vector<Rational> out;
    for (const auto& iv : intervals_) {
      out.push_back(iv.lo);
      out.push_back(iv.hi);
    }
    out.insert(out.end(), points_.begin(), points_.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  friend bool operator==(const ConstructibleSet1D& a, const ConstructibleSet1D& b) {
    return a.intervals_ == b.intervals_ && a.points_ == b.points_;
  }

  detail::Cells to_cells() const {
    detail::Cells c;
    c.cuts = critical_points();
    c.at.resize(c.cuts.size());
    c.gap.assign(c.cuts.size() + 1, 0);
    for (std::size_t i = 0; i < c.cuts.size(); ++i) {
      c.at[i] = contains(c.cuts[i]);
      if (i + 1 < c.cuts.size()) c.gap[i + 1] = contains((c.cuts[i] + c.cuts[i + 1]) / 2);
    }
    return c;
  }

  /// Builds the canonical set from a cell decomposition. Both tails must be empty.
  static ConstructibleSet1D from_cells(const detail::Cells& c) {
    if (c.gap.front() || c.gap.back()) throw InvalidInput("unbounded constructible set");
    ConstructibleSet1D s;
    std::optional<std::pair<Rational, bool>> start;
    for (std::size_t i = 0; i < c.cuts.size(); ++i) {
      const bool left = c.gap[i], right = c.gap[i + 1], here = c.at[i];
      if (left && right && here) continue;
      if (left) {
        s.intervals_.push_back(Interval{start->first, c.cuts[i], start->second, here});
        start.reset();
        if (right) start.emplace(c.cuts[i], false);
      } else if (right) {
        start.emplace(c.cuts[i], here);
      } else if (here) {
        s.points_.push_back(c.cuts[i]);
      }
    }
    return s;
  }

 private:
  std::vector<Interval> intervals_;
  std::vector<Rational> points_;
};

namespace detail {

template <class Op>
ConstructibleSet1D combine(const ConstructibleSet1D& a, const ConstructibleSet1D& b, Op op) {
  const Cells ca = a.to_cells(), cb = b.to_cells();
  const auto cuts = merge_cuts(ca.cuts, cb.cuts);
  const Cells ra = refine(ca, cuts), rb = refine(cb, cuts);
  Cells out;
  out.cuts = cuts;
  out.at.resize(cuts.size());
  out.gap.resize(cuts.size() + 1);
  for (std::size_t i = 0; i < cuts.size(); ++i) out.at[i] = op(ra.at[i], rb.at[i]);
  for (std::size_t i = 0; i <= cuts.size(); ++i) out.gap[i] = op(ra.gap[i], rb.gap[i]);
  return ConstructibleSet1D::from_cells(out);
}

}  // namespace detail

inline ConstructibleSet1D set_union(const ConstructibleSet1D& a, const ConstructibleSet1D& b) {
  return detail::combine(a, b, [](bool x, bool y) { return x || y; });
}
inline ConstructibleSet1D intersection(const ConstructibleSet1D& a, const ConstructibleSet1D& b) {
  return detail::combine(a, b, [](bool x, bool y) { return x && y; });
}
inline ConstructibleSet1D difference(const ConstructibleSet1D& a, const ConstructibleSet1D& b) {
  return detail::combine(a, b, [](bool x, bool y) { return x && !y; });
}
inline ConstructibleSet1D symmetric_difference(const ConstructibleSet1D& a, const ConstructibleSet1D& b) {
  return detail::combine(a, b, [](bool x, bool y) { return x != y; });
}

/// window \ a.
inline ConstructibleSet1D complement(const ConstructibleSet1D& a, const Interval& window) {
  return difference(ConstructibleSet1D::from_parts({window}), a);
}

inline bool is_subset(const ConstructibleSet1D& a, const ConstructibleSet1D& b) {
  return difference(a, b).empty();
}

inline ConstructibleSet1D closure(const ConstructibleSet1D& a) {
  auto c = a.to_cells();
  for (std::size_t i = 0; i < c.cuts.size(); ++i) c.at[i] = c.at[i] || c.gap[i] || c.gap[i + 1];
  return ConstructibleSet1D::from_cells(c);
}

/// Interior in the real line.
inline ConstructibleSet1D interior(const ConstructibleSet1D& a) {
  auto c = a.to_cells();
  for (std::size_t i = 0; i < c.cuts.size(); ++i) c.at[i] = c.at[i] && c.gap[i] && c.gap[i + 1];
  return ConstructibleSet1D::from_cells(c);
}

/// Topological border: closure \ interior. Always a finite point set.
inline ConstructibleSet1D border(const ConstructibleSet1D& a) { return difference(closure(a), interior(a)); }

inline ConstructibleSet1D translate(const ConstructibleSet1D& a, const Rational& g) {
  std::vector<Interval> ivs;
  ivs.reserve(a.intervals().size());
  for (const auto& iv : a.intervals()) ivs.push_back(Interval{iv.lo + g, iv.hi + g, iv.lo_closed, iv.hi_closed});
  std::vector<Rational> ps;
  ps.reserve(a.points().size());
  for (const auto& p : a.points()) ps.push_back(p + g);
  return ConstructibleSet1D::from_parts(ivs, ps);
}

/// a - b = { x - y : x in a, y in b }.
inline ConstructibleSet1D minkowski_diff(const ConstructibleSet1D& a, const ConstructibleSet1D& b) {
  std::vector<Interval> ivs;
  std::vector<Rational> ps;
  for (const auto& i : a.intervals()) {
    for (const auto& j : b.intervals())
      ivs.push_back(Interval{i.lo - j.hi, i.hi - j.lo, i.lo_closed && j.hi_closed, i.hi_closed && j.lo_closed});
    for (const auto& q : b.points()) ivs.push_back(Interval{i.lo - q, i.hi - q, i.lo_closed, i.hi_closed});
  }
  for (const auto& p : a.points()) {
    for (const auto& j : b.intervals()) ivs.push_back(Interval{p - j.hi, p - j.lo, j.hi_closed, j.lo_closed});
    for (const auto& q : b.points()) ps.push_back(p - q);
  }
  return ConstructibleSet1D::from_parts(ivs, ps);
}

/// Infimum distance from x to a; std::nullopt stands for +infinity (empty a).
inline std::optional<Rational> distance_to(const ConstructibleSet1D& a, const Rational& x) {
  if (a.empty()) return std::nullopt;
  std::optional<Rational> best;
  for (const auto& iv : a.intervals()) {
    Rational d = iv.distance(x);
    if (!best || d < *best) best = std::move(d);
  }
  for (const auto& p : a.points()) {
    Rational d = abs(Rational(p - x));
    if (!best || d < *best) best = std::move(d);
  }
  return best;
}

/// Closed r-neighborhood { x : d(x, a) <= r }.
inline ConstructibleSet1D r_neighborhood(const ConstructibleSet1D& a, const Rational& r) {
  if (r <= 0) throw InvalidInput("neighborhood radius must be positive");
  std::vector<Interval> ivs;
  ivs.reserve(a.component_count());
  for (const auto& iv : a.intervals()) ivs.push_back(Interval::closed(iv.lo - r, iv.hi + r));
  for (const auto& p : a.points()) ivs.push_back(Interval::closed(p - r, p + r));
  return ConstructibleSet1D::from_parts(ivs);
}

/// Whether every point x of a satisfies mu(U ∩ a) > 0 for all neighborhoods U
/// of x. For finite-representation sets this is a ⊆ closure(interior(a)).
inline bool check_density_hypothesis(const ConstructibleSet1D& a) {
  return is_subset(a, closure(interior(a)));
}

/// Components of `a` that meet [lo, hi], unclipped.
inline ConstructibleSet1D restrict_near(const ConstructibleSet1D& a, const Rational& lo, const Rational& hi) {
  std::vector<Interval> ivs;
  for (const auto& iv : a.intervals())
    if (!(iv.hi < lo) && !(iv.lo > hi)) ivs.push_back(iv);
  std::vector<Rational> ps;
  for (const auto& p : a.points())
    if (p >= lo && p <= hi) ps.push_back(p);
  return ConstructibleSet1D::from_parts(ivs, ps);
}

// ---------------------------------------------------------------------------
// Serialization

/// Text form, e.g. "[0,1/2) u (3/4,1] u {2}". The empty set prints as "{}".
inline std::string to_string(const ConstructibleSet1D& a) {
  if (a.empty()) return "{}";
  std::vector<std::pair<Rational, std::string>> parts;
  for (const auto& iv : a.intervals())
    parts.emplace_back(iv.lo, std::string(iv.lo_closed ? "[" : "(") + to_string(iv.lo) + "," + to_string(iv.hi) +
                                  (iv.hi_closed ? "]" : ")"));
  for (const auto& p : a.points()) parts.emplace_back(p, "{" + to_string(p) + "}");
  std::stable_sort(parts.begin(), parts.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " u ";
    out += parts[i].second;
  }
  return out;
}

/// Parses the text form. Accepts "{a,b,...}" point groups and any piece order.
inline ConstructibleSet1D parse_set(std::string_view text) {
  std::vector<Interval> ivs;
  std::vector<Rational> ps;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  auto fail = [&](const std::string& why) -> void {
    throw InvalidInput("cannot parse set '" + std::string(text) + "': " + why);
  };
  skip_ws();
  if (i == text.size()) fail("empty text");
  while (i < text.size()) {
    skip_ws();
    const char c = text[i];
    if (c == '[' || c == '(') {
      const auto close = text.find_first_of("])", i);
      if (close == std::string_view::npos) fail("unterminated interval");
      const auto body = text.substr(i + 1, close - i - 1);
      const auto comma = body.find(',');
      if (comma == std::string_view::npos) fail("interval needs two endpoints");
      Interval iv{parse_rational(body.substr(0, comma)), parse_rational(body.substr(comma + 1)), c == '[',
                  text[close] == ']'};
      if (!(iv.lo < iv.hi)) {
        if (iv.lo == iv.hi && iv.lo_closed && iv.hi_closed)
          ps.push_back(iv.lo);
        else if (iv.lo > iv.hi)
          fail("interval with lo > hi");
      } else {
        ivs.push_back(std::move(iv));
      }
      i = close + 1;
    } else if (c == '{') {
      const auto close = text.find('}', i);
      if (close == std::string_view::npos) fail("unterminated point group");
      auto body = text.substr(i + 1, close - i - 1);
      std::size_t start = 0;
      bool any = false;
      for (char ch : body)
        if (ch != ' ') any = true;
      while (any) {
        const auto comma = body.find(',', start);
        ps.push_back(parse_rational(body.substr(start, comma == std::string_view::npos ? body.size() - start
                                                                                       : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      i = close + 1;
    } else {
      fail("unexpected character");
    }
    skip_ws();
    if (i < text.size()) {
      if (text[i] != 'u' && text[i] != 'U') fail("expected 'u' between pieces");
      ++i;
    }
  }
  return ConstructibleSet1D::from_parts(ivs, ps);
}

inline nlohmann::json rational_pair_json(const Rational& q) {
  return nlohmann::json::array({q.get_num().get_str(), q.get_den().get_str()});
}

inline Rational rational_from_pair_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidInput("rational must be a [num, den] pair");
  return parse_rational(j[0].get<std::string>() + "/" + j[1].get<std::string>());
}

/// Machine form: endpoints as [numerator, denominator] string pairs.
inline nlohmann::json to_json(const ConstructibleSet1D& a) {
  nlohmann::json ivs = nlohmann::json::array();
  for (const auto& iv : a.intervals())
    ivs.push_back({{"lo", rational_pair_json(iv.lo)},
                   {"hi", rational_pair_json(iv.hi)},
                   {"lo_closed", iv.lo_closed},
                   {"hi_closed", iv.hi_closed}});
  nlohmann::json ps = nlohmann::json::array();
  for (const auto& p : a.points()) ps.push_back(rational_pair_json(p));
  return {{"intervals", ivs}, {"points", ps}};
}

inline ConstructibleSet1D set_from_json(const nlohmann::json& j) {
  std::vector<Interval> ivs;
  for (const auto& e : j.at("intervals"))
    ivs.push_back(Interval{rational_from_pair_json(e.at("lo")), rational_from_pair_json(e.at("hi")),
                           e.at("lo_closed").get<bool>(), e.at("hi_closed").get<bool>()});
  std::vector<Rational> ps;
  for (const auto& e : j.at("points")) ps.push_back(rational_from_pair_json(e));
  return ConstructibleSet1D::from_parts(ivs, ps);
}

}  // namespace vclab
