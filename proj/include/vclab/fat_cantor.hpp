#pragma once

// Fat Cantor sets K = ∩ K_m built by removing an open middle gap of length
// coefficient·ratio^m from each of the 2^(m-1) components of K_(m-1). With the
// default schedule (4/5)·4^-m on [0,1], mu(K_m) = 3/5 + (2/5)·2^-m.
//
// Components and gaps are addressed through the binary tree of the
// construction, so local queries at stage 200 cost O(200) rather than 2^200.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "vclab/constructible_set.hpp"
#include "vclab/errors.hpp"
#include "vclab/lazy_set.hpp"
#include "vclab/rational.hpp"

namespace vclab {

struct FatCantorSpec {
  Rational lo = 0;
  Rational hi = 1;
  Rational coefficient = Rational(4, 5);
  Rational ratio = Rational(1, 4);
  int max_stage = 640;
};

/// A removed gap: open interval removed at `stage` (stage >= 1).
struct Gap {
  int stage;
  Interval interval;
};

class FatCantor {
 public:
  explicit FatCantor(FatCantorSpec spec = {}) : spec_(std::move(spec)) {
    if (!(spec_.lo < spec_.hi)) throw InvalidInput("fat Cantor window needs lo < hi");
    if (!(spec_.ratio > 0) || !(2 * spec_.ratio < 1) || !(spec_.coefficient > 0))
      throw InvalidInput("fat Cantor schedule needs coefficient > 0 and 0 < ratio < 1/2");
    if (spec_.max_stage < 1) throw InvalidInput("max_stage must be positive");
    component_length_.reserve(static_cast<std::size_t>(spec_.max_stage) + 1);
    gap_length_.reserve(static_cast<std::size_t>(spec_.max_stage) + 1);
    component_length_.push_back(spec_.hi - spec_.lo);
    gap_length_.push_back(0);
    Rational g = spec_.coefficient;
    for (int m = 1; m <= spec_.max_stage; ++m) {
      g *= spec_.ratio;
      if (!(g < component_length_.back())) throw InvalidInput("gap does not fit in its component");
      gap_length_.push_back(g);
      component_length_.push_back((component_length_.back() - g) / 2);
    }
  }

  const FatCantorSpec& spec() const { return spec_; }
  Interval window() const { return Interval::closed(spec_.lo, spec_.hi); }

  /// Length of each gap removed at stage m (m >= 1).
  const Rational& gap_length(int m) const {
    check_stage(m);
    if (m < 1) throw InvalidInput("gaps start at stage 1");
    return gap_length_[static_cast<std::size_t>(m)];
  }
  /// Common length of the 2^m components of K_m.
  const Rational& component_length(int m) const {
    check_stage(m);
    return component_length_[static_cast<std::size_t>(m)];
  }

  /// mu(K): window length minus the total removed length c·r / (1 - 2r).
  Rational limit_measure() const {
    return (spec_.hi - spec_.lo) - spec_.coefficient * spec_.ratio / (1 - 2 * spec_.ratio);
  }

  /// Closed form mu(K_m) = mu(K) + (c·r / (1 - 2r))·(2r)^m.
  Rational closed_form_measure(int m) const {
    check_stage(m);
    return limit_measure() +
           spec_.coefficient * spec_.ratio / (1 - 2 * spec_.ratio) * pow(2 * spec_.ratio, static_cast<unsigned>(m));
  }

  /// K-measure carried by each component of K_m (all components are congruent).
  Rational component_k_measure(int m) const {
    check_stage(m);
    mpz_class two_m = 1;
    two_m <<= static_cast<unsigned>(m);
    return limit_measure() / Rational(two_m);
  }

  /// Component `index` of K_m; index bits are read from the most significant
  /// (stage 1) down.
  Interval component(int m, std::uint64_t index) const {
    check_stage(m);
    Rational lo = spec_.lo;
    for (int j = 1; j <= m; ++j) {
      if ((index >> static_cast<unsigned>(m - j)) & 1U)
        lo += component_length_[static_cast<std::size_t>(j)] + gap_length_[static_cast<std::size_t>(j)];
    }
    return Interval::closed(lo, lo + component_length_[static_cast<std::size_t>(m)]);
  }

  /// All components of K_m meeting [a, b], left to right.
  std::vector<Interval> components_in(int m, const Rational& a, const Rational& b) const {
    check_stage(m);
    std::vector<Interval> out;
    descend_components(0, spec_.lo, m, a, b, out);
    return out;
  }

  /// All gaps of stages in [min_stage, max_stage] meeting [a, b], left to right.
  /// parity = 0 or 1 keeps only stages with stage % 2 == parity.
  std::vector<Gap> gaps_in(int min_stage, int max_stage, const Rational& a, const Rational& b,
                           std::optional<int> parity = std::nullopt) const {
    check_stage(max_stage);
    std::vector<Gap> out;
    if (max_stage >= 1) descend_gaps(0, spec_.lo, std::max(min_stage, 1), max_stage, a, b, parity, out);
    return out;
  }

  /// The K_m component containing x, if any.
  std::optional<Interval> component_containing(int m, const Rational& x) const {
    check_stage(m);
    if (x < spec_.lo || x > spec_.hi) return std::nullopt;
    Rational lo = spec_.lo;
    for (int j = 1; j <= m; ++j) {
      const Rational& len = component_length_[static_cast<std::size_t>(j)];
      const Rational& gap = gap_length_[static_cast<std::size_t>(j)];
      if (x <= lo + len) continue;
      if (x < lo + len + gap) return std::nullopt;
      lo += len + gap;
    }
    return Interval::closed(lo, lo + component_length_[static_cast<std::size_t>(m)]);
  }

  /// The gap (of stage <= max_stage) containing x, if any.
  std::optional<Gap> gap_containing(int max_stage, const Rational& x) const {
    check_stage(max_stage);
    if (x <= spec_.lo || x >= spec_.hi) return std::nullopt;
    Rational lo = spec_.lo;
    for (int j = 1; j <= max_stage; ++j) {
      const Rational& len = component_length_[static_cast<std::size_t>(j)];
      const Rational& gap = gap_length_[static_cast<std::size_t>(j)];
      if (x <= lo + len) continue;
      if (x < lo + len + gap) return Gap{j, Interval::open(lo + len, lo + len + gap)};
      lo += len + gap;
    }
    return std::nullopt;
  }

  bool stage_contains(int m, const Rational& x) const { return component_containing(m, x).has_value(); }

  /// Endpoints of K_m components are never removed later, so they lie in K.
  bool is_persistent_point(int m, const Rational& x) const {
    const auto c = component_containing(m, x);
    return c && (c->lo == x || c->hi == x);
  }

  /// K_m as 2^m closed intervals. Intended for moderate m.
  ConstructibleSet1D stage(int m) const {
    if (m > 24) throw InvalidInput("refusing to materialize a fat Cantor stage above 24");
    return ConstructibleSet1D::from_parts(components_in(m, spec_.lo, spec_.hi));
  }

  /// K as a decreasing lazy set.
  LazyStagedSet as_lazy_set() const {
    auto self = std::make_shared<const FatCantor>(*this);
    LazyStagedSet set([self](int m) { return self->stage(m); }, Monotonicity::decreasing);
    set.with_local([self](int m, const Rational& a, const Rational& b) {
         return ConstructibleSet1D::from_parts(self->components_in(m, a, b));
       })
        .with_persistence([self](const Rational& x, int m) { return self->is_persistent_point(m, x); })
        .with_measure_formula([self](int m) { return self->closed_form_measure(m); })
        .with_limit_measure(limit_measure());
    return set;
  }

  /// Union of the gaps of stages <= m whose stage parity is `parity`, as an
  /// increasing lazy set. parity 1 gives the odd stages, 0 the even ones.
  LazyStagedSet gaps_lazy_set(int parity) const {
    auto self = std::make_shared<const FatCantor>(*this);
    auto local = [self, parity](int m, const Rational& a, const Rational& b) {
      std::vector<Interval> ivs;
      if (m >= 1)
        for (auto& g : self->gaps_in(1, m, a, b, parity)) ivs.push_back(std::move(g.interval));
      return ConstructibleSet1D::from_parts(ivs);
    };
    LazyStagedSet set([self, local](int m) { return local(m, self->spec_.lo, self->spec_.hi); },
                      Monotonicity::increasing);
    // Non-membership is final once x is a persistent point of K or lies in a
    // gap of the other parity.
    set.with_local(local).with_persistence([self, parity](const Rational& x, int m) {
      if (x <= self->spec_.lo || x >= self->spec_.hi) return true;
      if (self->is_persistent_point(m, x)) return true;
      const auto g = self->gap_containing(m, x);
      return g && (g->stage % 2) != parity;
    });
    return set;
  }

 private:
  void check_stage(int m) const {
    if (m < 0 || m > spec_.max_stage) throw InvalidInput("fat Cantor stage out of range");
  }

  void descend_components(int j, Rational lo, int m, const Rational& a, const Rational& b,
                          std::vector<Interval>& out) const {
    const Rational& len = component_length_[static_cast<std::size_t>(j)];
    Rational hi = lo + len;
    if (hi < a || lo > b) return;
    if (j == m) {
      out.push_back(Interval::closed(std::move(lo), std::move(hi)));
      return;
    }
    const Rational& child = component_length_[static_cast<std::size_t>(j + 1)];
    const Rational& gap = gap_length_[static_cast<std::size_t>(j + 1)];
    Rational right = lo + child + gap;
    descend_components(j + 1, std::move(lo), m, a, b, out);
    descend_components(j + 1, std::move(right), m, a, b, out);
  }

  void descend_gaps(int j, Rational lo, int min_stage, int max_stage, const Rational& a, const Rational& b,
                    std::optional<int> parity, std::vector<Gap>& out) const {
    if (j >= max_stage) return;
    const Rational& len = component_length_[static_cast<std::size_t>(j)];
    if (lo + len < a || lo > b) return;
    const Rational& child = component_length_[static_cast<std::size_t>(j + 1)];
    const Rational& gap = gap_length_[static_cast<std::size_t>(j + 1)];
    Rational gap_lo = lo + child;
    Rational gap_hi = gap_lo + gap;
    descend_gaps(j + 1, lo, min_stage, max_stage, a, b, parity, out);
    const int s = j + 1;
    if (s >= min_stage && (!parity || s % 2 == *parity) && !(gap_hi <= a) && !(gap_lo >= b))
      out.push_back(Gap{s, Interval::open(gap_lo, gap_hi)});
    descend_gaps(j + 1, std::move(gap_hi), min_stage, max_stage, a, b, parity, out);
  }

  FatCantorSpec spec_;
  std::vector<Rational> component_length_;
  std::vector<Rational> gap_length_;
};

/// V_0 = union of odd-stage gaps, V_1 = union of even-stage gaps, both at
/// stage m (m >= 2). Together they make up window \ K_m.
inline std::pair<ConstructibleSet1D, ConstructibleSet1D> parity_split(const FatCantor& k, int m) {
  if (m < 2) throw InvalidInput("parity split needs m >= 2");
  if (m > 24) throw InvalidInput("refusing to materialize a parity split above stage 24");
  std::vector<Interval> v0, v1;
  for (auto& g : k.gaps_in(1, m, k.spec().lo, k.spec().hi)) (g.stage % 2 ? v0 : v1).push_back(std::move(g.interval));
  return {ConstructibleSet1D::from_parts(v0), ConstructibleSet1D::from_parts(v1)};
}

}  // namespace vclab
