#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>

#include "vclab/constructible_set.hpp"
#include "vclab/errors.hpp"

namespace vclab {

enum class Monotonicity { decreasing, increasing };
enum class Membership { in, out, undecided };

/// A set given as a monotone sequence of constructible stages, e.g. the fat
/// Cantor approximations K_m (decreasing) or a growing union of removed
/// intervals (increasing). Stages are memoized; memoization is guarded by a
/// mutex so concurrent stage requests are safe.
class LazyStagedSet {
 public:
  using Generator = std::function<ConstructibleSet1D(int)>;
  /// Components of stage m meeting [lo, hi], without materializing the stage.
  using LocalGenerator = std::function<ConstructibleSet1D(int, const Rational&, const Rational&)>;
  /// True when the membership of x observed at stage m can never change later.
  using Persistence = std::function<bool(const Rational&, int)>;
  using MeasureFormula = std::function<Rational(int)>;

  LazyStagedSet(Generator gen, Monotonicity mono) : state_(std::make_shared<State>()) {
    state_->gen = std::move(gen);
    state_->mono = mono;
  }

  LazyStagedSet& with_local(LocalGenerator local) {
    state_->local = std::move(local);
    return *this;
  }
  LazyStagedSet& with_persistence(Persistence p) {
    state_->persistence = std::move(p);
    return *this;
  }
  LazyStagedSet& with_measure_formula(MeasureFormula f) {
    state_->measure_formula = std::move(f);
    return *this;
  }
  LazyStagedSet& with_limit_measure(Rational mu) {
    state_->limit_measure = std::move(mu);
    return *this;
  }

  Monotonicity monotonicity() const { return state_->mono; }
  const std::optional<Rational>& limit_measure() const { return state_->limit_measure; }
  bool has_measure_formula() const { return static_cast<bool>(state_->measure_formula); }
  Rational measure_formula(int m) const {
    if (!state_->measure_formula) throw InvalidInput("no measure formula declared");
    return state_->measure_formula(m);
  }

  const ConstructibleSet1D& stage(int m) const {
    if (m < 0) throw InvalidInput("stage index must be non-negative");
    std::lock_guard lock(state_->mutex);
    auto it = state_->memo.find(m);
    if (it == state_->memo.end()) it = state_->memo.emplace(m, state_->gen(m)).first;
    return it->second;
  }

  /// Components of stage m that meet [lo, hi].
  ConstructibleSet1D stage_near(int m, const Rational& lo, const Rational& hi) const {
    if (m < 0) throw InvalidInput("stage index must be non-negative");
    if (state_->local) return state_->local(m, lo, hi);
    return restrict_near(stage(m), lo, hi);
  }

  bool stage_contains(int m, const Rational& x) const { return stage_near(m, x, x).contains(x); }

  /// Sound three-valued membership in the limit set: "in"/"out" answers are
  /// never contradicted by a later stage.
  Membership membership(const Rational& x, int budget) const {
    const bool here = stage_contains(budget, x);
    const bool final = state_->persistence && state_->persistence(x, budget);
    if (state_->mono == Monotonicity::decreasing) {
      if (!here) return Membership::out;
      return final ? Membership::in : Membership::undecided;
    }
    if (here) return Membership::in;
    return final ? Membership::out : Membership::undecided;
  }

  /// Checks stage(m+1) against stage(m) for the declared monotonicity.
  bool check_monotone(int m) const {
    return state_->mono == Monotonicity::decreasing ? is_subset(stage(m + 1), stage(m))
                                                     : is_subset(stage(m), stage(m + 1));
  }

  /// Checks the declared measure formula against the exact stage measure.
  bool check_measure_formula(int m) const { return measure_formula(m) == stage(m).measure(); }

 private:
  struct State {
    Generator gen;
    LocalGenerator local;
    Persistence persistence;
    MeasureFormula measure_formula;
    std::optional<Rational> limit_measure;
    Monotonicity mono = Monotonicity::decreasing;
    mutable std::mutex mutex;
    std::map<int, ConstructibleSet1D> memo;
  };
  std::shared_ptr<State> state_;
};

inline Membership lazy_membership(const LazyStagedSet& set, const Rational& x, int budget) {
  return set.membership(x, budget);
}

}  // namespace vclab
