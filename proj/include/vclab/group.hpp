#pragma once

// Ambient groups with their Haar measures: finite cyclic groups, finite
// products of cyclic groups (normalized counting measure) and the additive
// reals (Lebesgue measure over exact rationals, experiments confined to a
// window).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "vclab/constructible_set.hpp"
#include "vclab/errors.hpp"
#include "vclab/rational.hpp"
#include "vclab/rng.hpp"

namespace vclab {

/// Residue vector for finite models, exact rational for the reals model.
using GroupElement = std::variant<std::vector<std::int64_t>, Rational>;

/// Subset of a finite model, stored as sorted unique element indices.
struct FiniteSubset {
  std::vector<std::int64_t> indices;

  static FiniteSubset of(std::vector<std::int64_t> idx) {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return FiniteSubset{std::move(idx)};
  }
  std::size_t size() const { return indices.size(); }
  bool contains(std::int64_t i) const { return std::binary_search(indices.begin(), indices.end(), i); }
  friend bool operator==(const FiniteSubset&, const FiniteSubset&) = default;
};

class GroupModel {
 public:
  enum class Kind { cyclic, product, reals };

  static GroupModel cyclic(std::int64_t n) {
    if (n < 1) throw InvalidInput("cyclic order must be positive");
    return GroupModel(Kind::cyclic, {n}, 0, 0);
  }
  static GroupModel product(std::vector<std::int64_t> orders) {
    if (orders.empty()) throw InvalidInput("product needs at least one factor");
    for (auto n : orders)
      if (n < 1) throw InvalidInput("cyclic order must be positive");
    return GroupModel(Kind::product, std::move(orders), 0, 0);
  }
  static GroupModel reals(Rational lo, Rational hi) {
    if (!(lo < hi)) throw InvalidInput("reals window needs lo < hi");
    return GroupModel(Kind::reals, {}, std::move(lo), std::move(hi));
  }

  Kind kind() const { return kind_; }
  bool finite() const { return kind_ != Kind::reals; }
  const std::vector<std::int64_t>& orders() const { return orders_; }
  Interval window() const { return Interval::closed(lo_, hi_); }

  /// Number of elements of a finite model.
  std::int64_t order() const {
    require_finite();
    std::int64_t n = 1;
    for (auto o : orders_) n *= o;
    return n;
  }

  GroupElement identity() const {
    if (!finite()) return Rational(0);
    return std::vector<std::int64_t>(orders_.size(), 0);
  }

  /// Mixed-radix decoding; the first factor is the most significant digit.
  GroupElement element(std::int64_t index) const {
    require_finite();
    if (index < 0 || index >= order()) throw InvalidInput("element index out of range");
    std::vector<std::int64_t> r(orders_.size());
    for (std::size_t i = orders_.size(); i-- > 0;) {
      r[i] = index % orders_[i];
      index /= orders_[i];
    }
    return r;
  }

  std::int64_t index_of(const GroupElement& g) const {
    check(g);
    const auto& r = std::get<0>(g);
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) idx = idx * orders_[i] + r[i];
    return idx;
  }

  /// Throws ModelMismatch unless g is a reduced element of this model.
  void check(const GroupElement& g) const {
    if (finite()) {
      const auto* r = std::get_if<0>(&g);
      if (!r || r->size() != orders_.size()) throw ModelMismatch("element does not belong to this finite model");
      for (std::size_t i = 0; i < r->size(); ++i)
        if ((*r)[i] < 0 || (*r)[i] >= orders_[i]) throw ModelMismatch("residue not reduced for this model");
    } else if (!std::holds_alternative<Rational>(g)) {
      throw ModelMismatch("element does not belong to the reals model");
    }
  }

  GroupElement multiply(const GroupElement& g, const GroupElement& h) const {
    check(g);
    check(h);
    if (!finite()) return Rational(std::get<1>(g) + std::get<1>(h));
    const auto& a = std::get<0>(g);
    const auto& b = std::get<0>(h);
    std::vector<std::int64_t> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % orders_[i];
    return r;
  }

  GroupElement inverse(const GroupElement& g) const {
    check(g);
    if (!finite()) return Rational(-std::get<1>(g));
    auto r = std::get<0>(g);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (orders_[i] - r[i]) % orders_[i];
    return r;
  }

  /// Index-level product for finite models.
  std::int64_t multiply_index(std::int64_t a, std::int64_t b) const {
    if (kind_ == Kind::cyclic) return (a + b) % orders_[0];
    return index_of(multiply(element(a), element(b)));
  }
  std::int64_t inverse_index(std::int64_t a) const {
    if (kind_ == Kind::cyclic) return (orders_[0] - a) % orders_[0];
    return index_of(inverse(element(a)));
  }

  friend bool operator==(const GroupModel& a, const GroupModel& b) {
    return a.kind_ == b.kind_ && a.orders_ == b.orders_ && a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  GroupModel(Kind k, std::vector<std::int64_t> orders, Rational lo, Rational hi)
      : kind_(k), orders_(std::move(orders)), lo_(std::move(lo)), hi_(std::move(hi)) {}

  void require_finite() const {
    if (!finite()) throw ModelMismatch("operation needs a finite model");
  }

  Kind kind_;
  std::vector<std::int64_t> orders_;
  Rational lo_, hi_;
};

/// g·S for a finite subset.
inline FiniteSubset translate(const GroupModel& model, const FiniteSubset& s, std::int64_t g) {
  std::vector<std::int64_t> out;
  out.reserve(s.size());
  for (auto x : s.indices) out.push_back(model.multiply_index(g, x));
  return FiniteSubset::of(std::move(out));
}

/// Normalized counting measure |S| / N.
inline Rational haar_measure(const GroupModel& model, const FiniteSubset& s) {
  const auto n = model.order();
  for (auto i : s.indices)
    if (i < 0 || i >= n) throw ModelMismatch("subset index outside the model");
  return make_rational(static_cast<long>(s.size()), static_cast<long>(n));
}

/// Lebesgue measure (reals model only).
inline Rational haar_measure(const GroupModel& model, const ConstructibleSet1D& s) {
  if (model.finite()) throw ModelMismatch("interval sets live in the reals model");
  return s.measure();
}

/// Uniform element of a finite region.
inline GroupElement sample_uniform(const GroupModel& model, const FiniteSubset& region, Rng& rng) {
  if (region.indices.empty()) throw Unsampleable("cannot sample from an empty region");
  return model.element(region.indices[rng.uniform_below(region.size())]);
}

/// Uniform point of a rational interval union. An interval is chosen with
/// probability proportional to its length, then the midpoint of a uniformly
/// chosen cell of a dyadic grid with 2^resolution_bits cells is returned, so
/// the result is exact and strictly inside the interval.
inline GroupElement sample_uniform(const GroupModel& model, const ConstructibleSet1D& region, Rng& rng,
                                   unsigned resolution_bits = 32) {
  if (model.finite()) throw ModelMismatch("interval sets live in the reals model");
  const Rational total = region.measure();
  if (total == 0) throw Unsampleable("cannot sample from a region of measure zero");
  const std::uint64_t cells = std::uint64_t{1} << std::min(resolution_bits, 62U);
  const Rational cell = pow2_neg(std::min(resolution_bits, 62U));
  // Pick the interval: u in (0, total) on the dyadic grid.
  const Rational u = total * (Rational(mpz_class(static_cast<unsigned long>(rng.uniform_below(cells)))) + Rational(1, 2)) * cell;
  Rational acc = 0;
  const Interval* chosen = &region.intervals().back();
  for (const auto& iv : region.intervals()) {
    acc += iv.length();
    if (u < acc) {
      chosen = &iv;
      break;
    }
  }
  const Rational j = Rational(mpz_class(static_cast<unsigned long>(rng.uniform_below(cells)))) + Rational(1, 2);
  return Rational(chosen->lo + chosen->length() * j * cell);
}

// ---------------------------------------------------------------------------
// Descriptors: {"kind":"cyclic","n":12}, {"kind":"product","orders":[2,6]},
// {"kind":"reals","lo":"0","hi":"1"}; short forms "cyclic:12",
// "product:2x6", "reals:0:1".

inline nlohmann::json to_json(const GroupModel& m) {
  switch (m.kind()) {
    case GroupModel::Kind::cyclic:
      return {{"kind", "cyclic"}, {"n", m.orders()[0]}};
    case GroupModel::Kind::product:
      return {{"kind", "product"}, {"orders", m.orders()}};
    case GroupModel::Kind::reals:
      return {{"kind", "reals"}, {"lo", to_string(m.window().lo)}, {"hi", to_string(m.window().hi)}};
  }
  return {};
}

inline GroupModel group_from_json(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "cyclic") return GroupModel::cyclic(j.at("n").get<std::int64_t>());
  if (kind == "product") return GroupModel::product(j.at("orders").get<std::vector<std::int64_t>>());
  if (kind == "reals") return GroupModel::reals(parse_rational(j.at("lo").get<std::string>()),
                                                parse_rational(j.at("hi").get<std::string>()));
  throw InvalidInput("unknown group kind '" + kind + "'");
}

inline GroupModel parse_group(const std::string& text) {
  auto colon = text.find(':');
  const auto kind = text.substr(0, colon);
  const auto rest = colon == std::string::npos ? std::string() : text.substr(colon + 1);
  try {
    if (kind == "cyclic") return GroupModel::cyclic(std::stoll(rest));
    if (kind == "product") {
      std::vector<std::int64_t> orders;
      std::size_t start = 0;
      while (start <= rest.size()) {
        auto x = rest.find('x', start);
        orders.push_back(std::stoll(rest.substr(start, x == std::string::npos ? std::string::npos : x - start)));
        if (x == std::string::npos) break;
        start = x + 1;
      }
      return GroupModel::product(orders);
    }
    if (kind == "reals") {
      auto c2 = rest.find(':');
      if (c2 == std::string::npos) return GroupModel::reals(0, 1);
      return GroupModel::reals(parse_rational(rest.substr(0, c2)), parse_rational(rest.substr(c2 + 1)));
    }
  } catch (const std::logic_error&) {
    throw InvalidInput("bad group descriptor '" + text + "'");
  }
  throw InvalidInput("unknown group descriptor '" + text + "'");
}

}  // namespace vclab
