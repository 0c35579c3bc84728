#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace vclab {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: duplicate points, bad text, negative radii, ...
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Elements or subsets from different group models were combined.
class ModelMismatch : public Error {
 public:
  using Error::Error;
};

/// Uniform sampling was requested on a region of measure zero.
class Unsampleable : public Error {
 public:
  using Error::Error;
};

/// A lazy membership query could not be decided at the requested stage budget.
class Undecided : public Error {
 public:
  using Error::Error;
};

/// An exhaustive search ran out of budget. Carries the best lower bound found.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, int lower_bound)
      : Error(what), lower_bound_(lower_bound) {}
  int lower_bound() const noexcept { return lower_bound_; }

 private:
  int lower_bound_;
};

/// The measure floor of a Steinhaus request is not above half the hull length.
class QuantitativeRegime : public Error {
 public:
  using Error::Error;
};

/// A finite stage is too coarse to certify positive density.
class InsufficientStage : public Error {
 public:
  using Error::Error;
};

/// Witness construction stopped early; `completed_levels` levels were finished.
class PartialWitness : public Error {
 public:
  PartialWitness(const std::string& what, std::size_t completed_levels)
      : Error(what), completed_levels_(completed_levels) {}
  std::size_t completed_levels() const noexcept { return completed_levels_; }

 private:
  std::size_t completed_levels_;
};

/// No hitting set was found within the retry budget.
class HittingSetFailure : public Error {
 public:
  HittingSetFailure(const std::string& what, long long missed_translator)
      : Error(what), missed_translator_(missed_translator) {}
  long long missed_translator() const noexcept { return missed_translator_; }

 private:
  long long missed_translator_;
};

}  // namespace vclab
