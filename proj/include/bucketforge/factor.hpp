#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bucketforge {

using VarId = int;

/// Sentinel for "not yet assigned" in full-assignment vectors.
inline constexpr int kUnassigned = -1;
/// Relative gap under which two maxima count as tied.
inline constexpr double kTieTolerance = 1e-12;

enum class ElimOp { kSum, kMax };

const char* to_string(ElimOp op);

/// Dense real-valued table over an ordered scope of discrete variables.
///
/// The scope is kept in ascending variable-id order and values are laid out
/// row-major over that order (the last scope variable varies fastest), so two
/// factors over the same variables compare entrywise. An empty scope is a
/// scalar with exactly one value.
class DiscreteFactor {
 public:
  /// The scalar 1.
  DiscreteFactor();

  /// `scope` must be strictly ascending; `values.size()` must equal the
  /// product of `cards`.
  DiscreteFactor(std::vector<VarId> scope, std::vector<int> cards,
                 std::vector<double> values);

  static DiscreteFactor scalar(double value);

  /// Constant-valued factor over the given (ascending) scope.
  static DiscreteFactor constant(std::vector<VarId> scope, std::vector<int> cards,
                                 double value);

  /// Builds a canonical factor from a table whose values are row-major over
  /// `scope` in the order given (which need not be sorted).
  static DiscreteFactor from_ordered(std::span<const VarId> scope,
                                     std::span<const int> cards,
                                     std::span<const double> values);

  const std::vector<VarId>& scope() const { return scope_; }
  const std::vector<int>& cards() const { return cards_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool is_scalar() const { return scope_.empty(); }
  double scalar_value() const;

  bool contains(VarId var) const;
  /// Index of `var` within the scope, or -1.
  int index_of(VarId var) const;
  int cardinality_of(VarId var) const;
  /// Highest variable id in scope (scope must be non-empty).
  VarId highest() const { return scope_.back(); }

  /// Value at a full assignment indexed by variable id. Every scope variable
  /// must be assigned.
  double at(std::span<const int> assignment) const;

  /// Values re-laid row-major over `order`, a permutation of the scope.
  std::vector<double> values_in_order(std::span<const VarId> order) const;

  std::size_t flat_index(std::span<const int> assignment) const;

 private:
  std::vector<VarId> scope_;
  std::vector<int> cards_;
  std::vector<double> values_;
};

/// Recorded maximizing value of one eliminated variable for each
/// configuration of the remaining scope.
struct ArgTable {
  VarId eliminated = -1;
  std::vector<VarId> scope;
  std::vector<int> cards;
  std::vector<int> choices;

  /// Choice at the given full assignment (scope variables must be assigned).
  int choice(std::span<const int> assignment) const;
};

struct Elimination {
  DiscreteFactor factor;
  std::optional<ArgTable> arg;  // present for ElimOp::kMax only
};

/// Pointwise product over the union of scopes.
DiscreteFactor multiply(std::span<const DiscreteFactor> factors);
DiscreteFactor multiply(const DiscreteFactor& a, const DiscreteFactor& b);

/// Pointwise sum over the union of scopes; used for additive utility components.
DiscreteFactor add(std::span<const DiscreteFactor> factors);

/// Sums or maximizes `var` out of `f`. For kMax the ArgTable records the
/// lowest maximizing value index per output cell.
Elimination eliminate(const DiscreteFactor& f, VarId var, ElimOp op);

/// Slice of `f` at `var = value`.
DiscreteFactor restrict(const DiscreteFactor& f, VarId var, int value);

struct Normalized {
  DiscreteFactor factor;
  double mass = 0.0;
};

/// Scales entries to sum to one. Throws kImpossibleEvidence on zero mass.
Normalized normalize(const DiscreteFactor& f);

/// num / den pointwise over the union scope, with any cell whose denominator
/// is zero defined as zero.
DiscreteFactor divide_or_zero(const DiscreteFactor& num, const DiscreteFactor& den);

/// Two-line debug rendering: scope ids, then values at full precision.
std::string debug_string(const DiscreteFactor& f);

}  // namespace bucketforge
