#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bucketforge/factor.hpp"
#include "bucketforge/graph.hpp"
#include "bucketforge/model.hpp"

namespace bucketforge {

/// One line of the backward-pass trace.
struct TraceRecord {
  VarId variable = -1;
  std::size_t position = 0;  // 0-based
  std::string op;            // "sum", "max", "observe", "meu", "decide"
  std::vector<std::vector<VarId>> input_scopes;
  /// Scopes of every function this bucket generated: U_p for an elimination,
  /// U_p and W_p for an expected-utility bucket, the restricted slices for an
  /// observed bucket.
  std::vector<std::vector<VarId>> output_scopes;
  std::size_t table_size = 0;  // cells of the combined table over X_p and U_p

  std::string to_string(const BeliefNetwork* names = nullptr) const;
};

struct Bucket {
  VarId variable = -1;
  std::vector<DiscreteFactor> factors;    // probability components
  std::vector<DiscreteFactor> utilities;  // utility components (influence diagrams)
  std::optional<int> observed_value;
  std::vector<DiscreteFactor> generated;
  std::optional<ArgTable> arg;
  std::optional<ElimOp> op;
  bool processed = false;
};

/// Ordered partition of functions into buckets plus the accumulated
/// constants and the trace of the backward pass.
class BucketSchedule {
 public:
  BucketSchedule(Ordering ordering, std::vector<int> cardinalities);

  const Ordering& ordering() const { return ordering_; }
  std::size_t size() const { return buckets_.size(); }
  Bucket& at_position(std::size_t p) { return buckets_.at(p); }
  const Bucket& at_position(std::size_t p) const { return buckets_.at(p); }
  Bucket& of(VarId v) { return buckets_.at(ordering_.position(v)); }
  const Bucket& of(VarId v) const { return buckets_.at(ordering_.position(v)); }
  int cardinality(VarId v) const { return cards_.at(static_cast<std::size_t>(v)); }
  const std::vector<int>& cardinalities() const { return cards_; }

  /// Puts a probability component into the bucket of its highest-positioned
  /// variable; empty-scope factors multiply into the global scalar.
  void place(DiscreteFactor f);
  /// Same for an additive utility component; scalars add into the global
  /// utility constant.
  void place_utility(DiscreteFactor f);

  /// Position of the highest-positioned variable in `scope`.
  std::size_t highest_position(std::span<const VarId> scope) const;

  double global_scalar() const { return global_scalar_; }
  double global_utility() const { return global_utility_; }
  void scale_global(double factor) { global_scalar_ *= factor; }
  void add_global_utility(double u) { global_utility_ += u; }

  /// Current observed value of each variable (kUnassigned if unobserved).
  const std::vector<int>& observed() const { return observed_; }
  void observe(VarId v, int value);

  std::vector<TraceRecord>& trace() { return trace_; }
  const std::vector<TraceRecord>& trace() const { return trace_; }

  /// Largest generated-function scope in the trace. Variables flagged in
  /// `discount` are not counted.
  int max_recorded_scope(const std::vector<bool>& discount = {}) const;

 private:
  Ordering ordering_;
  std::vector<int> cards_;
  std::vector<Bucket> buckets_;
  std::vector<int> observed_;
  double global_scalar_ = 1.0;
  double global_utility_ = 0.0;
  std::vector<TraceRecord> trace_;
};

/// Places each factor (and utility) in the bucket of its highest variable
/// under `d` and attaches the evidence to its buckets.
BucketSchedule partition(std::span<const DiscreteFactor> factors, const Ordering& d,
                         const Evidence& evidence, std::span<const int> cardinalities,
                         std::span<const DiscreteFactor> utilities = {});

/// Processes the bucket at `position` (0-based). Observed buckets restrict
/// each function individually and re-place the slices; otherwise all
/// functions are multiplied, the bucket variable eliminated with `op` and
/// the result placed. A maximizing elimination records its ArgTable.
void process_bucket(BucketSchedule& schedule, std::size_t position, ElimOp op);

/// Assigns the variables in `over` from position 1 upward using recorded
/// ArgTables; observed variables take their evidence value. Returns a full
/// assignment indexed by variable id (kUnassigned outside `over` and the
/// evidence).
std::vector<int> forward_decode(const BucketSchedule& schedule, std::span<const VarId> over);

}  // namespace bucketforge
