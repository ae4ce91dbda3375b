#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bucketforge/bucket.hpp"
#include "bucketforge/graph.hpp"
#include "bucketforge/model.hpp"

namespace bucketforge {

enum class QueryKind { kBelief, kMpe, kMap, kMeu, kCondMpe };

const char* to_string(QueryKind kind);

/// Per-iteration record of a conditioning run.
struct ConditioningStep {
  std::vector<int> values;  // cutset assignment, parallel to QueryResult::cutset
  double value = 0.0;
  int max_scope = 0;  // largest recorded scope, conditioned and observed variables excluded
};

struct QueryResult {
  QueryKind kind = QueryKind::kMpe;
  std::optional<VarId> query_var;
  std::vector<double> belief;
  /// (variable, value) pairs in ascending variable order.
  std::vector<std::pair<VarId, int>> assignment;
  std::optional<double> value;
  std::optional<double> evidence_mass;
  /// True when the evidence admits no positive-probability completion.
  bool impossible = false;
  std::vector<std::string> notes;

  std::vector<TraceRecord> trace;
  int max_scope = 0;             // largest generated scope, all variables counted
  int max_unobserved_scope = 0;  // same, evidence variables excluded

  // elim_cond_max only
  std::vector<VarId> cutset;
  std::size_t iterations = 0;
  std::vector<ConditioningStep> steps;
};

/// Belief of `query_var` given the evidence. `d` must place `query_var` at
/// position 1. Throws kImpossibleEvidence when P(e) = 0.
QueryResult elim_bel(const BeliefNetwork& net, VarId query_var, const Evidence& evidence,
                     const Ordering& d);

/// Most probable explanation: value = max_x P(x, e) and a tuple achieving it.
QueryResult elim_max(const BeliefNetwork& net, const Evidence& evidence, const Ordering& d);

/// MAP over `hypothesis`, which must occupy the first positions of `d`.
/// value = max_a sum_rest P(a, rest, e).
QueryResult elim_map(const BeliefNetwork& net, std::span<const VarId> hypothesis,
                     const Evidence& evidence, const Ordering& d);

/// Maximum expected utility; the decisions must occupy the first positions
/// of `d`. value = max_d E[u | e, d] (plain expected utility without
/// evidence); evidence_mass = P(e | d*).
QueryResult elim_meu(const InfluenceDiagram& id, const Evidence& evidence, const Ordering& d);

struct ConditioningOptions {
  unsigned parallel = 1;     // worker threads for the cutset loop
  bool keep_steps = false;   // record every iteration in QueryResult::steps
};

/// MPE by enumerating the cutset `cond` and running elim_max with each
/// assignment added as observations. Assignments are enumerated in
/// lexicographic order (ascending variable id, last fastest); the first
/// maximum wins regardless of thread count.
QueryResult elim_cond_max(const BeliefNetwork& net, std::span<const VarId> cond,
                          const Evidence& evidence, const Ordering& d,
                          const ConditioningOptions& options = {});

}  // namespace bucketforge
