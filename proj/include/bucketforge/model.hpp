#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bucketforge/factor.hpp"

namespace bucketforge {

struct Variable {
  VarId id = 0;
  std::string name;
  int cardinality = 1;
};

/// DAG plus one conditional probability table per chance variable.
///
/// Decision variables (influence diagrams only) have no parents and no CPT;
/// their `cpts` slot is empty.
struct BeliefNetwork {
  std::vector<Variable> variables;
  std::vector<std::vector<VarId>> parents;
  std::vector<std::optional<DiscreteFactor>> cpts;

  std::size_t size() const { return variables.size(); }
  int cardinality(VarId v) const { return variables.at(static_cast<std::size_t>(v)).cardinality; }
  std::vector<int> cardinalities() const;
  std::vector<std::vector<VarId>> children() const;
  /// All present CPTs, in variable-id order.
  std::vector<DiscreteFactor> probability_factors() const;
  /// Topological order of the DAG; throws kModel if a cycle exists.
  std::vector<VarId> topological_order() const;
  /// Name lookup; accepts an exact name or a decimal id. Returns -1 if unknown.
  VarId find(std::string_view token) const;
  const std::string& name(VarId v) const { return variables.at(static_cast<std::size_t>(v)).name; }

  /// Checks every structural invariant; throws kModel on violation.
  void validate(double tolerance = 1e-9) const;
};

struct InfluenceDiagram {
  BeliefNetwork network;
  std::vector<VarId> decisions;
  std::vector<DiscreteFactor> utilities;

  bool is_decision(VarId v) const;
  void validate(double tolerance = 1e-9) const;
};

/// Observed values keyed by variable id.
struct Evidence {
  std::map<VarId, int> assignments;

  bool empty() const { return assignments.empty(); }
  bool contains(VarId v) const { return assignments.count(v) > 0; }
  std::optional<int> value(VarId v) const;
  std::vector<VarId> variables() const;
  /// Throws kModel if a variable is unknown or a value is out of range.
  void validate(const BeliefNetwork& net) const;
};

/// A clause is a sorted set of nonzero literals: +k is Q_k, -k is not Q_k
/// (1-based proposition numbers, as in DIMACS).
using Clause = std::vector<int>;

struct CnfTheory {
  int num_props = 0;
  std::vector<Clause> clauses;
  std::vector<std::string> notes;  // e.g. dropped tautologies
};

/// Canonical clause form: literals sorted by proposition, duplicates removed.
/// Returns nullopt if the clause is a tautology.
std::optional<Clause> canonical_clause(std::vector<int> literals);

enum class NetworkKind { kBayes, kInfluenceDiagram };

struct ParseOptions {
  /// Lax mode renormalizes CPT rows that do not sum to one and records a
  /// warning instead of rejecting the model.
  bool lax = false;
  double tolerance = 1e-9;
};

/// Result of parsing a network file: exactly one of `bayes` / `diagram`.
struct ParsedModel {
  NetworkKind kind = NetworkKind::kBayes;
  std::optional<BeliefNetwork> bayes;
  std::optional<InfluenceDiagram> diagram;
  std::vector<std::string> warnings;

  const BeliefNetwork& network() const { return bayes ? *bayes : diagram->network; }
  BeliefNetwork& network() { return bayes ? *bayes : diagram->network; }
};

ParsedModel parse_network(std::string_view text, const ParseOptions& options = {});
CnfTheory parse_cnf(std::string_view text);
Evidence parse_evidence(std::string_view text, const BeliefNetwork& net);

std::string serialize_network(const BeliefNetwork& net);
std::string serialize_diagram(const InfluenceDiagram& id);
std::string serialize_model(const ParsedModel& model);
std::string serialize_evidence(const Evidence& evidence);
std::string serialize_cnf(const CnfTheory& cnf);

/// Reads a whole file; throws kUsage if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace bucketforge
