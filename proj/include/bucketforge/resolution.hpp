#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bucketforge/graph.hpp"
#include "bucketforge/model.hpp"

namespace bucketforge {

/// Output of directional resolution. Node i of the ordering is
/// proposition i+1; `buckets[p]` holds the clauses whose highest
/// proposition sits at position p.
struct DirectionalExtension {
  int num_props = 0;
  Ordering ordering;
  std::vector<std::vector<Clause>> buckets;
  bool satisfiable = true;
  std::size_t resolvents = 0;  // non-tautological resolvents produced

  std::vector<Clause> clauses() const;
  std::size_t max_clause_size() const;
};

DirectionalExtension directional_resolution(const CnfTheory& cnf, const Ordering& d);

/// Assigns propositions in ordering order, trying false before true.
/// Returns nullopt when the extension is unsatisfiable; throws kInternal if
/// some bucket admits no value under the prefix.
/// The result is indexed by node (proposition - 1).
std::optional<std::vector<bool>> generate_model(const DirectionalExtension& ext);

bool satisfies(const CnfTheory& cnf, const std::vector<bool>& model);
bool satisfies(const std::vector<Clause>& clauses, const std::vector<bool>& model);

/// DIMACS text of the extension preceded by a `c ordering` comment.
std::string serialize_extension(const DirectionalExtension& ext);

}  // namespace bucketforge
