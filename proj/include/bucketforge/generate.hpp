#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "bucketforge/graph.hpp"
#include "bucketforge/model.hpp"

namespace bucketforge {

using Rng = std::mt19937_64;

/// Random DAG over `n` variables (each picks up to `max_parents` parents
/// among its predecessors in a random topological order) with cardinalities
/// in [2, max_card] and strictly positive CPT entries.
BeliefNetwork random_network(Rng& rng, int n, int max_card, int max_parents = 3);

/// Random influence diagram: `decisions` root decision variables, the rest
/// chance variables, and `utilities` components over 1..3 variables each.
InfluenceDiagram random_diagram(Rng& rng, int n, int max_card, int decisions, int utilities,
                                int max_parents = 3);

/// Random tree-structured network: every variable but the root has exactly
/// one parent.
BeliefNetwork random_tree(Rng& rng, int n, int max_card);

/// Random 3-CNF with distinct propositions in every clause.
CnfTheory random_3cnf(Rng& rng, int props, int clauses);

/// Each variable is observed with probability `p`, at a uniform value.
Evidence random_evidence(Rng& rng, const BeliefNetwork& net, double p);

/// Uniform random permutation.
Ordering random_ordering(Rng& rng, std::size_t n);

/// Random permutation with `front` (in random order) on the first positions.
Ordering random_ordering_with_prefix(Rng& rng, std::size_t n, std::span<const VarId> front);

}  // namespace bucketforge
