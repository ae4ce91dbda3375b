#pragma once

#include <span>
#include <vector>

#include "bucketforge/engines.hpp"
#include "bucketforge/graph.hpp"
#include "bucketforge/model.hpp"

namespace bucketforge {

/// Joint-space enumeration ceiling.
inline constexpr std::size_t kOracleMaxCells = std::size_t{1} << 20;

/// Dense product of every CPT of `net` over all variables, indexed in
/// variable-id order with the last variable fastest. Decision variables
/// (no CPT) contribute a factor of 1.
class JointTable {
 public:
  explicit JointTable(const BeliefNetwork& net);

  std::size_t size() const { return values_.size(); }
  const std::vector<int>& cardinalities() const { return cards_; }
  double at(std::size_t index) const { return values_[index]; }
  void decode(std::size_t index, std::vector<int>& assignment) const;

 private:
  std::vector<int> cards_;
  std::vector<double> values_;
};

// Ties are resolved to the lexicographically first tuple when variables
// are listed in `tie_order` order, which matches the engines' forward pass.

QueryResult oracle_bel(const BeliefNetwork& net, VarId query_var, const Evidence& evidence);
QueryResult oracle_mpe(const BeliefNetwork& net, const Evidence& evidence, const Ordering& tie_order);
QueryResult oracle_map(const BeliefNetwork& net, std::span<const VarId> hypothesis,
                       const Evidence& evidence, const Ordering& tie_order);
/// value = max over decisions d with P(e|d) > 0 of E[u | e, d].
QueryResult oracle_meu(const InfluenceDiagram& id, const Evidence& evidence,
                       const Ordering& tie_order);

/// Every model of `cnf` by truth table, each indexed by node (proposition - 1),
/// in increasing binary order with proposition 1 as the most significant bit.
std::vector<std::vector<bool>> oracle_models(const CnfTheory& cnf);
bool oracle_sat(const CnfTheory& cnf);

}  // namespace bucketforge
