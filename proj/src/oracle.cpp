#include "bucketforge/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bucketforge/error.hpp"
#include "bucketforge/resolution.hpp"

namespace bucketforge {

namespace {

std::size_t checked_size(std::span<const int> cards) {
  std::size_t total = 1;
  for (int c : cards) {
    total *= static_cast<std::size_t>(c);
    if (total > kOracleMaxCells)
      fail(ErrorCode::kTooLarge, "joint table exceeds " + std::to_string(kOracleMaxCells) +
                                     " cells; too large for enumeration");
  }
  return total;
}

bool consistent(const std::vector<int>& x, const Evidence& e) {
  for (const auto& [v, val] : e.assignments)
    if (x[static_cast<std::size_t>(v)] != val) return false;
  return true;
}

// Flat index of the sub-tuple `vars` of `x`, first variable slowest.
std::size_t tuple_index(const std::vector<int>& x, std::span<const VarId> vars,
                        const std::vector<int>& cards) {
  std::size_t idx = 0;
  for (VarId v : vars)
    idx = idx * static_cast<std::size_t>(cards[static_cast<std::size_t>(v)]) +
          static_cast<std::size_t>(x[static_cast<std::size_t>(v)]);
  return idx;
}

void tuple_decode(std::size_t idx, std::span<const VarId> vars, const std::vector<int>& cards,
                  std::vector<int>& x) {
  for (std::size_t i = vars.size(); i-- > 0;) {
    const auto c = static_cast<std::size_t>(cards[static_cast<std::size_t>(vars[i])]);
    x[static_cast<std::size_t>(vars[i])] = static_cast<int>(idx % c);
    idx /= c;
  }
}

// First index (in enumeration order) whose score is within 1e-12 relative
// of the maximum; entries flagged invalid are skipped. Returns npos if none.
std::size_t first_near_max(const std::vector<double>& score, const std::vector<bool>& valid) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < score.size(); ++i)
    if (valid[i]) best = std::max(best, score[i]);
  const double tol = kTieTolerance * std::abs(best);
  for (std::size_t i = 0; i < score.size(); ++i)
    if (valid[i] && score[i] >= best - tol) return i;
  return static_cast<std::size_t>(-1);
}

std::vector<VarId> ordered_subset(const Ordering& tie_order, std::span<const VarId> subset,
                                  std::size_t n) {
  std::vector<bool> in(n, false);
  for (VarId v : subset) in.at(static_cast<std::size_t>(v)) = true;
  std::vector<VarId> out;
  for (VarId v : tie_order.sequence())
    if (in[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

}  // namespace

JointTable::JointTable(const BeliefNetwork& net) : cards_(net.cardinalities()) {
  values_.assign(checked_size(cards_), 1.0);
  std::vector<int> x(cards_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    decode(i, x);
    for (const auto& cpt : net.cpts)
      if (cpt) values_[i] *= cpt->at(x);
  }
}

void JointTable::decode(std::size_t index, std::vector<int>& assignment) const {
  assignment.resize(cards_.size());
  for (std::size_t v = cards_.size(); v-- > 0;) {
    assignment[v] = static_cast<int>(index % static_cast<std::size_t>(cards_[v]));
    index /= static_cast<std::size_t>(cards_[v]);
  }
}

QueryResult oracle_bel(const BeliefNetwork& net, VarId query_var, const Evidence& evidence) {
  evidence.validate(net);
  JointTable joint(net);
  std::vector<double> belief(static_cast<std::size_t>(net.cardinality(query_var)), 0.0);
  std::vector<int> x;
  double mass = 0.0;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    joint.decode(i, x);
    if (!consistent(x, evidence)) continue;
    belief[static_cast<std::size_t>(x[static_cast<std::size_t>(query_var)])] += joint.at(i);
    mass += joint.at(i);
  }
  if (!(mass > 0.0)) fail(ErrorCode::kImpossibleEvidence, "evidence has probability 0");
  for (double& b : belief) b /= mass;
  QueryResult r;
  r.kind = QueryKind::kBelief;
  r.query_var = query_var;
  r.belief = std::move(belief);
  r.evidence_mass = mass;
  return r;
}

QueryResult oracle_mpe(const BeliefNetwork& net, const Evidence& evidence,
                       const Ordering& tie_order) {
  evidence.validate(net);
  JointTable joint(net);
  const auto& cards = joint.cardinalities();
  const auto& order = tie_order.sequence();
  std::vector<double> score(joint.size(), 0.0);
  std::vector<bool> valid(joint.size(), false);
  std::vector<int> x;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    joint.decode(i, x);
    const std::size_t t = tuple_index(x, order, cards);
    score[t] = joint.at(i);
    valid[t] = consistent(x, evidence);
  }
  const std::size_t best = first_near_max(score, valid);
  x.assign(cards.size(), 0);
  tuple_decode(best, order, cards, x);
  QueryResult r;
  r.kind = QueryKind::kMpe;
  r.value = score[best];
  for (std::size_t v = 0; v < x.size(); ++v) r.assignment.emplace_back(static_cast<VarId>(v), x[v]);
  r.impossible = !(score[best] > 0.0);
  return r;
}

QueryResult oracle_map(const BeliefNetwork& net, std::span<const VarId> hypothesis,
                       const Evidence& evidence, const Ordering& tie_order) {
  evidence.validate(net);
  JointTable joint(net);
  const auto& cards = joint.cardinalities();
  const auto hyp = ordered_subset(tie_order, hypothesis, net.size());
  std::size_t tuples = 1;
  for (VarId a : hyp) tuples *= static_cast<std::size_t>(cards[static_cast<std::size_t>(a)]);
  std::vector<double> score(tuples, 0.0);
  std::vector<bool> valid(tuples, false);
  std::vector<int> x;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    joint.decode(i, x);
    if (!consistent(x, evidence)) continue;
    const std::size_t t = tuple_index(x, hyp, cards);
    score[t] += joint.at(i);
    valid[t] = true;
  }
  QueryResult r;
  r.kind = QueryKind::kMap;
  std::size_t best = first_near_max(score, valid);
  if (best == static_cast<std::size_t>(-1)) {
    // Evidence contradicts itself on a hypothesis variable: nothing is consistent.
    best = 0;
  }
  x.assign(cards.size(), 0);
  tuple_decode(best, hyp, cards, x);
  r.value = valid[best] ? score[best] : 0.0;
  for (VarId a : hyp) r.assignment.emplace_back(a, x[static_cast<std::size_t>(a)]);
  std::sort(r.assignment.begin(), r.assignment.end());
  r.impossible = !(*r.value > 0.0);
  return r;
}

QueryResult oracle_meu(const InfluenceDiagram& id, const Evidence& evidence,
                       const Ordering& tie_order) {
  const BeliefNetwork& net = id.network;
  evidence.validate(net);
  JointTable joint(net);
  const auto& cards = joint.cardinalities();
  const auto dec = ordered_subset(tie_order, id.decisions, net.size());
  std::size_t tuples = 1;
  for (VarId dv : dec) tuples *= static_cast<std::size_t>(cards[static_cast<std::size_t>(dv)]);
  std::vector<double> mass(tuples, 0.0), weighted(tuples, 0.0);
  std::vector<int> x;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    joint.decode(i, x);
    if (!consistent(x, evidence)) continue;
    double u = 0.0;
    for (const auto& f : id.utilities) u += f.at(x);
    const std::size_t t = tuple_index(x, dec, cards);
    mass[t] += joint.at(i);
    weighted[t] += joint.at(i) * u;
  }
  std::vector<double> score(tuples, 0.0);
  std::vector<bool> valid(tuples, false);
  for (std::size_t t = 0; t < tuples; ++t)
    if (mass[t] > 0.0) {
      valid[t] = true;
      score[t] = weighted[t] / mass[t];
    }
  const std::size_t best = first_near_max(score, valid);
  if (best == static_cast<std::size_t>(-1))
    fail(ErrorCode::kImpossibleEvidence, "evidence has probability 0 under every policy");
  x.assign(cards.size(), 0);
  tuple_decode(best, dec, cards, x);
  QueryResult r;
  r.kind = QueryKind::kMeu;
  r.value = score[best];
  r.evidence_mass = mass[best];
  for (VarId dv : dec) r.assignment.emplace_back(dv, x[static_cast<std::size_t>(dv)]);
  std::sort(r.assignment.begin(), r.assignment.end());
  return r;
}

std::vector<std::vector<bool>> oracle_models(const CnfTheory& cnf) {
  if (cnf.num_props > 20)
    fail(ErrorCode::kTooLarge, "truth table over more than 20 propositions");
  const std::size_t n = static_cast<std::size_t>(cnf.num_props);
  std::vector<std::vector<bool>> out;
  std::vector<bool> model(n);
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    for (std::size_t v = 0; v < n; ++v) model[v] = (bits >> (n - 1 - v)) & 1U;
    if (satisfies(cnf, model)) out.push_back(model);
  }
  return out;
}

bool oracle_sat(const CnfTheory& cnf) { return !oracle_models(cnf).empty(); }

}  // namespace bucketforge
