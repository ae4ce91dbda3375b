#include "bucketforge/generate.hpp"

#include <algorithm>
#include <numeric>

#include "bucketforge/error.hpp"

namespace bucketforge {

namespace {

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::vector<VarId> shuffled(Rng& rng, std::size_t n) {
  std::vector<VarId> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

// Rows over the child (last scope position in `ordered`) drawn from (0.05, 1]
// and normalized.
DiscreteFactor random_cpt(Rng& rng, const BeliefNetwork& net, VarId child,
                          const std::vector<VarId>& parents) {
  std::vector<VarId> scope = parents;
  scope.push_back(child);
  std::vector<int> cards;
  std::size_t rows = 1;
  for (VarId p : parents) {
    cards.push_back(net.cardinality(p));
    rows *= static_cast<std::size_t>(net.cardinality(p));
  }
  const int c = net.cardinality(child);
  cards.push_back(c);
  std::uniform_real_distribution<double> cell(0.05, 1.0);
  std::vector<double> values;
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<double> row(static_cast<std::size_t>(c));
    double sum = 0.0;
    for (double& x : row) sum += (x = cell(rng));
    for (double x : row) values.push_back(x / sum);
  }
  return DiscreteFactor::from_ordered(scope, cards, values);
}

BeliefNetwork skeleton(Rng& rng, int n, int max_card) {
  if (n < 1) fail(ErrorCode::kUsage, "need at least one variable");
  if (max_card < 1) fail(ErrorCode::kUsage, "maximum cardinality must be positive");
  BeliefNetwork net;
  for (int i = 0; i < n; ++i)
    net.variables.push_back(Variable{i, std::to_string(i), uniform_int(rng, std::min(2, max_card), max_card)});
  net.parents.assign(static_cast<std::size_t>(n), {});
  net.cpts.assign(static_cast<std::size_t>(n), std::nullopt);
  return net;
}

void fill_dag(Rng& rng, BeliefNetwork& net, int max_parents, const std::vector<bool>& is_root) {
  auto topo = shuffled(rng, net.size());
  // Forced roots go first so that they can parent anything.
  std::stable_partition(topo.begin(), topo.end(),
                        [&](VarId v) { return is_root[static_cast<std::size_t>(v)]; });
  for (std::size_t i = 0; i < topo.size(); ++i) {
    const VarId child = topo[i];
    if (is_root[static_cast<std::size_t>(child)]) continue;
    std::vector<VarId> earlier(topo.begin(), topo.begin() + static_cast<std::ptrdiff_t>(i));
    std::shuffle(earlier.begin(), earlier.end(), rng);
    const int k = uniform_int(rng, 0, std::min<int>(max_parents, static_cast<int>(earlier.size())));
    std::vector<VarId> parents(earlier.begin(), earlier.begin() + k);
    std::sort(parents.begin(), parents.end());
    net.parents[static_cast<std::size_t>(child)] = parents;
    net.cpts[static_cast<std::size_t>(child)] = random_cpt(rng, net, child, parents);
  }
}

}  // namespace

BeliefNetwork random_network(Rng& rng, int n, int max_card, int max_parents) {
  BeliefNetwork net = skeleton(rng, n, max_card);
  fill_dag(rng, net, max_parents, std::vector<bool>(net.size(), false));
  return net;
}

InfluenceDiagram random_diagram(Rng& rng, int n, int max_card, int decisions, int utilities,
                                int max_parents) {
  if (decisions < 0 || decisions > n) fail(ErrorCode::kUsage, "bad decision count");
  InfluenceDiagram id;
  id.network = skeleton(rng, n, max_card);
  const auto pick = shuffled(rng, id.network.size());
  std::vector<bool> is_decision(id.network.size(), false);
  for (int i = 0; i < decisions; ++i) is_decision[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])] = true;
  fill_dag(rng, id.network, max_parents, is_decision);
  for (std::size_t v = 0; v < is_decision.size(); ++v)
    if (is_decision[v]) id.decisions.push_back(static_cast<VarId>(v));
  std::uniform_real_distribution<double> value(-5.0, 10.0);
  for (int j = 0; j < utilities; ++j) {
    auto vars = shuffled(rng, id.network.size());
    vars.resize(static_cast<std::size_t>(uniform_int(rng, 1, std::min(3, n))));
    std::sort(vars.begin(), vars.end());
    std::vector<int> cards;
    std::size_t size = 1;
    for (VarId v : vars) {
      cards.push_back(id.network.cardinality(v));
      size *= static_cast<std::size_t>(id.network.cardinality(v));
    }
    std::vector<double> values(size);
    for (double& x : values) x = value(rng);
    id.utilities.emplace_back(vars, cards, values);
  }
  return id;
}

BeliefNetwork random_tree(Rng& rng, int n, int max_card) {
  BeliefNetwork net = skeleton(rng, n, max_card);
  const auto topo = shuffled(rng, net.size());
  for (std::size_t i = 0; i < topo.size(); ++i) {
    const VarId child = topo[i];
    std::vector<VarId> parents;
    if (i > 0) parents.push_back(topo[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(i) - 1))]);
    net.parents[static_cast<std::size_t>(child)] = parents;
    net.cpts[static_cast<std::size_t>(child)] = random_cpt(rng, net, child, parents);
  }
  return net;
}

CnfTheory random_3cnf(Rng& rng, int props, int clauses) {
  if (props < 3) fail(ErrorCode::kUsage, "3-CNF needs at least 3 propositions");
  CnfTheory cnf;
  cnf.num_props = props;
  for (int c = 0; c < clauses; ++c) {
    auto vars = shuffled(rng, static_cast<std::size_t>(props));
    std::vector<int> lits;
    for (int k = 0; k < 3; ++k) lits.push_back((vars[static_cast<std::size_t>(k)] + 1) * (uniform_int(rng, 0, 1) ? 1 : -1));
    cnf.clauses.push_back(*canonical_clause(lits));
  }
  return cnf;
}

Evidence random_evidence(Rng& rng, const BeliefNetwork& net, double p) {
  Evidence e;
  std::bernoulli_distribution observe(p);
  for (std::size_t v = 0; v < net.size(); ++v)
    if (observe(rng)) e.assignments[static_cast<VarId>(v)] = uniform_int(rng, 0, net.cardinality(static_cast<VarId>(v)) - 1);
  return e;
}

Ordering random_ordering(Rng& rng, std::size_t n) { return Ordering(shuffled(rng, n)); }

Ordering random_ordering_with_prefix(Rng& rng, std::size_t n, std::span<const VarId> front) {
  std::vector<bool> in(n, false);
  std::vector<VarId> head(front.begin(), front.end()), tail;
  for (VarId v : front) in.at(static_cast<std::size_t>(v)) = true;
  for (std::size_t v = 0; v < n; ++v)
    if (!in[v]) tail.push_back(static_cast<VarId>(v));
  std::shuffle(head.begin(), head.end(), rng);
  std::shuffle(tail.begin(), tail.end(), rng);
  head.insert(head.end(), tail.begin(), tail.end());
  return Ordering(std::move(head));
}

}  // namespace bucketforge
