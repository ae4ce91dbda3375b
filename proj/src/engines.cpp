#include "bucketforge/engines.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "bucketforge/error.hpp"

namespace bucketforge {

const char* to_string(QueryKind kind) {
  switch (kind) {
    case QueryKind::kBelief: return "bel";
    case QueryKind::kMpe: return "mpe";
    case QueryKind::kMap: return "map";
    case QueryKind::kMeu: return "meu";
    case QueryKind::kCondMpe: return "cond-mpe";
  }
  return "?";
}

namespace detail {

void check_inputs(const BeliefNetwork& net, const Evidence& evidence, const Ordering& d) {
  if (d.size() != net.size())
    fail(ErrorCode::kUsage, "ordering covers " + std::to_string(d.size()) +
                                " variables, network has " + std::to_string(net.size()));
  evidence.validate(net);
}

void fill_scope_stats(QueryResult& r, const BucketSchedule& s, const Evidence& evidence) {
  std::vector<bool> observed(s.cardinalities().size(), false);
  for (const auto& [v, _] : evidence.assignments) observed[static_cast<std::size_t>(v)] = true;
  r.max_scope = s.max_recorded_scope();
  r.max_unobserved_scope = s.max_recorded_scope(observed);
  r.trace = s.trace();
}

std::vector<std::pair<VarId, int>> to_pairs(const std::vector<int>& full) {
  std::vector<std::pair<VarId, int>> out;
  for (std::size_t v = 0; v < full.size(); ++v)
    if (full[v] != kUnassigned) out.emplace_back(static_cast<VarId>(v), full[v]);
  return out;
}

}  // namespace detail

using namespace detail;

QueryResult elim_bel(const BeliefNetwork& net, VarId query_var, const Evidence& evidence,
                     const Ordering& d) {
  check_inputs(net, evidence, d);
  if (query_var < 0 || static_cast<std::size_t>(query_var) >= net.size())
    fail(ErrorCode::kUsage, "unknown query variable " + std::to_string(query_var));
  if (d.at(0) != query_var)
    fail(ErrorCode::kUsage, "belief query needs " + net.name(query_var) +
                                " at position 1 of the ordering");

  auto factors = net.probability_factors();
  BucketSchedule s = partition(factors, d, evidence, net.cardinalities());
  for (std::size_t p = net.size(); p-- > 1;) process_bucket(s, p, ElimOp::kSum);

  QueryResult r;
  r.kind = QueryKind::kBelief;
  r.query_var = query_var;
  const int card = net.cardinality(query_var);
  Bucket& first = s.at_position(0);
  if (first.observed_value) {
    process_bucket(s, 0, ElimOp::kSum);
    const double mass = s.global_scalar();
    fill_scope_stats(r, s, evidence);
    if (!(mass > 0.0)) fail(ErrorCode::kImpossibleEvidence, "evidence has probability 0");
    r.belief.assign(static_cast<std::size_t>(card), 0.0);
    r.belief[static_cast<std::size_t>(*first.observed_value)] = 1.0;
    r.evidence_mass = mass;
    r.notes.push_back("query variable is observed");
    return r;
  }

  TraceRecord rec;
  rec.variable = query_var;
  rec.position = 0;
  rec.op = "bel";
  std::vector<DiscreteFactor> parts{DiscreteFactor::constant({query_var}, {card}, s.global_scalar())};
  for (const auto& f : first.factors) {
    rec.input_scopes.push_back(f.scope());
    parts.push_back(f);
  }
  first.processed = true;
  DiscreteFactor joint = multiply(parts);
  rec.table_size = joint.size();
  s.trace().push_back(rec);
  fill_scope_stats(r, s, evidence);
  Normalized nb = normalize(joint);
  r.belief = nb.factor.values();
  r.evidence_mass = nb.mass;
  return r;
}

QueryResult elim_max(const BeliefNetwork& net, const Evidence& evidence, const Ordering& d) {
  check_inputs(net, evidence, d);
  auto factors = net.probability_factors();
  BucketSchedule s = partition(factors, d, evidence, net.cardinalities());
  for (std::size_t p = net.size(); p-- > 0;) process_bucket(s, p, ElimOp::kMax);

  QueryResult r;
  r.kind = QueryKind::kMpe;
  r.value = s.global_scalar();
  std::vector<VarId> all(net.size());
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = static_cast<VarId>(v);
  r.assignment = to_pairs(forward_decode(s, all));
  if (!(*r.value > 0.0)) {
    r.impossible = true;
    r.notes.push_back("no completion of the evidence has positive probability");
  }
  fill_scope_stats(r, s, evidence);
  return r;
}

QueryResult elim_map(const BeliefNetwork& net, std::span<const VarId> hypothesis,
                     const Evidence& evidence, const Ordering& d) {
  check_inputs(net, evidence, d);
  std::vector<bool> is_hyp(net.size(), false);
  for (VarId a : hypothesis) {
    if (a < 0 || static_cast<std::size_t>(a) >= net.size())
      fail(ErrorCode::kUsage, "unknown hypothesis variable " + std::to_string(a));
    if (is_hyp[static_cast<std::size_t>(a)])
      fail(ErrorCode::kUsage, "hypothesis variable listed twice");
    is_hyp[static_cast<std::size_t>(a)] = true;
  }
  for (std::size_t p = 0; p < hypothesis.size(); ++p)
    if (!is_hyp[static_cast<std::size_t>(d.at(p))])
      fail(ErrorCode::kUsage,
           "MAP ordering must place every hypothesis variable before all other variables");

  auto factors = net.probability_factors();
  BucketSchedule s = partition(factors, d, evidence, net.cardinalities());
  for (std::size_t p = net.size(); p-- > 0;)
    process_bucket(s, p, is_hyp[static_cast<std::size_t>(d.at(p))] ? ElimOp::kMax : ElimOp::kSum);

  QueryResult r;
  r.kind = QueryKind::kMap;
  r.value = s.global_scalar();
  auto full = forward_decode(s, hypothesis);
  for (VarId a : hypothesis) {
    r.assignment.emplace_back(a, full[static_cast<std::size_t>(a)]);
    if (evidence.contains(a))
      r.notes.push_back("hypothesis variable " + net.name(a) + " is observed; evidence value used");
  }
  std::sort(r.assignment.begin(), r.assignment.end());
  if (!(*r.value > 0.0)) {
    r.impossible = true;
    r.notes.push_back("evidence has probability 0");
  }
  fill_scope_stats(r, s, evidence);
  return r;
}

namespace {

struct IterationOutcome {
  double value = -1.0;
  std::size_t index = 0;
  std::optional<QueryResult> result;
  int max_scope = 0;
  int max_unobserved = 0;
};

// Larger value wins; equal values go to the earlier enumeration index.
bool better(const IterationOutcome& a, const IterationOutcome& b) {
  if (!b.result) return a.result.has_value();
  if (!a.result) return false;
  if (a.value != b.value) return a.value > b.value;
  return a.index < b.index;
}

}  // namespace

QueryResult elim_cond_max(const BeliefNetwork& net, std::span<const VarId> cond,
                          const Evidence& evidence, const Ordering& d,
                          const ConditioningOptions& options) {
  check_inputs(net, evidence, d);
  std::vector<VarId> cutset(cond.begin(), cond.end());
  std::sort(cutset.begin(), cutset.end());
  if (std::adjacent_find(cutset.begin(), cutset.end()) != cutset.end())
    fail(ErrorCode::kUsage, "cutset lists a variable twice");
  for (VarId c : cutset)
    if (c < 0 || static_cast<std::size_t>(c) >= net.size())
      fail(ErrorCode::kUsage, "unknown cutset variable " + std::to_string(c));

  // Domain of each cutset variable: a single value when it is observed.
  std::vector<std::vector<int>> domains;
  std::size_t total = 1;
  for (VarId c : cutset) {
    std::vector<int> dom;
    if (auto x = evidence.value(c)) {
      dom.push_back(*x);
    } else {
      for (int x = 0; x < net.cardinality(c); ++x) dom.push_back(x);
    }
    total *= dom.size();
    domains.push_back(std::move(dom));
  }

  std::vector<bool> discount(net.size(), false);
  for (const auto& [v, _] : evidence.assignments) discount[static_cast<std::size_t>(v)] = true;
  for (VarId c : cutset) discount[static_cast<std::size_t>(c)] = true;

  std::vector<ConditioningStep> steps(options.keep_steps ? total : 0);

  auto run_one = [&](std::size_t index) {
    Evidence local = evidence;
    std::vector<int> values(cutset.size());
    std::size_t rest = index;
    for (std::size_t i = cutset.size(); i-- > 0;) {
      values[i] = domains[i][rest % domains[i].size()];
      rest /= domains[i].size();
      local.assignments[cutset[i]] = values[i];
    }
    auto factors = net.probability_factors();
    BucketSchedule s = partition(factors, d, local, net.cardinalities());
    for (std::size_t p = net.size(); p-- > 0;) process_bucket(s, p, ElimOp::kMax);
    IterationOutcome out;
    out.index = index;
    out.value = s.global_scalar();
    out.max_scope = s.max_recorded_scope();
    out.max_unobserved = s.max_recorded_scope(discount);
    if (options.keep_steps) steps[index] = ConditioningStep{values, out.value, out.max_unobserved};
    QueryResult r;
    r.kind = QueryKind::kCondMpe;
    r.value = out.value;
    std::vector<VarId> all(net.size());
    for (std::size_t v = 0; v < all.size(); ++v) all[v] = static_cast<VarId>(v);
    r.assignment = to_pairs(forward_decode(s, all));
    r.trace = s.trace();
    out.result = std::move(r);
    return out;
  };

  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(options.parallel, total));
  std::vector<IterationOutcome> best(workers);
  std::vector<int> max_scope(workers, 0), max_unobserved(workers, 0);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](std::size_t w) {
    try {
      for (std::size_t i = w; i < total; i += workers) {
        IterationOutcome o = run_one(i);
        max_scope[w] = std::max(max_scope[w], o.max_scope);
        max_unobserved[w] = std::max(max_unobserved[w], o.max_unobserved);
        if (better(o, best[w])) best[w] = std::move(o);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  IterationOutcome winner;
  for (auto& b : best)
    if (better(b, winner)) winner = std::move(b);

  QueryResult r = std::move(*winner.result);
  r.cutset = cutset;
  r.iterations = total;
  r.steps = std::move(steps);
  r.max_scope = *std::max_element(max_scope.begin(), max_scope.end());
  r.max_unobserved_scope = *std::max_element(max_unobserved.begin(), max_unobserved.end());
  if (!(*r.value > 0.0)) {
    r.impossible = true;
    r.notes.push_back("no completion of the evidence has positive probability");
  }
  return r;
}

}  // namespace bucketforge
