#include <algorithm>
#include <cmath>
#include <limits>

#include "bucketforge/engines.hpp"
#include "bucketforge/error.hpp"

namespace bucketforge {

namespace detail {
void check_inputs(const BeliefNetwork& net, const Evidence& evidence, const Ordering& d);
}

namespace {

// 0 where the probability component is positive, -inf where it vanishes.
DiscreteFactor infeasibility_penalty(const DiscreteFactor& lambda) {
  std::vector<double> values(lambda.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = lambda.values()[i] > 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return DiscreteFactor(lambda.scope(), lambda.cards(), std::move(values));
}

}  // namespace

QueryResult elim_meu(const InfluenceDiagram& id, const Evidence& evidence, const Ordering& d) {
  const BeliefNetwork& net = id.network;
  detail::check_inputs(net, evidence, d);
  const std::size_t n = net.size();
  const std::size_t k = id.decisions.size();
  for (std::size_t p = 0; p < k; ++p)
    if (!id.is_decision(d.at(p)))
      fail(ErrorCode::kUsage,
           "MEU ordering must place every decision variable before all chance variables");

  auto factors = net.probability_factors();
  BucketSchedule s = partition(factors, d, evidence, net.cardinalities(), id.utilities);

  // Chance buckets: each produces the probability message lambda_p and the
  // conditional expected utility theta_p (zero where lambda_p vanishes).
  for (std::size_t p = n; p-- > k;) {
    Bucket& b = s.at_position(p);
    if (b.observed_value) {
      process_bucket(s, p, ElimOp::kSum);
      continue;
    }
    b.processed = true;
    b.op = ElimOp::kSum;
    TraceRecord rec;
    rec.variable = b.variable;
    rec.position = p;
    rec.op = "meu";
    for (const auto& f : b.factors) rec.input_scopes.push_back(f.scope());
    for (const auto& u : b.utilities) rec.input_scopes.push_back(u.scope());

    const int card = net.cardinality(b.variable);
    DiscreteFactor joint = DiscreteFactor::constant({b.variable}, {card}, 1.0);
    if (!b.factors.empty()) joint = multiply(joint, multiply(b.factors));
    DiscreteFactor lambda = eliminate(joint, b.variable, ElimOp::kSum).factor;
    rec.table_size = joint.size();
    rec.output_scopes.push_back(lambda.scope());
    if (!b.utilities.empty()) {
      DiscreteFactor total = add(b.utilities);
      DiscreteFactor weighted = eliminate(multiply(joint, total), b.variable, ElimOp::kSum).factor;
      DiscreteFactor theta = divide_or_zero(weighted, lambda);
      rec.table_size = std::max(rec.table_size, multiply(joint, total).size());
      rec.output_scopes.push_back(theta.scope());
      b.generated.push_back(theta);
      s.place_utility(std::move(theta));
    }
    b.generated.push_back(lambda);
    s.place(std::move(lambda));
    s.trace().push_back(std::move(rec));
  }

  // Decision buckets: maximize the summed utilities, with decisions that
  // make the evidence impossible excluded through -inf penalties.
  std::vector<DiscreteFactor> decision_lambdas;
  for (std::size_t p = k; p-- > 0;) {
    Bucket& b = s.at_position(p);
    if (b.observed_value) {
      process_bucket(s, p, ElimOp::kMax);
      continue;
    }
    b.processed = true;
    b.op = ElimOp::kMax;
    TraceRecord rec;
    rec.variable = b.variable;
    rec.position = p;
    rec.op = "decide";
    std::vector<DiscreteFactor> terms{
        DiscreteFactor::constant({b.variable}, {net.cardinality(b.variable)}, 0.0)};
    for (const auto& f : b.factors) {
      rec.input_scopes.push_back(f.scope());
      terms.push_back(infeasibility_penalty(f));
      decision_lambdas.push_back(f);
    }
    for (const auto& u : b.utilities) {
      rec.input_scopes.push_back(u.scope());
      terms.push_back(u);
    }
    DiscreteFactor h = add(terms);
    rec.table_size = h.size();
    Elimination e = eliminate(h, b.variable, ElimOp::kMax);
    rec.output_scopes.push_back(e.factor.scope());
    b.arg = std::move(e.arg);
    b.generated.push_back(e.factor);
    s.place_utility(std::move(e.factor));
    s.trace().push_back(std::move(rec));
  }

  QueryResult r;
  r.kind = QueryKind::kMeu;
  std::vector<bool> observed(n, false);
  for (const auto& [v, _] : evidence.assignments) observed[static_cast<std::size_t>(v)] = true;
  r.max_scope = s.max_recorded_scope();
  r.max_unobserved_scope = s.max_recorded_scope(observed);
  r.trace = s.trace();

  const double value = s.global_utility();
  if (!(s.global_scalar() > 0.0) || !std::isfinite(value))
    fail(ErrorCode::kImpossibleEvidence, "evidence has probability 0 under every policy");

  auto full = forward_decode(s, id.decisions);
  double mass = s.global_scalar();
  for (const auto& f : decision_lambdas) mass *= f.at(full);
  r.value = value;
  r.evidence_mass = mass;
  for (VarId dv : id.decisions) r.assignment.emplace_back(dv, full[static_cast<std::size_t>(dv)]);
  std::sort(r.assignment.begin(), r.assignment.end());
  return r;
}

}  // namespace bucketforge
