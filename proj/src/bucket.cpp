#include "bucketforge/bucket.hpp"

#include <algorithm>

#include "bucketforge/error.hpp"

namespace bucketforge {

namespace {

std::string scope_string(const std::vector<VarId>& scope, const BeliefNetwork* names) {
  std::string out = "(";
  for (std::size_t i = 0; i < scope.size(); ++i) {
    if (i) out += ',';
    out += names ? names->name(scope[i]) : std::to_string(scope[i]);
  }
  return out + ")";
}

}  // namespace

std::string TraceRecord::to_string(const BeliefNetwork* names) const {
  std::string out = "bucket var=" + (names ? names->name(variable) : std::to_string(variable)) +
                    " pos=" + std::to_string(position + 1) + " op=" + op + " in=";
  for (std::size_t i = 0; i < input_scopes.size(); ++i) {
    if (i) out += ';';
    out += scope_string(input_scopes[i], names);
  }
  if (input_scopes.empty()) out += "-";
  out += " out=";
  for (std::size_t i = 0; i < output_scopes.size(); ++i) {
    if (i) out += ';';
    out += scope_string(output_scopes[i], names);
  }
  if (output_scopes.empty()) out += "-";
  out += " size=" + std::to_string(table_size);
  return out;
}

BucketSchedule::BucketSchedule(Ordering ordering, std::vector<int> cardinalities)
    : ordering_(std::move(ordering)), cards_(std::move(cardinalities)) {
  if (cards_.size() != ordering_.size())
    fail(ErrorCode::kUsage, "ordering covers " + std::to_string(ordering_.size()) +
                                " variables, model has " + std::to_string(cards_.size()));
  buckets_.resize(ordering_.size());
  for (std::size_t p = 0; p < buckets_.size(); ++p) buckets_[p].variable = ordering_.at(p);
  observed_.assign(cards_.size(), kUnassigned);
}

std::size_t BucketSchedule::highest_position(std::span<const VarId> scope) const {
  std::size_t best = 0;
  for (VarId v : scope) {
    if (v < 0 || static_cast<std::size_t>(v) >= ordering_.size())
      fail(ErrorCode::kUsage, "factor mentions unknown variable " + std::to_string(v));
    best = std::max(best, ordering_.position(v));
  }
  return best;
}

void BucketSchedule::place(DiscreteFactor f) {
  if (f.is_scalar()) {
    global_scalar_ *= f.scalar_value();
    return;
  }
  buckets_[highest_position(f.scope())].factors.push_back(std::move(f));
}

void BucketSchedule::place_utility(DiscreteFactor f) {
  if (f.is_scalar()) {
    global_utility_ += f.scalar_value();
    return;
  }
  buckets_[highest_position(f.scope())].utilities.push_back(std::move(f));
}

void BucketSchedule::observe(VarId v, int value) {
  if (v < 0 || static_cast<std::size_t>(v) >= cards_.size())
    fail(ErrorCode::kUsage, "evidence names unknown variable " + std::to_string(v));
  if (value < 0 || value >= cards_[static_cast<std::size_t>(v)])
    fail(ErrorCode::kUsage, "evidence value out of range for variable " + std::to_string(v));
  observed_[static_cast<std::size_t>(v)] = value;
  of(v).observed_value = value;
}

int BucketSchedule::max_recorded_scope(const std::vector<bool>& discount) const {
  int best = 0;
  for (const auto& rec : trace_) {
    // Slices of an observed bucket are restrictions, not eliminations.
    if (rec.op == "observe") continue;
    for (const auto& scope : rec.output_scopes) {
      int count = 0;
      for (VarId v : scope)
        if (discount.empty() || !discount[static_cast<std::size_t>(v)]) ++count;
      best = std::max(best, count);
    }
  }
  return best;
}

BucketSchedule partition(std::span<const DiscreteFactor> factors, const Ordering& d,
                         const Evidence& evidence, std::span<const int> cardinalities,
                         std::span<const DiscreteFactor> utilities) {
  BucketSchedule s(d, std::vector<int>(cardinalities.begin(), cardinalities.end()));
  for (const auto& f : factors) {
    for (std::size_t k = 0; k < f.scope().size(); ++k)
      if (f.scope()[k] < 0 || static_cast<std::size_t>(f.scope()[k]) >= cardinalities.size() ||
          f.cards()[k] != cardinalities[static_cast<std::size_t>(f.scope()[k])])
        fail(ErrorCode::kUsage, "factor over unknown variable " + std::to_string(f.scope()[k]));
    s.place(f);
  }
  for (const auto& u : utilities) s.place_utility(u);
  for (const auto& [v, x] : evidence.assignments) s.observe(v, x);
  return s;
}

void process_bucket(BucketSchedule& schedule, std::size_t position, ElimOp op) {
  Bucket& b = schedule.at_position(position);
  if (b.processed) fail(ErrorCode::kInternal, "bucket processed twice");
  b.processed = true;
  b.op = op;

  TraceRecord rec;
  rec.variable = b.variable;
  rec.position = position;
  for (const auto& f : b.factors) rec.input_scopes.push_back(f.scope());
  for (const auto& u : b.utilities) rec.input_scopes.push_back(u.scope());

  if (b.observed_value) {
    rec.op = "observe";
    for (const auto& f : b.factors) {
      DiscreteFactor slice = restrict(f, b.variable, *b.observed_value);
      rec.output_scopes.push_back(slice.scope());
      rec.table_size = std::max(rec.table_size, f.size());
      b.generated.push_back(slice);
      schedule.place(std::move(slice));
    }
    for (const auto& u : b.utilities) {
      DiscreteFactor slice = restrict(u, b.variable, *b.observed_value);
      rec.output_scopes.push_back(slice.scope());
      rec.table_size = std::max(rec.table_size, u.size());
      b.generated.push_back(slice);
      schedule.place_utility(std::move(slice));
    }
    schedule.trace().push_back(std::move(rec));
    return;
  }

  rec.op = to_string(op);
  // Constants that do not mention the bucket variable pass straight through.
  std::vector<DiscreteFactor> live;
  for (auto& f : b.factors) {
    if (f.contains(b.variable)) {
      live.push_back(f);
    } else {
      schedule.place(f);
    }
  }
  if (live.empty()) {
    if (op == ElimOp::kMax) b.arg = ArgTable{b.variable, {}, {}, {0}};
    schedule.trace().push_back(std::move(rec));
    return;
  }
  DiscreteFactor product = multiply(live);
  rec.table_size = product.size();
  Elimination e = eliminate(product, b.variable, op);
  rec.output_scopes.push_back(e.factor.scope());
  b.arg = std::move(e.arg);
  b.generated.push_back(e.factor);
  schedule.place(std::move(e.factor));
  schedule.trace().push_back(std::move(rec));
}

std::vector<int> forward_decode(const BucketSchedule& schedule, std::span<const VarId> over) {
  const std::size_t n = schedule.ordering().size();
  std::vector<bool> wanted(n, false);
  for (VarId v : over) wanted.at(static_cast<std::size_t>(v)) = true;
  std::vector<int> assignment = schedule.observed();
  for (std::size_t p = 0; p < n; ++p) {
    const Bucket& b = schedule.at_position(p);
    const auto v = static_cast<std::size_t>(b.variable);
    if (!wanted[v] || assignment[v] != kUnassigned) continue;
    if (!b.processed || b.op != ElimOp::kMax || !b.arg)
      fail(ErrorCode::kUsage, "no argmax table recorded for variable " +
                                  std::to_string(b.variable) + " (not eliminated by max)");
    assignment[v] = b.arg->choice(assignment);
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!wanted[v] && schedule.observed()[v] == kUnassigned) assignment[v] = kUnassigned;
  return assignment;
}

}  // namespace bucketforge
