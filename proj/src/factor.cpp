#include "bucketforge/factor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "bucketforge/error.hpp"

namespace bucketforge {

namespace {

std::size_t product_of(std::span<const int> cards) {
  std::size_t n = 1;
  for (int c : cards) n *= static_cast<std::size_t>(c);
  return n;
}

std::vector<std::size_t> strides_of(std::span<const int> cards) {
  std::vector<std::size_t> strides(cards.size(), 1);
  for (std::size_t i = cards.size(); i-- > 1;)
    strides[i - 1] = strides[i] * static_cast<std::size_t>(cards[i]);
  return strides;
}

struct Scope {
  std::vector<VarId> vars;
  std::vector<int> cards;
};

Scope union_scope(std::span<const DiscreteFactor> factors) {
  Scope out;
  for (const auto& f : factors) {
    Scope merged;
    std::size_t i = 0, j = 0;
    const auto& fv = f.scope();
    const auto& fc = f.cards();
    while (i < out.vars.size() || j < fv.size()) {
      if (j == fv.size() || (i < out.vars.size() && out.vars[i] < fv[j])) {
        merged.vars.push_back(out.vars[i]);
        merged.cards.push_back(out.cards[i]);
        ++i;
      } else if (i == out.vars.size() || fv[j] < out.vars[i]) {
        merged.vars.push_back(fv[j]);
        merged.cards.push_back(fc[j]);
        ++j;
      } else {
        if (out.cards[i] != fc[j])
          fail(ErrorCode::kModel, "cardinality conflict for variable " +
                                      std::to_string(fv[j]) + ": " +
                                      std::to_string(out.cards[i]) + " vs " +
                                      std::to_string(fc[j]));
        merged.vars.push_back(fv[j]);
        merged.cards.push_back(fc[j]);
        ++i;
        ++j;
      }
    }
    out = std::move(merged);
  }
  return out;
}

// Walks every cell of `out` in row-major order while tracking the matching
// flat offset into each input factor.
template <typename Visit>
void for_each_cell(const Scope& out, std::span<const DiscreteFactor> inputs,
                   Visit&& visit) {
  const std::size_t k = out.vars.size();
  const std::size_t m = inputs.size();
  // stride[i * k + d]: stride of output dimension d inside input i (0 if absent)
  std::vector<std::size_t> stride(m * k, 0);
  for (std::size_t i = 0; i < m; ++i) {
    auto in_strides = strides_of(inputs[i].cards());
    const auto& sc = inputs[i].scope();
    for (std::size_t d = 0; d < k; ++d) {
      auto it = std::lower_bound(sc.begin(), sc.end(), out.vars[d]);
      if (it != sc.end() && *it == out.vars[d])
        stride[i * k + d] = in_strides[static_cast<std::size_t>(it - sc.begin())];
    }
  }
  std::vector<int> counter(k, 0);
  std::vector<std::size_t> offset(m, 0);
  const std::size_t total = product_of(out.cards);
  for (std::size_t cell = 0; cell < total; ++cell) {
    visit(cell, std::span<const std::size_t>(offset));
    for (std::size_t d = k; d-- > 0;) {
      if (++counter[d] < out.cards[d]) {
        for (std::size_t i = 0; i < m; ++i) offset[i] += stride[i * k + d];
        break;
      }
      counter[d] = 0;
      for (std::size_t i = 0; i < m; ++i)
        offset[i] -= stride[i * k + d] * static_cast<std::size_t>(out.cards[d] - 1);
    }
  }
}

}  // namespace

const char* to_string(ElimOp op) { return op == ElimOp::kSum ? "sum" : "max"; }

DiscreteFactor::DiscreteFactor() : values_{1.0} {}

DiscreteFactor::DiscreteFactor(std::vector<VarId> scope, std::vector<int> cards,
                               std::vector<double> values)
    : scope_(std::move(scope)), cards_(std::move(cards)), values_(std::move(values)) {
  if (scope_.size() != cards_.size())
    fail(ErrorCode::kInternal, "factor scope/cardinality length mismatch");
  for (std::size_t i = 0; i < scope_.size(); ++i) {
    if (cards_[i] < 1) fail(ErrorCode::kModel, "factor cardinality must be >= 1");
    if (i > 0 && scope_[i - 1] >= scope_[i])
      fail(ErrorCode::kInternal, "factor scope must be strictly ascending");
  }
  if (values_.size() != product_of(cards_))
    fail(ErrorCode::kModel, "factor has " + std::to_string(values_.size()) +
                                " values, expected " +
                                std::to_string(product_of(cards_)));
}

DiscreteFactor DiscreteFactor::scalar(double value) {
  return DiscreteFactor({}, {}, {value});
}

DiscreteFactor DiscreteFactor::constant(std::vector<VarId> scope,
                                        std::vector<int> cards, double value) {
  const std::size_t n = product_of(cards);
  return DiscreteFactor(std::move(scope), std::move(cards),
                        std::vector<double>(n, value));
}

DiscreteFactor DiscreteFactor::from_ordered(std::span<const VarId> scope,
                                            std::span<const int> cards,
                                            std::span<const double> values) {
  if (scope.size() != cards.size())
    fail(ErrorCode::kInternal, "factor scope/cardinality length mismatch");
  if (values.size() != product_of(cards))
    fail(ErrorCode::kModel, "table has " + std::to_string(values.size()) +
                                " entries, expected " + std::to_string(product_of(cards)));
  std::vector<std::size_t> perm(scope.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return scope[a] < scope[b]; });
  std::vector<VarId> sorted_scope;
  std::vector<int> sorted_cards;
  for (std::size_t p : perm) {
    if (!sorted_scope.empty() && sorted_scope.back() == scope[p])
      fail(ErrorCode::kModel, "duplicate variable " + std::to_string(scope[p]) +
                                  " in factor scope");
    sorted_scope.push_back(scope[p]);
    sorted_cards.push_back(cards[p]);
  }
  // Source strides indexed by sorted position.
  auto src_strides = strides_of(cards);
  std::vector<std::size_t> stride_by_sorted(scope.size());
  for (std::size_t s = 0; s < perm.size(); ++s) stride_by_sorted[s] = src_strides[perm[s]];

  std::vector<double> out(values.size());
  std::vector<int> counter(scope.size(), 0);
  std::size_t src = 0;
  for (std::size_t cell = 0; cell < out.size(); ++cell) {
    out[cell] = values[src];
    for (std::size_t d = counter.size(); d-- > 0;) {
      if (++counter[d] < sorted_cards[d]) {
        src += stride_by_sorted[d];
        break;
      }
      counter[d] = 0;
      src -= stride_by_sorted[d] * static_cast<std::size_t>(sorted_cards[d] - 1);
    }
  }
  return DiscreteFactor(std::move(sorted_scope), std::move(sorted_cards), std::move(out));
}

double DiscreteFactor::scalar_value() const {
  if (!is_scalar()) fail(ErrorCode::kInternal, "factor is not a scalar");
  return values_[0];
}

bool DiscreteFactor::contains(VarId var) const { return index_of(var) >= 0; }

int DiscreteFactor::index_of(VarId var) const {
  auto it = std::lower_bound(scope_.begin(), scope_.end(), var);
  if (it == scope_.end() || *it != var) return -1;
  return static_cast<int>(it - scope_.begin());
}

int DiscreteFactor::cardinality_of(VarId var) const {
  int i = index_of(var);
  if (i < 0) fail(ErrorCode::kUsage, "variable " + std::to_string(var) + " not in scope");
  return cards_[static_cast<std::size_t>(i)];
}

std::size_t DiscreteFactor::flat_index(std::span<const int> assignment) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < scope_.size(); ++i) {
    const auto var = static_cast<std::size_t>(scope_[i]);
    if (var >= assignment.size() || assignment[var] == kUnassigned)
      fail(ErrorCode::kUsage, "variable " + std::to_string(scope_[i]) + " is unassigned");
    int v = assignment[var];
    if (v < 0 || v >= cards_[i])
      fail(ErrorCode::kUsage, "value out of range for variable " + std::to_string(scope_[i]));
    idx = idx * static_cast<std::size_t>(cards_[i]) + static_cast<std::size_t>(v);
  }
  return idx;
}

double DiscreteFactor::at(std::span<const int> assignment) const {
  return values_[flat_index(assignment)];
}

std::vector<double> DiscreteFactor::values_in_order(std::span<const VarId> order) const {
  if (order.size() != scope_.size())
    fail(ErrorCode::kInternal, "values_in_order: order is not a permutation of the scope");
  auto strides = strides_of(cards_);
  std::vector<int> ocards;
  std::vector<std::size_t> ostride;
  for (VarId v : order) {
    int i = index_of(v);
    if (i < 0) fail(ErrorCode::kInternal, "values_in_order: variable not in scope");
    ocards.push_back(cards_[static_cast<std::size_t>(i)]);
    ostride.push_back(strides[static_cast<std::size_t>(i)]);
  }
  std::vector<double> out(values_.size());
  std::vector<int> counter(order.size(), 0);
  std::size_t src = 0;
  for (std::size_t cell = 0; cell < out.size(); ++cell) {
    out[cell] = values_[src];
    for (std::size_t d = counter.size(); d-- > 0;) {
      if (++counter[d] < ocards[d]) {
        src += ostride[d];
        break;
      }
      counter[d] = 0;
      src -= ostride[d] * static_cast<std::size_t>(ocards[d] - 1);
    }
  }
  return out;
}

int ArgTable::choice(std::span<const int> assignment) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < scope.size(); ++i) {
    const auto var = static_cast<std::size_t>(scope[i]);
    if (var >= assignment.size() || assignment[var] == kUnassigned)
      fail(ErrorCode::kInternal, "argmax lookup needs variable " +
                                     std::to_string(scope[i]) + " assigned first");
    idx = idx * static_cast<std::size_t>(cards[i]) + static_cast<std::size_t>(assignment[var]);
  }
  return choices[idx];
}

DiscreteFactor multiply(std::span<const DiscreteFactor> factors) {
  if (factors.empty()) return DiscreteFactor();
  Scope out = union_scope(factors);
  std::vector<double> values(product_of(out.cards));
  for_each_cell(out, factors, [&](std::size_t cell, std::span<const std::size_t> off) {
    double p = 1.0;
    for (std::size_t i = 0; i < factors.size(); ++i) p *= factors[i].values()[off[i]];
    values[cell] = p;
  });
  return DiscreteFactor(std::move(out.vars), std::move(out.cards), std::move(values));
}

DiscreteFactor multiply(const DiscreteFactor& a, const DiscreteFactor& b) {
  const DiscreteFactor pair[] = {a, b};
  return multiply(pair);
}

DiscreteFactor add(std::span<const DiscreteFactor> factors) {
  if (factors.empty()) return DiscreteFactor::scalar(0.0);
  Scope out = union_scope(factors);
  std::vector<double> values(product_of(out.cards));
  for_each_cell(out, factors, [&](std::size_t cell, std::span<const std::size_t> off) {
    double s = 0.0;
    for (std::size_t i = 0; i < factors.size(); ++i) s += factors[i].values()[off[i]];
    values[cell] = s;
  });
  return DiscreteFactor(std::move(out.vars), std::move(out.cards), std::move(values));
}

Elimination eliminate(const DiscreteFactor& f, VarId var, ElimOp op) {
  const int pos = f.index_of(var);
  if (pos < 0)
    fail(ErrorCode::kUsage, "cannot eliminate variable " + std::to_string(var) +
                                ": not in factor scope");
  const auto p = static_cast<std::size_t>(pos);
  std::vector<VarId> scope = f.scope();
  std::vector<int> cards = f.cards();
  const int card = cards[p];
  scope.erase(scope.begin() + pos);
  cards.erase(cards.begin() + pos);

  // Layout: [outer][card][inner], inner = product of cards after `var`.
  std::size_t inner = 1;
  for (std::size_t i = p + 1; i < f.cards().size(); ++i)
    inner *= static_cast<std::size_t>(f.cards()[i]);
  const std::size_t outer = f.size() / (inner * static_cast<std::size_t>(card));

  std::vector<double> values(outer * inner);
  std::vector<int> choices;
  if (op == ElimOp::kMax) choices.assign(values.size(), 0);
  const auto& src = f.values();
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base = o * inner * static_cast<std::size_t>(card);
    for (std::size_t in = 0; in < inner; ++in) {
      const std::size_t cell = o * inner + in;
      if (op == ElimOp::kSum) {
        double s = 0.0;
        for (int x = 0; x < card; ++x) s += src[base + static_cast<std::size_t>(x) * inner + in];
        values[cell] = s;
      } else {
        double best = src[base + in];
        for (int x = 1; x < card; ++x)
          best = std::max(best, src[base + static_cast<std::size_t>(x) * inner + in]);
        // Near-ties (relative 1e-12) go to the lowest value index.
        const double floor = std::isfinite(best) ? best - kTieTolerance * std::abs(best) : best;
        int arg = 0;
        while (src[base + static_cast<std::size_t>(arg) * inner + in] < floor) ++arg;
        values[cell] = best;
        choices[cell] = arg;
      }
    }
  }
  Elimination out{DiscreteFactor(scope, cards, std::move(values)), std::nullopt};
  if (op == ElimOp::kMax)
    out.arg = ArgTable{var, std::move(scope), std::move(cards), std::move(choices)};
  return out;
}

DiscreteFactor restrict(const DiscreteFactor& f, VarId var, int value) {
  const int pos = f.index_of(var);
  if (pos < 0)
    fail(ErrorCode::kUsage, "cannot restrict variable " + std::to_string(var) +
                                ": not in factor scope");
  const auto p = static_cast<std::size_t>(pos);
  const int card = f.cards()[p];
  if (value < 0 || value >= card)
    fail(ErrorCode::kUsage, "value " + std::to_string(value) + " out of range for variable " +
                                std::to_string(var) + " (cardinality " +
                                std::to_string(card) + ")");
  std::vector<VarId> scope = f.scope();
  std::vector<int> cards = f.cards();
  scope.erase(scope.begin() + pos);
  cards.erase(cards.begin() + pos);
  std::size_t inner = 1;
  for (std::size_t i = p + 1; i < f.cards().size(); ++i)
    inner *= static_cast<std::size_t>(f.cards()[i]);
  const std::size_t outer = f.size() / (inner * static_cast<std::size_t>(card));
  std::vector<double> values;
  values.reserve(outer * inner);
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base =
        (o * static_cast<std::size_t>(card) + static_cast<std::size_t>(value)) * inner;
    values.insert(values.end(), f.values().begin() + static_cast<std::ptrdiff_t>(base),
                  f.values().begin() + static_cast<std::ptrdiff_t>(base + inner));
  }
  return DiscreteFactor(std::move(scope), std::move(cards), std::move(values));
}

Normalized normalize(const DiscreteFactor& f) {
  double mass = 0.0;
  for (double v : f.values()) {
    if (v < 0.0) fail(ErrorCode::kUsage, "cannot normalize a factor with negative entries");
    mass += v;
  }
  if (!(mass > 0.0)) fail(ErrorCode::kImpossibleEvidence, "zero mass: evidence has probability 0");
  std::vector<double> values = f.values();
  for (double& v : values) v /= mass;
  return {DiscreteFactor(f.scope(), f.cards(), std::move(values)), mass};
}

DiscreteFactor divide_or_zero(const DiscreteFactor& num, const DiscreteFactor& den) {
  const DiscreteFactor pair[] = {num, den};
  Scope out = union_scope(pair);
  std::vector<double> values(product_of(out.cards));
  for_each_cell(out, pair, [&](std::size_t cell, std::span<const std::size_t> off) {
    const double d = den.values()[off[1]];
    values[cell] = d == 0.0 ? 0.0 : num.values()[off[0]] / d;
  });
  return DiscreteFactor(std::move(out.vars), std::move(out.cards), std::move(values));
}

std::string debug_string(const DiscreteFactor& f) {
  std::ostringstream os;
  os << "scope";
  for (std::size_t i = 0; i < f.scope().size(); ++i)
    os << ' ' << f.scope()[i] << ':' << f.cards()[i];
  os << '\n' << "values";
  char buf[40];
  for (double v : f.values()) {
    std::snprintf(buf, sizeof buf, " %.17g", v);
    os << buf;
  }
  os << '\n';
  return os.str();
}

}  // namespace bucketforge
