#include "bucketforge/resolution.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "bucketforge/error.hpp"

namespace bucketforge {

namespace {

VarId node_of(int literal) { return std::abs(literal) - 1; }

std::size_t bucket_of(const Clause& c, const Ordering& d) {
  std::size_t best = 0;
  for (int lit : c) best = std::max(best, d.position(node_of(lit)));
  return best;
}

// Resolvent of a (containing +q) and b (containing -q); nullopt if tautological.
std::optional<Clause> resolve(const Clause& a, const Clause& b, int q) {
  std::vector<int> lits;
  for (int l : a)
    if (l != q) lits.push_back(l);
  for (int l : b)
    if (l != -q) lits.push_back(l);
  return canonical_clause(std::move(lits));
}

}  // namespace

std::vector<Clause> DirectionalExtension::clauses() const {
  std::vector<Clause> out;
  for (const auto& b : buckets) out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::size_t DirectionalExtension::max_clause_size() const {
  std::size_t best = 0;
  for (const auto& b : buckets)
    for (const auto& c : b) best = std::max(best, c.size());
  return best;
}

DirectionalExtension directional_resolution(const CnfTheory& cnf, const Ordering& d) {
  if (d.size() != static_cast<std::size_t>(cnf.num_props))
    fail(ErrorCode::kUsage, "ordering covers " + std::to_string(d.size()) +
                                " propositions, theory has " + std::to_string(cnf.num_props));
  DirectionalExtension ext;
  ext.num_props = cnf.num_props;
  ext.ordering = d;
  const std::size_t n = d.size();
  std::vector<std::set<Clause>> buckets(n);
  auto unsat = [&] {
    ext.satisfiable = false;
    ext.buckets.assign(n, {});
    return ext;
  };

  for (const auto& raw : cnf.clauses) {
    auto c = canonical_clause(raw);
    if (!c) continue;
    if (c->empty()) return unsat();
    buckets[bucket_of(*c, d)].insert(*c);
  }

  for (std::size_t p = n; p-- > 0;) {
    const int q = d.at(p) + 1;
    std::vector<Clause> pos, neg;
    bool unit_pos = false, unit_neg = false;
    for (const auto& c : buckets[p]) {
      const bool positive = std::find(c.begin(), c.end(), q) != c.end();
      (positive ? pos : neg).push_back(c);
      if (c.size() == 1) (positive ? unit_pos : unit_neg) = true;
    }
    std::vector<Clause> produced;
    auto emit = [&](const Clause& a, const Clause& b) {
      if (auto r = resolve(a, b, q)) produced.push_back(std::move(*r));
    };
    if (unit_pos || unit_neg) {
      if (unit_pos && unit_neg) return unsat();
      // Only unit resolution: the unit literal against every opposing clause.
      const Clause unit{unit_pos ? q : -q};
      for (const auto& c : unit_pos ? neg : pos) {
        if (unit_pos) emit(unit, c);
        else emit(c, unit);
      }
    } else {
      for (const auto& a : pos)
        for (const auto& b : neg) emit(a, b);
    }
    for (auto& r : produced) {
      ++ext.resolvents;
      if (r.empty()) return unsat();
      buckets[bucket_of(r, d)].insert(std::move(r));
    }
  }

  ext.buckets.resize(n);
  for (std::size_t p = 0; p < n; ++p) ext.buckets[p].assign(buckets[p].begin(), buckets[p].end());
  return ext;
}

namespace {

bool clause_true(const Clause& c, const std::vector<bool>& model) {
  for (int lit : c)
    if (model.at(static_cast<std::size_t>(node_of(lit))) == (lit > 0)) return true;
  return false;
}

}  // namespace

bool satisfies(const std::vector<Clause>& clauses, const std::vector<bool>& model) {
  return std::all_of(clauses.begin(), clauses.end(),
                     [&](const Clause& c) { return clause_true(c, model); });
}

bool satisfies(const CnfTheory& cnf, const std::vector<bool>& model) {
  return satisfies(cnf.clauses, model);
}

std::optional<std::vector<bool>> generate_model(const DirectionalExtension& ext) {
  if (!ext.satisfiable) return std::nullopt;
  const std::size_t n = ext.ordering.size();
  std::vector<bool> model(n, false);
  for (std::size_t p = 0; p < n; ++p) {
    const auto v = static_cast<std::size_t>(ext.ordering.at(p));
    bool placed = false;
    for (bool value : {false, true}) {
      model[v] = value;
      if (satisfies(ext.buckets[p], model)) {
        placed = true;
        break;
      }
    }
    if (!placed)
      fail(ErrorCode::kInternal, "dead end at proposition " + std::to_string(v + 1) +
                                     ": no value satisfies its bucket");
  }
  return model;
}

std::string serialize_extension(const DirectionalExtension& ext) {
  std::string out = "c ordering";
  for (VarId v : ext.ordering.sequence()) out += " " + std::to_string(v + 1);
  out += "\n";
  CnfTheory cnf;
  cnf.num_props = ext.num_props;
  cnf.clauses = ext.clauses();
  return out + serialize_cnf(cnf);
}

}  // namespace bucketforge
