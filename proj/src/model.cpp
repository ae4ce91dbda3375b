#include "bucketforge/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bucketforge/error.hpp"

namespace bucketforge {

std::vector<int> BeliefNetwork::cardinalities() const {
  std::vector<int> out;
  out.reserve(variables.size());
  for (const auto& v : variables) out.push_back(v.cardinality);
  return out;
}

std::vector<std::vector<VarId>> BeliefNetwork::children() const {
  std::vector<std::vector<VarId>> out(variables.size());
  for (std::size_t v = 0; v < parents.size(); ++v)
    for (VarId p : parents[v]) out[static_cast<std::size_t>(p)].push_back(static_cast<VarId>(v));
  return out;
}

std::vector<DiscreteFactor> BeliefNetwork::probability_factors() const {
  std::vector<DiscreteFactor> out;
  for (const auto& cpt : cpts)
    if (cpt) out.push_back(*cpt);
  return out;
}

std::vector<VarId> BeliefNetwork::topological_order() const {
  const std::size_t n = variables.size();
  std::vector<int> indegree(n, 0);
  for (std::size_t v = 0; v < n; ++v) indegree[v] = static_cast<int>(parents[v].size());
  auto kids = children();
  std::vector<VarId> order;
  std::vector<VarId> ready;
  for (std::size_t v = n; v-- > 0;)
    if (indegree[v] == 0) ready.push_back(static_cast<VarId>(v));
  while (!ready.empty()) {
    VarId v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (VarId c : kids[static_cast<std::size_t>(v)])
      if (--indegree[static_cast<std::size_t>(c)] == 0) ready.push_back(c);
  }
  if (order.size() != n) {
    for (std::size_t v = 0; v < n; ++v)
      if (indegree[v] > 0)
        fail(ErrorCode::kModel, "cycle detected in parent relation through variable " +
                                    variables[v].name);
  }
  return order;
}

VarId BeliefNetwork::find(std::string_view token) const {
  for (const auto& v : variables)
    if (v.name == token) return v.id;
  int id = -1;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), id);
  if (ec == std::errc() && ptr == token.data() + token.size() && id >= 0 &&
      static_cast<std::size_t>(id) < variables.size())
    return id;
  return -1;
}

void BeliefNetwork::validate(double tolerance) const {
  const std::size_t n = variables.size();
  if (parents.size() != n || cpts.size() != n)
    fail(ErrorCode::kModel, "network tables are not sized to the variable count");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    if (variables[i].id != static_cast<VarId>(i))
      fail(ErrorCode::kModel, "variable ids must be dense 0..n-1");
    if (variables[i].cardinality < 1)
      fail(ErrorCode::kModel, "variable " + variables[i].name + " has cardinality < 1");
    names.push_back(variables[i].name);
  }
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end())
    fail(ErrorCode::kModel, "variable names must be unique");

  for (std::size_t i = 0; i < n; ++i) {
    for (VarId p : parents[i])
      if (p < 0 || static_cast<std::size_t>(p) >= n || p == static_cast<VarId>(i))
        fail(ErrorCode::kModel, "variable " + variables[i].name + " has an invalid parent");
    if (!cpts[i]) continue;
    std::vector<VarId> expected = parents[i];
    expected.push_back(static_cast<VarId>(i));
    std::sort(expected.begin(), expected.end());
    if (cpts[i]->scope() != expected)
      fail(ErrorCode::kModel, "CPT of " + variables[i].name + " is not over {X} u pa(X)");
    for (std::size_t k = 0; k < expected.size(); ++k)
      if (cpts[i]->cards()[k] != cardinality(expected[k]))
        fail(ErrorCode::kModel, "CPT of " + variables[i].name + " has wrong cardinalities");
    for (double v : cpts[i]->values())
      if (!std::isfinite(v) || v < 0.0)
        fail(ErrorCode::kModel, "CPT of " + variables[i].name + " has a negative or non-finite entry");
    auto sums = eliminate(*cpts[i], static_cast<VarId>(i), ElimOp::kSum).factor;
    for (double s : sums.values())
      if (std::abs(s - 1.0) > tolerance)
        fail(ErrorCode::kModel, "CPT of " + variables[i].name + " has a row summing to " +
                                    std::to_string(s));
  }
  topological_order();
}

bool InfluenceDiagram::is_decision(VarId v) const {
  return std::find(decisions.begin(), decisions.end(), v) != decisions.end();
}

void InfluenceDiagram::validate(double tolerance) const {
  network.validate(tolerance);
  const std::size_t n = network.size();
  std::vector<bool> seen(n, false);
  for (VarId d : decisions) {
    if (d < 0 || static_cast<std::size_t>(d) >= n)
      fail(ErrorCode::kModel, "decision id " + std::to_string(d) + " out of range");
    const auto du = static_cast<std::size_t>(d);
    if (seen[du]) fail(ErrorCode::kModel, "decision " + network.name(d) + " listed twice");
    seen[du] = true;
    if (!network.parents[du].empty())
      fail(ErrorCode::kModel, "decision variable " + network.name(d) + " has parents");
    if (network.cpts[du])
      fail(ErrorCode::kModel, "decision variable " + network.name(d) + " carries a CPT");
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!seen[v] && !network.cpts[v])
      fail(ErrorCode::kModel, "chance variable " + network.name(static_cast<VarId>(v)) +
                                  " has no CPT");
  for (const auto& u : utilities) {
    for (std::size_t k = 0; k < u.scope().size(); ++k) {
      VarId v = u.scope()[k];
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        fail(ErrorCode::kModel, "utility mentions unknown variable " + std::to_string(v));
      if (u.cards()[k] != network.cardinality(v))
        fail(ErrorCode::kModel, "utility has wrong cardinality for " + network.name(v));
    }
    for (double x : u.values())
      if (!std::isfinite(x)) fail(ErrorCode::kModel, "utility value is not finite");
  }
}

std::optional<int> Evidence::value(VarId v) const {
  auto it = assignments.find(v);
  if (it == assignments.end()) return std::nullopt;
  return it->second;
}

std::vector<VarId> Evidence::variables() const {
  std::vector<VarId> out;
  for (const auto& [v, _] : assignments) out.push_back(v);
  return out;
}

void Evidence::validate(const BeliefNetwork& net) const {
  for (const auto& [v, x] : assignments) {
    if (v < 0 || static_cast<std::size_t>(v) >= net.size())
      fail(ErrorCode::kModel, "evidence names unknown variable " + std::to_string(v));
    if (x < 0 || x >= net.cardinality(v))
      fail(ErrorCode::kModel, "evidence value " + std::to_string(x) + " out of range for " +
                                  net.name(v) + " (cardinality " +
                                  std::to_string(net.cardinality(v)) + ")");
  }
}

std::optional<Clause> canonical_clause(std::vector<int> literals) {
  std::sort(literals.begin(), literals.end(), [](int a, int b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
  });
  literals.erase(std::unique(literals.begin(), literals.end()), literals.end());
  for (std::size_t i = 1; i < literals.size(); ++i)
    if (literals[i] == -literals[i - 1]) return std::nullopt;
  return literals;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kUsage, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace bucketforge
