#include "bucketforge/report.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace bucketforge {

using nlohmann::ordered_json;

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

// JSON numbers carry the same 12 digits as the text form.
ordered_json json_number(double x) {
  if (!std::isfinite(x)) return format_number(x);
  return std::stod(format_number(x));
}

std::string join_numbers(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ' ';
    out += format_number(xs[i]);
  }
  return out;
}

std::string assignment_text(const std::vector<std::pair<VarId, int>>& a, const BeliefNetwork& net) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ' ';
    out += net.name(a[i].first) + "=" + std::to_string(a[i].second);
  }
  return out;
}

ordered_json assignment_json(const std::vector<std::pair<VarId, int>>& a, const BeliefNetwork& net) {
  ordered_json out = ordered_json::object();
  for (const auto& [v, x] : a) out[net.name(v)] = x;
  return out;
}

std::string order_text(const Ordering& d, const NodeNamer& name) {
  std::string out;
  for (std::size_t p = 0; p < d.size(); ++p) {
    if (p) out += ' ';
    out += name(d.at(p));
  }
  return out;
}

ordered_json payload_json(const QueryResult& r, const BeliefNetwork& net) {
  ordered_json j = ordered_json::object();
  if (!r.belief.empty()) {
    ordered_json b = ordered_json::array();
    for (double x : r.belief) b.push_back(json_number(x));
    j["belief"] = b;
  }
  if (r.value) j["value"] = json_number(*r.value);
  if (!r.assignment.empty()) j["assignment"] = assignment_json(r.assignment, net);
  if (r.evidence_mass) j["evidence_mass"] = json_number(*r.evidence_mass);
  return j;
}

void payload_text(std::string& out, const std::string& prefix, const QueryResult& r,
                  const BeliefNetwork& net) {
  if (!r.belief.empty()) out += prefix + "belief=" + join_numbers(r.belief) + "\n";
  if (r.value) out += prefix + "value=" + format_number(*r.value) + "\n";
  if (!r.assignment.empty()) out += prefix + "assignment=" + assignment_text(r.assignment, net) + "\n";
  if (r.evidence_mass) out += prefix + "evidence_mass=" + format_number(*r.evidence_mass) + "\n";
}

}  // namespace

double max_abs_diff(const QueryResult& a, const QueryResult& b) {
  double diff = 0.0;
  for (std::size_t i = 0; i < std::min(a.belief.size(), b.belief.size()); ++i)
    diff = std::max(diff, std::abs(a.belief[i] - b.belief[i]));
  if (a.value && b.value) diff = std::max(diff, std::abs(*a.value - *b.value));
  if (a.evidence_mass && b.evidence_mass)
    diff = std::max(diff, std::abs(*a.evidence_mass - *b.evidence_mass));
  return diff;
}

std::string render_query(const QueryResult& r, const BeliefNetwork& net, const Ordering& d,
                         const QueryResult* oracle, const ReportOptions& options) {
  const NodeNamer name = [&](VarId v) { return net.name(v); };
  if (options.json) {
    ordered_json j = ordered_json::object();
    j["query"] = to_string(r.kind);
    if (r.query_var) j["target"] = net.name(*r.query_var);
    j["order"] = order_text(d, name);
    const ordered_json payload = payload_json(r, net);
    for (const auto& [k, v] : payload.items()) j[k] = v;
    if (r.impossible) j["impossible"] = true;
    if (r.kind == QueryKind::kCondMpe) {
      ordered_json c = ordered_json::array();
      for (VarId v : r.cutset) c.push_back(net.name(v));
      j["cutset"] = c;
      j["iterations"] = r.iterations;
    }
    j["max_scope"] = r.max_scope;
    j["max_unobserved_scope"] = r.max_unobserved_scope;
    if (!r.notes.empty()) j["notes"] = r.notes;
    if (options.trace) {
      ordered_json t = ordered_json::array();
      for (const auto& rec : r.trace) t.push_back(rec.to_string(&net));
      j["trace"] = t;
    }
    if (oracle) {
      j["oracle"] = payload_json(*oracle, net);
      j["oracle_assignment_match"] = oracle->assignment == r.assignment;
      j["max_abs_diff"] = json_number(max_abs_diff(r, *oracle));
    }
    return j.dump() + "\n";
  }

  std::string out = std::string("query=") + to_string(r.kind) + "\n";
  if (r.query_var) out += "target=" + net.name(*r.query_var) + "\n";
  out += "order=" + order_text(d, name) + "\n";
  payload_text(out, "", r, net);
  if (r.impossible) out += "impossible=1\n";
  if (r.kind == QueryKind::kCondMpe) {
    std::string c;
    for (std::size_t i = 0; i < r.cutset.size(); ++i) c += (i ? " " : "") + net.name(r.cutset[i]);
    out += "cutset=" + c + "\n";
    out += "iterations=" + std::to_string(r.iterations) + "\n";
  }
  out += "max_scope=" + std::to_string(r.max_scope) + "\n";
  out += "max_unobserved_scope=" + std::to_string(r.max_unobserved_scope) + "\n";
  for (const auto& note : r.notes) out += "note=" + note + "\n";
  if (options.trace)
    for (const auto& rec : r.trace) out += "trace " + rec.to_string(&net) + "\n";
  if (oracle) {
    payload_text(out, "oracle_", *oracle, net);
    out += std::string("oracle_assignment_match=") +
           (oracle->assignment == r.assignment ? "1" : "0") + "\n";
    out += "max_abs_diff=" + format_number(max_abs_diff(r, *oracle)) + "\n";
  }
  return out;
}

std::string render_resolution(const DirectionalExtension& ext,
                              const std::optional<std::vector<bool>>& model,
                              const ReportOptions& options,
                              const std::optional<OracleVerdict>& oracle) {
  const NodeNamer name = [](VarId v) { return std::to_string(v + 1); };
  std::vector<int> literals;
  if (model)
    for (std::size_t v = 0; v < model->size(); ++v)
      literals.push_back((*model)[v] ? static_cast<int>(v + 1) : -static_cast<int>(v + 1));
  if (options.json) {
    ordered_json j = ordered_json::object();
    j["satisfiable"] = ext.satisfiable;
    j["order"] = order_text(ext.ordering, name);
    j["resolvents"] = ext.resolvents;
    j["max_clause"] = ext.max_clause_size();
    if (model) j["model"] = literals;
    if (options.trace) j["extension"] = serialize_extension(ext);
    if (oracle) {
      j["oracle_satisfiable"] = oracle->satisfiable;
      j["oracle_same_models"] = oracle->same_models;
    }
    return j.dump() + "\n";
  }
  std::string out = ext.satisfiable ? "SAT\n" : "UNSAT\n";
  out += "order=" + order_text(ext.ordering, name) + "\n";
  out += "resolvents=" + std::to_string(ext.resolvents) + "\n";
  out += "max_clause=" + std::to_string(ext.max_clause_size()) + "\n";
  if (model) {
    std::string m;
    for (std::size_t i = 0; i < literals.size(); ++i) m += (i ? " " : "") + std::to_string(literals[i]);
    out += "model=" + m + "\n";
  }
  if (oracle) {
    out += std::string("oracle_satisfiable=") + (oracle->satisfiable ? "1" : "0") + "\n";
    out += std::string("oracle_same_models=") + (oracle->same_models ? "1" : "0") + "\n";
  }
  if (options.trace) out += serialize_extension(ext);
  return out;
}

std::string render_widths(const GraphView& g, const std::vector<WidthLine>& lines,
                          const NodeNamer& name, const ReportOptions& options) {
  if (options.json) {
    ordered_json j = ordered_json::object();
    j["nodes"] = g.size();
    j["edges"] = g.edge_count();
    ordered_json arr = ordered_json::array();
    for (const auto& l : lines) {
      ordered_json e = ordered_json::object();
      e["heuristic"] = l.label.empty() ? "given" : l.label;
      e["order"] = order_text(l.order, name);
      e["w"] = l.report.w;
      e["wstar"] = l.report.wstar;
      e["fill"] = l.report.fill_edges;
      arr.push_back(e);
    }
    j["orderings"] = arr;
    return j.dump() + "\n";
  }
  std::string out;
  if (lines.size() == 1 && lines[0].label.empty()) return lines[0].report.to_string() + "\n";
  out += "nodes=" + std::to_string(g.size()) + " edges=" + std::to_string(g.edge_count()) + "\n";
  for (const auto& l : lines)
    out += l.label + " " + l.report.to_string() + " order=" + order_text(l.order, name) + "\n";
  return out;
}

}  // namespace bucketforge
