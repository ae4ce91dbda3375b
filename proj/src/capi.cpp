#include "bucketforge/bucketforge.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <set>
#include <sstream>

#include "bucketforge/engines.hpp"
#include "bucketforge/error.hpp"
#include "bucketforge/generate.hpp"
#include "bucketforge/oracle.hpp"
#include "bucketforge/report.hpp"
#include "bucketforge/resolution.hpp"

using namespace bucketforge;

struct bf_model {
  ParsedModel parsed;
};

struct bf_evidence {
  Evidence evidence;
};

struct bf_cnf {
  CnfTheory cnf;
};

struct bf_result {
  QueryResult result;
  std::optional<QueryResult> oracle;
  BeliefNetwork network;  // for variable names when rendering
  Ordering ordering;
  bool trace = false;
};

namespace {

thread_local std::string last_error;

bf_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUsage:
    case ErrorCode::kTooLarge: return BF_E_USAGE;
    case ErrorCode::kParse:
    case ErrorCode::kModel: return BF_E_MODEL;
    case ErrorCode::kImpossibleEvidence:
    case ErrorCode::kUnsatisfiable: return BF_E_INFEASIBLE;
    case ErrorCode::kInternal: return BF_E_INTERNAL;
  }
  return BF_E_INTERNAL;
}

template <typename Body>
bf_status guarded(Body&& body) {
  try {
    last_error.clear();
    body();
    return BF_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return BF_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return BF_E_INTERNAL;
  }
}

void require(bool condition, const char* message) {
  if (!condition) fail(ErrorCode::kUsage, message);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

OrderKind heuristic_of(bf_order_kind kind) {
  switch (kind) {
    case BF_ORDER_MIN_FILL: return OrderKind::kMinFill;
    case BF_ORDER_MIN_DEGREE: return OrderKind::kMinDegree;
    default: fail(ErrorCode::kUsage, "unknown ordering heuristic");
  }
}

Ordering choose_ordering(const GraphView& g, bf_order_kind kind, const int* order,
                         std::size_t order_len, std::span<const VarId> prefix) {
  if (kind == BF_ORDER_GIVEN) {
    require(order != nullptr || order_len == 0, "null ordering");
    std::vector<VarId> seq(order, order + order_len);
    require(seq.size() == g.size(), "ordering must list every variable exactly once");
    return Ordering(std::move(seq));
  }
  return constrained_order(g, prefix, {}, heuristic_of(kind));
}

std::vector<WidthLine> width_lines(const GraphView& g, bf_order_kind kind, const int* order,
                                   std::size_t order_len) {
  std::vector<WidthLine> lines;
  if (kind == BF_ORDER_GIVEN) {
    Ordering d = choose_ordering(g, kind, order, order_len, {});
    lines.push_back(WidthLine{"", d, induced_width(g, d)});
    return lines;
  }
  std::vector<OrderKind> kinds;
  if (kind == BF_ORDER_ALL_HEURISTICS) kinds = {OrderKind::kMinDegree, OrderKind::kMinFill};
  else kinds = {heuristic_of(kind)};
  for (OrderKind k : kinds) {
    Ordering d = order_heuristic(g, k);
    lines.push_back(WidthLine{to_string(k), d, induced_width(g, d)});
  }
  return lines;
}

}  // namespace

extern "C" {

const char* bf_version(void) { return "0.1.0"; }
const char* bf_last_error(void) { return last_error.c_str(); }
void bf_string_free(char* s) { std::free(s); }

bf_status bf_model_parse(const char* text, int lax, bf_model** out) {
  return guarded([&] {
    require(text && out, "null argument");
    ParseOptions options;
    options.lax = lax != 0;
    *out = new bf_model{parse_network(text, options)};
  });
}

bf_status bf_model_load(const char* path, int lax, bf_model** out) {
  return guarded([&] {
    require(path && out, "null argument");
    ParseOptions options;
    options.lax = lax != 0;
    std::string text = read_file(path);
    try {
      *out = new bf_model{parse_network(text, options)};
    } catch (const Error& e) {
      throw Error(e.code(), std::string(path) + ": " + e.what());
    }
  });
}

void bf_model_free(bf_model* m) { delete m; }

bf_model_kind bf_model_kind_of(const bf_model* m) {
  return m->parsed.kind == NetworkKind::kBayes ? BF_KIND_BAYES : BF_KIND_ID;
}

size_t bf_model_num_vars(const bf_model* m) { return m->parsed.network().size(); }
size_t bf_model_num_warnings(const bf_model* m) { return m->parsed.warnings.size(); }

const char* bf_model_warning(const bf_model* m, size_t i) {
  return i < m->parsed.warnings.size() ? m->parsed.warnings[i].c_str() : nullptr;
}

bf_status bf_model_set_names(bf_model* m, const char* names) {
  return guarded([&] {
    require(m && names, "null argument");
    std::vector<std::string> list;
    std::stringstream in(names);
    std::string item;
    while (std::getline(in, item, ',')) list.push_back(item);
    BeliefNetwork& net = m->parsed.network();
    if (list.size() != net.size())
      fail(ErrorCode::kUsage, "expected " + std::to_string(net.size()) + " names, got " +
                                  std::to_string(list.size()));
    std::set<std::string> seen;
    for (const auto& n : list) {
      if (n.empty() || n.find_first_of(" \t=") != std::string::npos)
        fail(ErrorCode::kUsage, "invalid variable name '" + n + "'");
      if (!seen.insert(n).second) fail(ErrorCode::kUsage, "duplicate variable name '" + n + "'");
    }
    for (std::size_t v = 0; v < list.size(); ++v) net.variables[v].name = list[v];
  });
}

int bf_model_find_var(const bf_model* m, const char* token) {
  return token ? m->parsed.network().find(token) : -1;
}

const char* bf_model_var_name(const bf_model* m, int var) {
  const auto& net = m->parsed.network();
  if (var < 0 || static_cast<std::size_t>(var) >= net.size()) return nullptr;
  return net.name(var).c_str();
}

bf_status bf_model_serialize(const bf_model* m, char** text) {
  return guarded([&] {
    require(m && text, "null argument");
    *text = copy_string(serialize_model(m->parsed));
  });
}

bf_status bf_evidence_parse(const bf_model* m, const char* text, bf_evidence** out) {
  return guarded([&] {
    require(m && text && out, "null argument");
    *out = new bf_evidence{parse_evidence(text, m->parsed.network())};
  });
}

bf_status bf_evidence_load(const bf_model* m, const char* path, bf_evidence** out) {
  return guarded([&] {
    require(m && path && out, "null argument");
    std::string text = read_file(path);
    try {
      *out = new bf_evidence{parse_evidence(text, m->parsed.network())};
    } catch (const Error& e) {
      throw Error(e.code(), std::string(path) + ": " + e.what());
    }
  });
}

void bf_evidence_free(bf_evidence* e) { delete e; }

bf_status bf_cnf_parse(const char* text, bf_cnf** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new bf_cnf{parse_cnf(text)};
  });
}

bf_status bf_cnf_load(const char* path, bf_cnf** out) {
  return guarded([&] {
    require(path && out, "null argument");
    std::string text = read_file(path);
    try {
      *out = new bf_cnf{parse_cnf(text)};
    } catch (const Error& e) {
      throw Error(e.code(), std::string(path) + ": " + e.what());
    }
  });
}

void bf_cnf_free(bf_cnf* c) { delete c; }
int bf_cnf_num_props(const bf_cnf* c) { return c->cnf.num_props; }

void bf_query_init(bf_query* q) {
  std::memset(q, 0, sizeof *q);
  q->kind = BF_QUERY_MPE;
  q->wbound = -1;
  q->order_kind = BF_ORDER_MIN_FILL;
  q->parallel = 1;
}

bf_status bf_run_query(const bf_model* m, const bf_evidence* evidence, const bf_query* q,
                       bf_result** out) {
  return guarded([&] {
    require(m && q && out, "null argument");
    require(q->vars != nullptr || q->num_vars == 0, "null variable list");
    const Evidence e = evidence ? evidence->evidence : Evidence{};
    const ParsedModel& parsed = m->parsed;
    const BeliefNetwork& net = parsed.network();
    std::vector<VarId> vars(q->vars, q->vars + q->num_vars);
    for (VarId v : vars)
      if (v < 0 || static_cast<std::size_t>(v) >= net.size())
        fail(ErrorCode::kUsage, "unknown variable id " + std::to_string(v));

    auto result = std::make_unique<bf_result>();
    result->network = net;
    result->trace = q->trace != 0;

    if (q->kind == BF_QUERY_MEU) {
      require(parsed.kind == NetworkKind::kInfluenceDiagram, "meu needs an ID model");
      const InfluenceDiagram& id = *parsed.diagram;
      result->ordering = choose_ordering(augmented_graph(id), q->order_kind, q->order,
                                         q->order_len, id.decisions);
      result->result = elim_meu(id, e, result->ordering);
      if (q->oracle) result->oracle = oracle_meu(id, e, result->ordering);
      *out = result.release();
      return;
    }

    require(parsed.kind == NetworkKind::kBayes, "this query needs a BAYES model");
    const GraphView moral = moral_graph(net);
    switch (q->kind) {
      case BF_QUERY_BEL: {
        require(vars.size() == 1, "bel takes exactly one query variable");
        result->ordering = choose_ordering(moral, q->order_kind, q->order, q->order_len, vars);
        result->result = elim_bel(net, vars[0], e, result->ordering);
        if (q->oracle) result->oracle = oracle_bel(net, vars[0], e);
        break;
      }
      case BF_QUERY_MPE: {
        result->ordering = choose_ordering(moral, q->order_kind, q->order, q->order_len, {});
        result->result = elim_max(net, e, result->ordering);
        if (q->oracle) result->oracle = oracle_mpe(net, e, result->ordering);
        break;
      }
      case BF_QUERY_MAP: {
        require(!vars.empty(), "map needs at least one hypothesis variable");
        result->ordering = choose_ordering(moral, q->order_kind, q->order, q->order_len, vars);
        result->result = elim_map(net, vars, e, result->ordering);
        if (q->oracle) result->oracle = oracle_map(net, vars, e, result->ordering);
        break;
      }
      case BF_QUERY_COND_MPE: {
        result->ordering = choose_ordering(moral, q->order_kind, q->order, q->order_len, {});
        std::vector<VarId> cutset = vars;
        if (cutset.empty()) {
          require(q->wbound >= 0, "cond-mpe needs a cutset or a width bound");
          cutset = cutset_heuristic(moral.without(e.variables()), q->wbound, result->ordering);
        }
        ConditioningOptions options;
        options.parallel = q->parallel == 0 ? 1 : q->parallel;
        result->result = elim_cond_max(net, cutset, e, result->ordering, options);
        if (q->oracle) result->oracle = oracle_mpe(net, e, result->ordering);
        break;
      }
      default: fail(ErrorCode::kUsage, "unknown query kind");
    }
    *out = result.release();
  });
}

int bf_result_has_value(const bf_result* r) { return r->result.value.has_value(); }
double bf_result_value(const bf_result* r) { return r->result.value.value_or(0.0); }
int bf_result_has_evidence_mass(const bf_result* r) { return r->result.evidence_mass.has_value(); }
double bf_result_evidence_mass(const bf_result* r) { return r->result.evidence_mass.value_or(0.0); }
int bf_result_impossible(const bf_result* r) { return r->result.impossible ? 1 : 0; }
int bf_result_max_scope(const bf_result* r) { return r->result.max_scope; }

size_t bf_result_belief(const bf_result* r, double* out, size_t cap) {
  const auto& b = r->result.belief;
  for (std::size_t i = 0; i < std::min(cap, b.size()); ++i) out[i] = b[i];
  return b.size();
}

size_t bf_result_assignment(const bf_result* r, int* vars, int* values, size_t cap) {
  const auto& a = r->result.assignment;
  for (std::size_t i = 0; i < std::min(cap, a.size()); ++i) {
    if (vars) vars[i] = a[i].first;
    if (values) values[i] = a[i].second;
  }
  return a.size();
}

bf_status bf_result_render(const bf_result* r, bf_format format, char** text) {
  return guarded([&] {
    require(r && text, "null argument");
    ReportOptions options;
    options.json = format == BF_FORMAT_JSON;
    options.trace = r->trace;
    *text = copy_string(render_query(r->result, r->network, r->ordering,
                                     r->oracle ? &*r->oracle : nullptr, options));
  });
}

void bf_result_free(bf_result* r) { delete r; }

bf_status bf_run_dr(const bf_cnf* c, bf_order_kind order_kind, const int* order,
                    size_t order_len, int show_extension, int oracle, bf_format format,
                    char** text) {
  bool satisfiable = true;
  bf_status status = guarded([&] {
    require(c && text, "null argument");
    const GraphView g = interaction_graph(c->cnf);
    Ordering d = choose_ordering(g, order_kind, order, order_len, {});
    DirectionalExtension ext = directional_resolution(c->cnf, d);
    auto model = generate_model(ext);
    satisfiable = ext.satisfiable;
    ReportOptions options;
    options.json = format == BF_FORMAT_JSON;
    options.trace = show_extension != 0;
    std::optional<OracleVerdict> verdict;
    if (oracle) {
      CnfTheory extension;
      extension.num_props = c->cnf.num_props;
      extension.clauses = ext.clauses();
      const auto models = oracle_models(c->cnf);
      verdict = OracleVerdict{!models.empty(), oracle_models(extension) == models};
    }
    *text = copy_string(render_resolution(ext, model, options, verdict));
  });
  if (status == BF_OK && !satisfiable) {
    last_error = "theory is unsatisfiable";
    return BF_E_INFEASIBLE;
  }
  return status;
}

bf_status bf_stats_model(const bf_model* m, const bf_evidence* evidence,
                         bf_order_kind order_kind, const int* order, size_t order_len,
                         bf_format format, char** text) {
  return guarded([&] {
    require(m && text, "null argument");
    const ParsedModel& parsed = m->parsed;
    const BeliefNetwork& net = parsed.network();
    GraphView g = parsed.kind == NetworkKind::kBayes ? moral_graph(net)
                                                     : augmented_graph(*parsed.diagram);
    if (evidence) g = g.without(evidence->evidence.variables());
    ReportOptions options;
    options.json = format == BF_FORMAT_JSON;
    *text = copy_string(render_widths(g, width_lines(g, order_kind, order, order_len),
                                      [&](VarId v) { return net.name(v); }, options));
  });
}

bf_status bf_stats_cnf(const bf_cnf* c, bf_order_kind order_kind, const int* order,
                       size_t order_len, bf_format format, char** text) {
  return guarded([&] {
    require(c && text, "null argument");
    const GraphView g = interaction_graph(c->cnf);
    ReportOptions options;
    options.json = format == BF_FORMAT_JSON;
    *text = copy_string(render_widths(g, width_lines(g, order_kind, order, order_len),
                                      [](VarId v) { return std::to_string(v + 1); }, options));
  });
}

bf_status bf_generate(bf_gen_kind kind, int size, int max_card, unsigned long long seed,
                      char** text) {
  return guarded([&] {
    require(text != nullptr, "null argument");
    require(size >= 1, "size must be positive");
    Rng rng(seed);
    switch (kind) {
      case BF_GEN_BAYES: *text = copy_string(serialize_network(random_network(rng, size, max_card))); break;
      case BF_GEN_ID:
        *text = copy_string(serialize_diagram(
            random_diagram(rng, size, max_card, std::max(1, size / 4), std::max(1, size / 3))));
        break;
      case BF_GEN_TREE: *text = copy_string(serialize_network(random_tree(rng, size, max_card))); break;
      case BF_GEN_CNF: *text = copy_string(serialize_cnf(random_3cnf(rng, size, 4 * size))); break;
      default: fail(ErrorCode::kUsage, "unknown generator kind");
    }
  });
}

}  // extern "C"
