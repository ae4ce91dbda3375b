// Command-line front end. Talks to the engine only through the C API.
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bucketforge/bucketforge.h"

namespace {

// Exit codes: 0 success, 1 usage, 2 model, 3 impossible evidence / UNSAT, 4 internal.
struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void usage_error(const std::string& message) { throw Failure{1, message}; }

void check(bf_status status) {
  if (status != BF_OK) throw Failure{static_cast<int>(status), bf_last_error()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) usage_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct Handle {
  bf_model* model = nullptr;
  bf_evidence* evidence = nullptr;
  bf_cnf* cnf = nullptr;
  bf_result* result = nullptr;
  char* text = nullptr;
  ~Handle() {
    bf_result_free(result);
    bf_evidence_free(evidence);
    bf_model_free(model);
    bf_cnf_free(cnf);
    bf_string_free(text);
  }
};

struct Options {
  std::string input;
  std::string evidence;
  std::string order = "min-fill";
  std::string names;
  std::string vars;  // --query / --hyp / --cutset
  int wbound = -1;
  unsigned parallel = 1;
  bool trace = false;
  bool oracle = false;
  bool json = false;
  bool lax = false;
};

struct OrderSpec {
  bf_order_kind kind = BF_ORDER_MIN_FILL;
  std::vector<int> ids;
};

using Resolver = std::function<int(const std::string&)>;

OrderSpec parse_order(const std::string& spec, const Resolver& resolve) {
  OrderSpec out;
  if (spec == "min-fill") return out;
  if (spec == "min-degree") {
    out.kind = BF_ORDER_MIN_DEGREE;
    return out;
  }
  out.kind = BF_ORDER_GIVEN;
  const std::string list = spec.rfind("given:", 0) == 0 ? spec.substr(6) : slurp(spec);
  for (const auto& tok : split_tokens(list)) out.ids.push_back(resolve(tok));
  return out;
}

Resolver model_resolver(const bf_model* m) {
  return [m](const std::string& tok) {
    int v = bf_model_find_var(m, tok.c_str());
    if (v < 0) usage_error("unknown variable '" + tok + "'");
    return v;
  };
}

Resolver cnf_resolver(const bf_cnf* c) {
  return [c](const std::string& tok) {
    char* end = nullptr;
    long k = std::strtol(tok.c_str(), &end, 10);
    if (*end != '\0' || k < 1 || k > bf_cnf_num_props(c))
      usage_error("unknown proposition '" + tok + "'");
    return static_cast<int>(k - 1);
  };
}

void load_model(Handle& h, const Options& o) {
  check(bf_model_load(o.input.c_str(), o.lax, &h.model));
  for (std::size_t i = 0; i < bf_model_num_warnings(h.model); ++i)
    std::cerr << "warning: " << bf_model_warning(h.model, i) << "\n";
  if (!o.names.empty()) check(bf_model_set_names(h.model, o.names.c_str()));
  if (!o.evidence.empty()) check(bf_evidence_load(h.model, o.evidence.c_str(), &h.evidence));
}

int run_query(bf_query_kind kind, const Options& o) {
  Handle h;
  load_model(h, o);
  std::vector<int> vars;
  for (const auto& tok : split_tokens(o.vars)) vars.push_back(model_resolver(h.model)(tok));
  OrderSpec order = parse_order(o.order, model_resolver(h.model));
  bf_query q;
  bf_query_init(&q);
  q.kind = kind;
  q.vars = vars.data();
  q.num_vars = vars.size();
  q.wbound = o.wbound;
  q.order_kind = order.kind;
  q.order = order.ids.data();
  q.order_len = order.ids.size();
  q.trace = o.trace;
  q.oracle = o.oracle;
  q.parallel = o.parallel;
  check(bf_run_query(h.model, h.evidence, &q, &h.result));
  check(bf_result_render(h.result, o.json ? BF_FORMAT_JSON : BF_FORMAT_TEXT, &h.text));
  std::fputs(h.text, stdout);
  return bf_result_impossible(h.result) ? 3 : 0;
}

int run_dr(const Options& o) {
  Handle h;
  check(bf_cnf_load(o.input.c_str(), &h.cnf));
  OrderSpec order = parse_order(o.order, cnf_resolver(h.cnf));
  bf_status status = bf_run_dr(h.cnf, order.kind, order.ids.data(), order.ids.size(), o.trace,
                               o.oracle, o.json ? BF_FORMAT_JSON : BF_FORMAT_TEXT, &h.text);
  if (h.text) std::fputs(h.text, stdout);
  if (status == BF_E_INFEASIBLE) return 3;
  check(status);
  return 0;
}

bool looks_like_network(const std::string& text) {
  std::istringstream in(text);
  std::string first;
  in >> first;
  return first == "BAYES" || first == "ID";
}

int run_stats(const Options& o, bool order_given) {
  Handle h;
  const bf_format format = o.json ? BF_FORMAT_JSON : BF_FORMAT_TEXT;
  if (looks_like_network(slurp(o.input))) {
    load_model(h, o);
    OrderSpec order = order_given ? parse_order(o.order, model_resolver(h.model))
                                  : OrderSpec{BF_ORDER_ALL_HEURISTICS, {}};
    check(bf_stats_model(h.model, h.evidence, order.kind, order.ids.data(), order.ids.size(),
                         format, &h.text));
  } else {
    if (!o.evidence.empty()) usage_error("--evidence applies to networks only");
    check(bf_cnf_load(o.input.c_str(), &h.cnf));
    OrderSpec order = order_given ? parse_order(o.order, cnf_resolver(h.cnf))
                                  : OrderSpec{BF_ORDER_ALL_HEURISTICS, {}};
    check(bf_stats_cnf(h.cnf, order.kind, order.ids.data(), order.ids.size(), format, &h.text));
  }
  std::fputs(h.text, stdout);
  return 0;
}

int run_gen(const std::string& kind, int size, int max_card, unsigned long long seed) {
  if (const char* env = std::getenv("BUCKETFORGE_SEED")) {
    char* end = nullptr;
    seed = std::strtoull(env, &end, 10);
    if (*end != '\0') usage_error("BUCKETFORGE_SEED must be an unsigned integer");
  }
  bf_gen_kind k;
  if (kind == "bayes") k = BF_GEN_BAYES;
  else if (kind == "id") k = BF_GEN_ID;
  else if (kind == "tree") k = BF_GEN_TREE;
  else if (kind == "cnf") k = BF_GEN_CNF;
  else usage_error("unknown generator '" + kind + "'");
  Handle h;
  check(bf_generate(k, size, max_card, seed, &h.text));
  std::fputs(h.text, stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bucket-elimination inference for belief networks, influence diagrams and CNF"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(bf_version()));

  Options o;
  auto common = [&](CLI::App* sub, bool with_evidence) {
    sub->add_option("input", o.input, "model file")->required();
    if (with_evidence) sub->add_option("--evidence", o.evidence, "evidence file");
    sub->add_option("--order", o.order, "ordering file, min-fill, min-degree or given:V1,V2,..");
    sub->add_flag("--trace", o.trace, "print the bucket trace");
    sub->add_flag("--json", o.json, "one JSON object instead of key=value lines");
  };
  auto network = [&](CLI::App* sub) {
    common(sub, true);
    sub->add_option("--names", o.names, "comma-separated variable names in id order");
    sub->add_flag("--lax", o.lax, "renormalize CPT rows instead of rejecting them");
    sub->add_flag("--oracle", o.oracle, "cross-check against brute-force enumeration");
  };

  auto* bel = app.add_subcommand("bel", "posterior belief of one variable");
  network(bel);
  bel->add_option("--query", o.vars, "query variable")->required();
  auto* mpe = app.add_subcommand("mpe", "most probable explanation");
  network(mpe);
  auto* map = app.add_subcommand("map", "maximum a-posteriori hypothesis");
  network(map);
  map->add_option("--hyp", o.vars, "hypothesis variables V1,V2,..")->required();
  auto* meu = app.add_subcommand("meu", "maximum expected utility of an influence diagram");
  network(meu);
  auto* cond = app.add_subcommand("cond-mpe", "MPE by cutset conditioning");
  network(cond);
  auto* cutset = cond->add_option("--cutset", o.vars, "conditioning variables V1,V2,..");
  auto* wbound = cond->add_option("--wbound", o.wbound, "pick a cutset leaving induced width <= k");
  cutset->excludes(wbound);
  cond->add_option("--parallel", o.parallel, "worker threads")->check(CLI::Range(1u, 256u));

  auto* dr = app.add_subcommand("dr", "directional resolution of a DIMACS theory");
  common(dr, false);
  dr->add_flag("--oracle", o.oracle, "compare with a truth table");

  auto* stats = app.add_subcommand("stats", "graph widths of a network or theory");
  common(stats, true);
  stats->add_option("--names", o.names, "comma-separated variable names in id order");
  stats->add_flag("--lax", o.lax, "renormalize CPT rows instead of rejecting them");

  auto* gen = app.add_subcommand("gen", "print a random instance");
  std::string gen_kind;
  int gen_size = 8, gen_card = 3;
  unsigned long long seed = 1;
  gen->add_option("kind", gen_kind, "bayes, id, tree or cnf")->required();
  gen->add_option("--size", gen_size, "variables or propositions");
  gen->add_option("--max-card", gen_card, "largest domain size");
  gen->add_option("--seed", seed, "random seed (BUCKETFORGE_SEED overrides)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*bel) return run_query(BF_QUERY_BEL, o);
    if (*mpe) return run_query(BF_QUERY_MPE, o);
    if (*map) return run_query(BF_QUERY_MAP, o);
    if (*meu) return run_query(BF_QUERY_MEU, o);
    if (*cond) {
      if (o.vars.empty() && o.wbound < 0) usage_error("cond-mpe needs --cutset or --wbound");
      return run_query(BF_QUERY_COND_MPE, o);
    }
    if (*dr) return run_dr(o);
    if (*stats) return run_stats(o, stats->count("--order") > 0);
    if (*gen) return run_gen(gen_kind, gen_size, gen_card, seed);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
  return 1;
}
