// Text formats: UAI-style network files (BAYES / ID), evidence files, and
// DIMACS CNF.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bucketforge/error.hpp"
#include "bucketforge/model.hpp"

namespace bucketforge {

namespace {

struct Token {
  std::string_view text;
  int line = 0;
  int column = 0;
};

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  Token next(const char* what) {
    skip_space();
    if (pos_ >= text_.size())
      fail(ErrorCode::kParse, "line " + std::to_string(line_) + ", column " +
                                  std::to_string(column_) + ": unexpected end of input, expected " +
                                  what);
    Token t{{}, line_, column_};
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
      ++column_;
    }
    t.text = text_.substr(start, pos_ - start);
    return t;
  }

  long long next_int(const char* what) {
    Token t = next(what);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size())
      error_at(t, std::string("expected integer ") + what + ", got '" + std::string(t.text) + "'");
    return v;
  }

  double next_real(const char* what) {
    Token t = next(what);
    double v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size() || !std::isfinite(v))
      error_at(t, std::string("expected real ") + what + ", got '" + std::string(t.text) + "'");
    return v;
  }

  [[noreturn]] static void error_at(const Token& t, const std::string& message,
                                    ErrorCode code = ErrorCode::kParse) {
    fail(code, "line " + std::to_string(t.line) + ", column " +
                                std::to_string(t.column) + ": " + message);
  }

  int line() const { return line_; }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

struct RawTable {
  std::vector<VarId> scope;  // file order; for CPTs the child is last
  Token at;
};

RawTable read_scope(Tokenizer& tok, std::size_t n) {
  RawTable raw;
  raw.at = tok.next("scope size");
  long long k = 0;
  auto [ptr, ec] = std::from_chars(raw.at.text.data(), raw.at.text.data() + raw.at.text.size(), k);
  if (ec != std::errc() || ptr != raw.at.text.data() + raw.at.text.size() || k < 0)
    Tokenizer::error_at(raw.at, "expected scope size");
  for (long long i = 0; i < k; ++i) {
    Token t = tok.next("variable id");
    long long v = -1;
    auto [p2, e2] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (e2 != std::errc() || p2 != t.text.data() + t.text.size())
      Tokenizer::error_at(t, "expected variable id");
    if (v < 0 || static_cast<std::size_t>(v) >= n)
      Tokenizer::error_at(t, "variable id " + std::to_string(v) + " out of range");
    raw.scope.push_back(static_cast<VarId>(v));
  }
  return raw;
}

std::vector<double> read_table(Tokenizer& tok, std::size_t expected) {
  Token t = tok.next("table entry count");
  long long count = -1;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), count);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size())
    Tokenizer::error_at(t, "expected table entry count");
  if (count < 0 || static_cast<std::size_t>(count) != expected)
    Tokenizer::error_at(t, "table declares " + std::to_string(count) + " entries, scope requires " +
                               std::to_string(expected));
  std::vector<double> values(expected);
  for (auto& v : values) v = tok.next_real("table entry");
  return values;
}

std::size_t table_size(const std::vector<VarId>& scope, const std::vector<int>& cards) {
  std::size_t s = 1;
  for (VarId v : scope) s *= static_cast<std::size_t>(cards[static_cast<std::size_t>(v)]);
  return s;
}

// Builds the CPT of the last scope variable, checking and optionally fixing
// row normalization. Values are row-major over the file's scope order.
DiscreteFactor make_cpt(const BeliefNetwork& net, const RawTable& raw,
                        std::vector<double> values, const ParseOptions& options,
                        std::vector<std::string>& warnings) {
  const VarId child = raw.scope.back();
  const auto card = static_cast<std::size_t>(net.cardinality(child));
  const std::size_t rows = values.size() / card;
  for (std::size_t r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (std::size_t x = 0; x < card; ++x) {
      double v = values[r * card + x];
      if (v < 0.0)
        Tokenizer::error_at(raw.at, "CPT of variable " + net.name(child) + " has a negative entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) <= options.tolerance) continue;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", sum);
    std::string msg = "CPT row " + std::to_string(r) + " of variable " + net.name(child) +
                      " sums to " + buf;
    if (!options.lax || !(sum > 0.0)) fail(ErrorCode::kModel, msg + " (not normalized)");
    for (std::size_t x = 0; x < card; ++x) values[r * card + x] /= sum;
    warnings.push_back(msg + "; renormalized");
  }
  std::vector<int> cards;
  for (VarId v : raw.scope) cards.push_back(net.cardinality(v));
  return DiscreteFactor::from_ordered(raw.scope, cards, values);
}

void check_distinct(const RawTable& raw) {
  std::vector<VarId> s = raw.scope;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    Tokenizer::error_at(raw.at, "scope lists a variable twice");
}

void append_real(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void append_table(std::string& out, const std::vector<double>& values) {
  out += std::to_string(values.size());
  out += '\n';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    append_real(out, values[i]);
  }
  out += '\n';
}

void append_header(std::string& out, const BeliefNetwork& net) {
  out += std::to_string(net.size());
  out += '\n';
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(net.variables[i].cardinality);
  }
  out += '\n';
}

void append_cpts(std::string& out, const BeliefNetwork& net) {
  std::vector<VarId> chance;
  for (std::size_t v = 0; v < net.size(); ++v)
    if (net.cpts[v]) chance.push_back(static_cast<VarId>(v));
  out += std::to_string(chance.size());
  out += '\n';
  for (VarId v : chance) {
    const auto& pa = net.parents[static_cast<std::size_t>(v)];
    out += std::to_string(pa.size() + 1);
    for (VarId p : pa) out += ' ' + std::to_string(p);
    out += ' ' + std::to_string(v) + '\n';
  }
  for (VarId v : chance) {
    std::vector<VarId> order = net.parents[static_cast<std::size_t>(v)];
    order.push_back(v);
    append_table(out, net.cpts[static_cast<std::size_t>(v)]->values_in_order(order));
  }
}

}  // namespace

ParsedModel parse_network(std::string_view text, const ParseOptions& options) {
  Tokenizer tok(text);
  Token kind_tok = tok.next("model kind");
  ParsedModel out;
  if (kind_tok.text == "BAYES") {
    out.kind = NetworkKind::kBayes;
  } else if (kind_tok.text == "ID") {
    out.kind = NetworkKind::kInfluenceDiagram;
  } else {
    Tokenizer::error_at(kind_tok, "expected BAYES or ID, got '" + std::string(kind_tok.text) + "'");
  }

  const long long n_raw = tok.next_int("variable count");
  if (n_raw < 0) fail(ErrorCode::kParse, "negative variable count");
  const auto n = static_cast<std::size_t>(n_raw);
  BeliefNetwork net;
  net.variables.resize(n);
  net.parents.resize(n);
  net.cpts.resize(n);
  std::vector<int> cards(n);
  for (std::size_t i = 0; i < n; ++i) {
    Token t = tok.next("cardinality");
    long long c = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), c);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size() || c < 1)
      Tokenizer::error_at(t, "cardinality must be an integer >= 1");
    cards[i] = static_cast<int>(c);
    net.variables[i] = Variable{static_cast<VarId>(i), std::to_string(i), cards[i]};
  }

  std::vector<VarId> decisions;
  if (out.kind == NetworkKind::kInfluenceDiagram) {
    RawTable d = read_scope(tok, n);
    check_distinct(d);
    decisions = d.scope;
  }
  auto is_decision = [&](VarId v) {
    return std::find(decisions.begin(), decisions.end(), v) != decisions.end();
  };

  Token count_tok = tok.next("CPT count");
  long long m = -1;
  {
    auto [ptr, ec] = std::from_chars(count_tok.text.data(),
                                     count_tok.text.data() + count_tok.text.size(), m);
    if (ec != std::errc() || ptr != count_tok.text.data() + count_tok.text.size())
      Tokenizer::error_at(count_tok, "expected CPT count");
  }
  const std::size_t expected_cpts = n - decisions.size();
  if (m < 0 || static_cast<std::size_t>(m) != expected_cpts)
    Tokenizer::error_at(count_tok, "expected " + std::to_string(expected_cpts) +
                                       " CPTs (one per chance variable), got " + std::to_string(m));

  std::vector<RawTable> scopes;
  for (long long i = 0; i < m; ++i) {
    RawTable raw = read_scope(tok, n);
    if (raw.scope.empty()) Tokenizer::error_at(raw.at, "CPT scope must name its child variable");
    check_distinct(raw);
    const VarId child = raw.scope.back();
    if (is_decision(child)) {
      if (raw.scope.size() > 1)
        Tokenizer::error_at(raw.at, "decision variable " + net.name(child) + " has parents",
                            ErrorCode::kModel);
      Tokenizer::error_at(raw.at, "decision variable " + net.name(child) + " carries a CPT");
    }
    for (const auto& prev : scopes)
      if (prev.scope.back() == child)
        Tokenizer::error_at(raw.at, "second CPT for variable " + net.name(child));
    scopes.push_back(std::move(raw));
  }
  for (const auto& raw : scopes) {
    auto values = read_table(tok, table_size(raw.scope, cards));
    const VarId child = raw.scope.back();
    net.parents[static_cast<std::size_t>(child)].assign(raw.scope.begin(), raw.scope.end() - 1);
    net.cpts[static_cast<std::size_t>(child)] =
        make_cpt(net, raw, std::move(values), options, out.warnings);
  }

  if (out.kind == NetworkKind::kBayes) {
    if (!tok.at_end()) {
      Token extra = tok.next("end of input");
      Tokenizer::error_at(extra, "unexpected trailing token '" + std::string(extra.text) + "'");
    }
    net.topological_order();
    net.validate(options.lax ? 1e-6 : options.tolerance);
    out.bayes = std::move(net);
    return out;
  }

  InfluenceDiagram id;
  const long long u = tok.next_int("utility count");
  if (u < 0) fail(ErrorCode::kParse, "negative utility count");
  for (long long j = 0; j < u; ++j) {
    RawTable raw = read_scope(tok, n);
    check_distinct(raw);
    auto values = read_table(tok, table_size(raw.scope, cards));
    std::vector<int> ucards;
    for (VarId v : raw.scope) ucards.push_back(cards[static_cast<std::size_t>(v)]);
    id.utilities.push_back(DiscreteFactor::from_ordered(raw.scope, ucards, values));
  }
  if (!tok.at_end()) {
    Token extra = tok.next("end of input");
    Tokenizer::error_at(extra, "unexpected trailing token '" + std::string(extra.text) + "'");
  }
  net.topological_order();
  id.network = std::move(net);
  id.decisions = std::move(decisions);
  id.validate(options.lax ? 1e-6 : options.tolerance);
  out.diagram = std::move(id);
  return out;
}

Evidence parse_evidence(std::string_view text, const BeliefNetwork& net) {
  Tokenizer tok(text);
  Evidence ev;
  if (tok.at_end()) return ev;
  const long long count = tok.next_int("evidence pair count");
  if (count < 0) fail(ErrorCode::kParse, "negative evidence count");
  for (long long i = 0; i < count; ++i) {
    Token vt = tok.next("evidence variable");
    Token xt = tok.next("evidence value");
    long long v = -1, x = -1;
    auto [p1, e1] = std::from_chars(vt.text.data(), vt.text.data() + vt.text.size(), v);
    if (e1 != std::errc() || p1 != vt.text.data() + vt.text.size()) {
      VarId named = net.find(vt.text);
      if (named < 0) Tokenizer::error_at(vt, "unknown variable '" + std::string(vt.text) + "'");
      v = named;
    }
    auto [p2, e2] = std::from_chars(xt.text.data(), xt.text.data() + xt.text.size(), x);
    if (e2 != std::errc() || p2 != xt.text.data() + xt.text.size())
      Tokenizer::error_at(xt, "expected integer evidence value");
    if (v < 0 || static_cast<std::size_t>(v) >= net.size())
      Tokenizer::error_at(vt, "unknown variable " + std::to_string(v));
    const auto var = static_cast<VarId>(v);
    if (x < 0 || x >= net.cardinality(var))
      Tokenizer::error_at(xt, "value " + std::to_string(x) + " out of range for variable " +
                                  net.name(var) + " (cardinality " +
                                  std::to_string(net.cardinality(var)) + ")");
    if (!ev.assignments.emplace(var, static_cast<int>(x)).second)
      Tokenizer::error_at(vt, "duplicate evidence for variable " + net.name(var));
  }
  if (!tok.at_end()) {
    Token extra = tok.next("end of input");
    Tokenizer::error_at(extra, "unexpected trailing token '" + std::string(extra.text) + "'");
  }
  return ev;
}

CnfTheory parse_cnf(std::string_view text) {
  CnfTheory cnf;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_header = false;
  long long declared_clauses = 0;
  long long seen_clauses = 0;
  std::vector<int> pending;
  auto finish_clause = [&](int at_line) {
    ++seen_clauses;
    auto c = canonical_clause(pending);
    if (!c) {
      cnf.notes.push_back("line " + std::to_string(at_line) + ": dropped tautological clause");
    } else {
      cnf.clauses.push_back(std::move(*c));
    }
    pending.clear();
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == 'c') continue;
    if (line[first] == '%') break;
    std::istringstream ls(line);
    if (line[first] == 'p') {
      std::string p, fmt;
      long long v = -1, c = -1;
      std::string rest;
      if (have_header || !(ls >> p >> fmt >> v >> c) || p != "p" || fmt != "cnf" || v < 0 ||
          c < 0 || (ls >> rest))
        fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": malformed header, expected 'p cnf V C'");
      have_header = true;
      cnf.num_props = static_cast<int>(v);
      declared_clauses = c;
      continue;
    }
    if (!have_header)
      fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": clause before 'p cnf' header");
    std::string tokstr;
    while (ls >> tokstr) {
      long long lit = 0;
      auto [ptr, ec] = std::from_chars(tokstr.data(), tokstr.data() + tokstr.size(), lit);
      if (ec != std::errc() || ptr != tokstr.data() + tokstr.size())
        fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": bad literal '" + tokstr + "'");
      if (lit == 0) {
        finish_clause(line_no);
        continue;
      }
      if (std::llabs(lit) > cnf.num_props)
        fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": literal " +
                                    std::to_string(lit) + " out of range (" +
                                    std::to_string(cnf.num_props) + " propositions)");
      pending.push_back(static_cast<int>(lit));
    }
  }
  if (!have_header) fail(ErrorCode::kParse, "missing 'p cnf V C' header");
  if (!pending.empty()) finish_clause(line_no);
  if (seen_clauses != declared_clauses)
    fail(ErrorCode::kParse, "malformed header: declares " + std::to_string(declared_clauses) +
                                " clauses, file has " + std::to_string(seen_clauses));
  return cnf;
}

std::string serialize_network(const BeliefNetwork& net) {
  std::string out = "BAYES\n";
  append_header(out, net);
  append_cpts(out, net);
  return out;
}

std::string serialize_diagram(const InfluenceDiagram& id) {
  std::string out = "ID\n";
  append_header(out, id.network);
  out += std::to_string(id.decisions.size());
  for (VarId d : id.decisions) out += ' ' + std::to_string(d);
  out += '\n';
  append_cpts(out, id.network);
  out += std::to_string(id.utilities.size());
  out += '\n';
  for (const auto& u : id.utilities) {
    out += std::to_string(u.scope().size());
    for (VarId v : u.scope()) out += ' ' + std::to_string(v);
    out += '\n';
    append_table(out, u.values());
  }
  return out;
}

std::string serialize_model(const ParsedModel& model) {
  return model.bayes ? serialize_network(*model.bayes) : serialize_diagram(*model.diagram);
}

std::string serialize_evidence(const Evidence& evidence) {
  std::string out = std::to_string(evidence.assignments.size());
  for (const auto& [v, x] : evidence.assignments)
    out += ' ' + std::to_string(v) + ' ' + std::to_string(x);
  out += '\n';
  return out;
}

std::string serialize_cnf(const CnfTheory& cnf) {
  std::string out = "p cnf " + std::to_string(cnf.num_props) + ' ' +
                    std::to_string(cnf.clauses.size()) + '\n';
  for (const auto& c : cnf.clauses) {
    for (int lit : c) out += std::to_string(lit) + ' ';
    out += "0\n";
  }
  return out;
}

}  // namespace bucketforge
