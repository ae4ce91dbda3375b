#include "bucketforge/error.hpp"
#include "bucketforge/model.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bucketforge;
using namespace testing_support;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

}  // namespace

TEST_CASE("single node prior") {
  auto m = parse_network("BAYES\n1\n2\n1\n1 0\n2\n0.3 0.7\n");
  REQUIRE(m.bayes);
  CHECK(m.bayes->cpts[0]->values() == std::vector<double>{0.3, 0.7});
}

TEST_CASE("six-node network parents") {
  auto net = sixnode();
  CHECK(net.parents[G] == std::vector<VarId>{E});
  CHECK(net.parents[E] == std::vector<VarId>{B, C});
  CHECK(net.parents[D] == std::vector<VarId>{A, B});
  CHECK(net.parents[B] == std::vector<VarId>{A});
  CHECK(net.parents[C] == std::vector<VarId>{A});
  CHECK(net.parents[A].empty());
  CHECK(net.children()[A] == std::vector<VarId>{B, C, D});
}

TEST_CASE("unnormalized row: strict fails, lax warns") {
  const char* text = "BAYES\n2\n2 2\n2\n1 0\n2 0 1\n2\n0.5 0.5\n4\n0.3 0.7\n0.2 0.7\n";
  try {
    parse_network(text);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kModel);
    CHECK(std::string(e.what()).find("variable 1") != std::string::npos);
  }
  ParseOptions lax;
  lax.lax = true;
  auto m = parse_network(text, lax);
  CHECK(m.warnings.size() == 1);
  CHECK(m.bayes->cpts[1]->values()[3] == doctest::Approx(0.7 / 0.9));
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_network("BAYES\n2\n2 x\n");
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("cycles are rejected") {
  const char* text = "BAYES\n2\n2 2\n2\n2 1 0\n2 0 1\n4\n.5 .5 .5 .5\n4\n.5 .5 .5 .5\n";
  CHECK(code_of([&] { parse_network(text); }) == ErrorCode::kModel);
}

TEST_CASE("decision with parents is rejected") {
  // Decision 1 listed with a CPT over (0, 1).
  const char* text = "ID\n2\n2 2\n1 1\n1\n2 0 1\n4\n.5 .5 .5 .5\n0\n";
  CHECK(code_of([&] { parse_network(text); }) == ErrorCode::kModel);
}

TEST_CASE("round trip keeps structure and full precision") {
  auto net = sixnode();
  auto again = parse_network(serialize_network(net));
  for (std::size_t v = 0; v < net.size(); ++v) {
    CHECK(again.bayes->parents[v] == net.parents[v]);
    CHECK(again.bayes->cpts[v]->values() == net.cpts[v]->values());
  }
  const char* id_text = "ID\n3\n2 2 2\n1 0\n2\n2 0 1\n1 2\n4\n0.1 0.9 0.6 0.4\n2\n0.25 0.75\n1\n2 1 2\n4\n1 -2 3.5 0\n";
  auto id = parse_network(id_text);
  REQUIRE(id.diagram);
  auto id2 = parse_network(serialize_model(id));
  CHECK(id2.diagram->decisions == std::vector<VarId>{0});
  CHECK(id2.diagram->utilities[0].values() == id.diagram->utilities[0].values());
}

TEST_CASE("every CPT sums to one over its child") {
  auto net = sixnode();
  for (std::size_t v = 0; v < net.size(); ++v) {
    const auto& f = *net.cpts[v];
    const int card = net.cardinality(static_cast<VarId>(v));
    std::vector<double> ordered = f.values_in_order([&] {
      std::vector<VarId> o = net.parents[v];
      o.push_back(static_cast<VarId>(v));
      return o;
    }());
    for (std::size_t r = 0; r < ordered.size(); r += static_cast<std::size_t>(card)) {
      double s = 0;
      for (int k = 0; k < card; ++k) s += ordered[r + static_cast<std::size_t>(k)];
      CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("cnf parsing") {
  auto one = parse_cnf("p cnf 2 1\n1 2 0\n");
  CHECK(one.clauses == std::vector<Clause>{{1, 2}});
  auto units = parse_cnf("p cnf 1 2\n1 0\n-1 0\n");
  CHECK(units.clauses == std::vector<Clause>{{1}, {-1}});
  auto taut = parse_cnf("p cnf 1 1\n1 -1 0\n");
  CHECK(taut.clauses.empty());
  CHECK(taut.notes.size() == 1);
  CHECK(code_of([] { parse_cnf("p cnf 2 1\n3 0\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse_cnf("p dnf 2 1\n1 0\n"); }) == ErrorCode::kParse);
}

TEST_CASE("evidence parsing") {
  auto net = sixnode();
  auto e = parse_evidence("1 5 1", net);
  CHECK(e.assignments == std::map<VarId, int>{{G, 1}});
  CHECK(parse_evidence("0", net).empty());
  CHECK(parse_evidence("1 G 0", net).value(G) == 0);
  CHECK(code_of([&] { parse_evidence("1 5 4", net); }) == ErrorCode::kParse);
  CHECK(code_of([&] { parse_evidence("1 9 0", net); }) == ErrorCode::kParse);
  CHECK(code_of([&] { parse_evidence("2 5 0 5 1", net); }) == ErrorCode::kParse);
}
