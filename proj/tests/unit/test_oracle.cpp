#include <numeric>

#include "bucketforge/engines.hpp"
#include "bucketforge/error.hpp"
#include "bucketforge/generate.hpp"
#include "bucketforge/oracle.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bucketforge;
using namespace testing_support;

TEST_CASE("oracle beliefs sum to one") {
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    auto net = random_network(rng, 6, 3);
    auto r = oracle_bel(net, 2, {});
    CHECK(std::accumulate(r.belief.begin(), r.belief.end(), 0.0) == doctest::Approx(1.0));
  }
}

TEST_CASE("mpe is dominated by map on the same hypothesis") {
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    auto net = random_network(rng, 6, 3);
    auto e = random_evidence(rng, net, 0.2);
    const std::vector<VarId> hyp{0, 3};
    auto d = Ordering::identity(6);
    const double mpe = *oracle_mpe(net, e, d).value;
    const double map = *oracle_map(net, hyp, e, d).value;
    CHECK(mpe <= map + 1e-15);
    CHECK(map <= 1.0 + 1e-12);
  }
}

TEST_CASE("oracle and engines agree on the six-node network") {
  auto net = sixnode();
  Evidence ev;
  ev.assignments[G] = 1;
  Ordering d({A, C, B, E, D, G});
  auto eb = elim_bel(net, A, ev, d);
  auto ob = oracle_bel(net, A, ev);
  for (int k = 0; k < 2; ++k) CHECK(eb.belief[static_cast<std::size_t>(k)] == doctest::Approx(ob.belief[static_cast<std::size_t>(k)]).epsilon(1e-12));
  CHECK(*eb.evidence_mass == doctest::Approx(*ob.evidence_mass).epsilon(1e-12));

  auto em = elim_max(net, ev, d);
  auto om = oracle_mpe(net, ev, d);
  CHECK(*em.value == doctest::Approx(*om.value).epsilon(1e-12));
  CHECK(em.assignment == om.assignment);

  const std::vector<VarId> hyp{A, C};
  auto ea = elim_map(net, hyp, ev, d);
  auto oa = oracle_map(net, hyp, ev, d);
  CHECK(*ea.value == doctest::Approx(*oa.value).epsilon(1e-12));
  CHECK(ea.assignment == oa.assignment);
}

TEST_CASE("ties resolve to the first tuple in ordering order") {
  // Two independent uniform variables: every tuple ties.
  auto net = *parse_network("BAYES\n2\n2 2\n2\n1 0\n1 1\n2\n0.5 0.5\n2\n0.5 0.5\n").bayes;
  for (const auto& d : {Ordering({0, 1}), Ordering({1, 0})}) {
    auto o = oracle_mpe(net, {}, d);
    auto e = elim_max(net, {}, d);
    CHECK(o.assignment == e.assignment);
    CHECK(o.assignment == std::vector<std::pair<VarId, int>>{{0, 0}, {1, 0}});
  }
}

TEST_CASE("enumeration guard") {
  BeliefNetwork big;
  for (int v = 0; v < 21; ++v) {
    big.variables.push_back(Variable{v, std::to_string(v), 2});
    big.parents.emplace_back();
    big.cpts.emplace_back(DiscreteFactor({v}, {2}, {0.5, 0.5}));
  }
  try {
    oracle_bel(big, 0, {});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTooLarge);
  }
}

TEST_CASE("truth tables") {
  CnfTheory phi{2, {{1, 2}}, {}};
  CHECK(oracle_models(phi).size() == 3);
  CHECK_FALSE(oracle_sat(CnfTheory{1, {{1}, {-1}}, {}}));
}

TEST_CASE("generators are reproducible") {
  Rng a(9), b(9);
  CHECK(serialize_network(random_network(a, 7, 3)) == serialize_network(random_network(b, 7, 3)));
  auto t = random_tree(a, 12, 3);
  int roots = 0;
  for (const auto& p : t.parents) roots += p.empty();
  CHECK(roots == 1);
  auto id = random_diagram(a, 6, 3, 2, 2);
  id.validate();
  CHECK(id.decisions.size() == 2);
}
