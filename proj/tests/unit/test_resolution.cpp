#include <random>

#include "bucketforge/error.hpp"
#include "bucketforge/generate.hpp"
#include "bucketforge/oracle.hpp"
#include "bucketforge/resolution.hpp"
#include "doctest.h"

using namespace bucketforge;

namespace {

CnfTheory theory(int n, std::vector<Clause> clauses) { return CnfTheory{n, std::move(clauses), {}}; }

Ordering natural(int n) { return Ordering::identity(static_cast<std::size_t>(n)); }

}  // namespace

TEST_CASE("complementary units are unsatisfiable") {
  auto ext = directional_resolution(theory(1, {{1}, {-1}}), natural(1));
  CHECK_FALSE(ext.satisfiable);
  CHECK(ext.clauses().empty());
  CHECK_FALSE(generate_model(ext).has_value());
}

TEST_CASE("no opposing pairs leaves the theory unchanged") {
  auto phi = theory(3, {{1, 2}, {-2, 3}});
  auto ext = directional_resolution(phi, natural(3));
  CHECK(ext.satisfiable);
  CHECK(ext.buckets[2] == std::vector<Clause>{{-2, 3}});
  CHECK(ext.buckets[1] == std::vector<Clause>{{1, 2}});
  CHECK(ext.resolvents == 0);
}

TEST_CASE("resolution through two buckets") {
  auto phi = theory(3, {{1, 3}, {2, -3}, {-2, -3}});
  auto ext = directional_resolution(phi, natural(3));
  CHECK(ext.satisfiable);
  CHECK(ext.buckets[1] == std::vector<Clause>{{1, -2}, {1, 2}});
  CHECK(ext.buckets[0] == std::vector<Clause>{{1}});
  CnfTheory e = theory(3, ext.clauses());
  CHECK(oracle_models(e) == oracle_models(phi));
  auto m = generate_model(ext);
  REQUIRE(m);
  CHECK(satisfies(phi, *m));
}

TEST_CASE("default values") {
  auto m = generate_model(directional_resolution(theory(2, {}), natural(2)));
  CHECK(*m == std::vector<bool>{false, false});
  CHECK(*generate_model(directional_resolution(theory(1, {{1}}), natural(1))) == std::vector<bool>{true});
}

TEST_CASE("an empty input clause is unsatisfiable") {
  CHECK_FALSE(directional_resolution(theory(2, {{}}), natural(2)).satisfiable);
}

TEST_CASE("ordering must cover the theory") {
  CHECK_THROWS_AS(directional_resolution(theory(3, {{1}}), natural(2)), Error);
}

TEST_CASE("random theories keep their models and decode without dead ends") {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + trial % 5;
    auto phi = random_3cnf(rng, n, 2 * n + trial % 7);
    auto d = random_ordering(rng, static_cast<std::size_t>(n));
    auto ext = directional_resolution(phi, d);
    const auto models = oracle_models(phi);
    CHECK(ext.satisfiable == !models.empty());
    CHECK(oracle_models(theory(n, ext.clauses())) == models);
    if (ext.satisfiable) CHECK(satisfies(phi, *generate_model(ext)));
    CHECK(ext.max_clause_size() <=
          static_cast<std::size_t>(induced_width(interaction_graph(phi), d).wstar + 1));
  }
}

TEST_CASE("extension text names the ordering") {
  auto ext = directional_resolution(theory(2, {{1, -2}}), Ordering({1, 0}));
  CHECK(serialize_extension(ext).rfind("c ordering 2 1\np cnf 2 1\n", 0) == 0);
}
