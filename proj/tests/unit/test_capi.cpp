#include <cstring>
#include <string>

#include "bucketforge/bucketforge.h"
#include "doctest.h"

namespace {

const char* kTwoNode = "BAYES\n2\n2 2\n2\n1 0\n2 0 1\n2\n0.6 0.4\n4\n0.9 0.1\n0.2 0.8\n";

std::string take(char* s) {
  std::string out = s ? s : "";
  bf_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("model lifecycle and names") {
  bf_model* m = nullptr;
  REQUIRE(bf_model_parse(kTwoNode, 0, &m) == BF_OK);
  CHECK(bf_model_kind_of(m) == BF_KIND_BAYES);
  CHECK(bf_model_num_vars(m) == 2);
  CHECK(bf_model_set_names(m, "Rain,Wet") == BF_OK);
  CHECK(bf_model_find_var(m, "Wet") == 1);
  CHECK(bf_model_find_var(m, "0") == 0);
  CHECK(bf_model_find_var(m, "Snow") == -1);
  CHECK(std::string(bf_model_var_name(m, 0)) == "Rain");
  CHECK(bf_model_set_names(m, "X") == BF_E_USAGE);
  char* text = nullptr;
  REQUIRE(bf_model_serialize(m, &text) == BF_OK);
  CHECK(take(text).rfind("BAYES\n2\n", 0) == 0);
  bf_model_free(m);
}

TEST_CASE("parse failures report a status and a message") {
  bf_model* m = nullptr;
  CHECK(bf_model_parse("BAYES\n2\nx\n", 0, &m) == BF_E_MODEL);
  CHECK(std::strlen(bf_last_error()) > 0);
  CHECK(m == nullptr);
  CHECK(bf_model_load("/nonexistent/file.net", 0, &m) == BF_E_USAGE);
}

TEST_CASE("belief query through the C interface") {
  bf_model* m = nullptr;
  bf_evidence* e = nullptr;
  REQUIRE(bf_model_parse(kTwoNode, 0, &m) == BF_OK);
  REQUIRE(bf_evidence_parse(m, "1 1 1", &e) == BF_OK);
  int query_var = 0;
  bf_query q;
  bf_query_init(&q);
  q.kind = BF_QUERY_BEL;
  q.vars = &query_var;
  q.num_vars = 1;
  q.oracle = 1;
  bf_result* r = nullptr;
  REQUIRE(bf_run_query(m, e, &q, &r) == BF_OK);
  double belief[2];
  REQUIRE(bf_result_belief(r, belief, 2) == 2);
  // P(A=0 | B=1) = 0.06 / (0.06 + 0.32)
  CHECK(belief[0] == doctest::Approx(0.06 / 0.38));
  CHECK(bf_result_evidence_mass(r) == doctest::Approx(0.38));
  char* text = nullptr;
  REQUIRE(bf_result_render(r, BF_FORMAT_TEXT, &text) == BF_OK);
  const std::string out = take(text);
  CHECK(out.find("belief=0.157894736842 0.842105263158\n") != std::string::npos);
  CHECK(out.find("oracle_belief=") != std::string::npos);
  REQUIRE(bf_result_render(r, BF_FORMAT_JSON, &text) == BF_OK);
  CHECK(take(text).find("\"belief\":[0.157894736842,0.842105263158]") != std::string::npos);
  bf_result_free(r);
  bf_evidence_free(e);
  bf_model_free(m);
}

TEST_CASE("mpe and impossible evidence") {
  bf_model* m = nullptr;
  REQUIRE(bf_model_parse("BAYES\n2\n2 2\n2\n1 0\n2 0 1\n2\n0.5 0.5\n4\n1 0\n1 0\n", 0, &m) == BF_OK);
  bf_evidence* e = nullptr;
  REQUIRE(bf_evidence_parse(m, "1 1 1", &e) == BF_OK);
  bf_query q;
  bf_query_init(&q);
  bf_result* r = nullptr;
  REQUIRE(bf_run_query(m, e, &q, &r) == BF_OK);
  CHECK(bf_result_impossible(r) == 1);
  bf_result_free(r);
  int v = 0;
  q.kind = BF_QUERY_BEL;
  q.vars = &v;
  q.num_vars = 1;
  r = nullptr;
  CHECK(bf_run_query(m, e, &q, &r) == BF_E_INFEASIBLE);
  CHECK(r == nullptr);
  q.kind = BF_QUERY_MEU;
  CHECK(bf_run_query(m, e, &q, &r) == BF_E_USAGE);
  bf_evidence_free(e);
  bf_model_free(m);
}

TEST_CASE("evidence errors") {
  bf_model* m = nullptr;
  REQUIRE(bf_model_parse(kTwoNode, 0, &m) == BF_OK);
  bf_evidence* e = nullptr;
  CHECK(bf_evidence_parse(m, "1 1 7", &e) == BF_E_MODEL);
  bf_model_free(m);
}

TEST_CASE("directional resolution and stats") {
  bf_cnf* c = nullptr;
  REQUIRE(bf_cnf_parse("p cnf 1 2\n1 0\n-1 0\n", &c) == BF_OK);
  char* text = nullptr;
  CHECK(bf_run_dr(c, BF_ORDER_MIN_FILL, nullptr, 0, 0, 0, BF_FORMAT_TEXT, &text) == BF_E_INFEASIBLE);
  CHECK(take(text).rfind("UNSAT\n", 0) == 0);
  bf_cnf_free(c);

  bf_model* m = nullptr;
  REQUIRE(bf_model_parse(kTwoNode, 0, &m) == BF_OK);
  const int order[] = {1, 0};
  REQUIRE(bf_stats_model(m, nullptr, BF_ORDER_GIVEN, order, 2, BF_FORMAT_TEXT, &text) == BF_OK);
  CHECK(take(text) == "w=1 wstar=1 fill=0\n");
  const int bad[] = {1, 1};
  CHECK(bf_stats_model(m, nullptr, BF_ORDER_GIVEN, bad, 2, BF_FORMAT_TEXT, &text) == BF_E_USAGE);
  bf_model_free(m);
}

TEST_CASE("generation is seeded") {
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(bf_generate(BF_GEN_BAYES, 5, 3, 42, &a) == BF_OK);
  REQUIRE(bf_generate(BF_GEN_BAYES, 5, 3, 42, &b) == BF_OK);
  CHECK(take(a) == take(b));
  REQUIRE(bf_generate(BF_GEN_CNF, 6, 0, 1, &a) == BF_OK);
  CHECK(take(a).rfind("p cnf 6 24\n", 0) == 0);
}
