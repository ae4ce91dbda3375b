#include "bucketforge/bucket.hpp"
#include "bucketforge/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bucketforge;
using namespace testing_support;

namespace {

using Scopes = std::vector<std::vector<VarId>>;

Scopes scopes(const Bucket& b) {
  Scopes out;
  for (const auto& f : b.factors) out.push_back(f.scope());
  return out;
}

BucketSchedule schedule_for(const BeliefNetwork& net, const Ordering& d, const Evidence& e) {
  auto factors = net.probability_factors();
  return partition(factors, d, e, net.cardinalities());
}

}  // namespace

TEST_CASE("belief updating walk-through with G = 1") {
  auto net = sixnode();
  Evidence e;
  e.assignments[G] = 1;
  auto s = schedule_for(net, Ordering({A, C, B, E, D, G}), e);
  CHECK(scopes(s.of(G)) == Scopes{{E, G}});
  CHECK(s.of(G).observed_value == 1);
  CHECK(scopes(s.of(E)) == Scopes{{B, C, E}});
  CHECK(scopes(s.of(D)) == Scopes{{A, B, D}});
  CHECK(scopes(s.of(B)) == Scopes{{A, B}});
  CHECK(scopes(s.of(C)) == Scopes{{A, C}});
  CHECK(scopes(s.of(A)) == Scopes{{A}});

  process_bucket(s, 5, ElimOp::kSum);  // G: lambda_G(e) = P(G=1|e)
  REQUIRE(s.of(E).factors.size() == 2);
  CHECK(s.of(E).factors[1].scope() == std::vector<VarId>{E});
  CHECK(s.of(E).factors[1].values() == std::vector<double>{0.25, 0.85});

  process_bucket(s, 4, ElimOp::kSum);  // D: lambda_D(b, a) into B
  CHECK(scopes(s.of(B)) == Scopes{{A, B}, {A, B}});
  process_bucket(s, 3, ElimOp::kSum);  // E: lambda_E(b, c) into B
  CHECK(scopes(s.of(B)) == Scopes{{A, B}, {A, B}, {B, C}});
  process_bucket(s, 2, ElimOp::kSum);  // B: lambda_B(a, c) into C
  CHECK(scopes(s.of(C)) == Scopes{{A, C}, {A, C}});
  process_bucket(s, 1, ElimOp::kSum);  // C: lambda_C(a) into A
  CHECK(scopes(s.of(A)) == Scopes{{A}, {A}});
  // Summing out D produced the all-ones function.
  for (double x : s.of(B).factors[1].values()) CHECK(x == doctest::Approx(1.0));
}

TEST_CASE("observing B = 1 in the middle of A,C,B,E,D,G") {
  auto net = sixnode();
  Evidence e;
  e.assignments[B] = 1;
  auto s = schedule_for(net, Ordering({A, C, B, E, D, G}), e);
  for (std::size_t p = 6; p-- > 3;) process_bucket(s, p, ElimOp::kMax);
  CHECK(scopes(s.of(B)) == Scopes{{A, B}, {A, B}, {B, C}});
  process_bucket(s, 2, ElimOp::kMax);
  // Each matrix is restricted separately: P(b=1|a), h_D(b=1,a) go to A,
  // h_E(b=1,c) goes to C.
  CHECK(scopes(s.of(A)) == Scopes{{A}, {A}, {A}});
  CHECK(scopes(s.of(C)) == Scopes{{A, C}, {C}});
  CHECK(s.trace().back().op == "observe");
}

TEST_CASE("observing B = 1 first along A,C,E,G,D,B") {
  auto net = sixnode();
  Evidence e;
  e.assignments[B] = 1;
  auto s = schedule_for(net, Ordering({A, C, E, G, D, B}), e);
  CHECK(scopes(s.of(B)) == Scopes{{A, B}, {A, B, D}, {B, C, E}});
  process_bucket(s, 5, ElimOp::kMax);
  CHECK(scopes(s.of(A)) == Scopes{{A}, {A}});
  CHECK(scopes(s.of(D)) == Scopes{{A, D}});
  CHECK(scopes(s.of(E)) == Scopes{{C, E}});
  for (std::size_t p = 5; p-- > 0;) process_bucket(s, p, ElimOp::kMax);
  // Everything recorded after the observation is at most one-dimensional.
  for (std::size_t i = 1; i < s.trace().size(); ++i)
    for (const auto& out : s.trace()[i].output_scopes) CHECK(out.size() <= 1);
}

TEST_CASE("scalars collect in the global constant") {
  BucketSchedule s(Ordering({0, 1}), {2, 2});
  s.place(DiscreteFactor::scalar(0.5));
  s.place_utility(DiscreteFactor::scalar(3.0));
  s.place(DiscreteFactor({0}, {2}, {1, 2}));
  CHECK(s.global_scalar() == 0.5);
  CHECK(s.global_utility() == 3.0);
  CHECK(s.of(0).factors.size() == 1);
}

TEST_CASE("decoding needs max buckets") {
  auto net = sixnode();
  auto s = schedule_for(net, Ordering({A, C, B, E, D, G}), {});
  for (std::size_t p = 6; p-- > 0;) process_bucket(s, p, ElimOp::kSum);
  const std::vector<VarId> over{A};
  CHECK_THROWS_AS(forward_decode(s, over), Error);
}

TEST_CASE("trace line format") {
  auto net = sixnode();
  auto s = schedule_for(net, Ordering({A, C, B, E, D, G}), {});
  process_bucket(s, 5, ElimOp::kMax);
  CHECK(s.trace()[0].to_string(&net) == "bucket var=G pos=6 op=max in=(E,G) out=(E) size=4");
}
