#include <limits>
#include <random>

#include "bucketforge/error.hpp"
#include "bucketforge/factor.hpp"
#include "doctest.h"

using namespace bucketforge;

TEST_CASE("product over a shared variable") {
  DiscreteFactor a({0}, {2}, {0.2, 0.8});
  DiscreteFactor ab({0, 1}, {2, 3}, {1, 2, 3, 4, 5, 6});
  auto p = multiply(a, ab);
  CHECK(p.scope() == std::vector<VarId>{0, 1});
  const std::vector<double> expect{0.2, 0.4, 0.6, 3.2, 4.0, 4.8};
  for (std::size_t i = 0; i < expect.size(); ++i) CHECK(p.values()[i] == doctest::Approx(expect[i]));
}

TEST_CASE("product matches an explicit triple loop") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int ca = 2, cb = 3, cc = 2;
  std::vector<double> fv(ca * cc), gv(cb * cc);
  for (auto& x : fv) x = u(rng);
  for (auto& x : gv) x = u(rng);
  DiscreteFactor f({0, 2}, {ca, cc}, fv);
  DiscreteFactor g({1, 2}, {cb, cc}, gv);
  auto p = multiply(f, g);
  REQUIRE(p.scope() == std::vector<VarId>{0, 1, 2});
  for (int a = 0; a < ca; ++a)
    for (int b = 0; b < cb; ++b)
      for (int c = 0; c < cc; ++c) {
        const double expect = fv[a * cc + c] * gv[b * cc + c];
        CHECK(p.values()[(a * cb + b) * cc + c] == doctest::Approx(expect).epsilon(1e-15));
      }
}

TEST_CASE("product is commutative") {
  DiscreteFactor f({1, 3}, {2, 2}, {0.1, 0.2, 0.3, 0.4});
  DiscreteFactor g({0, 3}, {3, 2}, {1, 2, 3, 4, 5, 6});
  CHECK(multiply(f, g).values() == multiply(g, f).values());
}

TEST_CASE("conflicting cardinalities are rejected") {
  DiscreteFactor f({0}, {2}, {1, 1});
  DiscreteFactor g({0}, {3}, {1, 1, 1});
  CHECK_THROWS_AS(multiply(f, g), Error);
}

TEST_CASE("sum and max elimination") {
  DiscreteFactor f({0, 1}, {2, 3}, {0.1, 0.5, 0.4, 0.3, 0.3, 0.2});
  auto s = eliminate(f, 1, ElimOp::kSum);
  CHECK(s.factor.scope() == std::vector<VarId>{0});
  CHECK(s.factor.values()[0] == doctest::Approx(1.0));
  CHECK(s.factor.values()[1] == doctest::Approx(0.8));
  CHECK_FALSE(s.arg.has_value());

  auto m = eliminate(f, 1, ElimOp::kMax);
  CHECK(m.factor.values() == std::vector<double>{0.5, 0.3});
  REQUIRE(m.arg);
  // 0.3 appears twice in the second row; the lower index wins.
  CHECK(m.arg->choices == std::vector<int>{1, 0});
}

TEST_CASE("max keeps the exact maximum but resolves rounding-level ties low") {
  const double a = 0.1 + 0.2;  // 0.30000000000000004
  DiscreteFactor f({2}, {3}, {0.2, 0.3, a});
  auto m = eliminate(f, 2, ElimOp::kMax);
  CHECK(m.factor.scalar_value() == a);
  CHECK(m.arg->choices == std::vector<int>{1});
  DiscreteFactor g({2}, {2}, {0.3, 0.3 + 1e-9});
  CHECK(eliminate(g, 2, ElimOp::kMax).arg->choices == std::vector<int>{1});
  DiscreteFactor h({2}, {2}, {-std::numeric_limits<double>::infinity(), -1.0});
  CHECK(eliminate(h, 2, ElimOp::kMax).arg->choices == std::vector<int>{1});
}

TEST_CASE("eliminating the only variable yields a scalar") {
  DiscreteFactor f({4}, {3}, {0.2, 0.5, 0.3});
  auto m = eliminate(f, 4, ElimOp::kMax);
  CHECK(m.factor.is_scalar());
  CHECK(m.factor.scalar_value() == 0.5);
  CHECK(m.arg->choices == std::vector<int>{1});
}

TEST_CASE("restrict slices one value") {
  DiscreteFactor f({0, 1}, {2, 3}, {1, 2, 3, 4, 5, 6});
  CHECK(restrict(f, 0, 1).values() == std::vector<double>{4, 5, 6});
  CHECK(restrict(f, 1, 2).values() == std::vector<double>{3, 6});
  CHECK_THROWS(restrict(f, 7, 0));
}

TEST_CASE("normalize") {
  auto n = normalize(DiscreteFactor({0}, {2}, {1.0, 3.0}));
  CHECK(n.mass == 4.0);
  CHECK(n.factor.values() == std::vector<double>{0.25, 0.75});
  try {
    normalize(DiscreteFactor({0}, {2}, {0.0, 0.0}));
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kImpossibleEvidence);
  }
}

TEST_CASE("divide_or_zero") {
  DiscreteFactor num({0}, {3}, {1.0, 2.0, 3.0});
  DiscreteFactor den({0}, {3}, {2.0, 0.0, 3.0});
  CHECK(divide_or_zero(num, den).values() == std::vector<double>{0.5, 0.0, 1.0});
}

TEST_CASE("from_ordered reorders to ascending scope") {
  const std::vector<VarId> scope{2, 0};
  const std::vector<int> cards{2, 3};
  const std::vector<double> vals{1, 2, 3, 4, 5, 6};  // (x2, x0), x0 fastest
  auto f = DiscreteFactor::from_ordered(scope, cards, vals);
  CHECK(f.scope() == std::vector<VarId>{0, 2});
  CHECK(f.values() == std::vector<double>{1, 4, 2, 5, 3, 6});
  const std::vector<int> x{2, kUnassigned, 1};
  CHECK(f.at(x) == 6);
  CHECK(f.values_in_order(scope) == vals);
}

TEST_CASE("add is pointwise over the union scope") {
  std::vector<DiscreteFactor> parts{DiscreteFactor({0}, {2}, {1, 2}), DiscreteFactor({1}, {2}, {10, 20}),
                                    DiscreteFactor::scalar(0.5)};
  CHECK(add(parts).values() == std::vector<double>{11.5, 21.5, 12.5, 22.5});
}
