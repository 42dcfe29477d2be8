#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lp.hpp"
#include "support/lp_enum.hpp"

using namespace ntu;

namespace {
std::vector<ExtendedBound> box(std::vector<long long> lo) { return finiteBounds(lo); }
}  // namespace

TEST_CASE("lp basics") {
  // max x1 s.t. x1 + x2 = 1, 0 <= x <= 1
  RatMatrix a = RatMatrix::fromInt({{1, 1}});
  auto out = lpSolve(a, ratVectorOf({1}), box({0, 0}), box({1, 1}), ratVectorOf({1, 0}));
  REQUIRE(out.status == LpOutcome::Status::Optimal);
  CHECK(out.value == Rational(1));
  CHECK(out.x[0] == Rational(1));
  CHECK(out.x[1] == Rational(0));
}

TEST_CASE("lp infeasible") {
  // x1 = 2 with 0 <= x1 <= 1
  RatMatrix a = RatMatrix::fromInt({{1}});
  auto out = lpSolve(a, ratVectorOf({2}), box({0}), box({1}), ratVectorOf({1}));
  CHECK(out.status == LpOutcome::Status::Infeasible);
}

TEST_CASE("lp unbounded with ray") {
  // max x1, no equalities, 0 <= x1 < +inf
  RatMatrix a(0, 1);
  std::vector<ExtendedBound> lo = {ExtendedBound::of(0)};
  std::vector<ExtendedBound> hi = {ExtendedBound::plusInf()};
  auto out = lpSolve(a, RatVector{}, lo, hi, ratVectorOf({1}));
  REQUIRE(out.status == LpOutcome::Status::Unbounded);
  REQUIRE(out.ray.size() == 1);
  CHECK(out.ray[0] > Rational(0));
}

TEST_CASE("lp with free variables and inequality-style slack form") {
  // max x s.t. x + s = 5, s >= 0, x free  (i.e. x <= 5)
  RatMatrix a = RatMatrix::fromInt({{1, 1}});
  std::vector<ExtendedBound> lo = {ExtendedBound::minusInf(), ExtendedBound::of(0)};
  std::vector<ExtendedBound> hi = {ExtendedBound::plusInf(), ExtendedBound::plusInf()};
  auto out = lpSolve(a, ratVectorOf({5}), lo, hi, ratVectorOf({1, 0}));
  REQUIRE(out.status == LpOutcome::Status::Optimal);
  CHECK(out.value == Rational(5));
}

TEST_CASE("lp redundant and inconsistent rows") {
  RatMatrix a = RatMatrix::fromInt({{1, 1}, {2, 2}});
  auto out = lpSolve(a, ratVectorOf({1, 2}), box({0, 0}), box({1, 1}), ratVectorOf({1, 0}));
  REQUIRE(out.status == LpOutcome::Status::Optimal);
  CHECK(out.value == Rational(1));
  auto bad = lpSolve(a, ratVectorOf({1, 3}), box({0, 0}), box({1, 1}), ratVectorOf({1, 0}));
  CHECK(bad.status == LpOutcome::Status::Infeasible);
}

TEST_CASE("lp agrees with candidate-point enumeration on random boxes") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> dn(1, 5), dm(0, 3), entry(-2, 2), bnd(0, 3), rhs(-3, 3);
  int feasibleSeen = 0, infeasibleSeen = 0;
  for (int it = 0; it < 300; ++it) {
    size_t n = dn(rng), m = dm(rng);
    RatMatrix a(m, n);
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < n; ++j) a.at(i, j) = Rational(entry(rng));
    RatVector b(m);
    for (size_t i = 0; i < m; ++i) b[i] = Rational(rhs(rng));
    RatVector lo(n), hi(n), p(n);
    for (size_t j = 0; j < n; ++j) {
      long long l = -bnd(rng), u = bnd(rng);
      lo[j] = Rational(l);
      hi[j] = Rational(u);
      p[j] = Rational(entry(rng));
    }
    auto truth = testsupport::enumerateLpOptimum(a, b, lo, hi, p);
    auto got = lpSolve(a, b, finiteBounds(lo), finiteBounds(hi), p);
    if (truth.feasible) {
      ++feasibleSeen;
      REQUIRE(got.status == LpOutcome::Status::Optimal);
      CHECK(got.value == truth.value);
      // Returned point feasible.
      RatVector ax = a.apply(got.x);
      for (size_t i = 0; i < m; ++i) CHECK(ax[i] == b[i]);
      for (size_t j = 0; j < n; ++j) {
        CHECK(got.x[j] >= lo[j]);
        CHECK(got.x[j] <= hi[j]);
      }
    } else {
      ++infeasibleSeen;
      CHECK(got.status == LpOutcome::Status::Infeasible);
    }
  }
  CHECK(feasibleSeen > 50);
  CHECK(infeasibleSeen > 10);
}

TEST_CASE("minimal face bounds") {
  RatMatrix a = RatMatrix::fromInt({{1, 1}});
  std::vector<ExtendedBound> lo = box({0, 0}), hi = box({1, 1}), l2, h2;

  // Vertex: both coordinates tight.
  minimalFaceBounds(a, ratVectorOf({1}), lo, hi, ratVectorOf({1, 0}), l2, h2);
  CHECK(l2[0].value() == Rational(1));
  CHECK(h2[0].value() == Rational(1));
  CHECK(l2[1].value() == Rational(0));
  CHECK(h2[1].value() == Rational(0));

  // Strict interior of the segment: bounds unchanged.
  RatVector mid = {Rational(1, 2), Rational(1, 2)};
  minimalFaceBounds(a, ratVectorOf({1}), lo, hi, mid, l2, h2);
  CHECK(l2[0].value() == Rational(0));
  CHECK(h2[0].value() == Rational(1));
  CHECK(l2[1].value() == Rational(0));
  CHECK(h2[1].value() == Rational(1));

  CHECK_THROWS_AS(minimalFaceBounds(a, ratVectorOf({1}), lo, hi, ratVectorOf({2, -1}), l2, h2),
                  ValidationError);
}

TEST_CASE("vertex of polytope is lexicographically smallest") {
  // Box [0,1]^2, no equalities -> (0,0).
  RatMatrix a0(0, 2);
  auto v = vertexOfPolytope(a0, RatVector{}, box({0, 0}), box({1, 1}));
  CHECK(v == ratVectorOf({0, 0}));

  // x1 + x2 = 1 on [0,1]^2: vertices (0,1) and (1,0); lex-min is (0,1).
  RatMatrix a = RatMatrix::fromInt({{1, 1}});
  v = vertexOfPolytope(a, ratVectorOf({1}), box({0, 0}), box({1, 1}));
  CHECK(v == ratVectorOf({0, 1}));

  // Single point.
  v = vertexOfPolytope(RatMatrix(0, 2), RatVector{}, box({2, 3}), box({2, 3}));
  CHECK(v == ratVectorOf({2, 3}));

  CHECK_THROWS_AS(vertexOfPolytope(a, ratVectorOf({5}), box({0, 0}), box({1, 1})),
                  ValidationError);
  std::vector<ExtendedBound> inf = {ExtendedBound::minusInf(), ExtendedBound::of(0)};
  CHECK_THROWS_AS(vertexOfPolytope(a, ratVectorOf({1}), inf, box({1, 1})), InfiniteBoundError);
}

TEST_CASE("lexMinOptimal returns lex smallest optimum") {
  // max x1 + x2 on x1 + x2 = 1, [0,1]^2: all points optimal; lex-min is (0,1).
  RatMatrix a = RatMatrix::fromInt({{1, 1}});
  auto v = lexMinOptimal(a, ratVectorOf({1}), box({0, 0}), box({1, 1}), ratVectorOf({1, 1}));
  CHECK(v == ratVectorOf({0, 1}));
}

TEST_CASE("lp terminates on degenerate instances") {
  // Highly degenerate: many redundant constraints meeting at a point.
  RatMatrix a = RatMatrix::fromInt({{1, 1, 1}, {1, 1, 1}, {2, 2, 2}});
  auto out = lpSolve(a, ratVectorOf({0, 0, 0}), box({0, 0, 0}), box({1, 1, 1}),
                     ratVectorOf({1, -1, 2}));
  REQUIRE(out.status == LpOutcome::Status::Optimal);
  CHECK(out.value == Rational(0));
}
