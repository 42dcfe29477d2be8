#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "proximity.hpp"

using namespace ntu;

namespace {

Configuration incidenceConfig(const std::vector<std::vector<long long>>& rows) {
  Configuration c(rows.size());
  size_t n = rows.empty() ? 0 : rows[0].size();
  for (size_t j = 0; j < n; ++j) {
    RatVector col(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) col[i] = Rational(rows[i][j]);
    c.push("x" + std::to_string(j), std::move(col));
  }
  return c;
}

std::vector<std::vector<long long>> rowsOf(const IntMatrix& m) {
  std::vector<std::vector<long long>> r;
  for (size_t i = 0; i < m.rows; ++i) r.push_back(m.row(i));
  return r;
}

std::vector<std::vector<long long>> configRows(const Configuration& a) {
  std::vector<std::vector<long long>> r(a.ambient, std::vector<long long>(a.size()));
  for (size_t i = 0; i < a.ambient; ++i)
    for (size_t j = 0; j < a.size(); ++j) r[i][j] = a.cols[j][i].toLongLong();
  return r;
}

LpOutcome solveLp1(const EqualityInstance& eq) {
  size_t n = eq.nVars();
  size_t m = eq.a.ambient, k = eq.w.rows;
  RatMatrix a(m + k, n);
  RatVector rhs(m + k);
  RatMatrix am = eq.aMatrix();
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) a.at(i, j) = am.at(i, j);
    rhs[i] = Rational(eq.b[i]);
  }
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < n; ++j) a.at(m + i, j) = Rational(eq.w.at(i, j));
    rhs[m + i] = Rational(eq.d[i]);
  }
  RatVector p(n);
  for (size_t j = 0; j < n; ++j) p[j] = Rational(eq.p[j]);
  return lpSolve(a, rhs, finiteBounds(eq.lo), finiteBounds(eq.hi), p);
}

// Random equality instance on a digraph incidence configuration, LP feasible
// by construction.
EqualityInstance randomEqualityInstance(std::mt19937_64& rng, long long k, long long delta,
                                        bool* ipFeasibleHint = nullptr) {
  for (;;) {
    size_t nv = 2 + rng() % 3, ne = 3 + rng() % 5;
    std::vector<std::vector<long long>> rows(nv, std::vector<long long>(ne, 0));
    for (size_t e = 0; e < ne; ++e) {
      size_t u = rng() % nv, v = rng() % nv;
      while (v == u) v = rng() % nv;
      rows[u][e] = 1;
      rows[v][e] = -1;
    }
    EqualityInstance eq;
    eq.a = incidenceConfig(rows);
    eq.delta = delta;
    eq.lo.assign(ne, 0);
    eq.hi.assign(ne, 0);
    for (size_t j = 0; j < ne; ++j) {
      eq.lo[j] = -(long long)(rng() % 3);
      eq.hi[j] = rng() % 3;
    }
    std::vector<long long> x0(ne);
    for (size_t j = 0; j < ne; ++j) x0[j] = eq.lo[j] + (long long)(rng() % (eq.hi[j] - eq.lo[j] + 1));
    eq.b.assign(nv, 0);
    for (size_t i = 0; i < nv; ++i)
      for (size_t j = 0; j < ne; ++j) eq.b[i] += rows[i][j] * x0[j];
    eq.p.assign(ne, 0);
    for (auto& v : eq.p) v = (long long)(rng() % 7) - 3;

    eq.w = IntMatrix(k, ne);
    bool ok = false;
    for (int tries = 0; tries < 40 && !ok; ++tries) {
      for (size_t i = 0; i < (size_t)k; ++i)
        for (size_t j = 0; j < ne; ++j) eq.w.at(i, j) = (long long)(rng() % (2 * delta + 1)) - delta;
      ok = maxCircuitWeight(eq.a, eq.w) <= delta;
    }
    if (!ok) continue;
    // Target from a feasible integer point (IP feasible) or at random.
    bool wantFeasible = (rng() % 3) != 0;
    eq.d.assign(k, 0);
    if (wantFeasible) {
      for (size_t i = 0; i < (size_t)k; ++i)
        for (size_t j = 0; j < ne; ++j) eq.d[i] += eq.w.at(i, j) * x0[j];
    } else {
      for (auto& v : eq.d) v = (long long)(rng() % 5) - 2;
    }
    if (ipFeasibleHint) *ipFeasibleHint = wantFeasible;
    // Require LP feasibility so a vertex optimum exists.
    if (solveLp1(eq).status == LpOutcome::Status::Optimal) return eq;
  }
}

}  // namespace

TEST_CASE("bound formulas") {
  CHECK(fBound(1, 1) == 3);
  CHECK(fBound(1, 2) == 5);
  CHECK(fBound(2, 1) == 50);
  CHECK(fBound(0, 1) == 0);
  CHECK(proximityBound(1, 1) == 5);
  CHECK(proximityBound(1, 2) == 7);
  CHECK(proximityBound(2, 1) == 53);
  CHECK_THROWS_AS(fBound(-1, 1), ValidationError);
  CHECK_THROWS_AS(fBound(1, 0), ValidationError);
}

TEST_CASE("equality form preserves the integer optimum") {
  // max x1 s.t. x1 <= 2, no weight rows.
  InequalityInstance inst;
  inst.aRows = IntMatrix::fromRows({{1}});
  inst.b = {2};
  inst.wRows = IntMatrix(0, 1);
  inst.p = {1};
  inst.delta = 1;
  auto res = toEqualityForm(inst);
  REQUIRE(res.status == EqFormStatus::Ok);
  REQUIRE(res.eq.has_value());
  const auto& eq = *res.eq;
  CHECK(res.lpValue == Rational(2));
  // Oracle on the equality instance reaches the same optimum.
  auto r = oracle::bruteIp(eq.p, configRows(eq.a), eq.b, rowsOf(eq.w), eq.d, eq.lo, eq.hi);
  REQUIRE(r.feasible);
  CHECK(r.value == 2);

  // Infeasible inequality system.
  InequalityInstance bad;
  bad.aRows = IntMatrix::fromRows({{1}, {-1}});
  bad.b = {0, -1};  // x <= 0 and x >= 1
  bad.wRows = IntMatrix(0, 1);
  bad.p = {1};
  CHECK(toEqualityForm(bad).status == EqFormStatus::Infeasible);
}

TEST_CASE("equality form with weight rows agrees with a direct oracle") {
  std::mt19937_64 rng(61);
  for (int it = 0; it < 25; ++it) {
    // Random bounded inequality instance: box rows keep it bounded.
    size_t n = 2 + rng() % 2;
    std::vector<std::vector<long long>> arows;
    std::vector<long long> b;
    for (size_t j = 0; j < n; ++j) {
      std::vector<long long> up(n, 0), dn(n, 0);
      up[j] = 1;
      dn[j] = -1;
      arows.push_back(up);
      b.push_back(rng() % 3);
      arows.push_back(dn);
      b.push_back(rng() % 3);
    }
    InequalityInstance inst;
    inst.aRows = IntMatrix::fromRows(arows);
    inst.b = b;
    std::vector<long long> w(n);
    for (auto& x : w) x = (long long)(rng() % 3) - 1;
    inst.wRows = IntMatrix::fromRows({w});
    inst.d = {(long long)(rng() % 3)};
    inst.p.assign(n, 0);
    for (auto& x : inst.p) x = (long long)(rng() % 5) - 2;
    inst.delta = 2;

    auto res = toEqualityForm(inst);
    if (res.status != EqFormStatus::Ok) continue;
    const auto& eq = *res.eq;
    // Optimum of the equality instance by enumerating the x block only;
    // the slack blocks are determined by x.
    bool eqFeas = false;
    long long eqBest = 0;
    {
      std::vector<long long> x(n, 0);
      std::function<void(size_t)> rec2 = [&](size_t pos) {
        if (pos == n) {
          std::vector<long long> full(x);
          for (size_t i = 0; i < inst.aRows.rows; ++i) {
            long long ax = 0;
            for (size_t j = 0; j < n; ++j) ax += inst.aRows.at(i, j) * x[j];
            full.push_back(inst.b[i] - ax);
          }
          for (size_t i = 0; i < inst.wRows.rows; ++i) {
            long long wx = 0;
            for (size_t j = 0; j < n; ++j) wx += inst.wRows.at(i, j) * x[j];
            full.push_back(inst.d[i] - wx);
          }
          for (size_t j = 0; j < full.size(); ++j)
            if (full[j] < eq.lo[j] || full[j] > eq.hi[j]) return;
          long long px = 0;
          for (size_t j = 0; j < full.size(); ++j) px += eq.p[j] * full[j];
          if (!eqFeas || px > eqBest) {
            eqFeas = true;
            eqBest = px;
          }
          return;
        }
        for (long long v = eq.lo[pos]; v <= eq.hi[pos]; ++v) {
          x[pos] = v;
          rec2(pos + 1);
        }
      };
      rec2(0);
    }
    oracle::BruteResult eqOracle;
    eqOracle.feasible = eqFeas;
    eqOracle.value = eqBest;

    // Direct inequality-form oracle over the explicit box.
    std::vector<long long> lo(n), hi(n);
    for (size_t j = 0; j < n; ++j) {
      hi[j] = b[2 * j];
      lo[j] = -b[2 * j + 1];
    }
    // Feasible x must satisfy Wx <= d too; enumerate.
    bool feas = false;
    long long best = 0;
    std::vector<long long> x(n, 0);
    std::function<void(size_t)> rec = [&](size_t pos) {
      if (pos == n) {
        long long wx = 0, px = 0;
        for (size_t j = 0; j < n; ++j) {
          wx += w[j] * x[j];
          px += inst.p[j] * x[j];
        }
        if (wx > inst.d[0]) return;
        if (!feas || px > best) {
          feas = true;
          best = px;
        }
        return;
      }
      for (long long v = lo[pos]; v <= hi[pos]; ++v) {
        x[pos] = v;
        rec(pos + 1);
      }
    };
    rec(0);
    CHECK(eqOracle.feasible == feas);
    if (feas) CHECK(eqOracle.value == best);
  }
}

TEST_CASE("handle unbounded") {
  // max x1, x1 >= 0 only: LP unbounded, integer feasible -> Unbounded.
  InequalityInstance inst;
  inst.aRows = IntMatrix::fromRows({{-1}});
  inst.b = {0};
  inst.wRows = IntMatrix(0, 1);
  inst.p = {1};
  CHECK(handleUnbounded(inst, [](const InequalityInstance&) { return true; }) ==
        UnboundedVerdict::Unbounded);

  // Parity obstruction: 2 x1 = 1 forced via two weight rows, objective x2
  // unbounded; the lattice slice is empty.
  InequalityInstance par;
  par.aRows = IntMatrix(0, 2);
  par.wRows = IntMatrix::fromRows({{2, 0}, {-2, 0}});
  par.d = {1, -1};
  par.b = {};
  par.p = {0, 1};
  par.delta = 2;
  CHECK(handleUnbounded(par, [](const InequalityInstance&) { return false; }) ==
        UnboundedVerdict::Infeasible);

  // Bounded input: precondition violation.
  InequalityInstance bounded;
  bounded.aRows = IntMatrix::fromRows({{1}, {-1}});
  bounded.b = {1, 0};
  bounded.wRows = IntMatrix(0, 1);
  bounded.p = {1};
  CHECK_THROWS_AS(
      handleUnbounded(bounded, [](const InequalityInstance&) { return true; }),
      ValidationError);
}

TEST_CASE("eliminate columns") {
  GeneralIpInstance g;
  g.m = IntMatrix::fromRows({{1, 1}, {-1, 0}, {0, -1}});
  g.b = {2, 0, 0};
  g.p = {1, 1};
  g.delta = 1;

  // Zero extra columns: singleton, instance unchanged.
  auto none = eliminateColumns(g, {Rational(0), Rational(0)});
  CHECK(none.size() == 1);
  CHECK(none[0].fixed.empty());

  // One extra column, n = 2, delta = 1, xstar_j = 0: 5 branches (-2..2).
  g.extraColIdx = {0};
  auto branches = eliminateColumns(g, {Rational(0), Rational(0)});
  CHECK(branches.size() == 5);
  CHECK(branches.front().fixed[0].second == -2);
  CHECK(branches.back().fixed[0].second == 2);
  for (const auto& br : branches) CHECK(br.sub.nVars() == 1);

  // Two extra columns: Cartesian product of two ranges.
  GeneralIpInstance g3;
  g3.m = IntMatrix::fromRows({{1, 1, 0}, {0, 1, 1}});
  g3.b = {1, 1};
  g3.p = {1, 0, 0};
  g3.delta = 1;
  g3.extraColIdx = {1, 2};
  auto two = eliminateColumns(g3, {Rational(0), Rational(0), Rational(0)});
  CHECK(two.size() == 49);  // (2*3+1)^2
  CHECK_THROWS_AS(eliminateColumns(g3, {Rational(0), Rational(0), Rational(0)}, 10), CapExceeded);
}

TEST_CASE("round to anchor on the half-integral segment") {
  // A = [1 1], b = 1, box [0,1]^2, W = [1 -1], d = 0 forces x* = (1/2, 1/2).
  EqualityInstance eq;
  eq.a = incidenceConfig({{1, 1}});
  eq.b = {1};
  eq.w = IntMatrix::fromRows({{1, -1}});
  eq.d = {0};
  eq.p = {1, 0};
  eq.lo = {0, 0};
  eq.hi = {1, 1};
  eq.delta = 1;
  auto lp = solveLp1(eq);
  REQUIRE(lp.status == LpOutcome::Status::Optimal);
  CHECK(lp.x[0] == Rational(1, 2));
  auto z = roundToAnchor(eq, lp.x);
  bool z01 = z == std::vector<long long>({0, 1});
  bool z10 = z == std::vector<long long>({1, 0});
  CHECK((z01 || z10));
}

TEST_CASE("round to anchor returns integer LP vertex unchanged") {
  EqualityInstance eq;
  eq.a = incidenceConfig({{1, 1}});
  eq.b = {1};
  eq.w = IntMatrix(0, 2);
  eq.d = {};
  eq.p = {1, 0};
  eq.lo = {0, 0};
  eq.hi = {1, 1};
  eq.delta = 1;
  auto lp = solveLp1(eq);
  REQUIRE(lp.status == LpOutcome::Status::Optimal);
  auto z = roundToAnchor(eq, lp.x);
  for (size_t j = 0; j < 2; ++j) CHECK(Rational(z[j]) == lp.x[j]);
}

TEST_CASE("anchor contract holds on random instances") {
  std::mt19937_64 rng(67);
  for (int it = 0; it < 60; ++it) {
    long long k = 1 + rng() % 2, delta = 1 + rng() % 2;
    auto eq = randomEqualityInstance(rng, k, delta);
    auto lp = solveLp1(eq);
    REQUIRE(lp.status == LpOutcome::Status::Optimal);
    // roundToAnchor asserts Az=b, bounds, and the distance bound internally.
    auto z = roundToAnchor(eq, lp.x);
    CHECK(z.size() == eq.nVars());
  }
}

TEST_CASE("reduce to circuit search preserves the optimum") {
  std::mt19937_64 rng(71);
  int checked = 0;
  for (int it = 0; it < 60; ++it) {
    long long k = 1 + rng() % 2, delta = 1 + rng() % 2;
    auto eq = randomEqualityInstance(rng, k, delta);
    auto lp = solveLp1(eq);
    REQUIRE(lp.status == LpOutcome::Status::Optimal);
    auto anch = reduceToCircuitSearch(eq, lp.x);
    CHECK(anch.tMax == fBound(k, delta));
    for (long long bi : anch.eq.b) CHECK(bi == 0);
    // Origin feasible after translation.
    for (size_t j = 0; j < eq.nVars(); ++j) {
      CHECK(anch.eq.lo[j] <= 0);
      CHECK(anch.eq.hi[j] >= 0);
    }
    auto orig = oracle::bruteIp(eq.p, configRows(eq.a), eq.b, rowsOf(eq.w), eq.d, eq.lo, eq.hi);
    auto trans = oracle::bruteIp(anch.eq.p, configRows(anch.eq.a), anch.eq.b, rowsOf(anch.eq.w),
                                 anch.eq.d, anch.eq.lo, anch.eq.hi);
    CHECK(orig.feasible == trans.feasible);
    if (orig.feasible) {
      CHECK(Rational(orig.value) == Rational(trans.value) + anch.objectiveOffset);
      ++checked;
    }
  }
  CHECK(checked > 15);
}

TEST_CASE("oracle optimum within the proximity bound of the LP vertex") {
  std::mt19937_64 rng(73);
  int feasibleSeen = 0;
  for (int it = 0; it < 40; ++it) {
    long long k = 1 + rng() % 2, delta = 1 + rng() % 2;
    auto eq = randomEqualityInstance(rng, k, delta);
    auto lp = solveLp1(eq);
    REQUIRE(lp.status == LpOutcome::Status::Optimal);
    auto orig = oracle::bruteIp(eq.p, configRows(eq.a), eq.b, rowsOf(eq.w), eq.d, eq.lo, eq.hi);
    if (!orig.feasible) continue;
    ++feasibleSeen;
    // Distance from xstar to the nearest optimal IP solution.
    Rational bestDist;
    bool first = true;
    oracle::bruteIpOptima(eq.p, configRows(eq.a), eq.b, rowsOf(eq.w), eq.d, eq.lo, eq.hi, {},
                          [&](const std::vector<long long>& zstar) {
                            RatVector zr(zstar.size());
                            for (size_t j = 0; j < zstar.size(); ++j) zr[j] = Rational(zstar[j]);
                            Rational dist = maxNorm(sub(lp.x, zr));
                            if (first || dist < bestDist) {
                              first = false;
                              bestDist = dist;
                            }
                          });
    REQUIRE(!first);
    CHECK(bestDist <= Rational(proximityBound(k, delta)));
  }
  CHECK(feasibleSeen > 10);
}
