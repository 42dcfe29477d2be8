#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "oracle.hpp"
#include "sumdecomp.hpp"

using namespace ntu;

namespace {

Configuration fromRows(const std::vector<std::vector<long long>>& rows,
                       const std::string& prefix = "c") {
  Configuration c(rows.size());
  size_t n = rows.empty() ? 0 : rows[0].size();
  for (size_t j = 0; j < n; ++j) {
    RatVector col(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) col[i] = Rational(rows[i][j]);
    c.push(prefix + std::to_string(j), std::move(col));
  }
  return c;
}

std::vector<std::vector<long long>> configRows(const Configuration& a) {
  std::vector<std::vector<long long>> r(a.ambient, std::vector<long long>(a.size()));
  for (size_t i = 0; i < a.ambient; ++i)
    for (size_t j = 0; j < a.size(); ++j) r[i][j] = a.cols[j][i].toLongLong();
  return r;
}

std::vector<std::vector<long long>> rowsOf(const IntMatrix& m) {
  std::vector<std::vector<long long>> r;
  for (size_t i = 0; i < m.rows; ++i) r.push_back(m.row(i));
  return r;
}

// Incidence rows of a random connected digraph.
std::vector<std::vector<long long>> randomIncidence(std::mt19937_64& rng, size_t nv, size_t extra) {
  std::vector<std::pair<size_t, size_t>> es;
  for (size_t v = 1; v < nv; ++v) es.push_back({rng() % v, v});
  for (size_t e = 0; e < extra; ++e) {
    size_t u = rng() % nv, v = rng() % nv;
    if (u != v) es.push_back({u, v});
  }
  std::vector<std::vector<long long>> rows(nv, std::vector<long long>(es.size(), 0));
  for (size_t e = 0; e < es.size(); ++e) {
    rows[es[e].first][e] = 1;
    rows[es[e].second][e] = -1;
  }
  return rows;
}

// Random MCICP on a given configuration with origin-feasible box and
// rejection-sampled weights.
std::optional<McicpInstance> randomMcicpOn(std::mt19937_64& rng, Configuration a, long long k,
                                           long long delta) {
  McicpInstance inst;
  inst.a = std::move(a);
  size_t n = inst.a.size();
  inst.delta = delta;
  inst.lo.resize(n);
  inst.hi.resize(n);
  inst.p.resize(n);
  for (size_t j = 0; j < n; ++j) {
    inst.lo[j] = -(long long)(rng() % 3);
    inst.hi[j] = rng() % 3;
    inst.p[j] = (long long)(rng() % 7) - 3;
  }
  inst.w = IntMatrix(k, n);
  bool ok = false;
  for (int tries = 0; tries < 50 && !ok; ++tries) {
    for (size_t i = 0; i < (size_t)k; ++i)
      for (size_t j = 0; j < n; ++j)
        inst.w.at(i, j) = (long long)(rng() % (2 * delta + 1)) - delta;
    ok = maxCircuitWeight(inst.a, inst.w) <= delta;
  }
  if (!ok) return std::nullopt;
  inst.d.assign(k, 0);
  if (rng() % 3 != 0) {
    // target from a random feasible circulation reached by circuit moves
    std::vector<long long> x(n, 0);
    auto cs = circuits(inst.a);
    for (int step = 0; step < 5 && !cs.empty(); ++step) {
      const auto& c = cs[rng() % cs.size()];
      std::vector<long long> cand = x;
      bool fits = true;
      for (size_t j = 0; j < n; ++j) {
        cand[j] += c.coeff[j];
        if (cand[j] < inst.lo[j] || cand[j] > inst.hi[j]) fits = false;
      }
      if (fits) x = cand;
    }
    for (size_t i = 0; i < (size_t)k; ++i)
      for (size_t j = 0; j < n; ++j) inst.d[i] += inst.w.at(i, j) * x[j];
  } else {
    for (auto& v : inst.d) v = (long long)(rng() % 3) - 1;
  }
  return inst;
}

oracle::BruteResult oracleSolve(const McicpInstance& inst) {
  std::vector<long long> b(inst.a.ambient, 0);
  return oracle::bruteIp(inst.p, configRows(inst.a), b, rowsOf(inst.w), inst.d, inst.lo, inst.hi);
}

}  // namespace

TEST_CASE("find separation") {
  // Block diagonal: 1-separation.
  auto bd = fromRows({{1, 1, 0, 0}, {0, 0, 1, 1}});
  auto s1 = findSeparation(bd, 1);
  REQUIRE(s1.has_value());
  CHECK(s1->order == 1);
  CHECK(s1->side1 == std::vector<size_t>({0, 1}));

  // K4 incidence: 3-connected, no 1- or 2-separation.
  auto k4 = fromRows({{1, 1, 1, 0, 0, 0},
                      {-1, 0, 0, 1, 1, 0},
                      {0, -1, 0, -1, 0, 1},
                      {0, 0, -1, 0, -1, -1}});
  CHECK(!findSeparation(k4, 1).has_value());
  CHECK(!findSeparation(k4, 2).has_value());

  // Repeated column with two more columns: a 2-separation exists.
  auto rep = fromRows({{1, 1, 1, 0}, {0, 0, -1, 1}});
  auto s2 = findSeparation(rep, 2);
  REQUIRE(s2.has_value());
  CHECK(s2->order == 2);

  Configuration big(1);
  for (int j = 0; j < 20; ++j) big.push("c" + std::to_string(j), {Rational(1)});
  CHECK_THROWS_AS(findSeparation(big, 1, 18), CapExceeded);
}

TEST_CASE("one sum components") {
  auto bd = fromRows({{1, 1, 0, 0, 0}, {0, 0, 1, 1, 0}});
  auto comps = oneSumComponents(bd);
  REQUIRE(comps.size() == 3);  // {0,1}, {2,3}, and the zero column {4}
  CHECK(comps[0] == std::vector<size_t>({0, 1}));
  CHECK(comps[1] == std::vector<size_t>({2, 3}));
  CHECK(comps[2] == std::vector<size_t>({4}));
}

TEST_CASE("decomposition tree of a two-triangle 2-sum") {
  // The 2-sum of two triangles along a shared virtual edge is the 4-cycle.
  auto c4 = fromRows({{1, 0, 0, -1},
                      {-1, 1, 0, 0},
                      {0, -1, 1, 0},
                      {0, 0, -1, 1}});
  CHECK(!findSeparation(c4, 1).has_value());
  auto tree = buildDecompositionTree(c4);
  REQUIRE(tree.pieces.size() == 2);
  REQUIRE(tree.edges.size() == 1);
  CHECK(tree.pieces[0].size() == 3);
  CHECK(tree.pieces[1].size() == 3);

  // Recomposition gives back the original columns.
  for (auto order : {std::vector<size_t>{0}}) {
    Configuration re = recompose(tree, order);
    REQUIRE(re.size() == c4.size());
    for (size_t j = 0; j < c4.size(); ++j) {
      size_t pos = re.indexOf(c4.labels[j]);
      CHECK(lexCompare(re.cols[pos], c4.cols[j]) == 0);
    }
  }

  // The 5-cycle splits into a path of three triangle-sized pieces.
  auto chain = fromRows({{1, 0, 0, 0, -1},
                         {-1, 1, 0, 0, 0},
                         {0, -1, 1, 0, 0},
                         {0, 0, -1, 1, 0},
                         {0, 0, 0, -1, 1}});
  CHECK(!findSeparation(chain, 1).has_value());
  auto t3 = buildDecompositionTree(chain);
  CHECK(t3.pieces.size() == 3);
  CHECK(t3.edges.size() == 2);
  std::vector<size_t> order(t3.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(5);
  for (int it = 0; it < 3; ++it) {
    std::shuffle(order.begin(), order.end(), rng);
    Configuration re = recompose(t3, order);
    REQUIRE(re.size() == chain.size());
    // Exact column equality under label identification implies equal kernels.
    for (size_t j = 0; j < chain.size(); ++j) {
      size_t pos = re.indexOf(chain.labels[j]);
      CHECK(lexCompare(re.cols[pos], chain.cols[j]) == 0);
    }
  }

  // Already 3-connected: single node.
  auto k4 = fromRows({{1, 1, 1, 0, 0, 0},
                      {-1, 0, 0, 1, 1, 0},
                      {0, -1, 0, -1, 0, 1},
                      {0, 0, -1, 0, -1, -1}});
  CHECK(buildDecompositionTree(k4).pieces.size() == 1);
}

TEST_CASE("splitting invariant on small 2-sums") {
  // Built 2-sums: piece A1 and A2 sharing a marker; every circulation of the
  // composed configuration splits into piece circulations with opposite
  // marker flows.
  std::mt19937_64 rng(7);
  int tested = 0;
  for (int it = 0; it < 20 && tested < 8; ++it) {
    auto r1 = randomIncidence(rng, 3 + rng() % 2, 2);
    auto a1 = fromRows(r1, "a");
    auto cs1 = circuits(a1);
    if (cs1.empty()) continue;
    // Marker: a column participating in some circuit of A1 (so the span
    // condition of the 2-sum can hold); reuse one of A1's columns as the
    // shared direction by adding a fresh parallel column to A2.
    size_t pick = 0;
    bool found = false;
    for (size_t j = 0; j < a1.size() && !found; ++j)
      for (const auto& c : cs1)
        if (c.coeff[j] != 0) {
          pick = j;
          found = true;
          break;
        }
    if (!found) continue;
    RatVector marker = a1.cols[pick];

    // A2: a triangle in the same ambient built on the marker direction.
    Configuration a2(a1.ambient);
    a2.push("b0", marker);
    RatVector other(a1.ambient);
    other[0] = Rational(1);
    a2.push("b1", other);
    RatVector third(a1.ambient);
    for (size_t i = 0; i < a1.ambient; ++i) third[i] = -(marker[i] + other[i]);
    a2.push("b2", third);

    // Composed configuration: (A1 - marker slot stays) with A2's non-marker
    // columns; the 2-sum identifies marker = b0.
    Configuration composed = a1;
    composed.push("b1", other);
    composed.push("b2", third);

    // Every circuit of the composition splits.
    for (const auto& c : circuits(composed)) {
      ++tested;
      RatVector sum1(a1.ambient);
      for (size_t j = 0; j < a1.size(); ++j)
        for (size_t i = 0; i < a1.ambient; ++i)
          sum1[i] += a1.cols[j][i] * Rational(c.coeff[j]);
      // phi with sum1 + phi * marker in ker of ... the A2 side must absorb
      // -sum1 as a multiple of marker plus its own columns' span.
      RatVector sum2(a1.ambient);
      for (size_t j = 0; j < 2; ++j)
        for (size_t i = 0; i < a1.ambient; ++i)
          sum2[i] += composed.cols[a1.size() + j][i] * Rational(c.coeff[a1.size() + j]);
      // Splitting: sum1 = -sum2 = phi * marker for some phi (possibly 0
      // when the circuit lives on one side).
      std::optional<Rational> phi;
      bool proportional = true;
      for (size_t i = 0; i < a1.ambient; ++i) {
        if (marker[i].isZero()) {
          if (!sum1[i].isZero()) proportional = false;
        } else {
          Rational cand = sum1[i] / marker[i];
          if (!phi)
            phi = cand;
          else if (*phi != cand)
            proportional = false;
        }
      }
      CHECK(proportional);
      for (size_t i = 0; i < a1.ambient; ++i) CHECK(sum1[i] + sum2[i] == Rational(0));
    }
  }
  CHECK(tested >= 8);
}

TEST_CASE("upper weight") {
  // W = 0 gives 0.
  auto tri = fromRows({{1, 0, -1}, {-1, 1, 0}, {0, -1, 1}});
  Configuration far = tri;
  far.push("~mk", {Rational(1), Rational(-1), Rational(0)});
  CHECK(upperWeight(far, 3, {0, 0, 0, 0}) == 0);
  // Weight on one side: the value equals the crossing circuit's weight there.
  long long uw = upperWeight(far, 3, {2, 0, 0, 0});
  // The reference circuit crossing the marker uses edge 0 with -marker's
  // orientation; |uw| = 2 regardless of the chosen sign of the circuit.
  CHECK(std::llabs(uw) == 2);
  // Coloop side: marker not in any circuit.
  Configuration bad(2);
  bad.push("a", {Rational(1), Rational(0)});
  bad.push("~mk", {Rational(0), Rational(1)});
  CHECK_THROWS_AS(upperWeight(bad, 1, {0, 0}), ValidationError);
}

TEST_CASE("classify children") {
  auto tri = fromRows({{1, 1, 1}});
  CHECK(classifyChild(tri, IntMatrix(1, 3), 0) == ChildKind::Tame);
  CHECK(classifyChild(tri, IntMatrix::fromRows({{0, 1, 2}}), 0) == ChildKind::Wild);
  // Equal weights on both non-root columns: crossing circuits agree.
  CHECK(classifyChild(tri, IntMatrix::fromRows({{0, 5, 5}}), 0) == ChildKind::Tame);
}

TEST_CASE("gadget construction") {
  RatVector marker = {Rational(1), Rational(-1)};
  long long gamma = 3;
  std::vector<std::optional<Rational>> f(2 * gamma + 1);
  // f identically -infinity except f(0) = 0: all copies pinned to zero.
  f[gamma] = Rational(0);
  auto g0 = buildGadget(marker, gamma, f, {0});
  for (size_t j = 1; j < g0.cfg.size(); ++j) {
    CHECK(g0.lo[j] == 0);
    CHECK(g0.hi[j] == 0);
  }

  // f(phi) = -|phi|: all live copies carry profit -1.
  for (long long phi = -gamma; phi <= gamma; ++phi)
    f[size_t(phi + gamma)] = Rational(-std::llabs(phi));
  auto g1 = buildGadget(marker, gamma, f, {2});
  for (size_t j = 1; j < g1.cfg.size(); ++j) {
    CHECK(g1.profits[j] == Rational(-1));
    CHECK(g1.hi[j] == 1);
  }
  // Gadget circuits all have zero weight.
  CHECK(maxCircuitWeight(g1.cfg, g1.w) == 0);

  // Linear f: one sign gets +c, the other -c.
  for (long long phi = -gamma; phi <= gamma; ++phi)
    f[size_t(phi + gamma)] = Rational(2 * phi);
  auto g2 = buildGadget(marker, gamma, f, {0});
  CHECK(g2.profits[1] == Rational(2));                    // "+1" copy
  CHECK(g2.profits[size_t(gamma) + 1] == Rational(-2));   // "-1" copy

  // Non-concave f rejected; f(0) != 0 rejected.
  f[size_t(gamma + 1)] = Rational(-5);
  f[size_t(gamma + 2)] = Rational(0);
  CHECK_THROWS_AS(buildGadget(marker, gamma, f, {0}), ValidationError);
  std::vector<std::optional<Rational>> f2(2 * gamma + 1, Rational(1));
  CHECK_THROWS_AS(buildGadget(marker, gamma, f2, {0}), ValidationError);
}

TEST_CASE("gadget value function matches the tame subtree") {
  // Tame subtree: triangle with equal weights; compute f by LP and check the
  // gadget reproduces it by direct enumeration.
  auto tri = fromRows({{1, 0, -1}, {-1, 1, 0}, {0, -1, 1}});
  Configuration sub = tri;
  RatVector marker = {Rational(1), Rational(-1), Rational(0)};
  sub.push("~up", marker);
  // All circuits crossing ~up have equal (zero) weight under w = 0. The
  // profits sum to zero on the triangle circuit so that f(0) = 0.
  long long gamma = 3;
  std::vector<std::optional<Rational>> f(2 * gamma + 1);
  std::vector<long long> lo = {0, -1, -1}, hi = {1, 1, 2}, p = {1, -2, 1};
  RatMatrix am = sub.matrix();
  RatVector zero(sub.ambient);
  for (long long phi = -gamma; phi <= gamma; ++phi) {
    std::vector<ExtendedBound> l, h;
    for (size_t j = 0; j < 3; ++j) {
      l.push_back(ExtendedBound::of(lo[j]));
      h.push_back(ExtendedBound::of(hi[j]));
    }
    l.push_back(ExtendedBound::of(phi));
    h.push_back(ExtendedBound::of(phi));
    RatVector obj = {Rational(p[0]), Rational(p[1]), Rational(p[2]), Rational(0)};
    auto r = lpSolve(am, zero, l, h, obj);
    if (r.status == LpOutcome::Status::Optimal) f[size_t(phi + gamma)] = r.value;
  }
  REQUIRE(f[gamma].has_value());
  REQUIRE(f[gamma]->isZero());
  auto g = buildGadget(marker, gamma, f, {0});
  // Direct solve of the gadget at each flow: greedy over sorted profits
  // equals f by construction; verify by brute enumeration over copies.
  size_t copies = g.cfg.size() - 1;
  for (long long phi = -gamma; phi <= gamma; ++phi) {
    std::optional<long long> best;
    for (uint32_t mask = 0; mask < (1u << copies); ++mask) {
      long long flow = 0;
      Rational val;
      bool ok = true;
      for (size_t j = 0; j < copies; ++j) {
        if (!(mask >> j & 1)) continue;
        if (g.hi[j + 1] == 0) ok = false;
        // copies of -marker carry +1 unit of flow
        flow += (j < size_t(gamma)) ? 1 : -1;
        val += g.profits[j + 1];
      }
      if (!ok || flow != phi) continue;
      if (!val.isInteger()) continue;
      long long vi = val.toLongLong();
      if (!best || vi > *best) best = vi;
    }
    if (f[size_t(phi + gamma)]) {
      REQUIRE(best.has_value());
      CHECK(Rational(*best) == *f[size_t(phi + gamma)]);
    } else {
      CHECK(!best.has_value());
    }
  }
}

TEST_CASE("solve mcicp equals the oracle on random graphic instances") {
  std::mt19937_64 rng(11);
  int feasible = 0, infeasible = 0;
  for (int it = 0; it < 80; ++it) {
    long long k = 1 + rng() % 2, delta = 1 + rng() % 2;
    if (k == 2) delta = 1;
    auto rows = randomIncidence(rng, 3 + rng() % 3, 2 + rng() % 4);
    auto instOpt = randomMcicpOn(rng, fromRows(rows), k, delta);
    if (!instOpt) continue;
    const auto& inst = *instOpt;
    auto expect = oracleSolve(inst);
    auto got = solveMcicp(inst);
    CHECK(got.feasible == expect.feasible);
    if (expect.feasible) {
      CHECK(got.value == expect.value);
      ++feasible;
    } else {
      ++infeasible;
    }
  }
  CHECK(feasible > 20);
  CHECK(infeasible > 3);
}

TEST_CASE("solve one sum equals a direct oracle on concatenated instances") {
  std::mt19937_64 rng(13);
  int done = 0;
  for (int it = 0; it < 30 && done < 12; ++it) {
    long long k = 1, delta = 1;
    auto r1 = randomIncidence(rng, 3, 2);
    auto r2 = randomIncidence(rng, 3, 1 + rng() % 2);
    auto c1 = randomMcicpOn(rng, fromRows(r1, "a"), k, delta);
    auto c2 = randomMcicpOn(rng, fromRows(r2, "b"), k, delta);
    if (!c1 || !c2) continue;
    // Concatenated instance in block-diagonal ambient.
    size_t m1 = c1->a.ambient, m2 = c2->a.ambient;
    Configuration cat(m1 + m2);
    for (size_t j = 0; j < c1->a.size(); ++j) {
      RatVector col(m1 + m2);
      for (size_t i = 0; i < m1; ++i) col[i] = c1->a.cols[j][i];
      cat.push(c1->a.labels[j], col);
    }
    for (size_t j = 0; j < c2->a.size(); ++j) {
      RatVector col(m1 + m2);
      for (size_t i = 0; i < m2; ++i) col[m1 + i] = c2->a.cols[j][i];
      cat.push(c2->a.labels[j], col);
    }
    McicpInstance whole;
    whole.a = cat;
    whole.delta = delta;
    whole.w = IntMatrix(k, cat.size());
    for (size_t j = 0; j < c1->a.size(); ++j) whole.w.at(0, j) = c1->w.at(0, j);
    for (size_t j = 0; j < c2->a.size(); ++j) whole.w.at(0, c1->a.size() + j) = c2->w.at(0, j);
    whole.p = c1->p;
    whole.p.insert(whole.p.end(), c2->p.begin(), c2->p.end());
    whole.lo = c1->lo;
    whole.lo.insert(whole.lo.end(), c2->lo.begin(), c2->lo.end());
    whole.hi = c1->hi;
    whole.hi.insert(whole.hi.end(), c2->hi.begin(), c2->hi.end());
    whole.d = {(long long)(rng() % 3) - 1};
    if (maxCircuitWeight(whole.a, whole.w) > delta) continue;

    auto viaOneSum = solveOneSum({*c1, *c2}, whole.d, delta);
    auto expect = oracleSolve(whole);
    CHECK(viaOneSum.feasible == expect.feasible);
    if (expect.feasible) CHECK(viaOneSum.value == expect.value);
    ++done;
  }
  CHECK(done >= 10);
}

TEST_CASE("two sum dp on composed instances with forced crossing flow") {
  // Diamond graph incidence: 2-sum of two triangles; weights on one side
  // force flow across the separation.
  auto diamond = fromRows({{1, 1, 0, 0, 0},
                           {-1, 0, 1, 1, 0},
                           {0, -1, -1, 0, 1},
                           {0, 0, 0, -1, -1}});
  McicpInstance inst;
  inst.a = diamond;
  inst.delta = 1;
  inst.w = IntMatrix::fromRows({{1, 0, 0, 0, 0}});
  inst.d = {1};
  inst.p = {0, 0, 1, 1, 0};
  inst.lo = {-1, -1, -1, -1, -1};
  inst.hi = {1, 1, 1, 1, 1};
  REQUIRE(maxCircuitWeight(inst.a, inst.w) <= 1);
  auto expect = oracleSolve(inst);
  auto got = solveMcicp(inst);
  REQUIRE(expect.feasible);
  CHECK(got.feasible);
  CHECK(got.value == expect.value);
}

TEST_CASE("two sum dp handles instances engineered with tame children") {
  // Chain of three triangles; weights supported on the middle piece only, so
  // the outer pieces become tame children and go through the gadget path.
  auto chain = fromRows({{1, 1, 0, 0, 0, 0, 0},
                         {-1, 0, 1, 1, 0, 0, 0},
                         {0, -1, -1, 0, 1, 1, 0},
                         {0, 0, 0, -1, -1, 0, 1},
                         {0, 0, 0, 0, 0, -1, -1}});
  std::mt19937_64 rng(17);
  for (int it = 0; it < 25; ++it) {
    McicpInstance inst;
    inst.a = chain;
    inst.delta = 1;
    inst.w = IntMatrix(1, 7);
    inst.w.at(0, 2) = 1;
    inst.w.at(0, 3) = -1;
    if (maxCircuitWeight(inst.a, inst.w) > 1) continue;
    inst.d = {(long long)(rng() % 3) - 1};
    inst.p.resize(7);
    inst.lo.resize(7);
    inst.hi.resize(7);
    for (size_t j = 0; j < 7; ++j) {
      inst.p[j] = (long long)(rng() % 5) - 2;
      inst.lo[j] = -(long long)(rng() % 2) - 1;
      inst.hi[j] = (long long)(rng() % 2) + 1;
    }
    auto expect = oracleSolve(inst);
    auto got = solveMcicp(inst);
    CHECK(got.feasible == expect.feasible);
    if (expect.feasible) CHECK(got.value == expect.value);
  }
}

TEST_CASE("wild crossing bound on enumerated circuits") {
  // Circuits cross at most 2*k*delta markers whose subtree is wild. Checked
  // on random weighted incidence instances against the built tree.
  std::mt19937_64 rng(23);
  int checkedCircuits = 0;
  for (int it = 0; it < 30 && checkedCircuits < 40; ++it) {
    long long k = 1, delta = 1;
    auto rows = randomIncidence(rng, 4 + rng() % 2, 3 + rng() % 2);
    auto cfg = fromRows(rows);
    if (findSeparation(cfg, 1).has_value()) continue;
    if (cfg.size() < 4) continue;
    auto instOpt = randomMcicpOn(rng, cfg, k, delta);
    if (!instOpt) continue;
    DecompositionTree tree;
    try {
      tree = buildDecompositionTree(cfg);
    } catch (const CapExceeded&) {
      continue;
    }
    if (tree.edges.empty()) continue;
    // For each marker edge: wild iff the side configurations have circuits
    // with differing crossing weights. Count crossings per circuit.
    for (const auto& c : circuits(cfg)) {
      int wildCrossings = 0;
      for (const auto& e : tree.edges) {
        // Side of the edge: columns of the pieces reachable from t2 without
        // using this edge.
        std::vector<bool> side(tree.pieces.size(), false);
        std::vector<size_t> stack = {e.t2};
        side[e.t2] = true;
        while (!stack.empty()) {
          size_t t = stack.back();
          stack.pop_back();
          for (const auto& e2 : tree.edges) {
            if (e2.marker == e.marker) continue;
            size_t other = SIZE_MAX;
            if (e2.t1 == t) other = e2.t2;
            if (e2.t2 == t) other = e2.t1;
            if (other != SIZE_MAX && !side[other]) {
              side[other] = true;
              stack.push_back(other);
            }
          }
        }
        // Subtree columns and marker vector.
        Configuration sub(cfg.ambient);
        std::vector<size_t> subIdx;
        for (size_t t = 0; t < tree.pieces.size(); ++t) {
          if (!side[t]) continue;
          for (size_t j = 0; j < tree.pieces[t].size(); ++j) {
            const auto& l = tree.pieces[t].labels[j];
            if (l.rfind("~m", 0) == 0) continue;
            subIdx.push_back(cfg.indexOf(l));
          }
        }
        // Crossing flow of the circuit at this marker: net column sum of
        // the subtree side (nonzero iff the circuit crosses).
        RatVector s(cfg.ambient);
        for (size_t g : subIdx)
          for (size_t i = 0; i < cfg.ambient; ++i)
            s[i] += cfg.cols[g][i] * Rational(c.coeff[g]);
        bool crosses = !isZeroVector(s);
        if (!crosses) continue;
        // Wild test on the side configuration.
        const Configuration& p1 = tree.pieces[e.t1];
        RatVector marker = p1.cols[p1.indexOf(e.marker)];
        Configuration sideCfg = cfg.select(subIdx);
        sideCfg.push("~up", marker);
        IntMatrix wSub(1, sideCfg.size());
        for (size_t j = 0; j < subIdx.size(); ++j) wSub.at(0, j) = instOpt->w.at(0, subIdx[j]);
        if (classifyChild(sideCfg, wSub, sideCfg.size() - 1) == ChildKind::Wild) ++wildCrossings;
      }
      CHECK(wildCrossings <= 2 * k * delta);
      ++checkedCircuits;
    }
  }
  CHECK(checkedCircuits >= 40);
}
