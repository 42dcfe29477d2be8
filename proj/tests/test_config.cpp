#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "configuration.hpp"
#include "lp.hpp"
#include "oracle.hpp"

using namespace ntu;

namespace {

Configuration fromRows(const std::vector<std::vector<long long>>& rows) {
  Configuration c(rows.size());
  size_t n = rows.empty() ? 0 : rows[0].size();
  for (size_t j = 0; j < n; ++j) {
    RatVector col(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) col[i] = Rational(rows[i][j]);
    c.push("c" + std::to_string(j), std::move(col));
  }
  return c;
}

std::set<std::vector<long long>> circuitSet(const std::vector<Circuit>& cs) {
  std::set<std::vector<long long>> s;
  for (const auto& c : cs) s.insert(c.coeff);
  return s;
}

// Incidence configuration of a directed triangle: e1=(1,-1,0)', e2=(0,1,-1)',
// e3=(-1,0,1)'.
Configuration triangle() {
  return fromRows({{1, 0, -1}, {-1, 1, 0}, {0, -1, 1}});
}

std::vector<std::vector<long long>> randomIncidenceRows(std::mt19937_64& rng, size_t nv,
                                                        size_t ne) {
  std::vector<std::vector<long long>> rows(nv, std::vector<long long>(ne, 0));
  for (size_t e = 0; e < ne; ++e) {
    size_t u = rng() % nv, v = rng() % nv;
    while (v == u) v = rng() % nv;
    rows[u][e] = 1;
    rows[v][e] = -1;
  }
  return rows;
}

}  // namespace

TEST_CASE("circuits of a single row") {
  auto cs = circuits(fromRows({{1, 1, 1}}));
  auto s = circuitSet(cs);
  CHECK(s.size() == 6);
  CHECK(s.count({1, -1, 0}));
  CHECK(s.count({-1, 1, 0}));
  CHECK(s.count({1, 0, -1}));
  CHECK(s.count({0, 1, -1}));
}

TEST_CASE("circuits of identity and triangle") {
  CHECK(circuits(fromRows({{1, 0}, {0, 1}})).empty());
  auto s = circuitSet(circuits(triangle()));
  CHECK(s.size() == 2);
  CHECK(s.count({1, 1, 1}));
  CHECK(s.count({-1, -1, -1}));
}

TEST_CASE("circuits cap") {
  Configuration big(1);
  for (int j = 0; j < 20; ++j) big.push("c" + std::to_string(j), {Rational(1)});
  CHECK_THROWS_AS(circuits(big), CapExceeded);
}

TEST_CASE("circuit entries of TU configurations are in {-1,0,1}") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 40; ++it) {
    auto cfg = fromRows(randomIncidenceRows(rng, 3 + rng() % 3, 4 + rng() % 5));
    for (const auto& c : circuits(cfg))
      for (long long x : c.coeff) CHECK(std::llabs(x) <= 1);
  }
}

TEST_CASE("total unimodularity") {
  CHECK(isTotallyUnimodular(triangle()));
  CHECK(!isTotallyUnimodular(fromRows({{1, 1}, {1, 2}})));
  CHECK(!isTotallyUnimodular(fromRows({{1, 1}, {-1, 1}})));
  std::mt19937_64 rng(29);
  for (int it = 0; it < 20; ++it)
    CHECK(isTotallyUnimodular(fromRows(randomIncidenceRows(rng, 2 + rng() % 4, 1 + rng() % 6))));
}

TEST_CASE("stacked delta modularity matches examples") {
  auto a = fromRows({{1, 1}});
  CHECK(isTotallyDeltaModularStacked(a, {1, 2}, 2));
  CHECK(!isTotallyDeltaModularStacked(a, {1, 2}, 1));
  CHECK(isTotallyDeltaModularStacked(a, {0, 0}, 1));
  auto id2 = fromRows({{1, 0}, {0, 1}});
  CHECK(isTotallyDeltaModularStacked(id2, {1, -1}, 1));
  CHECK(!isTotallyDeltaModularStacked(id2, {2, 0}, 1));
}

TEST_CASE("stacked delta modularity equals subdeterminant scan") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long long> wdist(-3, 3);
  for (int it = 0; it < 60; ++it) {
    auto rows = randomIncidenceRows(rng, 2 + rng() % 3, 2 + rng() % 4);
    auto a = fromRows(rows);
    std::vector<long long> w(a.size());
    for (auto& x : w) x = wdist(rng);
    auto stacked = rows;
    stacked.push_back(w);
    long long maxSub = oracle::maxAbsSubdeterminant(stacked);
    for (long long delta = 1; delta <= 5; ++delta)
      CHECK(isTotallyDeltaModularStacked(a, w, delta) == (maxSub <= delta));
  }
}

TEST_CASE("max circuit weight") {
  auto a = fromRows({{1, 1, 1}});
  CHECK(maxCircuitWeight(a, IntMatrix::fromRows({{1, 0, 0}})) == 1);
  CHECK(maxCircuitWeight(fromRows({{1, 0}, {0, 1}}), IntMatrix::fromRows({{7, 7}})) == 0);
  CHECK(maxCircuitWeight(a, IntMatrix::fromRows({{3, 0, 0}})) == 3);
}

TEST_CASE("conformal decomposition spec cases") {
  auto a = fromRows({{1, 1, 1}});
  auto lo = finiteBounds(std::vector<long long>{-5, -5, -5});
  auto hi = finiteBounds(std::vector<long long>{5, 5, 5});

  auto terms = conformalDecompose(a, ratVectorOf({0, 0, 0}), ratVectorOf({2, -1, -1}), lo, hi);
  REQUIRE(terms.size() == 2);
  std::set<std::vector<long long>> seen;
  for (const auto& t : terms) {
    CHECK(t.lambda == Rational(1));
    seen.insert(t.circuit.coeff);
  }
  CHECK(seen.count({1, -1, 0}));
  CHECK(seen.count({1, 0, -1}));

  CHECK(conformalDecompose(a, ratVectorOf({1, -1, 0}), ratVectorOf({1, -1, 0}), lo, hi).empty());

  auto single = conformalDecompose(a, ratVectorOf({0, 0, 0}), ratVectorOf({3, -3, 0}), lo, hi);
  REQUIRE(single.size() == 1);
  CHECK(single[0].lambda == Rational(3));
}

TEST_CASE("conformal decomposition properties on random pairs") {
  std::mt19937_64 rng(37);
  for (int it = 0; it < 60; ++it) {
    size_t nv = 3 + rng() % 2, ne = 4 + rng() % 3;
    auto rows = randomIncidenceRows(rng, nv, ne);
    auto cfg = fromRows(rows);
    RatMatrix m = cfg.matrix();
    std::vector<long long> loI(ne, -4), hiI(ne, 4);
    auto lo = finiteBounds(loI), hi = finiteBounds(hiI);
    std::vector<long long> x(ne);
    for (auto& v : x) v = static_cast<long long>(rng() % 5) - 2;
    auto cs = circuits(cfg);
    std::vector<long long> xp = x;
    for (int step = 0; step < 6 && !cs.empty(); ++step) {
      const auto& c = cs[rng() % cs.size()];
      std::vector<long long> cand = xp;
      bool ok = true;
      for (size_t j = 0; j < ne; ++j) {
        cand[j] += c.coeff[j];
        if (cand[j] < loI[j] || cand[j] > hiI[j]) ok = false;
      }
      if (ok) xp = cand;
    }
    RatVector rx = ratVectorOf(x), rxp = ratVectorOf(xp);
    auto terms = conformalDecompose(cfg, rx, rxp, lo, hi);
    RatVector acc = rx;
    for (const auto& t : terms) {
      CHECK(t.lambda > Rational(0));
      CHECK(t.lambda.isInteger());
      for (size_t j = 0; j < ne; ++j) acc[j] += t.lambda * Rational(t.circuit.coeff[j]);
    }
    CHECK(lexCompare(acc, rxp) == 0);
    for (size_t i = 0; i < terms.size(); ++i)
      for (size_t j = i + 1; j < terms.size(); ++j)
        for (size_t t = 0; t < ne; ++t)
          CHECK(terms[i].circuit.coeff[t] * terms[j].circuit.coeff[t] >= 0);
    // Sampled partial sums stay feasible.
    for (int trial = 0; trial < 5; ++trial) {
      RatVector part = rx;
      for (const auto& t : terms) {
        Rational mu = Rational(static_cast<long long>(rng() % (t.lambda.toLongLong() + 1)));
        for (size_t j = 0; j < ne; ++j) part[j] += mu * Rational(t.circuit.coeff[j]);
      }
      RatVector mp = m.apply(part), mx = m.apply(rx);
      for (size_t i = 0; i < nv; ++i) CHECK(mp[i] == mx[i]);
      for (size_t j = 0; j < ne; ++j) {
        CHECK(part[j] >= Rational(loI[j]));
        CHECK(part[j] <= Rational(hiI[j]));
      }
    }
  }
}

TEST_CASE("standardize") {
  auto a = fromRows({{1, 1, 0}, {-1, 0, 1}});
  auto s = standardize(a);
  CHECK(s.basis.size() == 2);

  // Rank-deficient input with a dependent and a zero row.
  auto b = fromRows({{1, 1}, {2, 2}, {0, 0}});
  auto sb = standardize(b);
  CHECK(sb.basis.size() == 1);
  CHECK(sb.d.rows() == 1);
  CHECK(sb.d.cols() == 1);
  // Kernel equality through the permutation.
  auto kb = kernelBasis(b.matrix());
  for (const auto& v : kb) {
    size_t n = b.size(), r = sb.basis.size();
    RatVector perm(n);
    for (size_t pos = 0; pos < n; ++pos) perm[pos] = v[sb.colOrder[pos]];
    for (size_t i = 0; i < r; ++i) {
      Rational s2;
      for (size_t j = 0; j < n - r; ++j) s2 += sb.d.at(i, j) * perm[j];
      s2 += perm[n - r + i];
      CHECK(s2.isZero());
    }
  }
}

TEST_CASE("cocircuits") {
  auto a = fromRows({{1, 1}});
  auto s = circuitSet(cocircuits(a));
  CHECK(s.size() == 2);
  CHECK(s.count({1, 1}));

  auto id2 = fromRows({{1, 0}, {0, 1}});
  auto sid = circuitSet(cocircuits(id2));
  CHECK(sid.size() == 4);
  CHECK(sid.count({1, 0}));
  CHECK(sid.count({0, 1}));

  // Triangle: signed incidence vectors of the three single-vertex cuts.
  auto st = circuitSet(cocircuits(triangle()));
  CHECK(st.size() == 6);
  CHECK(st.count({1, 0, -1}));
  CHECK((st.count({1, -1, 0}) + st.count({-1, 1, 0})) == 2);
}

TEST_CASE("circuit cocircuit orthogonality") {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 25; ++it) {
    auto cfg = fromRows(randomIncidenceRows(rng, 3 + rng() % 2, 3 + rng() % 4));
    auto cs = circuits(cfg);
    auto ccs = cocircuits(cfg);
    for (const auto& c : cs)
      for (const auto& cc : ccs) {
        long long s = 0;
        for (size_t j = 0; j < cfg.size(); ++j) s += c.coeff[j] * cc.coeff[j];
        CHECK(s == 0);
      }
  }
}

TEST_CASE("zero on basis") {
  auto a = fromRows({{1, 1}});
  auto w2 = zeroOnBasis(a, {1}, {0, 5});
  CHECK(w2[1] == 0);
  CHECK(w2[0] * 1 + w2[1] * (-1) == -5);

  auto w3 = zeroOnBasis(a, {1}, {7, 0});
  CHECK(w3 == std::vector<long long>({7, 0}));
  auto w4 = zeroOnBasis(a, {1}, {0, 0});
  CHECK(w4 == std::vector<long long>({0, 0}));
  CHECK_THROWS_AS(zeroOnBasis(a, {0, 1}, {1, 1}), ValidationError);
}

TEST_CASE("zero on basis is weight equivalent on all circuits") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<long long> wdist(-4, 4);
  for (int it = 0; it < 25; ++it) {
    auto cfg = fromRows(randomIncidenceRows(rng, 3 + rng() % 2, 4 + rng() % 3));
    auto m = cfg.matrix();
    std::vector<size_t> basis = greedyColumnBasis(m);
    std::vector<long long> w(cfg.size());
    for (auto& x : w) x = wdist(rng);
    auto w2 = zeroOnBasis(cfg, basis, w);
    for (size_t i : basis) CHECK(w2[i] == 0);
    for (const auto& c : circuits(cfg)) {
      long long s1 = 0, s2 = 0;
      for (size_t j = 0; j < cfg.size(); ++j) {
        s1 += w[j] * c.coeff[j];
        s2 += w2[j] * c.coeff[j];
      }
      CHECK(s1 == s2);
    }
  }
}

TEST_CASE("tameness") {
  auto a = fromRows({{1, 1, 1}});
  CHECK(isTame(a, IntMatrix(1, 3), 0));
  CHECK(!isTame(a, IntMatrix::fromRows({{0, 1, 2}}), 0));
  auto pp = fromRows({{1, 1}});
  CHECK(isTame(pp, IntMatrix::fromRows({{0, 9}}), 0));
  auto blockdiag = fromRows({{1, 1, 0}, {0, 0, 1}});
  CHECK_THROWS_AS(isTame(blockdiag, IntMatrix(1, 3), 0), ValidationError);
}

TEST_CASE("tameness matches the crossing-circuit definition") {
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<long long> wdist(-2, 2);
  int tameSeen = 0, wildSeen = 0;
  for (int it = 0; it < 80; ++it) {
    // Cycle plus chords: usually 2-connected.
    size_t nv = 3 + rng() % 3;
    std::vector<std::pair<size_t, size_t>> es;
    for (size_t v = 0; v < nv; ++v) es.push_back({v, (v + 1) % nv});
    size_t extra = rng() % 3;
    for (size_t e = 0; e < extra; ++e) {
      size_t u = rng() % nv, v = rng() % nv;
      if (u != v) es.push_back({u, v});
    }
    std::vector<std::vector<long long>> rows(nv, std::vector<long long>(es.size(), 0));
    for (size_t e = 0; e < es.size(); ++e) {
      rows[es[e].first][e] = 1;
      rows[es[e].second][e] = -1;
    }
    auto cfg = fromRows(rows);
    IntMatrix w(1, es.size());
    for (size_t j = 0; j < es.size(); ++j) w.at(0, j) = wdist(rng);
    size_t root = rng() % es.size();

    bool tame;
    try {
      tame = isTame(cfg, w, root);
    } catch (const ValidationError&) {
      continue;  // not 2-connected
    }
    auto cs = circuits(cfg);
    std::optional<std::vector<long long>> wref;
    bool defTame = true;
    for (const auto& c : cs) {
      if (c.coeff[root] != 1) continue;
      auto wc = applyInt(w, c.coeff);
      if (!wref)
        wref = wc;
      else if (*wref != wc)
        defTame = false;
    }
    CHECK(tame == defTame);
    (tame ? tameSeen : wildSeen)++;
  }
  CHECK(tameSeen > 5);
  CHECK(wildSeen > 5);
}
