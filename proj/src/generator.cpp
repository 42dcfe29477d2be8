#include "generator.hpp"

#include <algorithm>
#include <set>

namespace ntu {

namespace {

DirectedGraph randomConnectedGraph(std::mt19937_64& rng, size_t nVerts, size_t nEdges) {
  DirectedGraph g;
  for (size_t v = 0; v < nVerts; ++v) g.addVertex("v" + std::to_string(v));
  for (size_t v = 1; v < nVerts; ++v) g.addEdge(rng() % v, v);
  while (g.nE() < nEdges) {
    size_t u = rng() % nVerts, v = rng() % nVerts;
    if (u != v) g.addEdge(u, v);
  }
  return g;
}

long long pick(std::mt19937_64& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

Instance generateMcipp(const GenOptions& opt, std::mt19937_64& rng) {
  long long gamma = fBound(std::max<long long>(1, opt.k), opt.delta);
  for (int attempt = 0; attempt < 400; ++attempt) {
    McippInstance mc;
    if (opt.twoBag && opt.nVerts >= 5) {
      // Two blobs glued on two vertices; bags are the blobs.
      size_t half = opt.nVerts / 2 + 1;
      DirectedGraph g;
      for (size_t v = 0; v < opt.nVerts; ++v) g.addVertex("v" + std::to_string(v));
      // blob 1: vertices [0, half); blob 2: [half-2, nVerts)
      for (size_t v = 1; v < half; ++v) g.addEdge(rng() % v, v);
      for (size_t v = half; v < opt.nVerts; ++v) {
        size_t lo = half - 2;
        g.addEdge(lo + rng() % (v - lo), v);
      }
      size_t want = std::max(opt.nEdges, g.nE());
      int guard = 0;
      while (g.nE() < want && ++guard < 100) {
        bool first = rng() % 2 == 0;
        size_t a = first ? rng() % half : half - 2 + rng() % (opt.nVerts - half + 2);
        size_t b = first ? rng() % half : half - 2 + rng() % (opt.nVerts - half + 2);
        if (a != b) g.addEdge(a, b);
      }
      mc.g = g;
    } else {
      mc.g = randomConnectedGraph(rng, opt.nVerts, opt.nEdges);
    }
    size_t nv = mc.g.nV();
    mc.delta = opt.delta;
    mc.p.assign(nv, 0);
    for (size_t v = 0; v + 1 < nv; ++v) {
      mc.p[v] = pick(rng, -2, 2);
      mc.p[nv - 1] -= mc.p[v];
    }
    // Sparse zero-sum weight rows; heavier rows rarely satisfy the docset
    // bound and blow up the guess spaces.
    mc.w.assign(opt.k, std::vector<long long>(nv, 0));
    for (size_t i = 0; i < (size_t)opt.k; ++i) {
      size_t a = rng() % nv, b = rng() % nv;
      if (a == b) b = (b + 1) % nv;
      mc.w[i][a] += 1;
      mc.w[i][b] -= 1;
      if (opt.k == 1 && rng() % 2) {
        size_t c = rng() % nv, d = rng() % nv;
        if (c != d) {
          mc.w[i][c] += 1;
          mc.w[i][d] -= 1;
        }
      }
    }
    mc.lo.resize(mc.g.nE());
    mc.hi.resize(mc.g.nE());
    for (size_t e = 0; e < mc.g.nE(); ++e) {
      mc.lo[e] = pick(rng, -2, 0);
      mc.hi[e] = pick(rng, 0, 2);
    }
    mc.d.assign(opt.k, 0);
    if (rng() % 3 != 0) {
      auto ds = docsets(mc.g, false);
      long long count = 1 + static_cast<long long>(rng() % std::min<long long>(3, gamma));
      std::vector<long long> y(nv, 0);
      for (long long c = 0; c < count; ++c) {
        uint32_t s = ds[rng() % ds.size()];
        for (size_t v = 0; v < nv; ++v)
          if (s >> v & 1) ++y[v];
      }
      for (size_t i = 0; i < (size_t)opt.k; ++i)
        for (size_t v = 0; v < nv; ++v) mc.d[i] += mc.w[i][v] * y[v];
    } else {
      for (auto& v : mc.d) v = pick(rng, -1, 1);
    }
    try {
      validateMcippInstance(mc);
    } catch (const ValidationError&) {
      continue;
    }
    Instance inst;
    inst.kind = InstanceKind::Mcipp;
    inst.k = opt.k;
    inst.delta = opt.delta;
    inst.columnLabels = mc.g.vertexLabels;
    inst.graph = mc.g;
    if (opt.twoBag) {
      // Bags from the blob construction when valid, else trivial.
      size_t half = opt.nVerts / 2 + 1;
      SpecialTreeDecomposition td;
      std::vector<size_t> bag1, bag2;
      for (size_t v = 0; v < half; ++v) bag1.push_back(v);
      for (size_t v = half - 2; v < opt.nVerts; ++v) bag2.push_back(v);
      td.bags = {bag1, bag2};
      td.parent = {SIZE_MAX, 0};
      td.root = 0;
      td.ell = 2;
      if (validateSpecialTd(mc.g, td).valid) inst.td = td;
    }
    inst.mcipp = std::move(mc);
    return inst;
  }
  throw CapExceeded("generator: rejection budget exhausted for mcipp");
}

Instance generateMcicp(const GenOptions& opt, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 400; ++attempt) {
    Configuration a;
    std::optional<DirectedGraph> graph;
    if (opt.graphed) {
      DirectedGraph g = randomConnectedGraph(rng, opt.nVerts, opt.nEdges);
      a = cographicConfiguration(g);
      graph = std::move(g);
    } else {
      // Incidence configuration of a random digraph, possibly disconnected:
      // cut vertices and bridges yield 1- and 2-separations downstream.
      size_t nv = opt.nVerts, ne = opt.nEdges;
      DirectedGraph g;
      for (size_t v = 0; v < nv; ++v) g.addVertex("u" + std::to_string(v));
      for (size_t e = 0; e < ne; ++e) {
        size_t u = rng() % nv, v = rng() % nv;
        if (u != v) g.addEdge(u, v);
      }
      if (g.nE() < 2) continue;
      a = incidenceConfiguration(g);
    }
    size_t n = a.size();
    if (n == 0 || n > 10) continue;
    // Fresh default labels (x0..) for the instance file.
    Configuration relabeled(a.ambient);
    for (size_t j = 0; j < n; ++j) relabeled.push("x" + std::to_string(j), a.cols[j]);

    EqualityInstance eq;
    eq.a = std::move(relabeled);
    eq.b.assign(eq.a.ambient, 0);
    eq.delta = opt.delta;
    eq.p.resize(n);
    eq.lo.resize(n);
    eq.hi.resize(n);
    for (size_t j = 0; j < n; ++j) {
      eq.p[j] = pick(rng, -3, 3);
      eq.lo[j] = pick(rng, -2, 0);
      eq.hi[j] = pick(rng, 0, 2);
    }
    eq.w = IntMatrix(opt.k, n);
    bool ok = false;
    for (int tries = 0; tries < 40 && !ok; ++tries) {
      for (size_t i = 0; i < (size_t)opt.k; ++i)
        for (size_t j = 0; j < n; ++j) eq.w.at(i, j) = pick(rng, -opt.delta, opt.delta);
      try {
        ok = maxCircuitWeight(eq.a, eq.w) <= opt.delta;
      } catch (const CapExceeded&) {
        break;
      }
    }
    if (!ok) continue;
    eq.d.assign(opt.k, 0);
    if (rng() % 3 != 0) {
      // Target of a feasible point reached by random circuit moves.
      std::vector<long long> x(n, 0);
      bool zeroFeasible = true;
      for (size_t j = 0; j < n; ++j)
        if (eq.lo[j] > 0 || eq.hi[j] < 0) zeroFeasible = false;
      if (zeroFeasible) {
        auto cs = circuits(eq.a);
        for (int step = 0; step < 5 && !cs.empty(); ++step) {
          const auto& c = cs[rng() % cs.size()];
          std::vector<long long> cand = x;
          bool fits = true;
          for (size_t j = 0; j < n; ++j) {
            cand[j] += c.coeff[j];
            if (cand[j] < eq.lo[j] || cand[j] > eq.hi[j]) fits = false;
          }
          if (fits) x = cand;
        }
        for (size_t i = 0; i < (size_t)opt.k; ++i)
          for (size_t j = 0; j < n; ++j) eq.d[i] += eq.w.at(i, j) * x[j];
      }
    } else {
      for (auto& v : eq.d) v = pick(rng, -1, 1);
    }
    try {
      validateEqualityInstance(eq);
    } catch (const std::exception&) {
      continue;
    }
    Instance inst;
    inst.kind = InstanceKind::Mcicp;
    inst.k = opt.k;
    inst.delta = opt.delta;
    inst.columnLabels = eq.a.labels;
    inst.equality = std::move(eq);
    if (graph) {
      std::string why;
      if (!verifyCographicCorrespondence(inst.equality->a, *graph, &why)) continue;
      inst.graph = std::move(graph);
    }
    return inst;
  }
  throw CapExceeded("generator: rejection budget exhausted for mcicp");
}

Instance generateIpEquality(const GenOptions& opt, std::mt19937_64& rng) {
  GenOptions sub = opt;
  sub.kind = "mcicp";
  sub.graphed = false;
  Instance inst = generateMcicp(sub, rng);
  inst.kind = InstanceKind::IpEquality;
  // Shift to a nonzero right-hand side via a random feasible point.
  EqualityInstance& eq = *inst.equality;
  size_t n = eq.nVars();
  std::vector<long long> x0(n);
  for (size_t j = 0; j < n; ++j) x0[j] = pick(rng, eq.lo[j], eq.hi[j]);
  RatMatrix am = eq.aMatrix();
  RatVector xr(n);
  for (size_t j = 0; j < n; ++j) xr[j] = Rational(x0[j]);
  RatVector b = am.apply(xr);
  for (size_t i = 0; i < eq.b.size(); ++i) eq.b[i] = b[i].toLongLong();
  for (size_t i = 0; i < eq.w.rows; ++i) {
    eq.d[i] = 0;
    for (size_t j = 0; j < n; ++j) eq.d[i] += eq.w.at(i, j) * x0[j];
  }
  inst.graph.reset();
  return inst;
}

Instance generateIpGeneral(const GenOptions& opt, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 400; ++attempt) {
    size_t n = opt.nVars;
    size_t nTu = n - static_cast<size_t>(opt.extraCols);
    if (nTu == 0 || nTu > 6) continue;
    // TU part: interval rows (a contiguous block of ones) over the TU
    // columns are totally unimodular together with the signed box rows.
    std::vector<std::vector<long long>> rows;
    std::vector<long long> rhs;
    for (size_t r = 0; r < 2; ++r) {
      std::vector<long long> row(n, 0);
      size_t a = rng() % nTu, b = rng() % nTu;
      if (a > b) std::swap(a, b);
      for (size_t j = a; j <= b; ++j) row[j] = 1;
      if (rng() % 2)
        for (size_t j = 0; j < nTu; ++j) row[j] = -row[j];
      // Extra columns may couple arbitrarily; they are guessed away.
      for (size_t c = 0; c < static_cast<size_t>(opt.extraCols); ++c)
        row[nTu + c] = pick(rng, -1, 1);
      rows.push_back(row);
      rhs.push_back(pick(rng, 0, 3));
    }
    // Box rows for every variable.
    std::vector<long long> boxLo(n), boxHi(n);
    for (size_t j = 0; j < n; ++j) {
      boxLo[j] = pick(rng, -2, 0);
      boxHi[j] = pick(rng, 0, 2);
      std::vector<long long> up(n, 0), dn(n, 0);
      up[j] = 1;
      dn[j] = -1;
      rows.push_back(up);
      rhs.push_back(boxHi[j]);
      rows.push_back(dn);
      rhs.push_back(-boxLo[j]);
    }
    // Weight rows over all columns.
    std::vector<size_t> wIdx;
    for (long long i = 0; i < opt.k; ++i) {
      std::vector<long long> row(n);
      for (size_t j = 0; j < n; ++j) row[j] = pick(rng, -opt.delta, opt.delta);
      wIdx.push_back(rows.size());
      rows.push_back(row);
      rhs.push_back(pick(rng, -1, 2));
    }
    GeneralIpInstance g;
    g.m = IntMatrix::fromRows(rows);
    g.b = rhs;
    g.p.resize(n);
    for (auto& v : g.p) v = pick(rng, -3, 3);
    g.delta = opt.delta;
    g.wRowIdx = wIdx;
    for (long long c = 0; c < opt.extraCols; ++c) g.extraColIdx.push_back(nTu + c);
    // Total delta-modularity of the full matrix.
    if (oracle::maxAbsSubdeterminant(rows) > opt.delta) continue;
    Instance inst;
    inst.kind = InstanceKind::IpGeneral;
    inst.k = opt.k;
    inst.delta = opt.delta;
    inst.columnLabels.clear();
    for (size_t j = 0; j < n; ++j) inst.columnLabels.push_back("x" + std::to_string(j));
    inst.general = std::move(g);
    // The loader re-validates; run it to be safe.
    return parseInstance(emitInstance(inst));
  }
  throw CapExceeded("generator: rejection budget exhausted for ip_general");
}

}  // namespace

Instance generateInstance(const GenOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  if (opt.kind == "mcipp") return generateMcipp(opt, rng);
  if (opt.kind == "mcicp") return generateMcicp(opt, rng);
  if (opt.kind == "ip_equality") return generateIpEquality(opt, rng);
  if (opt.kind == "ip_general") return generateIpGeneral(opt, rng);
  throw ValidationError("generator: unknown kind '" + opt.kind + "'");
}

}  // namespace ntu
