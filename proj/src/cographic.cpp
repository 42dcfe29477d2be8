#include "cographic.hpp"

#include <algorithm>
#include <set>

namespace ntu {

Configuration incidenceConfiguration(const DirectedGraph& g) {
  if (g.nV() == 0) throw ValidationError("incidenceConfiguration: empty graph");
  Configuration c(g.nV());
  for (size_t e = 0; e < g.nE(); ++e) {
    RatVector col(g.nV());
    col[g.edges[e].first] = Rational(1);
    col[g.edges[e].second] = Rational(-1);
    c.push("e" + std::to_string(e), std::move(col));
  }
  return c;
}

size_t deletedVertex(const DirectedGraph& g) {
  size_t best = 0;
  for (size_t v = 1; v < g.nV(); ++v)
    if (g.vertexLabels[v] < g.vertexLabels[best]) best = v;
  return best;
}

namespace {

// BFS spanning tree from the deleted vertex: per vertex the edge to its
// parent and the orientation sign (+1 when the edge points away from the
// root side). Root entry stays SIZE_MAX.
struct SpanningTree {
  std::vector<size_t> parentEdge;
  std::vector<size_t> parentVertex;
  std::vector<size_t> order;  // BFS order starting at the root
};

SpanningTree bfsTree(const DirectedGraph& g) {
  if (!isWeaklyConnected(g)) throw ValidationError("spanning tree: graph not connected");
  size_t n = g.nV();
  SpanningTree t;
  t.parentEdge.assign(n, SIZE_MAX);
  t.parentVertex.assign(n, SIZE_MAX);
  size_t root = deletedVertex(g);
  std::vector<bool> seen(n, false);
  seen[root] = true;
  t.order.push_back(root);
  for (size_t head = 0; head < t.order.size(); ++head) {
    size_t v = t.order[head];
    for (size_t e = 0; e < g.nE(); ++e) {
      auto [a, b] = g.edges[e];
      size_t other = SIZE_MAX;
      if (a == v) other = b;
      else if (b == v) other = a;
      if (other == SIZE_MAX || seen[other]) continue;
      seen[other] = true;
      t.parentEdge[other] = e;
      t.parentVertex[other] = v;
      t.order.push_back(other);
    }
  }
  return t;
}

}  // namespace

Configuration cographicConfiguration(const DirectedGraph& g) {
  SpanningTree t = bfsTree(g);
  size_t n = g.nE();
  std::vector<bool> isTree(n, false);
  for (size_t v = 0; v < g.nV(); ++v)
    if (t.parentEdge[v] != SIZE_MAX) isTree[t.parentEdge[v]] = true;
  // Tree path coefficients: y(v) as a signed sum of tree-edge flows.
  // y(head) = y(tail) - x(e) along each tree edge.
  std::vector<std::vector<long long>> pathCoef(g.nV(), std::vector<long long>(n, 0));
  for (size_t idx = 1; idx < t.order.size(); ++idx) {
    size_t v = t.order[idx];
    size_t pv = t.parentVertex[v], pe = t.parentEdge[v];
    pathCoef[v] = pathCoef[pv];
    if (g.edges[pe].second == v) pathCoef[v][pe] -= 1;  // entered via head
    else pathCoef[v][pe] += 1;                           // entered via tail
  }
  size_t rows = 0;
  for (size_t e = 0; e < n; ++e)
    if (!isTree[e]) ++rows;
  Configuration c(rows);
  size_t r = 0;
  std::vector<size_t> nonTreeRow(n, SIZE_MAX);
  for (size_t e = 0; e < n; ++e)
    if (!isTree[e]) nonTreeRow[e] = r++;
  for (size_t e = 0; e < n; ++e) {
    RatVector col(rows);
    if (!isTree[e]) {
      col[nonTreeRow[e]] = Rational(1);
    } else {
      // x(e) = y(tail) - y(head) expressed in tree coefficients; project
      // the consistency of each non-tree edge's cycle onto this column.
      for (size_t f = 0; f < n; ++f) {
        if (isTree[f]) continue;
        auto [u, v] = g.edges[f];
        long long coef = pathCoef[u][e] - pathCoef[v][e];
        col[nonTreeRow[f]] = Rational(-coef);
      }
    }
    c.push("e" + std::to_string(e), std::move(col));
  }
  return c;
}

std::vector<std::vector<long long>> vertexToEdgeForms(
    const DirectedGraph& g, const std::vector<std::vector<long long>>& rows) {
  SpanningTree t = bfsTree(g);
  size_t n = g.nE();
  std::vector<std::vector<long long>> pathCoef(g.nV(), std::vector<long long>(n, 0));
  for (size_t idx = 1; idx < t.order.size(); ++idx) {
    size_t v = t.order[idx];
    size_t pv = t.parentVertex[v], pe = t.parentEdge[v];
    pathCoef[v] = pathCoef[pv];
    if (g.edges[pe].second == v) pathCoef[v][pe] -= 1;
    else pathCoef[v][pe] += 1;
  }
  std::vector<std::vector<long long>> out;
  for (const auto& row : rows) {
    if (row.size() != g.nV()) throw ValidationError("vertexToEdgeForms: dimension mismatch");
    std::vector<long long> form(n, 0);
    for (size_t v = 0; v < g.nV(); ++v)
      for (size_t e = 0; e < n; ++e) form[e] += row[v] * pathCoef[v][e];
    out.push_back(std::move(form));
  }
  return out;
}

std::vector<long long> potentialsFromEdges(const DirectedGraph& g,
                                           const std::vector<long long>& x) {
  if (x.size() != g.nE()) throw ValidationError("potentialsFromEdges: dimension mismatch");
  SpanningTree t = bfsTree(g);
  std::vector<long long> y(g.nV(), 0);
  for (size_t idx = 1; idx < t.order.size(); ++idx) {
    size_t v = t.order[idx];
    size_t pv = t.parentVertex[v], pe = t.parentEdge[v];
    y[v] = y[pv] + (g.edges[pe].second == v ? -x[pe] : x[pe]);
  }
  return y;
}

namespace {

// Signed docset image: x(e) = chi^S(tail) - chi^S(head).
std::vector<long long> docsetImage(const DirectedGraph& g, uint32_t s) {
  std::vector<long long> x(g.nE(), 0);
  for (size_t e = 0; e < g.nE(); ++e) {
    auto [u, v] = g.edges[e];
    long long cu = (s >> u) & 1, cv = (s >> v) & 1;
    x[e] = cu - cv;
  }
  return x;
}

}  // namespace

bool verifyCographicCorrespondence(const Configuration& a, const DirectedGraph& g,
                                   std::string* whyNot, int circuitCap) {
  auto fail = [&](const std::string& why) {
    if (whyNot) *whyNot = why;
    return false;
  };
  if (a.size() != g.nE()) return fail("column count differs from edge count");
  if (!isWeaklyConnected(g)) return fail("graph is not connected");
  size_t n = a.size(), r = g.nV() - 1;

  // Kernel containment: A M' = 0 and matching rank.
  RatMatrix am = a.matrix();
  size_t v0 = deletedVertex(g);
  for (size_t v = 0; v < g.nV(); ++v) {
    if (v == v0) continue;
    // Column of M' for vertex v: incidence row of v over edges.
    RatVector mcol(n);
    for (size_t e = 0; e < n; ++e) {
      if (g.edges[e].first == v) mcol[e] = Rational(1);
      else if (g.edges[e].second == v) mcol[e] = Rational(-1);
    }
    RatVector img = am.apply(mcol);
    if (!isZeroVector(img)) return fail("incidence row outside the kernel of A");
  }
  if (rank(am) != static_cast<int>(n - r)) return fail("rank differs from edges minus rank of G");

  // Exact circuit set comparison against signed docset images.
  std::set<std::vector<long long>> circuitVecs;
  for (const auto& c : circuits(a, circuitCap)) circuitVecs.insert(c.coeff);
  std::set<std::vector<long long>> imageVecs;
  for (uint32_t s : docsets(g, false)) {
    if (s >> v0 & 1) continue;
    auto x = docsetImage(g, s);
    auto neg = x;
    for (auto& t : neg) t = -t;
    imageVecs.insert(x);
    imageVecs.insert(neg);
  }
  if (circuitVecs != imageVecs) return fail("circuits differ from signed docset images");
  return true;
}

McippInstance cographicToMcipp(const AnchoredInstance& anch, const DirectedGraph& g) {
  const EqualityInstance& eq = anch.eq;
  for (long long bi : eq.b)
    if (bi != 0) throw ValidationError("cographicToMcipp: instance must have b = 0");
  std::string why;
  if (!verifyCographicCorrespondence(eq.a, g, &why))
    throw ValidationError("cographicToMcipp: configuration is not cographic for the graph: " + why);

  size_t nv = g.nV(), ne = g.nE();
  McippInstance out;
  out.g = g;
  out.delta = eq.delta;
  out.p.assign(nv, 0);
  for (size_t e = 0; e < ne; ++e) {
    out.p[g.edges[e].first] += eq.p[e];
    out.p[g.edges[e].second] -= eq.p[e];
  }
  out.w.assign(eq.w.rows, std::vector<long long>(nv, 0));
  for (size_t i = 0; i < eq.w.rows; ++i)
    for (size_t e = 0; e < ne; ++e) {
      out.w[i][g.edges[e].first] += eq.w.at(i, e);
      out.w[i][g.edges[e].second] -= eq.w.at(i, e);
    }
  out.d = eq.d;
  out.lo = eq.lo;
  out.hi = eq.hi;

  long long psum = 0;
  for (long long v : out.p) psum += v;
  if (psum != 0) throw InvariantViolation("cographicToMcipp: vertex profits do not sum to zero");
  for (const auto& row : out.w) {
    long long s = 0;
    for (long long v : row) s += v;
    if (s != 0) throw InvariantViolation("cographicToMcipp: weight row does not sum to zero");
  }
  return out;
}

std::vector<long long> mcippSolutionToMcicp(const std::vector<long long>& y,
                                            const DirectedGraph& g) {
  if (y.size() != g.nV()) throw ValidationError("mcippSolutionToMcicp: dimension mismatch");
  std::vector<long long> x(g.nE());
  for (size_t e = 0; e < g.nE(); ++e) x[e] = y[g.edges[e].first] - y[g.edges[e].second];
  return x;
}

void validateMcippInstance(const McippInstance& inst) {
  size_t nv = inst.g.nV(), ne = inst.g.nE();
  if (inst.p.size() != nv) throw ValidationError("potential instance: profit dimension mismatch");
  if (inst.d.size() != inst.w.size())
    throw ValidationError("potential instance: target dimension mismatch");
  for (const auto& row : inst.w)
    if (row.size() != nv) throw ValidationError("potential instance: weight dimension mismatch");
  if (inst.lo.size() != ne || inst.hi.size() != ne)
    throw ValidationError("potential instance: bound dimension mismatch");
  for (size_t e = 0; e < ne; ++e)
    if (inst.lo[e] > inst.hi[e])
      throw ValidationError("potential instance: lower bound exceeds upper");
  if (inst.delta < 1) throw ValidationError("potential instance: delta must be >= 1");
  if (!isWeaklyConnected(inst.g)) throw ValidationError("potential instance: graph not connected");
  long long psum = 0;
  for (long long v : inst.p) psum += v;
  if (psum != 0) throw ValidationError("potential instance: profits must sum to zero");
  for (const auto& row : inst.w) {
    long long s = 0;
    for (long long v : row) s += v;
    if (s != 0) throw ValidationError("potential instance: weight rows must sum to zero");
  }
  for (uint32_t s : docsets(inst.g, false)) {
    for (const auto& row : inst.w) {
      long long val = 0;
      for (size_t v = 0; v < nv; ++v)
        if (s >> v & 1) val += row[v];
      if (std::llabs(val) > inst.delta)
        throw ValidationError("potential instance: docset weight exceeds delta");
    }
  }
}

}  // namespace ntu
