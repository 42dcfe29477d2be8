#include "graph.hpp"

#include <algorithm>
#include <bit>

namespace ntu {

size_t DirectedGraph::addVertex(const std::string& label) {
  for (const auto& l : vertexLabels)
    if (l == label) throw ValidationError("graph: duplicate vertex label '" + label + "'");
  vertexLabels.push_back(label);
  return vertexLabels.size() - 1;
}

void DirectedGraph::addEdge(size_t tail, size_t head) {
  if (tail >= nV() || head >= nV()) throw ValidationError("graph: edge endpoint out of range");
  if (tail == head) throw ValidationError("graph: loops are not allowed");
  edges.push_back({tail, head});
}

size_t DirectedGraph::indexOfVertex(const std::string& label) const {
  for (size_t i = 0; i < vertexLabels.size(); ++i)
    if (vertexLabels[i] == label) return i;
  throw ValidationError("graph: unknown vertex '" + label + "'");
}

std::vector<uint32_t> DirectedGraph::adjacencyMasks() const {
  std::vector<uint32_t> adj(nV(), 0);
  for (const auto& [u, v] : edges) {
    adj[u] |= uint32_t(1) << v;
    adj[v] |= uint32_t(1) << u;
  }
  return adj;
}

namespace {

bool maskConnected(uint32_t mask, const std::vector<uint32_t>& adj) {
  if (mask == 0) return true;  // the empty graph counts as connected
  uint32_t start = mask & ~(mask - 1);
  uint32_t seen = start;
  for (;;) {
    uint32_t grow = seen;
    uint32_t rest = seen;
    while (rest) {
      size_t v = std::countr_zero(rest);
      rest &= rest - 1;
      grow |= adj[v] & mask;
    }
    if (grow == seen) break;
    seen = grow;
  }
  return seen == mask;
}

uint32_t fullMask(size_t n) { return n >= 32 ? 0 : (uint32_t(1) << n) - 1; }

}  // namespace

bool isWeaklyConnected(const DirectedGraph& g) {
  if (g.nV() == 0) return false;
  if (g.nV() > 31) throw CapExceeded("graph: vertex cap exceeded");
  return maskConnected(fullMask(g.nV()), g.adjacencyMasks());
}

bool isSimple(const DirectedGraph& g) {
  std::vector<std::pair<size_t, size_t>> seen;
  for (auto [u, v] : g.edges) {
    auto key = std::minmax(u, v);
    std::pair<size_t, size_t> kp{key.first, key.second};
    if (std::find(seen.begin(), seen.end(), kp) != seen.end()) return false;
    seen.push_back(kp);
  }
  return true;
}

bool isTwoConnected(const DirectedGraph& g) {
  size_t n = g.nV();
  if (n < 2) return false;
  auto adj = g.adjacencyMasks();
  uint32_t full = fullMask(n);
  if (!maskConnected(full, adj)) return false;
  if (n == 2) return (adj[0] & 2u) != 0;
  for (size_t v = 0; v < n; ++v)
    if (!maskConnected(full & ~(uint32_t(1) << v), adj)) return false;
  return true;
}

bool isThreeConnected(const DirectedGraph& g) {
  size_t n = g.nV();
  if (n < 4) return false;
  auto adj = g.adjacencyMasks();
  uint32_t full = fullMask(n);
  if (!maskConnected(full, adj)) return false;
  for (size_t u = 0; u < n; ++u)
    for (size_t v = u + 1; v < n; ++v) {
      uint32_t rem = full & ~(uint32_t(1) << u) & ~(uint32_t(1) << v);
      if (!maskConnected(rem, adj)) return false;
    }
  return true;
}

DirectedGraph suppressDegreeTwo(const DirectedGraph& g) {
  DirectedGraph cur = g;
  for (;;) {
    std::vector<int> deg(cur.nV(), 0);
    for (auto [u, v] : cur.edges) {
      ++deg[u];
      ++deg[v];
    }
    size_t pick = cur.nV();
    for (size_t v = 0; v < cur.nV() && pick == cur.nV(); ++v)
      if (deg[v] == 2) pick = v;
    if (pick == cur.nV()) return cur;

    // Merge the two incident edges into one, drop the vertex.
    std::vector<size_t> inc;
    for (size_t e = 0; e < cur.nE(); ++e)
      if (cur.edges[e].first == pick || cur.edges[e].second == pick) inc.push_back(e);
    size_t a = cur.edges[inc[0]].first == pick ? cur.edges[inc[0]].second : cur.edges[inc[0]].first;
    size_t b = cur.edges[inc[1]].first == pick ? cur.edges[inc[1]].second : cur.edges[inc[1]].first;
    DirectedGraph next;
    std::vector<size_t> remap(cur.nV(), SIZE_MAX);
    for (size_t v = 0; v < cur.nV(); ++v)
      if (v != pick) remap[v] = next.addVertex(cur.vertexLabels[v]);
    for (size_t e = 0; e < cur.nE(); ++e) {
      if (e == inc[0] || e == inc[1]) continue;
      next.addEdge(remap[cur.edges[e].first], remap[cur.edges[e].second]);
    }
    if (a != b) next.addEdge(remap[a], remap[b]);
    cur = std::move(next);
    if (cur.nV() < 2) return cur;
  }
}

bool isSubdividedThreeConnected(const DirectedGraph& g) {
  DirectedGraph s = suppressDegreeTwo(g);
  return s.nV() >= 4 && isSimple(s) && isThreeConnected(s);
}

std::vector<uint32_t> docsets(const DirectedGraph& g, bool includeTrivial) {
  size_t n = g.nV();
  if (n > static_cast<size_t>(kDocsetVertexCap)) throw CapExceeded("docsets: vertex cap exceeded");
  auto adj = g.adjacencyMasks();
  uint32_t full = fullMask(n);
  std::vector<uint32_t> out;
  if (includeTrivial) out.push_back(0);
  for (uint32_t s = 1; s < full; ++s)
    if (maskConnected(s, adj) && maskConnected(full & ~s, adj)) out.push_back(s);
  if (includeTrivial) out.push_back(full);
  return out;
}

long long beta(const DirectedGraph& g, const std::vector<long long>& a) {
  if (a.size() != g.nV()) throw ValidationError("beta: weight dimension mismatch");
  if (!isWeaklyConnected(g)) throw ValidationError("beta: graph must be connected");
  long long sum = 0;
  for (long long v : a) sum += v;
  if (sum != 0) throw ValidationError("beta: weights must sum to zero");
  long long best = 0;
  for (uint32_t s : docsets(g, false)) {
    long long val = 0;
    for (size_t v = 0; v < g.nV(); ++v)
      if (s >> v & 1) val += a[v];
    best = std::max(best, val);
  }
  return best;
}

namespace {

struct ModelSearch {
  const DirectedGraph& g;
  uint32_t roots;
  int t;
  size_t n;
  uint32_t full;
  std::vector<uint32_t> adj;
  std::vector<char> connected;  // per mask

  ModelSearch(const DirectedGraph& gg, uint32_t r, int tt)
      : g(gg), roots(r), t(tt), n(gg.nV()), full(fullMask(gg.nV())), adj(gg.adjacencyMasks()) {
    connected.assign(size_t(full) + 1, 0);
    for (uint32_t m = 0; m <= full; ++m) connected[m] = maskConnected(m, adj) ? 1 : 0;
  }

  uint32_t neighborhood(uint32_t s) const {
    uint32_t nb = 0;
    uint32_t rest = s;
    while (rest) {
      size_t v = std::countr_zero(rest);
      rest &= rest - 1;
      nb |= adj[v];
    }
    return nb & ~s;
  }

  // Greatest number of disjoint valid central sets inside "avail", where a
  // central set is connected, contains a root, and touches both hubs.
  int pack(uint32_t avail, uint32_t nA, uint32_t nB, std::vector<int8_t>& memo) {
    if (avail == 0) return 0;
    if (memo[avail] >= 0) return memo[avail];
    uint32_t low = avail & ~(avail - 1);
    // Lowest vertex unused, or inside some central set.
    int best = pack(avail & ~low, nA, nB, memo);
    uint32_t rest = avail & ~low;
    for (uint32_t sub = rest;; sub = (sub - 1) & rest) {
      uint32_t cand = sub | low;
      if ((cand & roots) && (cand & nA) && (cand & nB) && connected[cand]) {
        int val = 1 + pack(avail & ~cand, nA, nB, memo);
        if (val > best) best = val;
      }
      if (sub == 0) break;
    }
    memo[avail] = static_cast<int8_t>(best);
    return best;
  }

  // Reconstructs one packing of exactly "need" central sets.
  bool reconstruct(uint32_t avail, uint32_t nA, uint32_t nB, int need,
                   std::vector<int8_t>& memo, std::vector<uint32_t>& out) {
    if (need == 0) return true;
    if (pack(avail, nA, nB, memo) < need) return false;
    uint32_t low = avail & ~(avail - 1);
    if (reconstruct(avail & ~low, nA, nB, need, memo, out)) return true;
    uint32_t rest = avail & ~low;
    for (uint32_t sub = rest;; sub = (sub - 1) & rest) {
      uint32_t cand = sub | low;
      if ((cand & roots) && (cand & nA) && (cand & nB) && connected[cand]) {
        if (reconstruct(avail & ~cand, nA, nB, need - 1, memo, out)) {
          out.push_back(cand);
          return true;
        }
      }
      if (sub == 0) break;
    }
    return false;
  }
};

}  // namespace

std::optional<RootedModel> findRootedK2tModel(const DirectedGraph& g, uint32_t rootsMask, int t) {
  size_t n = g.nV();
  if (n > static_cast<size_t>(kModelSearchVertexCap))
    throw CapExceeded("findRootedK2tModel: vertex cap exceeded");
  if (t < 1) throw ValidationError("findRootedK2tModel: t must be >= 1");
  // t central sets need t disjoint root-holding vertices outside the hubs.
  if (static_cast<size_t>(t) + 2 > n) return std::nullopt;
  if (std::popcount(rootsMask) < t) return std::nullopt;

  ModelSearch ms(g, rootsMask, t);
  uint32_t full = ms.full;
  for (uint32_t hubA = 1; hubA <= full; ++hubA) {
    if (!ms.connected[hubA]) continue;
    uint32_t compl1 = full & ~hubA;
    uint32_t lowA = hubA & ~(hubA - 1);
    // hubB over submasks of the complement, canonical order hubA < hubB by
    // lowest bit.
    for (uint32_t hubB = compl1; hubB; hubB = (hubB - 1) & compl1) {
      uint32_t lowB = hubB & ~(hubB - 1);
      if (lowB < lowA) continue;
      if (!ms.connected[hubB]) continue;
      uint32_t avail = full & ~hubA & ~hubB;
      if (std::popcount(avail & rootsMask) < t) continue;
      if (std::popcount(avail) < t) continue;
      uint32_t nA = ms.neighborhood(hubA) & avail;
      uint32_t nB = ms.neighborhood(hubB) & avail;
      if (std::popcount(nA) == 0 || std::popcount(nB) == 0) continue;
      std::vector<int8_t> memo(size_t(full) + 1, -1);
      if (ms.pack(avail, nA, nB, memo) >= t) {
        std::vector<uint32_t> centrals;
        if (!ms.reconstruct(avail, nA, nB, t, memo, centrals))
          throw InvariantViolation("findRootedK2tModel: reconstruction failed");
        RootedModel model;
        model.hubA = hubA;
        model.hubB = hubB;
        model.centrals = centrals;
        for (uint32_t c : centrals) {
          size_t eA = SIZE_MAX, eB = SIZE_MAX;
          for (size_t e = 0; e < g.nE(); ++e) {
            auto [u, v] = g.edges[e];
            uint32_t mu = uint32_t(1) << u, mv = uint32_t(1) << v;
            if (((mu & c) && (mv & hubA)) || ((mv & c) && (mu & hubA))) eA = std::min(eA, e);
            if (((mu & c) && (mv & hubB)) || ((mv & c) && (mu & hubB))) eB = std::min(eB, e);
          }
          if (eA == SIZE_MAX || eB == SIZE_MAX)
            throw InvariantViolation("findRootedK2tModel: missing witness edge");
          model.witnesses.push_back({eA, eB});
        }
        if (!verifyRootedModel(g, rootsMask, t, model))
          throw InvariantViolation("findRootedK2tModel: produced model fails verification");
        return model;
      }
    }
  }
  return std::nullopt;
}

bool verifyRootedModel(const DirectedGraph& g, uint32_t rootsMask, int t, const RootedModel& m) {
  auto adj = g.adjacencyMasks();
  if (static_cast<int>(m.centrals.size()) != t) return false;
  if (m.witnesses.size() != m.centrals.size()) return false;
  std::vector<uint32_t> blocks = {m.hubA, m.hubB};
  blocks.insert(blocks.end(), m.centrals.begin(), m.centrals.end());
  uint32_t seen = 0;
  for (uint32_t b : blocks) {
    if (b == 0) return false;
    if (b & seen) return false;  // disjointness
    seen |= b;
    if (!maskConnected(b, adj)) return false;
  }
  for (size_t i = 0; i < m.centrals.size(); ++i) {
    if (!(m.centrals[i] & rootsMask)) return false;
    auto [eA, eB] = m.witnesses[i];
    if (eA >= g.nE() || eB >= g.nE()) return false;
    auto endpointsIn = [&](size_t e, uint32_t x, uint32_t y) {
      uint32_t mu = uint32_t(1) << g.edges[e].first, mv = uint32_t(1) << g.edges[e].second;
      return ((mu & x) && (mv & y)) || ((mv & x) && (mu & y));
    };
    if (!endpointsIn(eA, m.centrals[i], m.hubA)) return false;
    if (!endpointsIn(eB, m.centrals[i], m.hubB)) return false;
  }
  return true;
}

bool verifyNoRootedModelBound(const DirectedGraph& g,
                              const std::vector<std::vector<long long>>& wRows, long long k,
                              long long delta) {
  if (k < 1 || delta < 1) throw ValidationError("verifyNoRootedModelBound: need k, delta >= 1");
  if (static_cast<long long>(wRows.size()) != k)
    throw ValidationError("verifyNoRootedModelBound: row count mismatch");
  // Precondition: every docset weight bounded by delta.
  for (uint32_t s : docsets(g, false)) {
    for (const auto& row : wRows) {
      long long val = 0;
      for (size_t v = 0; v < g.nV(); ++v)
        if (s >> v & 1) val += row[v];
      if (std::llabs(val) > delta)
        throw ValidationError("verifyNoRootedModelBound: docset weight exceeds delta");
    }
  }
  uint32_t roots = 0;
  for (size_t v = 0; v < g.nV(); ++v)
    for (const auto& row : wRows)
      if (row[v] != 0) roots |= uint32_t(1) << v;
  int t = static_cast<int>(4 * k * delta + 1);
  return !findRootedK2tModel(g, roots, t).has_value();
}

ContractionResult contractEdge(const DirectedGraph& g, size_t edgeIdx, uint32_t rootsMask) {
  if (edgeIdx >= g.nE()) throw ValidationError("contractEdge: edge index out of range");
  auto [cu, cv] = g.edges[edgeIdx];
  ContractionResult res;
  std::vector<size_t> remap(g.nV(), SIZE_MAX);
  for (size_t v = 0; v < g.nV(); ++v) {
    if (v == cv) continue;
    remap[v] = res.g.addVertex(g.vertexLabels[v]);
  }
  remap[cv] = remap[cu];
  for (size_t e = 0; e < g.nE(); ++e) {
    auto [u, v] = g.edges[e];
    size_t ru = remap[u], rv = remap[v];
    if (ru == rv) continue;  // contracted or resulting loop
    res.g.addEdge(ru, rv);
  }
  for (size_t v = 0; v < g.nV(); ++v)
    if (rootsMask >> v & 1) res.rootsMask |= uint32_t(1) << remap[v];
  return res;
}

}  // namespace ntu
