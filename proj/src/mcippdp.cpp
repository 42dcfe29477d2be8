#include "mcippdp.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "lp.hpp"
#include "proximity.hpp"  // fBound

namespace ntu {

std::vector<size_t> SpecialTreeDecomposition::adhesion(size_t t) const {
  if (t == root || parent[t] == SIZE_MAX) return {};
  std::vector<size_t> out;
  const auto& mine = bags[t];
  const auto& up = bags[parent[t]];
  for (size_t v : mine)
    if (std::find(up.begin(), up.end(), v) != up.end()) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<size_t>> SpecialTreeDecomposition::childrenLists() const {
  std::vector<std::vector<size_t>> ch(nNodes());
  for (size_t t = 0; t < nNodes(); ++t)
    if (t != root && parent[t] != SIZE_MAX) ch[parent[t]].push_back(t);
  return ch;
}

TdValidation validateSpecialTd(const DirectedGraph& g, const SpecialTreeDecomposition& td) {
  TdValidation res;
  auto fail = [&](const std::string& why) {
    res.valid = false;
    res.violations.push_back(why);
  };
  size_t nn = td.nNodes();
  if (nn == 0) {
    fail("empty decomposition");
    return res;
  }
  if (td.parent.size() != nn) {
    fail("parent array size mismatch");
    return res;
  }
  if (td.root >= nn || td.parent[td.root] != SIZE_MAX) fail("root has a parent");
  // Tree shape: every non-root reaches the root.
  for (size_t t = 0; t < nn; ++t) {
    size_t cur = t, steps = 0;
    while (cur != td.root && steps <= nn) {
      if (td.parent[cur] >= nn) {
        fail("node " + std::to_string(t) + " detached from the tree");
        break;
      }
      cur = td.parent[cur];
      ++steps;
    }
    if (steps > nn) fail("parent pointers contain a cycle");
  }
  // Vertex coverage.
  std::vector<bool> seen(g.nV(), false);
  for (const auto& bag : td.bags)
    for (size_t v : bag) {
      if (v >= g.nV()) fail("bag vertex out of range");
      else seen[v] = true;
    }
  for (size_t v = 0; v < g.nV(); ++v)
    if (!seen[v]) fail("vertex " + g.vertexLabels[v] + " is in no bag");
  // Edge coverage.
  for (size_t e = 0; e < g.nE(); ++e) {
    auto [u, v] = g.edges[e];
    bool covered = false;
    for (const auto& bag : td.bags) {
      bool hasU = std::find(bag.begin(), bag.end(), u) != bag.end();
      bool hasV = std::find(bag.begin(), bag.end(), v) != bag.end();
      if (hasU && hasV) covered = true;
    }
    if (!covered)
      fail("edge " + g.vertexLabels[u] + "->" + g.vertexLabels[v] + " is in no bag");
  }
  // Connectivity of each vertex's bag set.
  for (size_t v = 0; v < g.nV(); ++v) {
    std::vector<size_t> holding;
    for (size_t t = 0; t < nn; ++t)
      if (std::find(td.bags[t].begin(), td.bags[t].end(), v) != td.bags[t].end())
        holding.push_back(t);
    if (holding.empty()) continue;
    // BFS inside the induced node set.
    std::set<size_t> hold(holding.begin(), holding.end());
    std::set<size_t> reach = {holding[0]};
    std::vector<size_t> stack = {holding[0]};
    while (!stack.empty()) {
      size_t t = stack.back();
      stack.pop_back();
      std::vector<size_t> nbrs;
      if (t != td.root && td.parent[t] != SIZE_MAX && hold.count(td.parent[t]))
        nbrs.push_back(td.parent[t]);
      for (size_t u = 0; u < nn; ++u)
        if (u != td.root && td.parent[u] == t && hold.count(u)) nbrs.push_back(u);
      for (size_t u : nbrs)
        if (reach.insert(u).second) stack.push_back(u);
    }
    if (reach.size() != hold.size())
      fail("bags containing " + g.vertexLabels[v] + " do not induce a subtree");
  }
  // Adhesion and child-count bounds.
  auto ch = td.childrenLists();
  for (size_t t = 0; t < nn; ++t) {
    if (t != td.root && td.parent[t] != SIZE_MAX) {
      if (static_cast<long long>(td.adhesion(t).size()) > td.ell)
        fail("adhesion at node " + std::to_string(t) + " exceeds the bound");
    }
    if (static_cast<long long>(ch[t].size()) > td.ell)
      fail("node " + std::to_string(t) + " has too many children");
  }
  return res;
}

SpecialTreeDecomposition trivialTd(const DirectedGraph& g) {
  SpecialTreeDecomposition td;
  std::vector<size_t> bag(g.nV());
  for (size_t v = 0; v < g.nV(); ++v) bag[v] = v;
  td.bags.push_back(bag);
  td.parent.push_back(SIZE_MAX);
  td.root = 0;
  td.ell = 1;
  return td;
}

std::vector<uint32_t> bruteSuperprofile(const DirectedGraph& g, uint32_t rootSubset) {
  std::set<uint32_t> out;
  for (uint32_t s : docsets(g, false)) out.insert(s & rootSubset);
  return std::vector<uint32_t>(out.begin(), out.end());
}

bool superprofileSound(const DirectedGraph& g, uint32_t rootSubset,
                       const std::vector<uint32_t>& candidate) {
  std::set<uint32_t> cand(candidate.begin(), candidate.end());
  for (uint32_t s : bruteSuperprofile(g, rootSubset))
    if (!cand.count(s)) return false;
  return true;
}

LdcpResult solveLdcp(const McippInstance& inst, const std::vector<size_t>& bag,
                     const std::vector<long long>& profits,
                     const std::vector<std::pair<size_t, long long>>& fixed) {
  if (profits.size() != bag.size()) throw ValidationError("solveLdcp: profit size mismatch");
  size_t nb = bag.size();
  std::vector<size_t> posOf(inst.g.nV(), SIZE_MAX);
  for (size_t i = 0; i < nb; ++i) posOf[bag[i]] = i;

  // Bag-internal edges.
  std::vector<size_t> edges;
  for (size_t e = 0; e < inst.g.nE(); ++e) {
    auto [u, v] = inst.g.edges[e];
    if (posOf[u] != SIZE_MAX && posOf[v] != SIZE_MAX) edges.push_back(e);
  }

  // Variables: y per bag vertex, slack per internal edge.
  size_t ne = edges.size();
  RatMatrix a(ne, nb + ne);
  RatVector b(ne);
  for (size_t i = 0; i < ne; ++i) {
    auto [u, v] = inst.g.edges[edges[i]];
    a.at(i, posOf[u]) = Rational(1);
    a.at(i, posOf[v]) = a.at(i, posOf[v]) - Rational(1);
    a.at(i, nb + i) = Rational(-1);
  }
  std::vector<ExtendedBound> lo(nb, ExtendedBound::minusInf()), hi(nb, ExtendedBound::plusInf());
  for (size_t i = 0; i < ne; ++i) {
    lo.push_back(ExtendedBound::of(inst.lo[edges[i]]));
    hi.push_back(ExtendedBound::of(inst.hi[edges[i]]));
  }
  std::vector<bool> pinned(nb, false);
  for (const auto& [v, val] : fixed) {
    if (posOf[v] == SIZE_MAX) throw ValidationError("solveLdcp: fixed vertex outside the bag");
    lo[posOf[v]] = ExtendedBound::of(val);
    hi[posOf[v]] = ExtendedBound::of(val);
    pinned[posOf[v]] = true;
  }

  // Weak components of the bag graph without a pinned vertex drift freely;
  // pin their first vertex. Valid only when their profit sums to zero,
  // which holds for bag components closed in the instance graph.
  {
    std::vector<size_t> comp(nb, SIZE_MAX);
    size_t nComp = 0;
    for (size_t i = 0; i < nb; ++i) {
      if (comp[i] != SIZE_MAX) continue;
      std::vector<size_t> stack = {i};
      comp[i] = nComp;
      while (!stack.empty()) {
        size_t x = stack.back();
        stack.pop_back();
        for (size_t e : edges) {
          auto [u, v] = inst.g.edges[e];
          size_t pu = posOf[u], pv = posOf[v];
          size_t other = SIZE_MAX;
          if (pu == x) other = pv;
          if (pv == x) other = pu;
          if (other != SIZE_MAX && comp[other] == SIZE_MAX) {
            comp[other] = nComp;
            stack.push_back(other);
          }
        }
      }
      ++nComp;
    }
    std::vector<bool> hasPin(nComp, false);
    std::vector<long long> profitSum(nComp, 0);
    for (size_t i = 0; i < nb; ++i) {
      if (pinned[i]) hasPin[comp[i]] = true;
      profitSum[comp[i]] += profits[i];
    }
    for (size_t i = 0; i < nb; ++i) {
      if (!hasPin[comp[i]]) {
        if (profitSum[comp[i]] != 0)
          throw InvariantViolation("solveLdcp: unbounded free component");
        lo[i] = ExtendedBound::of(0);
        hi[i] = ExtendedBound::of(0);
        hasPin[comp[i]] = true;
      }
    }
  }

  RatVector obj(nb + ne);
  for (size_t i = 0; i < nb; ++i) obj[i] = Rational(profits[i]);
  LpOutcome r = lpSolve(a, b, lo, hi, obj);
  LdcpResult out;
  if (r.status == LpOutcome::Status::Infeasible) return out;
  if (r.status == LpOutcome::Status::Unbounded)
    throw InvariantViolation("solveLdcp: unbounded local instance");
  // Deterministic witness with all bounds finite after re-pinning the
  // objective; free slacks already finite.
  RatVector wx;
  {
    // lexMinOptimal needs finite bounds: bound the free y variables by a
    // safe window around the witness (differences and pins confine them).
    std::vector<ExtendedBound> lo2 = lo, hi2 = hi;
    Rational span(0);
    for (size_t e : edges)
      span += Rational(std::max(std::llabs(inst.lo[e]), std::llabs(inst.hi[e])) + 1);
    span = span + span;  // window around any feasible point covers the face
    for (size_t i = 0; i < nb; ++i) {
      if (lo2[i].isFinite()) continue;
      lo2[i] = ExtendedBound::of(r.x[i] - span);
      hi2[i] = ExtendedBound::of(r.x[i] + span);
    }
    wx = lexMinOptimal(a, b, lo2, hi2, obj);
  }
  out.feasible = true;
  if (!r.value.isInteger()) throw InvariantViolation("solveLdcp: fractional optimum");
  out.value = r.value.toLongLong();
  out.y.resize(nb);
  for (size_t i = 0; i < nb; ++i) {
    if (!wx[i].isInteger()) throw InvariantViolation("solveLdcp: fractional witness");
    out.y[i] = wx[i].toLongLong();
  }
  return out;
}

namespace {

using Key = std::vector<long long>;

struct NodeEntry {
  long long value = 0;
  std::vector<long long> y;  // over the node's subtree vertices (sorted)
};

}  // namespace

McippSolution dpSolve(const McippInstance& inst, const SpecialTreeDecomposition& td,
                      const std::vector<std::vector<uint32_t>>& superprofiles,
                      long long guessBudget) {
  validateMcippInstance(inst);
  auto val = validateSpecialTd(inst.g, td);
  if (!val.valid)
    throw ValidationError("dpSolve: invalid tree-decomposition: " + val.violations.front());
  if (superprofiles.size() != td.nNodes())
    throw ValidationError("dpSolve: superprofile per node required");

  size_t nn = td.nNodes();
  size_t nv = inst.g.nV();
  long long kRows = inst.k();
  long long gamma = fBound(std::max<long long>(1, kRows), inst.delta);
  long long dRadius = static_cast<long long>(nv) * inst.delta * gamma;
  // Guessed values live in [0, gamma]. Bound-weighted distances prune the
  // guess space soundly: every feasible solution (in particular the
  // docset-sum witness) satisfies |y(u) - y(v)| <= dist(u, v).
  const long long inf = std::numeric_limits<long long>::max() / 4;
  std::vector<std::vector<long long>> dist(nv, std::vector<long long>(nv, inf));
  long long diam = 0;
  {
    for (size_t v = 0; v < nv; ++v) dist[v][v] = 0;
    for (size_t e = 0; e < inst.g.nE(); ++e) {
      auto [u, v] = inst.g.edges[e];
      long long w = std::max(std::llabs(inst.lo[e]), std::llabs(inst.hi[e]));
      dist[u][v] = std::min(dist[u][v], w);
      dist[v][u] = std::min(dist[v][u], w);
    }
    for (size_t m = 0; m < nv; ++m)
      for (size_t u = 0; u < nv; ++u)
        for (size_t v = 0; v < nv; ++v)
          dist[u][v] = std::min(dist[u][v], dist[u][m] + dist[m][v]);
    for (size_t u = 0; u < nv; ++u)
      for (size_t v = 0; v < nv; ++v)
        if (dist[u][v] < inf) diam = std::max(diam, dist[u][v]);
  }

  uint32_t rootsMask = 0;
  for (size_t v = 0; v < nv; ++v)
    for (const auto& row : inst.w)
      if (row[v] != 0) rootsMask |= uint32_t(1) << v;

  auto children = td.childrenLists();
  // Post-order.
  std::vector<size_t> order;
  {
    std::vector<size_t> stack = {td.root};
    while (!stack.empty()) {
      size_t t = stack.back();
      stack.pop_back();
      order.push_back(t);
      for (size_t c : children[t]) stack.push_back(c);
    }
    std::reverse(order.begin(), order.end());
  }

  // Subtree vertex sets.
  std::vector<std::vector<size_t>> subVerts(nn);
  for (size_t t : order) {
    std::set<size_t> verts(td.bags[t].begin(), td.bags[t].end());
    for (size_t c : children[t]) verts.insert(subVerts[c].begin(), subVerts[c].end());
    subVerts[t].assign(verts.begin(), verts.end());
  }

  // Table per node: (phiUp values over adhesion, d) -> entry.
  std::vector<std::map<Key, NodeEntry>> table(nn);

  for (size_t t : order) {
    const auto& bag = td.bags[t];
    std::vector<size_t> adh = td.adhesion(t);
    std::set<size_t> adhSet(adh.begin(), adh.end());

    // Profits zeroed on the adhesion toward the parent.
    std::vector<long long> profits(bag.size());
    for (size_t i = 0; i < bag.size(); ++i)
      profits[i] = adhSet.count(bag[i]) ? 0 : inst.p[bag[i]];

    // Roots and guessed set.
    std::vector<size_t> rootsT;
    for (size_t v : bag)
      if (rootsMask >> v & 1) rootsT.push_back(v);
    std::sort(rootsT.begin(), rootsT.end());
    std::set<size_t> ySet(adh.begin(), adh.end());
    for (size_t c : children[t]) {
      // adhesion of the child lives inside this bag
      for (size_t v : td.bags[c])
        if (std::find(bag.begin(), bag.end(), v) != bag.end()) {
          // v in B_t cap B_c
          ySet.insert(v);
        }
    }
    for (size_t v : rootsT) ySet.insert(v);
    std::vector<size_t> freeY;
    for (size_t v : ySet)
      if (!std::binary_search(rootsT.begin(), rootsT.end(), v)) freeY.push_back(v);

    // Patterns on the bag roots: sums of at most gamma superprofile members.
    uint32_t rootsTMask = 0;
    for (size_t v : rootsT) rootsTMask |= uint32_t(1) << v;
    std::vector<uint32_t> members;
    {
      std::set<uint32_t> m;
      m.insert(0);  // the empty pattern is always available
      for (uint32_t s : superprofiles[t]) m.insert(s & rootsTMask);
      members.assign(m.begin(), m.end());
    }
    // Sums of at most gamma members, capped at gamma per entry and filtered
    // by pairwise root distances (any feasible solution satisfies them).
    std::set<std::vector<long long>> patterns;
    {
      std::set<std::vector<long long>> all;
      all.insert(std::vector<long long>(rootsT.size(), 0));
      std::vector<std::vector<long long>> frontier(all.begin(), all.end());
      for (long long step = 0; step < gamma && !frontier.empty(); ++step) {
        std::vector<std::vector<long long>> next;
        for (const auto& pat : frontier)
          for (uint32_t s : members) {
            if (s == 0) continue;
            auto np = pat;
            bool ok = true;
            for (size_t i = 0; i < rootsT.size(); ++i)
              if (s >> rootsT[i] & 1) {
                if (++np[i] > gamma) ok = false;
              }
            if (!ok) continue;
            bool consistent = true;
            for (size_t i = 0; i < rootsT.size() && consistent; ++i)
              for (size_t j = i + 1; j < rootsT.size() && consistent; ++j)
                if (std::llabs(np[i] - np[j]) > dist[rootsT[i]][rootsT[j]]) consistent = false;
            if (!consistent) continue;
            if (all.insert(np).second) {
              next.push_back(std::move(np));
              if (static_cast<long long>(all.size()) > guessBudget)
                throw CapExceeded("dpSolve: pattern budget exceeded");
            }
          }
        frontier = std::move(next);
      }
      patterns = std::move(all);
    }

    // Free-vertex value ranges: distance propagation from the guessed roots
    // when present, the graph diameter bound otherwise.
    long long noRootCap = std::min(gamma, diam);
    auto freeRange = [&](size_t v, const std::vector<long long>& pat) {
      long long lo = 0, hi = gamma;
      if (rootsT.empty()) {
        hi = noRootCap;
      } else {
        for (size_t i = 0; i < rootsT.size(); ++i) {
          lo = std::max(lo, pat[i] - dist[v][rootsT[i]]);
          hi = std::min(hi, pat[i] + dist[v][rootsT[i]]);
        }
      }
      return std::pair<long long, long long>(lo, hi);
    };

    // Child adhesion vertex lists (sorted) for key construction.
    std::vector<std::vector<size_t>> childAdh;
    for (size_t c : children[t]) childAdh.push_back(td.adhesion(c));

    auto vertPos = [&](const std::vector<size_t>& vec, size_t v) {
      return std::lower_bound(vec.begin(), vec.end(), v) - vec.begin();
    };

    // Reachable child weight sums, for exact filtering at the root.
    std::set<Key> childSums;
    bool isRoot = (t == td.root);
    if (isRoot) {
      childSums.insert(Key(kRows, 0));
      for (size_t c : children[t]) {
        std::set<Key> ds;
        for (const auto& [key, ent] : table[c])
          ds.insert(Key(key.end() - kRows, key.end()));
        std::set<Key> next;
        for (const auto& a : childSums)
          for (const auto& b : ds) {
            Key s(kRows);
            for (long long r = 0; r < kRows; ++r) s[r] = a[r] + b[r];
            next.insert(std::move(s));
          }
        childSums = std::move(next);
      }
    }

    // Bag edges between two guessed vertices, for cheap pre-filtering.
    std::vector<std::tuple<size_t, size_t, long long, long long>> guessedEdges;
    {
      std::set<size_t> guessed(ySet.begin(), ySet.end());
      for (size_t e = 0; e < inst.g.nE(); ++e) {
        auto [u, v] = inst.g.edges[e];
        bool inBag = std::find(bag.begin(), bag.end(), u) != bag.end() &&
                     std::find(bag.begin(), bag.end(), v) != bag.end();
        if (inBag && guessed.count(u) && guessed.count(v))
          guessedEdges.push_back({u, v, inst.lo[e], inst.hi[e]});
      }
    }

    for (const auto& pat : patterns) {
      // Weight contribution of the bag roots outside the adhesion.
      Key wLoc(kRows, 0);
      for (size_t i = 0; i < rootsT.size(); ++i) {
        if (adhSet.count(rootsT[i])) continue;
        for (long long r = 0; r < kRows; ++r) wLoc[r] += inst.w[r][rootsT[i]] * pat[i];
      }
      if (isRoot) {
        // The final target is pinned: some child combination must close it.
        Key need(kRows);
        for (long long r = 0; r < kRows; ++r) need[r] = inst.d[r] - wLoc[r];
        if (!childSums.count(need)) continue;
      }
      std::vector<std::pair<long long, long long>> ranges;
      {
        bool empty = false;
        for (size_t v : freeY) {
          auto r = freeRange(v, pat);
          if (r.first > r.second) empty = true;
          ranges.push_back(r);
        }
        if (empty) continue;
        long long combos = 1;
        for (const auto& r : ranges) {
          combos *= (r.second - r.first + 1);
          if (combos > guessBudget) throw CapExceeded("dpSolve: guess budget exceeded");
        }
      }
      std::vector<long long> freeAssign;
      for (const auto& r : ranges) freeAssign.push_back(r.first);
      for (;;) {
        // Build the fixed assignment.
        std::vector<std::pair<size_t, long long>> fixed;
        for (size_t i = 0; i < rootsT.size(); ++i) fixed.push_back({rootsT[i], pat[i]});
        for (size_t i = 0; i < freeY.size(); ++i) fixed.push_back({freeY[i], freeAssign[i]});

        // Cheap rejection on edges between guessed vertices.
        bool consistent = true;
        auto valOf = [&](size_t v) -> long long {
          for (const auto& [fv, fval] : fixed)
            if (fv == v) return fval;
          return 0;
        };
        for (const auto& [u, v, elo, ehi] : guessedEdges) {
          long long diff = valOf(u) - valOf(v);
          if (diff < elo || diff > ehi) {
            consistent = false;
            break;
          }
        }

        LdcpResult local;
        if (consistent) local = solveLdcp(inst, bag, profits, fixed);
        if (local.feasible) {
          auto phiOf = [&](size_t v) -> long long {
            for (const auto& [fv, fval] : fixed)
              if (fv == v) return fval;
            throw InvariantViolation("dpSolve: guess lookup outside the fixed set");
          };
          // Child lookups keyed by the guess restricted to their adhesions.
          std::function<void(size_t, Key, long long, std::vector<long long>&)> rec =
              [&](size_t ci, Key dAcc, long long vAcc, std::vector<long long>& yAcc) {
                if (ci == children[t].size()) {
                  bool inBox = true;
                  for (long long r = 0; r < kRows; ++r)
                    if (std::llabs(dAcc[r]) > dRadius) inBox = false;
                  if (!inBox) return;
                  Key key;
                  for (size_t v : adh) key.push_back(phiOf(v));
                  key.insert(key.end(), dAcc.begin(), dAcc.end());
                  NodeEntry cand{vAcc, yAcc};
                  auto it = table[t].find(key);
                  if (it == table[t].end() || cand.value > it->second.value ||
                      (cand.value == it->second.value && cand.y < it->second.y)) {
                    // Compliance of the stored witness: profit and weight
                    // over the subtree minus the adhesion match the entry.
                    long long profitChk = 0;
                    Key weightChk(kRows, 0);
                    for (size_t i = 0; i < subVerts[t].size(); ++i) {
                      size_t v = subVerts[t][i];
                      if (adhSet.count(v)) continue;
                      profitChk += inst.p[v] * yAcc[i];
                      for (long long r = 0; r < kRows; ++r)
                        weightChk[r] += inst.w[r][v] * yAcc[i];
                    }
                    if (profitChk != cand.value)
                      throw InvariantViolation("dpSolve: witness profit mismatch");
                    for (long long r = 0; r < kRows; ++r)
                      if (weightChk[r] != dAcc[r])
                        throw InvariantViolation("dpSolve: witness weight mismatch");
                    table[t][key] = std::move(cand);
                  }
                  return;
                }
                size_t c = children[t][ci];
                Key childKeyPrefix;
                for (size_t v : childAdh[ci]) childKeyPrefix.push_back(phiOf(v));
                for (const auto& [key, ent] : table[c]) {
                  bool match = true;
                  for (size_t i = 0; i < childKeyPrefix.size(); ++i)
                    if (key[i] != childKeyPrefix[i]) match = false;
                  if (!match) continue;
                  Key dNext = dAcc;
                  for (long long r = 0; r < kRows; ++r)
                    dNext[r] += key[childKeyPrefix.size() + r];
                  std::vector<long long> yNext = yAcc;
                  // Merge the child's witness; overlaps with the bag are
                  // guessed vertices and must agree exactly.
                  for (size_t i = 0; i < subVerts[c].size(); ++i) {
                    size_t v = subVerts[c][i];
                    size_t pos = vertPos(subVerts[t], v);
                    if (std::find(bag.begin(), bag.end(), v) != bag.end() &&
                        yNext[pos] != ent.y[i])
                      throw InvariantViolation("dpSolve: witness composition conflict");
                    yNext[pos] = ent.y[i];
                  }
                  rec(ci + 1, dNext, vAcc + ent.value, yNext);
                }
              };
          // Seed witness with the local solution.
          std::vector<long long> y0(subVerts[t].size(), 0);
          for (size_t i = 0; i < bag.size(); ++i) y0[vertPos(subVerts[t], bag[i])] = local.y[i];
          Key d0 = wLoc;
          rec(0, d0, local.value, y0);
        }

        // advance the free assignment
        size_t i = freeY.size();
        bool adv = false;
        while (i > 0) {
          --i;
          if (freeAssign[i] < ranges[i].second) {
            ++freeAssign[i];
            for (size_t j = i + 1; j < freeY.size(); ++j) freeAssign[j] = ranges[j].first;
            adv = true;
            break;
          }
        }
        if (!adv) break;
      }
    }
  }

  McippSolution sol;
  Key want;
  want.insert(want.end(), inst.d.begin(), inst.d.end());
  auto it = table[td.root].find(want);
  if (it == table[td.root].end()) return sol;
  sol.feasible = true;
  sol.value = it->second.value;
  sol.y.assign(nv, 0);
  for (size_t i = 0; i < subVerts[td.root].size(); ++i) sol.y[subVerts[td.root][i]] = it->second.y[i];
  // Final feasibility check.
  for (size_t e = 0; e < inst.g.nE(); ++e) {
    auto [u, v] = inst.g.edges[e];
    long long diff = sol.y[u] - sol.y[v];
    if (diff < inst.lo[e] || diff > inst.hi[e])
      throw InvariantViolation("dpSolve: final witness violates an edge bound");
  }
  for (long long r = 0; r < kRows; ++r) {
    long long s = 0;
    for (size_t v = 0; v < nv; ++v) s += inst.w[r][v] * sol.y[v];
    if (s != inst.d[r]) throw InvariantViolation("dpSolve: final witness violates the target");
  }
  return sol;
}

std::vector<long long> shiftNormalize(std::vector<long long> y) {
  if (y.empty()) return y;
  long long mn = *std::min_element(y.begin(), y.end());
  for (auto& v : y) v -= mn;
  return y;
}

bool decomposesIntoDocsets(const DirectedGraph& g, const std::vector<long long>& y,
                           long long budget) {
  for (long long v : y)
    if (v < 0) throw ValidationError("decomposesIntoDocsets: negative entry");
  std::vector<uint32_t> ds = docsets(g, false);
  std::function<bool(std::vector<long long>&, long long)> rec = [&](std::vector<long long>& cur,
                                                                    long long left) -> bool {
    size_t pivot = SIZE_MAX;
    long long mx = 0;
    long long total = 0;
    for (size_t v = 0; v < cur.size(); ++v) {
      total += cur[v];
      if (cur[v] > mx) {
        mx = cur[v];
        pivot = v;
      }
    }
    if (total == 0) return true;
    if (left == 0 || mx > left) return false;
    for (uint32_t s : ds) {
      if (!(s >> pivot & 1)) continue;
      bool fits = true;
      for (size_t v = 0; v < cur.size() && fits; ++v)
        if ((s >> v & 1) && cur[v] == 0) fits = false;
      if (!fits) continue;
      for (size_t v = 0; v < cur.size(); ++v)
        if (s >> v & 1) --cur[v];
      if (rec(cur, left - 1)) return true;
      for (size_t v = 0; v < cur.size(); ++v)
        if (s >> v & 1) ++cur[v];
    }
    return false;
  };
  std::vector<long long> cur = y;
  return rec(cur, budget);
}

}  // namespace ntu
