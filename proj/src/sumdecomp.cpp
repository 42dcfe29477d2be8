#include "sumdecomp.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "proximity.hpp"  // fBound

namespace ntu {

std::optional<Separation> findSeparation(const Configuration& a, int q, int cap) {
  if (q != 1 && q != 2) throw ValidationError("findSeparation: q must be 1 or 2");
  size_t n = a.size();
  if (n > static_cast<size_t>(cap)) throw CapExceeded("findSeparation: size exceeds cap");
  if (n < 2 * static_cast<size_t>(q)) return std::nullopt;

  RankScanner scan(a);
  std::vector<size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  int total = scan.subRank(all);

  std::optional<Separation> best;
  // Column 0 stays on side 1; masks enumerate the rest ascending, which
  // makes the tie-break lexicographic.
  for (uint32_t mask = 0; mask < (uint32_t(1) << (n - 1)); ++mask) {
    std::vector<size_t> s1 = {0}, s2;
    for (size_t j = 1; j < n; ++j)
      ((mask >> (j - 1)) & 1 ? s2 : s1).push_back(j);
    if (s1.size() < static_cast<size_t>(q) || s2.size() < static_cast<size_t>(q)) continue;
    int r1 = scan.subRank(s1), r2 = scan.subRank(s2);
    int order = r1 + r2 - total + 1;
    if (order > q) continue;
    if (!best || order < best->order) best = Separation{s1, s2, order};
    if (best->order == 1 && q == 1) break;  // lex-first minimal already
  }
  return best;
}

std::vector<std::vector<size_t>> oneSumComponents(const Configuration& a, int cap) {
  std::vector<std::vector<size_t>> out;
  std::vector<std::vector<size_t>> work;
  std::vector<size_t> all(a.size());
  std::iota(all.begin(), all.end(), 0);
  work.push_back(all);
  while (!work.empty()) {
    std::vector<size_t> idx = work.back();
    work.pop_back();
    if (idx.size() <= 1) {
      out.push_back(idx);
      continue;
    }
    Configuration sub = a.select(idx);
    auto sep = findSeparation(sub, 1, cap);
    if (!sep || sep->order != 1) {
      out.push_back(idx);
      continue;
    }
    std::vector<size_t> s1, s2;
    for (size_t j : sep->side1) s1.push_back(idx[j]);
    for (size_t j : sep->side2) s2.push_back(idx[j]);
    work.push_back(s1);
    work.push_back(s2);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// A nonzero integer vector spanning colspan(side1) cap colspan(side2).
RatVector markerVector(const Configuration& a, const std::vector<size_t>& s1,
                       const std::vector<size_t>& s2) {
  RatMatrix m(a.ambient, s1.size() + s2.size());
  for (size_t j = 0; j < s1.size(); ++j) m.setCol(j, a.cols[s1[j]]);
  for (size_t j = 0; j < s2.size(); ++j) {
    RatVector neg = a.cols[s2[j]];
    for (auto& x : neg) x = -x;
    m.setCol(s1.size() + j, neg);
  }
  for (const auto& kvec : kernelBasis(m)) {
    RatVector v(a.ambient);
    bool nonzero = false;
    for (size_t j = 0; j < s1.size(); ++j)
      for (size_t i = 0; i < a.ambient; ++i) {
        v[i] += kvec[j] * a.cols[s1[j]][i];
      }
    for (const auto& x : v)
      if (!x.isZero()) nonzero = true;
    if (nonzero) {
      auto prim = primitiveInteger(v);
      RatVector out(a.ambient);
      for (size_t i = 0; i < a.ambient; ++i) out[i] = Rational(prim[i]);
      return out;
    }
  }
  throw InvariantViolation("markerVector: intersection vector not found");
}

DecompositionTree singleNode(const Configuration& c) {
  DecompositionTree t;
  t.pieces.push_back(c);
  return t;
}

DecompositionTree buildTreeRec(const Configuration& c, int cap, int& markerCounter) {
  if (c.size() <= 3) return singleNode(c);
  auto sep = findSeparation(c, 2, cap);
  if (!sep) return singleNode(c);
  if (sep->order != 2)
    throw InvariantViolation("buildDecompositionTree: piece lost 2-connectivity");
  RatVector marker = markerVector(c, sep->side1, sep->side2);
  std::string label = "~m" + std::to_string(markerCounter++);
  Configuration a1 = c.select(sep->side1);
  a1.push(label, marker);
  Configuration a2 = c.select(sep->side2);
  a2.push(label, marker);
  DecompositionTree t1 = buildTreeRec(a1, cap, markerCounter);
  DecompositionTree t2 = buildTreeRec(a2, cap, markerCounter);
  size_t n1 = SIZE_MAX, n2 = SIZE_MAX;
  for (size_t i = 0; i < t1.pieces.size(); ++i)
    for (const auto& l : t1.pieces[i].labels)
      if (l == label) n1 = i;
  for (size_t i = 0; i < t2.pieces.size(); ++i)
    for (const auto& l : t2.pieces[i].labels)
      if (l == label) n2 = i;
  if (n1 == SIZE_MAX || n2 == SIZE_MAX)
    throw InvariantViolation("buildDecompositionTree: marker lost");
  DecompositionTree t;
  t.pieces = t1.pieces;
  size_t offset = t.pieces.size();
  t.pieces.insert(t.pieces.end(), t2.pieces.begin(), t2.pieces.end());
  t.edges = t1.edges;
  for (auto e : t2.edges) {
    e.t1 += offset;
    e.t2 += offset;
    t.edges.push_back(e);
  }
  t.edges.push_back({n1, n2 + offset, label});
  return t;
}

}  // namespace

DecompositionTree buildDecompositionTree(const Configuration& a, int cap) {
  if (a.size() < 3) throw ValidationError("buildDecompositionTree: need at least 3 columns");
  auto one = findSeparation(a, 1, cap);
  if (one && one->order == 1)
    throw ValidationError("buildDecompositionTree: configuration is not 2-connected");
  int counter = 0;
  DecompositionTree t = buildTreeRec(a, cap, counter);
  // Pieces must be regular: all circuit entries in {-1, 0, 1}.
  for (const auto& piece : t.pieces) {
    if (piece.size() > static_cast<size_t>(kDefaultCircuitCap)) continue;
    for (const auto& c : circuits(piece))
      for (long long v : c.coeff)
        if (std::llabs(v) > 1)
          throw InvariantViolation("buildDecompositionTree: non-regular piece");
  }
  return t;
}

Configuration recompose(const DecompositionTree& tree, const std::vector<size_t>& edgeOrder) {
  if (edgeOrder.size() != tree.edges.size())
    throw ValidationError("recompose: edge order must cover every edge once");
  std::vector<size_t> comp(tree.pieces.size());
  std::iota(comp.begin(), comp.end(), 0);
  std::vector<Configuration> cfg = tree.pieces;
  std::function<size_t(size_t)> find = [&](size_t x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (size_t ei : edgeOrder) {
    const auto& e = tree.edges[ei];
    size_t c1 = find(e.t1), c2 = find(e.t2);
    if (c1 == c2) throw ValidationError("recompose: duplicate edge in order");
    const Configuration& a1 = cfg[c1];
    const Configuration& a2 = cfg[c2];
    size_t m1 = a1.indexOf(e.marker), m2 = a2.indexOf(e.marker);
    if (lexCompare(a1.cols[m1], a2.cols[m2]) != 0)
      throw InvariantViolation("recompose: marker copies differ");
    // Span condition of the 2-sum.
    RatMatrix full(a1.ambient, a1.size() + a2.size());
    for (size_t j = 0; j < a1.size(); ++j) full.setCol(j, a1.cols[j]);
    for (size_t j = 0; j < a2.size(); ++j) full.setCol(a1.size() + j, a2.cols[j]);
    int r1 = rank(a1.matrix()), r2 = rank(a2.matrix()), r = rank(full);
    if (r1 + r2 - r != 1) throw InvariantViolation("recompose: span intersection is not a line");
    Configuration merged(a1.ambient);
    for (size_t j = 0; j < a1.size(); ++j)
      if (j != m1) merged.push(a1.labels[j], a1.cols[j]);
    for (size_t j = 0; j < a2.size(); ++j)
      if (j != m2) merged.push(a2.labels[j], a2.cols[j]);
    cfg[c1] = merged;
    comp[c2] = c1;
  }
  size_t root = find(0);
  for (size_t i = 0; i < tree.pieces.size(); ++i)
    if (find(i) != root) throw ValidationError("recompose: edges do not connect the tree");
  return cfg[root];
}

long long upperWeight(const Configuration& farSide, size_t markerIdx,
                      const std::vector<long long>& wRow) {
  if (wRow.size() != farSide.size()) throw ValidationError("upperWeight: dimension mismatch");
  auto c = firstCircuitThrough(farSide, markerIdx);
  if (!c)
    throw ValidationError("upperWeight: no circuit crosses the marker (coloop side)");
  Circuit ref = *c;
  if (ref.coeff[markerIdx] != -1) {
    if (ref.coeff[markerIdx] == 1)
      ref = ref.negated();
    else
      throw ValidationError("upperWeight: marker coefficient not +-1");
  }
  long long s = 0;
  for (size_t j = 0; j < farSide.size(); ++j)
    if (j != markerIdx) s += wRow[j] * ref.coeff[j];
  return s;
}

ChildKind classifyChild(const Configuration& subtree, const IntMatrix& wOnSubtree,
                        size_t markerIdx) {
  return isTame(subtree, wOnSubtree, markerIdx, /*assumeTwoConnected=*/true) ? ChildKind::Tame
                                                                             : ChildKind::Wild;
}

Gadget buildGadget(const RatVector& markerVec, long long gamma,
                   const std::vector<std::optional<Rational>>& f,
                   const std::vector<long long>& zeta) {
  if (f.size() != static_cast<size_t>(2 * gamma + 1))
    throw ValidationError("buildGadget: value table must cover [-gamma, gamma]");
  auto fat = [&](long long phi) -> const std::optional<Rational>& {
    return f[static_cast<size_t>(phi + gamma)];
  };
  if (!fat(0) || !fat(0)->isZero())
    throw ValidationError("buildGadget: f(0) must be 0");
  // Concavity on the finite range; finite values must form an interval.
  for (long long phi = -gamma + 1; phi + 1 <= gamma; ++phi) {
    if (fat(phi - 1) && fat(phi + 1) && !fat(phi))
      throw ValidationError("buildGadget: finite range of f is not an interval");
    if (fat(phi - 1) && fat(phi) && fat(phi + 1)) {
      Rational mid = *fat(phi) + *fat(phi);
      if (mid < *fat(phi - 1) + *fat(phi + 1))
        throw ValidationError("buildGadget: f is not concave");
    }
  }

  size_t m = markerVec.size();
  size_t k = zeta.size();
  Gadget g;
  g.cfg = Configuration(m);
  g.cfg.push("~root", markerVec);
  g.profits.push_back(Rational(0));
  g.lo.push_back(0);
  g.hi.push_back(0);
  std::vector<std::vector<long long>> wcols;
  // The marker keeps the zeroing weight so every gadget circuit cancels.
  wcols.push_back(zeta);
  RatVector neg = markerVec;
  for (auto& x : neg) x = -x;
  for (long long i = 1; i <= gamma; ++i) {
    // Copies of -marker carry flow in the positive direction.
    g.cfg.push("+" + std::to_string(i), neg);
    bool live = fat(i).has_value() && fat(i - 1).has_value();
    g.profits.push_back(live ? *fat(i) - *fat(i - 1) : Rational(0));
    g.lo.push_back(0);
    g.hi.push_back(live ? 1 : 0);
    std::vector<long long> wc(k);
    for (size_t r = 0; r < k; ++r) wc[r] = -zeta[r];
    wcols.push_back(wc);
  }
  for (long long i = 1; i <= gamma; ++i) {
    g.cfg.push("-" + std::to_string(i), markerVec);
    bool live = fat(-i).has_value() && fat(-i + 1).has_value();
    g.profits.push_back(live ? *fat(-i) - *fat(-i + 1) : Rational(0));
    g.lo.push_back(0);
    g.hi.push_back(live ? 1 : 0);
    std::vector<long long> wc(k);
    for (size_t r = 0; r < k; ++r) wc[r] = zeta[r];
    wcols.push_back(wc);
  }
  g.w = IntMatrix(k, g.cfg.size());
  for (size_t j = 0; j < g.cfg.size(); ++j)
    for (size_t r = 0; r < k; ++r) g.w.at(r, j) = wcols[j][r];
  return g;
}

// ---------------------------------------------------------------------------
// Rooted 2-sum dynamic program.

namespace {

struct Entry {
  long long value = 0;
  // Witness over a fixed ordered set of instance columns.
  std::vector<long long> x;
};

using Key = std::vector<long long>;

// value-max, deterministic lex tie-break on witnesses
void upsert(std::map<Key, Entry>& table, const Key& key, Entry e) {
  auto it = table.find(key);
  if (it == table.end()) {
    table.emplace(key, std::move(e));
    return;
  }
  if (e.value > it->second.value ||
      (e.value == it->second.value &&
       std::lexicographical_compare(e.x.begin(), e.x.end(), it->second.x.begin(),
                                    it->second.x.end()))) {
    it->second = std::move(e);
  }
}

struct ScanColumn {
  std::vector<long long> vec;  // ambient
  long long lo = 0, hi = 0;
  long long profit = 0;
  std::vector<long long> wcol;           // k weights
  int gadgetId = -1;                     // >= 0 for gadget copies
  int gadgetSign = 0;                    // contribution to the net marker flow
  size_t globalIdx = SIZE_MAX;           // instance column for originals
};

struct MarkerColumn {
  std::vector<long long> vec;
  long long lo = 0, hi = 0;
};

std::vector<long long> toIntVec(const RatVector& v) {
  std::vector<long long> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].toLongLong();
  return out;
}

// Local piece table: (child flows..., own flow) -> dOrig -> entry over the
// scanned columns (witness in scan order; gadget columns included).
struct LocalScanResult {
  // key: flows (children then own), then weight vector appended
  std::map<Key, std::map<Key, Entry>> table;  // flows -> (d -> entry)
};

LocalScanResult scanPiece(const std::vector<ScanColumn>& cols,
                          const std::vector<MarkerColumn>& childMarkers,
                          const MarkerColumn& ownMarker, size_t kRows) {
  size_t m = ownMarker.vec.size();
  // Suffix reach intervals per ambient coordinate, over child markers and the
  // own marker (for pruning after the plain columns).
  auto addInterval = [&](std::vector<long long>& mn, std::vector<long long>& mx,
                         const std::vector<long long>& vec, long long lo, long long hi) {
    for (size_t i = 0; i < m; ++i) {
      long long a = vec[i] * lo, b = vec[i] * hi;
      mn[i] += std::min(a, b);
      mx[i] += std::max(a, b);
    }
  };

  // suffix[j] = reach of columns j.. plus all markers
  size_t nc = cols.size();
  std::vector<std::vector<long long>> sufMin(nc + 1, std::vector<long long>(m, 0)),
      sufMax(nc + 1, std::vector<long long>(m, 0));
  addInterval(sufMin[nc], sufMax[nc], ownMarker.vec, ownMarker.lo, ownMarker.hi);
  for (const auto& mk : childMarkers) addInterval(sufMin[nc], sufMax[nc], mk.vec, mk.lo, mk.hi);
  for (size_t j = nc; j-- > 0;) {
    sufMin[j] = sufMin[j + 1];
    sufMax[j] = sufMax[j + 1];
    addInterval(sufMin[j], sufMax[j], cols[j].vec, cols[j].lo, cols[j].hi);
  }

  // State: ambient sum (m entries) ++ weight sum (k entries) -> entry.
  std::map<Key, Entry> states;
  {
    Key zero(m + kRows, 0);
    states.emplace(zero, Entry{});
  }
  auto reachable = [&](const Key& key, size_t idx) {
    for (size_t i = 0; i < m; ++i) {
      long long s = key[i];
      if (s + sufMax[idx][i] < 0 || s + sufMin[idx][i] > 0) return false;
    }
    return true;
  };

  for (size_t j = 0; j < nc; ++j) {
    std::map<Key, Entry> next;
    for (const auto& [key, ent] : states) {
      for (long long v = cols[j].lo; v <= cols[j].hi; ++v) {
        Key nk = key;
        for (size_t i = 0; i < m; ++i) nk[i] += cols[j].vec[i] * v;
        bool ok = true;
        for (size_t i = 0; i < m && ok; ++i) {
          long long s = nk[i];
          if (s + sufMax[j + 1][i] < 0 || s + sufMin[j + 1][i] > 0) ok = false;
        }
        if (!ok) continue;
        for (size_t r = 0; r < kRows; ++r) nk[m + r] += cols[j].wcol[r] * v;
        Entry ne = ent;
        ne.value += cols[j].profit * v;
        ne.x.push_back(v);
        upsert(next, nk, std::move(ne));
      }
    }
    states = std::move(next);
  }

  // Child markers: flows move into the key front (appended here, split later).
  // State key becomes: ambient ++ weights ++ flows-so-far.
  size_t q = childMarkers.size();
  for (size_t c = 0; c < q; ++c) {
    std::map<Key, Entry> next;
    // Remaining reach: markers c+1.. plus own marker.
    std::vector<long long> rm(m, 0), rx(m, 0);
    addInterval(rm, rx, ownMarker.vec, ownMarker.lo, ownMarker.hi);
    for (size_t c2 = c + 1; c2 < q; ++c2)
      addInterval(rm, rx, childMarkers[c2].vec, childMarkers[c2].lo, childMarkers[c2].hi);
    for (const auto& [key, ent] : states) {
      for (long long v = childMarkers[c].lo; v <= childMarkers[c].hi; ++v) {
        Key nk = key;
        for (size_t i = 0; i < m; ++i) nk[i] += childMarkers[c].vec[i] * v;
        bool ok = true;
        for (size_t i = 0; i < m && ok; ++i) {
          long long s = nk[i];
          if (s + rx[i] < 0 || s + rm[i] > 0) ok = false;
        }
        if (!ok) continue;
        nk.push_back(v);
        upsert(next, nk, Entry{ent.value, ent.x});
      }
    }
    states = std::move(next);
  }

  // Own marker: exactly determined by the ambient sum.
  size_t pivot = m;
  for (size_t i = 0; i < m; ++i)
    if (ownMarker.vec[i] != 0) {
      pivot = i;
      break;
    }
  LocalScanResult res;
  for (const auto& [key, ent] : states) {
    long long phi;
    if (pivot == m) {
      // Zero marker vector never happens for real markers.
      throw InvariantViolation("scanPiece: zero marker vector");
    }
    long long num = -key[pivot];
    if (num % ownMarker.vec[pivot] != 0) continue;
    phi = num / ownMarker.vec[pivot];
    if (phi < ownMarker.lo || phi > ownMarker.hi) continue;
    bool ok = true;
    for (size_t i = 0; i < m && ok; ++i)
      if (key[i] + ownMarker.vec[i] * phi != 0) ok = false;
    if (!ok) continue;
    Key flows(key.begin() + m + kRows, key.end());
    flows.push_back(phi);
    Key d(key.begin() + m, key.begin() + m + kRows);
    upsert(res.table[flows], d, Entry{ent.value, ent.x});
  }
  return res;
}

struct GadgetInfo {
  std::vector<size_t> subtreeCols;                       // instance columns replaced
  std::map<long long, std::vector<long long>> witness;   // flow -> x over subtreeCols
};

}  // namespace

TargetTable solveTwoSumDp(const RootedMcicpInstance& inst, const DecompositionTree& tree) {
  const McicpInstance& base = inst.base;
  size_t n = base.nVars();
  size_t m = base.a.ambient;
  size_t kRows = base.w.rows;
  if (base.lo[inst.rootCol] != inst.flow || base.hi[inst.rootCol] != inst.flow)
    throw ValidationError("solveTwoSumDp: root flow must be pinned by its bounds");
  long long gamma = fBound(std::max<long long>(1, kRows), base.delta);
  long long boxRadius = base.delta * gamma;

  // --- tree bookkeeping -----------------------------------------------------
  size_t nn = tree.pieces.size();
  const std::string rootLabel = base.a.labels[inst.rootCol];
  size_t rootNode = SIZE_MAX;
  for (size_t t = 0; t < nn; ++t)
    for (const auto& l : tree.pieces[t].labels)
      if (l == rootLabel) rootNode = t;
  if (rootNode == SIZE_MAX) throw ValidationError("solveTwoSumDp: root column missing from tree");

  std::vector<std::vector<std::pair<size_t, std::string>>> adj(nn);
  for (const auto& e : tree.edges) {
    adj[e.t1].push_back({e.t2, e.marker});
    adj[e.t2].push_back({e.t1, e.marker});
  }
  std::vector<size_t> parent(nn, SIZE_MAX), order;
  std::vector<std::string> markerToParent(nn);
  std::vector<std::vector<size_t>> children(nn);
  {
    std::vector<bool> seen(nn, false);
    order.push_back(rootNode);
    seen[rootNode] = true;
    markerToParent[rootNode] = rootLabel;
    for (size_t head = 0; head < order.size(); ++head) {
      size_t t = order[head];
      for (const auto& [u, mk] : adj[t]) {
        if (seen[u]) continue;
        seen[u] = true;
        parent[u] = t;
        markerToParent[u] = mk;
        children[t].push_back(u);
        order.push_back(u);
      }
    }
    if (order.size() != nn) throw ValidationError("solveTwoSumDp: tree is not connected");
  }

  auto globalIdxOf = [&](const std::string& label) -> size_t {
    for (size_t j = 0; j < n; ++j)
      if (base.a.labels[j] == label) return j;
    return SIZE_MAX;
  };

  // Original instance columns per piece / subtree.
  std::vector<std::vector<size_t>> pieceCols(nn), subtreeCols(nn);
  for (size_t t = 0; t < nn; ++t) {
    for (const auto& l : tree.pieces[t].labels) {
      size_t g = globalIdxOf(l);
      if (g != SIZE_MAX && g != inst.rootCol) pieceCols[t].push_back(g);
      if (g == SIZE_MAX && l != markerToParent[t]) {
        // must be a child marker
        bool found = false;
        for (const auto& e : tree.edges)
          if (e.marker == l) found = true;
        if (!found) throw ValidationError("solveTwoSumDp: unknown piece column '" + l + "'");
      }
    }
  }
  for (size_t idx = order.size(); idx-- > 0;) {
    size_t t = order[idx];
    subtreeCols[t] = pieceCols[t];
    for (size_t c : children[t])
      subtreeCols[t].insert(subtreeCols[t].end(), subtreeCols[c].begin(), subtreeCols[c].end());
    std::sort(subtreeCols[t].begin(), subtreeCols[t].end());
  }

  auto markerVecOf = [&](size_t t) -> RatVector {
    if (t == rootNode) return base.a.cols[inst.rootCol];
    const Configuration& piece = tree.pieces[t];
    return piece.cols[piece.indexOf(markerToParent[t])];
  };

  // Composed subtree configuration: subtree originals plus the marker.
  auto subtreeConfig = [&](size_t t) {
    Configuration c(m);
    for (size_t g : subtreeCols[t]) c.push(base.a.labels[g], base.a.cols[g]);
    c.push("~up", markerVecOf(t));
    return c;
  };

  // --- classification and marker weights ------------------------------------
  std::vector<ChildKind> kind(nn, ChildKind::Wild);
  std::vector<std::vector<long long>> lower(nn), sigma(nn);
  for (size_t t = 0; t < nn; ++t) {
    if (t == rootNode) {
      sigma[t].resize(kRows);
      for (size_t r = 0; r < kRows; ++r) sigma[t][r] = base.w.at(r, inst.rootCol);
      continue;
    }
    Configuration sub = subtreeConfig(t);
    size_t mk = sub.size() - 1;
    IntMatrix wsub(kRows, sub.size());
    for (size_t j = 0; j + 1 < sub.size(); ++j)
      for (size_t r = 0; r < kRows; ++r) wsub.at(r, j) = base.w.at(r, subtreeCols[t][j]);
    kind[t] = classifyChild(sub, wsub, mk);
    // Lower weight: reference crossing circuit with +1 at the marker.
    auto ref = firstCircuitThrough(sub, mk);
    if (!ref) throw InvariantViolation("solveTwoSumDp: subtree marker is a coloop");
    if (std::llabs(ref->coeff[mk]) != 1)
      throw InvariantViolation("solveTwoSumDp: non-regular marker coefficient");
    Circuit c = ref->coeff[mk] == 1 ? *ref : ref->negated();
    lower[t].assign(kRows, 0);
    for (size_t j = 0; j + 1 < sub.size(); ++j)
      for (size_t r = 0; r < kRows; ++r)
        lower[t][r] += base.w.at(r, subtreeCols[t][j]) * c.coeff[j];
    if (kind[t] == ChildKind::Tame) {
      sigma[t].resize(kRows);
      for (size_t r = 0; r < kRows; ++r) sigma[t][r] = -lower[t][r];
    } else {
      // Upper weight from the complement side.
      Configuration far(m);
      std::vector<size_t> farCols;
      std::vector<bool> inSub(n, false);
      for (size_t g : subtreeCols[t]) inSub[g] = true;
      for (size_t g = 0; g < n; ++g)
        if (!inSub[g]) farCols.push_back(g);
      for (size_t g : farCols) far.push(base.a.labels[g], base.a.cols[g]);
      far.push("~down", markerVecOf(t));
      std::vector<long long> wrow(far.size(), 0);
      sigma[t].assign(kRows, 0);
      for (size_t r = 0; r < kRows; ++r) {
        for (size_t j = 0; j < farCols.size(); ++j) wrow[j] = base.w.at(r, farCols[j]);
        wrow[far.size() - 1] = 0;
        sigma[t][r] = upperWeight(far, far.size() - 1, wrow);
      }
    }
  }

  // --- tame subtree substitution --------------------------------------------
  std::vector<bool> dead(nn, false);
  std::vector<GadgetInfo> gadgets;
  // gadget columns appended to parent pieces:
  struct GadgetCol {
    std::vector<long long> vec;
    long long lo, hi, profit;
    std::vector<long long> wcol;
    int gadgetId;
    int sign;  // +1: one unit of positive subtree flow, -1: negative
  };
  std::vector<std::vector<GadgetCol>> extraCols(nn);
  std::vector<std::vector<int>> nodeGadgets(nn);  // gadget ids per parent node

  std::vector<bool> tameCovered(nn, false);
  for (size_t idx = 0; idx < order.size(); ++idx) {
    size_t t = order[idx];
    if (t == rootNode) continue;
    if (tameCovered[parent[t]] || dead[t]) {
      // inside an already substituted subtree
      tameCovered[t] = true;
      dead[t] = true;
      continue;
    }
    if (kind[t] != ChildKind::Tame) continue;

    // Candidate for the gadget: value function of the subtree by exact LP.
    Configuration sub = subtreeConfig(t);
    size_t mkIdx = sub.size() - 1;
    size_t nsub = sub.size();
    RatMatrix am = sub.matrix();
    RatVector zeroB(m);
    std::vector<ExtendedBound> lo(nsub), hi(nsub);
    RatVector profit(nsub);
    for (size_t j = 0; j + 1 < nsub; ++j) {
      lo[j] = ExtendedBound::of(base.lo[subtreeCols[t][j]]);
      hi[j] = ExtendedBound::of(base.hi[subtreeCols[t][j]]);
      profit[j] = Rational(base.p[subtreeCols[t][j]]);
    }
    std::vector<std::optional<Rational>> f(2 * gamma + 1);
    std::map<long long, std::vector<long long>> witnessByFlow;
    for (long long phi = -gamma; phi <= gamma; ++phi) {
      lo[mkIdx] = ExtendedBound::of(phi);
      hi[mkIdx] = ExtendedBound::of(phi);
      LpOutcome r = lpSolve(am, zeroB, lo, hi, profit);
      if (r.status != LpOutcome::Status::Optimal) continue;
      RatVector wx = lexMinOptimal(am, zeroB, lo, hi, profit);
      if (!r.value.isInteger())
        throw InvariantViolation("solveTwoSumDp: fractional tame value");
      f[static_cast<size_t>(phi + gamma)] = r.value;
      std::vector<long long> wit(nsub - 1);
      for (size_t j = 0; j + 1 < nsub; ++j) {
        if (!wx[j].isInteger())
          throw InvariantViolation("solveTwoSumDp: fractional tame witness");
        wit[j] = wx[j].toLongLong();
      }
      witnessByFlow[phi] = wit;
    }
    bool zeroOk = f[static_cast<size_t>(gamma)] && f[static_cast<size_t>(gamma)]->isZero();
    if (!zeroOk) {
      // Fall back to treating this child as wild (general DP handles it).
      kind[t] = ChildKind::Wild;
      for (size_t r = 0; r < kRows; ++r) sigma[t][r] = -lower[t][r];
      continue;
    }

    int gid = static_cast<int>(gadgets.size());
    GadgetInfo gi;
    gi.subtreeCols = subtreeCols[t];
    gi.witness = std::move(witnessByFlow);
    gadgets.push_back(std::move(gi));
    nodeGadgets[parent[t]].push_back(gid);

    std::vector<long long> mvec = toIntVec(markerVecOf(t));
    for (long long i = 1; i <= gamma; ++i) {
      bool live = f[size_t(i + gamma)].has_value() && f[size_t(i - 1 + gamma)].has_value();
      if (!live) break;
      GadgetCol gc;
      gc.vec.resize(m);
      for (size_t r = 0; r < m; ++r) gc.vec[r] = -mvec[r];
      gc.lo = 0;
      gc.hi = 1;
      gc.profit = (*f[size_t(i + gamma)] - *f[size_t(i - 1 + gamma)]).toLongLong();
      gc.wcol.resize(kRows);
      for (size_t r = 0; r < kRows; ++r) gc.wcol[r] = lower[t][r];  // -zeta
      gc.gadgetId = gid;
      gc.sign = 1;
      extraCols[parent[t]].push_back(gc);
    }
    for (long long i = 1; i <= gamma; ++i) {
      bool live = f[size_t(-i + gamma)].has_value() && f[size_t(-i + 1 + gamma)].has_value();
      if (!live) break;
      GadgetCol gc;
      gc.vec = mvec;
      gc.lo = 0;
      gc.hi = 1;
      gc.profit = (*f[size_t(-i + gamma)] - *f[size_t(-i + 1 + gamma)]).toLongLong();
      gc.wcol.resize(kRows);
      for (size_t r = 0; r < kRows; ++r) gc.wcol[r] = -lower[t][r];  // +zeta
      gc.gadgetId = gid;
      gc.sign = -1;
      extraCols[parent[t]].push_back(gc);
    }
    dead[t] = true;
    tameCovered[t] = true;
  }

  // --- bottom-up table computation -------------------------------------------
  // F-table per node: key (d ++ phi) -> entry (witness over sorted covered
  // columns of the node's live subtree, via explicit column lists).
  std::vector<std::map<Key, Entry>> fTable(nn);
  std::vector<std::vector<size_t>> coveredCols(nn);  // witness column order

  for (size_t idx = order.size(); idx-- > 0;) {
    size_t t = order[idx];
    if (dead[t]) continue;
    std::vector<size_t> liveKids;
    for (size_t c : children[t])
      if (!dead[c]) liveKids.push_back(c);

    // Scan columns: piece originals (ascending global index), then gadget
    // copies appended to this piece.
    std::vector<ScanColumn> cols;
    std::vector<size_t> sortedPiece = pieceCols[t];
    std::sort(sortedPiece.begin(), sortedPiece.end());
    for (size_t g : sortedPiece) {
      ScanColumn sc;
      sc.vec = toIntVec(base.a.cols[g]);
      sc.lo = base.lo[g];
      sc.hi = base.hi[g];
      sc.profit = base.p[g];
      sc.wcol.resize(kRows);
      for (size_t r = 0; r < kRows; ++r) sc.wcol[r] = base.w.at(r, g);
      sc.globalIdx = g;
      cols.push_back(std::move(sc));
    }
    for (const auto& gc : extraCols[t]) {
      ScanColumn sc;
      sc.vec = gc.vec;
      sc.lo = gc.lo;
      sc.hi = gc.hi;
      sc.profit = gc.profit;
      sc.wcol = gc.wcol;
      sc.gadgetId = gc.gadgetId;
      sc.gadgetSign = gc.sign;
      cols.push_back(std::move(sc));
    }

    std::vector<MarkerColumn> childMarkers;
    for (size_t c : liveKids) {
      MarkerColumn mc;
      mc.vec = toIntVec(markerVecOf(c));
      mc.lo = -gamma;
      mc.hi = gamma;
      childMarkers.push_back(std::move(mc));
    }
    MarkerColumn own;
    own.vec = toIntVec(markerVecOf(t));
    if (t == rootNode) {
      own.lo = own.hi = inst.flow;
    } else {
      own.lo = -gamma;
      own.hi = gamma;
    }

    LocalScanResult local = scanPiece(cols, childMarkers, own, kRows);

    // Witness columns of this node: piece originals + gadget subtree columns
    // + live children's covered columns.
    std::vector<size_t> myCols = sortedPiece;
    for (int gid : nodeGadgets[t]) {
      const auto& sc = gadgets[gid].subtreeCols;
      myCols.insert(myCols.end(), sc.begin(), sc.end());
    }
    for (size_t c : liveKids)
      myCols.insert(myCols.end(), coveredCols[c].begin(), coveredCols[c].end());
    std::sort(myCols.begin(), myCols.end());
    coveredCols[t] = myCols;
    auto posOf = [&](size_t g) {
      return std::lower_bound(myCols.begin(), myCols.end(), g) - myCols.begin();
    };

    // Translate a scan entry into a witness over myCols (children absent).
    auto translate = [&](const Entry& ent, std::vector<long long>& out, long long& valueAdj) {
      out.assign(myCols.size(), 0);
      valueAdj = 0;
      std::vector<long long> netFlow(gadgets.size(), 0);
      std::vector<long long> copyProfit(gadgets.size(), 0);
      for (size_t j = 0; j < cols.size(); ++j) {
        long long v = ent.x[j];
        if (cols[j].globalIdx != SIZE_MAX) {
          out[posOf(cols[j].globalIdx)] = v;
        } else {
          netFlow[cols[j].gadgetId] += cols[j].gadgetSign * v;
          copyProfit[cols[j].gadgetId] += cols[j].profit * v;
        }
      }
      for (int gid : nodeGadgets[t]) {
        auto it = gadgets[gid].witness.find(netFlow[gid]);
        if (it == gadgets[gid].witness.end())
          throw InvariantViolation("solveTwoSumDp: gadget flow without a witness");
        const auto& sc = gadgets[gid].subtreeCols;
        long long wprofit = 0;
        for (size_t j = 0; j < sc.size(); ++j) {
          out[posOf(sc[j])] = it->second[j];
          wprofit += base.p[sc[j]] * it->second[j];
        }
        // The telescoped copy profits must equal the subtree witness profit.
        valueAdj += wprofit - copyProfit[gid];
        if (wprofit != copyProfit[gid])
          throw InvariantViolation("solveTwoSumDp: gadget profit mismatch");
      }
    };

    // Index live children's tables by flow.
    std::vector<std::map<long long, std::vector<std::pair<Key, const Entry*>>>> childByFlow(
        liveKids.size());
    for (size_t ci = 0; ci < liveKids.size(); ++ci) {
      for (const auto& [key, ent] : fTable[liveKids[ci]]) {
        Key d(key.begin(), key.begin() + kRows);
        long long phi = key[kRows];
        childByFlow[ci][phi].push_back({d, &ent});
      }
    }

    long long crossingBudget = 2 * static_cast<long long>(kRows) * base.delta * gamma;

    for (const auto& [flows, dmap] : local.table) {
      // flows: child flows then own flow
      long long ownPhi = flows.back();
      // Guess restrictions over wild children.
      long long sumAbs = 0;
      for (size_t ci = 0; ci < liveKids.size(); ++ci)
        if (kind[liveKids[ci]] == ChildKind::Wild) sumAbs += std::llabs(flows[ci]);
      if (kRows > 0 && sumAbs > crossingBudget) continue;

      // All children must have entries at the opposite flow: the piece-side
      // marker flow and the child's own flow cancel in the 2-sum.
      std::vector<const std::vector<std::pair<Key, const Entry*>>*> lists;
      bool feasible = true;
      for (size_t ci = 0; ci < liveKids.size(); ++ci) {
        auto it = childByFlow[ci].find(-flows[ci]);
        if (it == childByFlow[ci].end()) {
          feasible = false;
          break;
        }
        lists.push_back(&it->second);
      }
      if (!feasible) continue;

      for (const auto& [dOrig, ent] : dmap) {
        std::vector<long long> witBase;
        long long valueAdj;
        translate(ent, witBase, valueAdj);
        long long baseValue = ent.value + valueAdj;

        // Product over children, accumulating d and witnesses.
        std::function<void(size_t, std::vector<long long>, long long, std::vector<long long>&,
                           long long)>
            recurse = [&](size_t ci, std::vector<long long> dAcc, long long vAcc,
                          std::vector<long long>& wit, long long zeroFlowNonzeroTarget) {
              if (ci == liveKids.size()) {
                Key key = dAcc;
                for (size_t r = 0; r < kRows; ++r) key[r] += sigma[t][r] * ownPhi;
                for (size_t r = 0; r < kRows; ++r)
                  if (std::llabs(key[r]) > boxRadius) return;
                key.push_back(ownPhi);
                upsert(fTable[t], key, Entry{vAcc, wit});
                return;
              }
              size_t node = liveKids[ci];
              for (const auto& [dChild, entPtr] : *lists[ci]) {
                long long zf = zeroFlowNonzeroTarget;
                if (kind[node] == ChildKind::Wild && flows[ci] == 0) {
                  bool nonzero = false;
                  for (long long v : dChild)
                    if (v != 0) nonzero = true;
                  if (nonzero && ++zf > gamma) continue;
                }
                // Child's own flow is -flows[ci]; strip its sigma term to
                // recover the child-original weight contribution.
                std::vector<long long> dNext = dAcc;
                for (size_t r = 0; r < kRows; ++r)
                  dNext[r] += dChild[r] + sigma[node][r] * flows[ci];
                // Merge child witness into place.
                std::vector<long long> witNext = wit;
                const auto& ccols = coveredCols[node];
                for (size_t j = 0; j < ccols.size(); ++j)
                  witNext[posOf(ccols[j])] = entPtr->x[j];
                recurse(ci + 1, std::move(dNext), vAcc + entPtr->value, witNext, zf);
              }
            };
        std::vector<long long> wit0 = witBase;
        recurse(0, dOrig, baseValue, wit0, 0);
      }
    }
  }

  // --- finalize ---------------------------------------------------------------
  TargetTable out;
  const auto& rootCov = coveredCols[rootNode];
  for (const auto& [key, ent] : fTable[rootNode]) {
    Key d(key.begin(), key.begin() + kRows);
    // Root flow was pinned; witness gains the root column.
    std::vector<size_t> outCols = rootCov;
    outCols.push_back(inst.rootCol);
    std::sort(outCols.begin(), outCols.end());
    std::vector<long long> x(outCols.size(), 0);
    for (size_t j = 0; j < rootCov.size(); ++j) {
      size_t pos = std::lower_bound(outCols.begin(), outCols.end(), rootCov[j]) - outCols.begin();
      x[pos] = ent.x[j];
    }
    {
      size_t pos =
          std::lower_bound(outCols.begin(), outCols.end(), inst.rootCol) - outCols.begin();
      x[pos] = inst.flow;
    }
    long long value = ent.value + base.p[inst.rootCol] * inst.flow;
    auto it = out.find(d);
    if (it == out.end() || value > it->second.value ||
        (value == it->second.value &&
         std::lexicographical_compare(x.begin(), x.end(), it->second.x.begin(),
                                      it->second.x.end())))
      out[d] = SolveEntry{value, x};
  }
  return out;
}

// ---------------------------------------------------------------------------
// 1-sum layer.

namespace {

// Direct table for single-column components.
TargetTable singleColumnTable(const McicpInstance& inst) {
  TargetTable out;
  bool zero = isZeroVector(inst.a.cols[0]);
  long long lo = inst.lo[0], hi = inst.hi[0];
  if (!zero) {
    if (lo > 0 || hi < 0) return out;  // only x = 0 solves Ax = 0
    lo = hi = 0;
  }
  for (long long v = lo; v <= hi; ++v) {
    Key d(inst.w.rows);
    for (size_t r = 0; r < inst.w.rows; ++r) d[r] = inst.w.at(r, 0) * v;
    auto it = out.find(d);
    long long value = inst.p[0] * v;
    if (it == out.end() || value > it->second.value)
      out[d] = SolveEntry{value, {v}};
  }
  return out;
}

// Exact LP table for instances without weight rows (TU IP = LP).
TargetTable lpTable(const McicpInstance& inst) {
  RatMatrix am = inst.a.matrix();
  RatVector b(inst.a.ambient);
  RatVector p(inst.nVars());
  for (size_t j = 0; j < inst.nVars(); ++j) p[j] = Rational(inst.p[j]);
  auto lo = finiteBounds(inst.lo), hi = finiteBounds(inst.hi);
  LpOutcome r = lpSolve(am, b, lo, hi, p);
  TargetTable out;
  if (r.status != LpOutcome::Status::Optimal) return out;
  RatVector x = lexMinOptimal(am, b, lo, hi, p);
  std::vector<long long> xi(x.size());
  for (size_t j = 0; j < x.size(); ++j) {
    if (!x[j].isInteger()) throw InvariantViolation("lpTable: fractional LP vertex");
    xi[j] = x[j].toLongLong();
  }
  if (!r.value.isInteger()) throw InvariantViolation("lpTable: fractional LP value");
  out[Key{}] = SolveEntry{r.value.toLongLong(), xi};
  return out;
}

// Table of a 2-connected component (no 1-separation) via the rooted DP.
TargetTable twoConnectedTable(const McicpInstance& inst) {
  if (inst.nVars() == 1) return singleColumnTable(inst);

  // Rooted conversion: duplicate the first column with prescribed flow 0.
  RootedMcicpInstance rooted;
  rooted.base = inst;
  rooted.base.a.push("~root", inst.a.cols[0]);
  rooted.base.p.push_back(0);
  rooted.base.lo.push_back(0);
  rooted.base.hi.push_back(0);
  IntMatrix w2(inst.w.rows, inst.nVars() + 1);
  for (size_t r = 0; r < inst.w.rows; ++r) {
    for (size_t j = 0; j < inst.nVars(); ++j) w2.at(r, j) = inst.w.at(r, j);
    w2.at(r, inst.nVars()) = inst.w.at(r, 0);
  }
  rooted.base.w = w2;
  rooted.rootCol = inst.nVars();
  rooted.flow = 0;

  DecompositionTree tree;
  if (rooted.base.nVars() <= 3) {
    tree.pieces.push_back(rooted.base.a);
  } else {
    tree = buildDecompositionTree(rooted.base.a);
  }
  TargetTable t = solveTwoSumDp(rooted, tree);
  // Strip the duplicate column (last instance column by construction).
  TargetTable out;
  for (auto& [d, e] : t) {
    SolveEntry se;
    se.value = e.value;
    se.x.assign(e.x.begin(), e.x.end() - 1);
    out[d] = std::move(se);
  }
  return out;
}

// Full target table of an arbitrary instance: split into 1-sum classes,
// solve each, and convolve under the partial-sum box. Witnesses cover all
// instance columns.
TargetTable mcicpTable(const McicpInstance& inst) {
  size_t n = inst.nVars();
  long long kRows = static_cast<long long>(inst.w.rows);
  for (size_t j = 0; j < n; ++j)
    if (inst.lo[j] > inst.hi[j]) return {};
  if (kRows == 0) return lpTable(inst);
  long long gamma = fBound(kRows, inst.delta);
  long long radius = inst.delta * gamma;

  auto classes = oneSumComponents(inst.a);
  TargetTable acc;
  acc[Key(kRows, 0)] = SolveEntry{0, std::vector<long long>(n, 0)};
  for (const auto& idx : classes) {
    McicpInstance c;
    c.a = inst.a.select(idx);
    c.w = inst.w.selectCols(idx);
    c.delta = inst.delta;
    c.d.assign(inst.w.rows, 0);
    for (size_t j : idx) {
      c.p.push_back(inst.p[j]);
      c.lo.push_back(inst.lo[j]);
      c.hi.push_back(inst.hi[j]);
    }
    TargetTable table = twoConnectedTable(c);
    TargetTable next;
    for (const auto& [dAcc, entAcc] : acc) {
      for (const auto& [dComp, entComp] : table) {
        Key dNew(kRows);
        bool inBox = true;
        for (long long r = 0; r < kRows; ++r) {
          dNew[r] = dAcc[r] + dComp[r];
          if (std::llabs(dNew[r]) > radius) inBox = false;
        }
        if (!inBox) continue;
        SolveEntry cand;
        cand.value = entAcc.value + entComp.value;
        cand.x = entAcc.x;
        for (size_t j = 0; j < idx.size(); ++j) cand.x[idx[j]] = entComp.x[j];
        auto it = next.find(dNew);
        if (it == next.end() || cand.value > it->second.value ||
            (cand.value == it->second.value && cand.x < it->second.x))
          next[dNew] = std::move(cand);
      }
    }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

McicpSolution solveOneSum(const std::vector<McicpInstance>& components,
                          const std::vector<long long>& d, long long delta) {
  long long kRows = components.empty() ? 0 : static_cast<long long>(components[0].w.rows);
  for (const auto& c : components)
    if (static_cast<long long>(c.w.rows) != kRows)
      throw ValidationError("solveOneSum: inconsistent weight row counts");
  long long gamma = fBound(std::max<long long>(1, kRows), delta);
  long long radius = delta * gamma;

  // DP over components with the partial-sum box restriction.
  std::map<Key, std::pair<long long, std::vector<std::vector<long long>>>> acc;
  acc[Key(kRows, 0)] = {0, {}};
  for (const auto& comp : components) {
    TargetTable table = mcicpTable(comp);
    std::map<Key, std::pair<long long, std::vector<std::vector<long long>>>> next;
    for (const auto& [dAcc, entAcc] : acc) {
      for (const auto& [dComp, entComp] : table) {
        Key dNew(kRows);
        bool inBox = true;
        for (long long r = 0; r < kRows; ++r) {
          dNew[r] = dAcc[r] + dComp[r];
          if (std::llabs(dNew[r]) > radius) inBox = false;
        }
        if (!inBox) continue;
        long long value = entAcc.first + entComp.value;
        auto parts = entAcc.second;
        parts.push_back(entComp.x);
        auto it = next.find(dNew);
        if (it == next.end() || value > it->second.first ||
            (value == it->second.first && parts < it->second.second)) {
          next[dNew] = {value, std::move(parts)};
        }
      }
    }
    acc = std::move(next);
  }

  McicpSolution sol;
  Key want(d.begin(), d.end());
  auto it = acc.find(want);
  if (it == acc.end()) return sol;
  sol.feasible = true;
  sol.value = it->second.first;
  for (size_t ci = 0; ci < components.size(); ++ci)
    sol.x.insert(sol.x.end(), it->second.second[ci].begin(), it->second.second[ci].end());
  return sol;
}

McicpSolution solveMcicp(const McicpInstance& inst) {
  size_t n = inst.nVars();
  if (inst.w.cols != n || inst.p.size() != n || inst.lo.size() != n || inst.hi.size() != n ||
      inst.d.size() != inst.w.rows)
    throw ValidationError("solveMcicp: inconsistent dimensions");

  TargetTable table = mcicpTable(inst);
  McicpSolution sol;
  Key want(inst.d.begin(), inst.d.end());
  auto it = table.find(want);
  if (it == table.end()) return sol;
  sol.feasible = true;
  sol.value = it->second.value;
  sol.x = it->second.x;
  // Witness validation.
  {
    RatMatrix am = inst.a.matrix();
    RatVector xr(n);
    for (size_t j = 0; j < n; ++j) xr[j] = Rational(sol.x[j]);
    if (!isZeroVector(am.apply(xr)))
      throw InvariantViolation("solveMcicp: witness violates Ax = 0");
    for (size_t r = 0; r < inst.w.rows; ++r) {
      long long s = 0;
      for (size_t j = 0; j < n; ++j) s += inst.w.at(r, j) * sol.x[j];
      if (s != inst.d[r]) throw InvariantViolation("solveMcicp: witness violates Wx = d");
    }
    long long v = 0;
    for (size_t j = 0; j < n; ++j) {
      if (sol.x[j] < inst.lo[j] || sol.x[j] > inst.hi[j])
        throw InvariantViolation("solveMcicp: witness violates bounds");
      v += inst.p[j] * sol.x[j];
    }
    if (v != sol.value) throw InvariantViolation("solveMcicp: witness value mismatch");
  }
  return sol;
}

}  // namespace ntu
