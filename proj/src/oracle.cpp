#include "oracle.hpp"

#include <algorithm>
#include <array>

namespace ntu::oracle {

namespace {

long long checkedBoxSize(const std::vector<long long>& lo, const std::vector<long long>& hi,
                         long long maxPoints) {
  long long total = 1;
  for (size_t j = 0; j < lo.size(); ++j) {
    if (lo[j] > hi[j]) return 0;
    long long range = hi[j] - lo[j] + 1;
    if (total > maxPoints / range + 1) throw CapExceeded("oracle: lattice budget exceeded");
    total *= range;
    if (total > maxPoints) throw CapExceeded("oracle: lattice budget exceeded");
  }
  return total;
}

// Ascending-lex odometer over the box; fn sees each point.
void forEachPoint(const std::vector<long long>& lo, const std::vector<long long>& hi,
                  const std::function<void(const std::vector<long long>&)>& fn) {
  size_t n = lo.size();
  std::vector<long long> x(lo);
  for (size_t j = 0; j < n; ++j)
    if (lo[j] > hi[j]) return;
  for (;;) {
    fn(x);
    size_t j = n;
    while (j > 0) {
      --j;
      if (x[j] < hi[j]) {
        ++x[j];
        for (size_t t = j + 1; t < n; ++t) x[t] = lo[t];
        break;
      }
      if (j == 0) return;
    }
    if (n == 0) return;
  }
}

bool satisfies(const std::vector<std::vector<long long>>& rows, const std::vector<long long>& rhs,
               const std::vector<long long>& x) {
  for (size_t i = 0; i < rows.size(); ++i) {
    long long s = 0;
    for (size_t j = 0; j < x.size(); ++j) s += rows[i][j] * x[j];
    if (s != rhs[i]) return false;
  }
  return true;
}

long long objective(const std::vector<long long>& p, const std::vector<long long>& x) {
  long long s = 0;
  for (size_t j = 0; j < x.size(); ++j) s += p[j] * x[j];
  return s;
}

}  // namespace

BruteResult bruteIp(const std::vector<long long>& p,
                    const std::vector<std::vector<long long>>& a, const std::vector<long long>& b,
                    const std::vector<std::vector<long long>>& w, const std::vector<long long>& d,
                    const std::vector<long long>& lo, const std::vector<long long>& hi,
                    const BruteBudget& budget) {
  checkedBoxSize(lo, hi, budget.maxPoints);
  BruteResult res;
  forEachPoint(lo, hi, [&](const std::vector<long long>& x) {
    if (!satisfies(a, b, x) || !satisfies(w, d, x)) return;
    long long v = objective(p, x);
    if (!res.feasible || v > res.value) {
      res.feasible = true;
      res.value = v;
      res.x = x;  // first maximizer in ascending lex order is the lex-min one
    }
  });
  return res;
}

bool bruteIpOptima(const std::vector<long long>& p,
                   const std::vector<std::vector<long long>>& a, const std::vector<long long>& b,
                   const std::vector<std::vector<long long>>& w, const std::vector<long long>& d,
                   const std::vector<long long>& lo, const std::vector<long long>& hi,
                   const BruteBudget& budget,
                   const std::function<void(const std::vector<long long>&)>& visit) {
  BruteResult best = bruteIp(p, a, b, w, d, lo, hi, budget);
  if (!best.feasible) return false;
  forEachPoint(lo, hi, [&](const std::vector<long long>& x) {
    if (!satisfies(a, b, x) || !satisfies(w, d, x)) return;
    if (objective(p, x) == best.value) visit(x);
  });
  return true;
}

namespace {

long long cofactorDet(std::vector<std::vector<long long>>& m, std::vector<int>& colsAlive,
                      size_t row) {
  size_t k = m.size();
  if (row == k) return 1;  // unreachable guard
  // Find live columns.
  if (row + 1 == k) {
    for (size_t j = 0; j < k; ++j)
      if (colsAlive[j]) return m[row][j];
  }
  long long det = 0;
  int sign = 1;
  for (size_t j = 0; j < k; ++j) {
    if (!colsAlive[j]) continue;
    if (m[row][j] != 0) {
      colsAlive[j] = 0;
      det += sign * m[row][j] * cofactorDet(m, colsAlive, row + 1);
      colsAlive[j] = 1;
    }
    sign = -sign;
  }
  return det;
}

}  // namespace

long long maxAbsSubdeterminant(const std::vector<std::vector<long long>>& m, int sizeCap,
                               const BruteBudget& budget) {
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  size_t maxK = std::min(rows, cols);
  if (maxK > static_cast<size_t>(sizeCap))
    throw CapExceeded("maxAbsSubdeterminant: size cap exceeded");

  long long best = 0;
  long long visited = 0;
  // Column-subset outer loop, row-subset inner: a deliberately different
  // enumeration order from the circuit-side machinery.
  for (size_t k = 1; k <= maxK; ++k) {
    std::vector<size_t> cIdx(k);
    for (size_t i = 0; i < k; ++i) cIdx[i] = i;
    auto next = [&](std::vector<size_t>& idx, size_t limit) {
      size_t i = k;
      while (i > 0) {
        --i;
        if (idx[i] != i + limit - k) {
          ++idx[i];
          for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
          return true;
        }
      }
      return false;
    };
    do {
      std::vector<size_t> rIdx(k);
      for (size_t i = 0; i < k; ++i) rIdx[i] = i;
      do {
        if (++visited > budget.maxSubmatrices)
          throw CapExceeded("maxAbsSubdeterminant: submatrix budget exceeded");
        std::vector<std::vector<long long>> sub(k, std::vector<long long>(k));
        for (size_t i = 0; i < k; ++i)
          for (size_t j = 0; j < k; ++j) sub[i][j] = m[rIdx[i]][cIdx[j]];
        std::vector<int> alive(k, 1);
        best = std::max(best, std::llabs(cofactorDet(sub, alive, 0)));
      } while (next(rIdx, rows));
    } while (next(cIdx, cols));
  }
  return best;
}

namespace {

struct McippScan {
  size_t n;
  const std::vector<std::array<long long, 4>>& edges;  // tail, head, lo, hi
  const std::vector<long long>& p;
  const std::vector<std::vector<long long>>& w;
  const std::vector<long long>& d;
  long long budget;

  std::vector<size_t> order;                 // assignment order, BFS from vertex 0
  std::vector<std::vector<size_t>> incident;  // edges with both ends assigned at step
  long long explored = 0;

  McippScan(size_t nv, const std::vector<std::array<long long, 4>>& es,
            const std::vector<long long>& pp, const std::vector<std::vector<long long>>& ww,
            const std::vector<long long>& dd, long long maxPoints)
      : n(nv), edges(es), p(pp), w(ww), d(dd), budget(maxPoints) {
    // BFS order so each new vertex is constrained by an already-assigned one.
    std::vector<bool> seen(n, false);
    std::vector<std::vector<std::pair<size_t, size_t>>> adj(n);
    for (size_t e = 0; e < edges.size(); ++e) {
      adj[edges[e][0]].push_back({edges[e][1], e});
      adj[edges[e][1]].push_back({edges[e][0], e});
    }
    std::vector<size_t> queue;
    for (size_t start = 0; start < n; ++start) {
      if (seen[start]) continue;
      seen[start] = true;
      queue.push_back(start);
      size_t head = order.size();
      order.push_back(start);
      while (head < order.size()) {
        size_t v = order[head++];
        for (auto [u, e] : adj[v]) {
          if (!seen[u]) {
            seen[u] = true;
            order.push_back(u);
          }
        }
      }
    }
    std::vector<size_t> posOf(n);
    for (size_t i = 0; i < order.size(); ++i) posOf[order[i]] = i;
    incident.resize(n);
    for (size_t e = 0; e < edges.size(); ++e) {
      size_t later = std::max(posOf[edges[e][0]], posOf[edges[e][1]]);
      incident[later].push_back(e);
    }
  }

  template <typename Fn>
  void run(std::vector<long long>& y, size_t pos, Fn&& fn) {
    if (pos == n) {
      for (size_t i = 0; i < w.size(); ++i) {
        long long s = 0;
        for (size_t v = 0; v < n; ++v) s += w[i][v] * y[v];
        if (s != d[i]) return;
      }
      fn(y);
      return;
    }
    size_t v = order[pos];
    // Range from edges to already-assigned neighbors; the slice anchor is
    // the first vertex of each component, pinned to 0.
    long long lo = -1, hi = -2;
    bool pinned = false;
    bool anchored = false;
    for (size_t e : incident[pos]) {
      size_t tail = edges[e][0], head = edges[e][1];
      size_t other = (tail == v) ? head : tail;
      if (other == v) continue;  // self-loop never occurs
      long long elo = edges[e][2], ehi = edges[e][3];
      // lo <= y(tail) - y(head) <= hi
      long long vlo, vhi;
      if (tail == v) {
        vlo = y[other] + elo;
        vhi = y[other] + ehi;
      } else {
        vlo = y[other] - ehi;
        vhi = y[other] - elo;
      }
      if (!pinned) {
        lo = vlo;
        hi = vhi;
        pinned = true;
      } else {
        lo = std::max(lo, vlo);
        hi = std::min(hi, vhi);
      }
    }
    if (!pinned) {
      // Component anchor: pin to 0 (objective and weights are shift
      // invariant per component only when their sums vanish; callers
      // guarantee connectivity so this is the global anchor).
      lo = hi = 0;
      anchored = true;
    }
    (void)anchored;
    for (long long val = lo; val <= hi; ++val) {
      if (++explored > budget) throw CapExceeded("bruteMcipp: lattice budget exceeded");
      y[v] = val;
      run(y, pos + 1, fn);
    }
  }
};

}  // namespace

McippBrute bruteMcipp(size_t nVertices, const std::vector<std::array<long long, 4>>& edges,
                      const std::vector<long long>& p, const std::vector<std::vector<long long>>& w,
                      const std::vector<long long>& d, const BruteBudget& budget) {
  McippScan scan(nVertices, edges, p, w, d, budget.maxPoints);
  McippBrute res;
  std::vector<long long> y(nVertices, 0);
  scan.run(y, 0, [&](const std::vector<long long>& sol) {
    long long v = 0;
    for (size_t i = 0; i < nVertices; ++i) v += p[i] * sol[i];
    if (!res.feasible || v > res.value ||
        (v == res.value && std::lexicographical_compare(sol.begin(), sol.end(), res.y.begin(),
                                                        res.y.end()))) {
      res.feasible = true;
      res.value = v;
      res.y = sol;
    }
  });
  return res;
}

bool bruteMcippOptima(size_t nVertices, const std::vector<std::array<long long, 4>>& edges,
                      const std::vector<long long>& p, const std::vector<std::vector<long long>>& w,
                      const std::vector<long long>& d, const BruteBudget& budget,
                      const std::function<void(const std::vector<long long>&)>& visit) {
  McippBrute best = bruteMcipp(nVertices, edges, p, w, d, budget);
  if (!best.feasible) return false;
  McippScan scan(nVertices, edges, p, w, d, budget.maxPoints);
  std::vector<long long> y(nVertices, 0);
  scan.run(y, 0, [&](const std::vector<long long>& sol) {
    long long v = 0;
    for (size_t i = 0; i < nVertices; ++i) v += p[i] * sol[i];
    if (v == best.value) visit(sol);
  });
  return true;
}

}  // namespace ntu::oracle
