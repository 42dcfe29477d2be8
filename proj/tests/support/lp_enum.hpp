#pragma once

// Test-only LP ground truth: enumerate all candidate basic points of
// {Ax=b, lo<=x<=hi} (finite box) by choosing a column basis and a bound
// assignment for the nonbasic columns, keep the feasible ones, and take the
// best objective value. Independent of the simplex implementation.

#include <functional>
#include <optional>
#include <vector>

#include "linalg.hpp"

namespace ntu::testsupport {

struct EnumOpt {
  bool feasible = false;
  Rational value;
  std::vector<RatVector> optima;  // all optimal candidate points (deduplicated)
};

inline EnumOpt enumerateLpOptimum(const RatMatrix& a, const RatVector& b,
                                  const RatVector& lo, const RatVector& hi,
                                  const RatVector& p) {
  size_t n = a.cols();
  EnumOpt res;
  int r = rank(a);

  std::vector<size_t> cols(n);
  for (size_t i = 0; i < n; ++i) cols[i] = i;

  std::vector<std::vector<size_t>> bases;
  std::vector<size_t> cur;
  std::function<void(size_t)> rec = [&](size_t start) {
    if (static_cast<int>(cur.size()) == r) {
      bases.push_back(cur);
      return;
    }
    for (size_t j = start; j < n; ++j) {
      cur.push_back(j);
      rec(j + 1);
      cur.pop_back();
    }
  };
  rec(0);

  auto consider = [&](const RatVector& x) {
    for (size_t j = 0; j < n; ++j)
      if (x[j] < lo[j] || x[j] > hi[j]) return;
    RatVector ax = a.apply(x);
    for (size_t i = 0; i < a.rows(); ++i)
      if (ax[i] != b[i]) return;
    Rational v = dot(p, x);
    if (!res.feasible || v > res.value) {
      res.feasible = true;
      res.value = v;
      res.optima.clear();
    }
    if (v == res.value) {
      for (const auto& o : res.optima)
        if (lexCompare(o, x) == 0) return;
      res.optima.push_back(x);
    }
  };

  for (const auto& basis : bases) {
    std::vector<size_t> nonbasis;
    std::vector<bool> inBasis(n, false);
    for (size_t j : basis) inBasis[j] = true;
    for (size_t j = 0; j < n; ++j)
      if (!inBasis[j]) nonbasis.push_back(j);
    size_t nn = nonbasis.size();
    for (size_t mask = 0; mask < (size_t(1) << nn); ++mask) {
      RatVector x(n);
      RatVector rhs = b;
      for (size_t t = 0; t < nn; ++t) {
        size_t j = nonbasis[t];
        x[j] = (mask >> t & 1) ? hi[j] : lo[j];
        for (size_t i = 0; i < a.rows(); ++i) rhs[i] -= a.at(i, j) * x[j];
      }
      // Solve A_B x_B = rhs (least squares not needed; skip singular bases).
      RatMatrix ab = a.selectCols(basis);
      RatVector xb;
      if (!solveLinear(ab, rhs, xb)) continue;
      // Verify exactly (solveLinear tolerates underdetermined systems).
      RatVector chk = ab.apply(xb);
      bool ok = true;
      for (size_t i = 0; i < a.rows() && ok; ++i)
        if (chk[i] != rhs[i]) ok = false;
      if (!ok) continue;
      for (size_t t = 0; t < basis.size(); ++t) x[basis[t]] = xb[t];
      consider(x);
    }
  }
  return res;
}

}  // namespace ntu::testsupport
