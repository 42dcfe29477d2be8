#include "configuration.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace ntu {

IntMatrix IntMatrix::fromRows(const std::vector<std::vector<long long>>& rws) {
  IntMatrix m(rws.size(), rws.empty() ? 0 : rws[0].size());
  for (size_t i = 0; i < rws.size(); ++i) {
    if (rws[i].size() != m.cols) throw ValidationError("IntMatrix: ragged rows");
    for (size_t j = 0; j < m.cols; ++j) m.at(i, j) = rws[i][j];
  }
  return m;
}

std::vector<long long> IntMatrix::row(size_t i) const {
  std::vector<long long> r(cols);
  for (size_t j = 0; j < cols; ++j) r[j] = at(i, j);
  return r;
}

IntMatrix IntMatrix::selectCols(const std::vector<size_t>& idx) const {
  IntMatrix m(rows, idx.size());
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < idx.size(); ++j) m.at(i, j) = at(i, idx[j]);
  return m;
}

bool IntMatrix::isZero() const {
  for (long long v : a)
    if (v) return false;
  return true;
}

void Configuration::push(const std::string& label, RatVector v) {
  if (v.size() != ambient) throw ValidationError("Configuration: column dimension mismatch");
  for (const auto& l : labels)
    if (l == label) throw ValidationError("Configuration: duplicate label '" + label + "'");
  labels.push_back(label);
  cols.push_back(std::move(v));
}

size_t Configuration::indexOf(const std::string& label) const {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  throw ValidationError("Configuration: unknown label '" + label + "'");
}

RatMatrix Configuration::matrix() const {
  RatMatrix m(ambient, cols.size());
  for (size_t j = 0; j < cols.size(); ++j) m.setCol(j, cols[j]);
  return m;
}

Configuration Configuration::select(const std::vector<size_t>& idx) const {
  Configuration c(ambient);
  for (size_t i : idx) {
    c.labels.push_back(labels[i]);
    c.cols.push_back(cols[i]);
  }
  return c;
}

bool Configuration::isIntegral() const {
  for (const auto& v : cols)
    for (const auto& x : v)
      if (!x.isInteger()) return false;
  return true;
}

uint32_t Circuit::supportMask() const {
  uint32_t m = 0;
  for (size_t i = 0; i < coeff.size(); ++i)
    if (coeff[i]) m |= uint32_t(1) << i;
  return m;
}

int Circuit::supportSize() const {
  int s = 0;
  for (long long c : coeff)
    if (c) ++s;
  return s;
}

Circuit Circuit::negated() const {
  Circuit c(*this);
  for (auto& v : c.coeff) v = -v;
  return c;
}

std::vector<long long> applyInt(const IntMatrix& w, const std::vector<long long>& x) {
  if (x.size() != w.cols) throw ValidationError("applyInt: dimension mismatch");
  std::vector<long long> r(w.rows, 0);
  for (size_t i = 0; i < w.rows; ++i)
    for (size_t j = 0; j < w.cols; ++j) r[i] += w.at(i, j) * x[j];
  return r;
}

long long maxAbs(const std::vector<long long>& v) {
  long long m = 0;
  for (long long x : v) m = std::max(m, std::llabs(x));
  return m;
}

namespace {

using int128 = __int128;

// Fraction-free rank (Bareiss with column skips). Returns false when a
// division is inexact; callers then fall back to the rational path.
bool intRank(std::vector<std::vector<int128>> m, int& rankOut) {
  size_t rows = m.size();
  size_t cls = rows ? m[0].size() : 0;
  int128 prev = 1;
  size_t r = 0;
  for (size_t c = 0; c < cls && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    if (sel != r) std::swap(m[sel], m[r]);
    for (size_t i = r + 1; i < rows; ++i) {
      for (size_t j = c + 1; j < cls; ++j) {
        int128 num = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        if (prev != 1 && num % prev != 0) return false;
        m[i][j] = num / prev;
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  rankOut = static_cast<int>(r);
  return true;
}


}  // namespace

RankScanner::RankScanner(const Configuration& cfg) : a_(cfg) {
  integral_ = cfg.isIntegral();
  if (integral_) {
    intCols_.resize(cfg.size());
    for (size_t j = 0; j < cfg.size() && integral_; ++j) {
      intCols_[j].resize(cfg.ambient);
      for (size_t i = 0; i < cfg.ambient; ++i) {
        mpz_class nu = cfg.cols[j][i].numerator();
        if (!nu.fits_slong_p()) {
          integral_ = false;
          break;
        }
        intCols_[j][i] = nu.get_si();
      }
    }
  }
}

int RankScanner::subRank(const std::vector<size_t>& idx) const {
  if (integral_) {
    std::vector<std::vector<int128>> m(a_.ambient, std::vector<int128>(idx.size()));
    for (size_t i = 0; i < a_.ambient; ++i)
      for (size_t j = 0; j < idx.size(); ++j) m[i][j] = intCols_[idx[j]][i];
    int r;
    if (intRank(std::move(m), r)) return r;
  }
  RatMatrix m(a_.ambient, idx.size());
  for (size_t j = 0; j < idx.size(); ++j) m.setCol(j, a_.cols[idx[j]]);
  return rank(m);
}

std::vector<long long> primitiveInteger(const RatVector& v) {
  mpz_class lcm = 1;
  for (const auto& x : v) {
    mpz_class d = x.denominator();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
    lcm = lcm / g * d;
  }
  std::vector<mpz_class> ints(v.size());
  mpz_class gall = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    ints[i] = v[i].numerator() * (lcm / v[i].denominator());
    mpz_gcd(gall.get_mpz_t(), gall.get_mpz_t(), ints[i].get_mpz_t());
  }
  if (gall == 0) throw InvariantViolation("primitiveInteger: zero vector");
  int sign = 0;
  for (const auto& z : ints) {
    if (z != 0) {
      sign = ::sgn(z) > 0 ? 1 : -1;
      break;
    }
  }
  std::vector<long long> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    mpz_class q = ints[i] / gall * sign;
    if (!q.fits_slong_p()) throw InvariantViolation("primitiveInteger: entry overflow");
    out[i] = q.get_si();
  }
  return out;
}

namespace {

// Kernel vector of the selected columns when that kernel is one-dimensional
// with full support; expanded to all columns and reduced.
bool circuitFromSubset(const Configuration& a, const std::vector<size_t>& idx, Circuit& out) {
  RatMatrix m(a.ambient, idx.size());
  for (size_t j = 0; j < idx.size(); ++j) m.setCol(j, a.cols[idx[j]]);
  auto k = kernelBasis(m);
  if (k.size() != 1) return false;
  for (const auto& x : k[0])
    if (x.isZero()) return false;
  auto prim = primitiveInteger(k[0]);
  out.coeff.assign(a.size(), 0);
  for (size_t j = 0; j < idx.size(); ++j) out.coeff[idx[j]] = prim[j];
  return true;
}

// Enumerates column subsets in (size, lex) order. fn returns true to record
// the mask as a circuit support; supersets of recorded masks are skipped.
template <typename Fn>
void scanSubsets(size_t n, Fn fn) {
  std::vector<uint32_t> found;
  std::vector<size_t> idx;
  for (size_t s = 1; s <= n; ++s) {
    idx.assign(s, 0);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      uint32_t mask = 0;
      for (size_t i : idx) mask |= uint32_t(1) << i;
      bool pruned = false;
      for (uint32_t f : found)
        if ((f & mask) == f) {
          pruned = true;
          break;
        }
      if (!pruned && fn(idx, mask)) found.push_back(mask);
      size_t i = s;
      bool advanced = false;
      while (i > 0) {
        --i;
        if (idx[i] != i + n - s) {
          ++idx[i];
          for (size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
}

}  // namespace

std::vector<Circuit> circuits(const Configuration& a, int supportCap) {
  if (static_cast<int>(a.size()) > supportCap)
    throw CapExceeded("circuits: configuration size " + std::to_string(a.size()) +
                      " exceeds cap " + std::to_string(supportCap));
  RankScanner scan(a);
  std::vector<Circuit> reps;
  scanSubsets(a.size(), [&](const std::vector<size_t>& idx, uint32_t) {
    if (scan.subRank(idx) != static_cast<int>(idx.size()) - 1) return false;
    Circuit c;
    if (!circuitFromSubset(a, idx, c)) return false;
    reps.push_back(std::move(c));
    return true;
  });
  std::vector<Circuit> out;
  out.reserve(reps.size() * 2);
  for (auto& c : reps) {
    Circuit neg = c.negated();
    out.push_back(std::move(c));
    out.push_back(std::move(neg));
  }
  return out;
}

std::optional<Circuit> firstCircuitThrough(const Configuration& a, size_t col, int supportCap) {
  if (static_cast<int>(a.size()) > supportCap)
    throw CapExceeded("firstCircuitThrough: size exceeds cap");
  RankScanner scan(a);
  std::optional<Circuit> result;
  scanSubsets(a.size(), [&](const std::vector<size_t>& idx, uint32_t mask) {
    if (result) return false;
    if (!(mask & (uint32_t(1) << col))) return false;
    if (scan.subRank(idx) != static_cast<int>(idx.size()) - 1) return false;
    Circuit c;
    if (!circuitFromSubset(a, idx, c)) return false;
    if (c.coeff[col] < 0) c = c.negated();
    result = std::move(c);
    return true;
  });
  return result;
}

bool isTotallyUnimodular(const Configuration& a) {
  size_t m = a.ambient, n = a.size();
  if (std::min(m, n) > static_cast<size_t>(kTuSizeCap))
    throw CapExceeded("isTotallyUnimodular: min dimension exceeds cap");
  for (const auto& col : a.cols)
    for (const auto& x : col) {
      if (!x.isInteger()) return false;
      if (x.abs() > Rational(1)) return false;
    }
  std::vector<std::vector<long long>> cols(n, std::vector<long long>(m));
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < m; ++i) cols[j][i] = a.cols[j][i].toLongLong();

  auto nextComb = [](std::vector<size_t>& c, size_t limit) {
    size_t k = c.size();
    size_t i = k;
    while (i > 0) {
      --i;
      if (c[i] != i + limit - k) {
        ++c[i];
        for (size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  // All k x k minors for k >= 2; the entry check covers k = 1.
  size_t maxK = std::min(m, n);
  for (size_t k = 2; k <= maxK; ++k) {
    std::vector<size_t> rows(k);
    std::iota(rows.begin(), rows.end(), 0);
    do {
      std::vector<size_t> cidx(k);
      std::iota(cidx.begin(), cidx.end(), 0);
      do {
        std::vector<std::vector<int128>> sub(k, std::vector<int128>(k));
        for (size_t i = 0; i < k; ++i)
          for (size_t j = 0; j < k; ++j) sub[i][j] = cols[cidx[j]][rows[i]];
        int128 prev = 1;
        int sign = 1;
        bool zero = false;
        for (size_t c = 0; c + 1 < k && !zero; ++c) {
          size_t sel = c;
          while (sel < k && sub[sel][c] == 0) ++sel;
          if (sel == k) {
            zero = true;
            break;
          }
          if (sel != c) {
            std::swap(sub[sel], sub[c]);
            sign = -sign;
          }
          for (size_t i = c + 1; i < k; ++i) {
            for (size_t j = c + 1; j < k; ++j)
              sub[i][j] = (sub[c][c] * sub[i][j] - sub[i][c] * sub[c][j]) / prev;
            sub[i][c] = 0;
          }
          prev = sub[c][c];
        }
        if (!zero) {
          // Bareiss: the last entry is the determinant up to row-swap sign.
          int128 det = sign > 0 ? sub[k - 1][k - 1] : -sub[k - 1][k - 1];
          if (det > 1 || det < -1) return false;
        }
      } while (nextComb(cidx, n));
    } while (nextComb(rows, m));
  }
  return true;
}

bool isTotallyDeltaModularStacked(const Configuration& a, const std::vector<long long>& w,
                                  long long delta, int supportCap) {
  if (w.size() != a.size()) throw ValidationError("isTotallyDeltaModularStacked: dimension mismatch");
  if (delta < 1) throw ValidationError("isTotallyDeltaModularStacked: delta must be >= 1");
  Configuration ext = a;
  for (size_t i = 0; i < a.ambient; ++i) {
    RatVector e(a.ambient);
    e[i] = Rational(1);
    ext.push("__slack" + std::to_string(i), std::move(e));
  }
  for (const auto& c : circuits(ext, supportCap)) {
    long long s = 0;
    for (size_t j = 0; j < a.size(); ++j) s += w[j] * c.coeff[j];
    if (std::llabs(s) > delta) return false;
  }
  return true;
}

long long maxCircuitWeight(const Configuration& a, const IntMatrix& w, int supportCap) {
  if (w.cols != a.size()) throw ValidationError("maxCircuitWeight: dimension mismatch");
  long long best = 0;
  for (const auto& c : circuits(a, supportCap)) best = std::max(best, maxAbs(applyInt(w, c.coeff)));
  return best;
}

std::vector<ConformalTerm> conformalDecompose(const Configuration& a, const RatVector& x,
                                              const RatVector& xPrime,
                                              const std::vector<ExtendedBound>& lo,
                                              const std::vector<ExtendedBound>& hi) {
  size_t n = a.size();
  if (x.size() != n || xPrime.size() != n || lo.size() != n || hi.size() != n)
    throw ValidationError("conformalDecompose: dimension mismatch");
  RatMatrix m = a.matrix();
  RatVector ax = m.apply(x), axp = m.apply(xPrime);
  for (size_t i = 0; i < a.ambient; ++i)
    if (ax[i] != axp[i]) throw ValidationError("conformalDecompose: endpoints differ under A");
  for (size_t j = 0; j < n; ++j) {
    if (!lo[j].lessEq(x[j]) || !hi[j].greaterEq(x[j]) || !lo[j].lessEq(xPrime[j]) ||
        !hi[j].greaterEq(xPrime[j]))
      throw ValidationError("conformalDecompose: endpoint violates bounds");
  }

  RatVector g = sub(xPrime, x);
  std::vector<ConformalTerm> terms;
  size_t guard = 0;
  while (!isZeroVector(g)) {
    if (++guard > n + 1) throw InvariantViolation("conformalDecompose: too many terms");
    // Shrink a kernel vector into a circuit conformal with g.
    RatVector v = g;
    for (;;) {
      std::vector<size_t> supp;
      for (size_t j = 0; j < n; ++j)
        if (!v[j].isZero()) supp.push_back(j);
      auto kb = kernelBasis(m.selectCols(supp));
      if (kb.size() == 1) break;
      RatVector vs(supp.size());
      for (size_t t = 0; t < supp.size(); ++t) vs[t] = v[supp[t]];
      const RatVector* w = nullptr;
      for (const auto& cand : kb) {
        size_t piv = 0;
        while (piv < cand.size() && cand[piv].isZero()) ++piv;
        Rational ratio = vs[piv] / cand[piv];
        bool multiple = true;
        for (size_t t = 0; t < cand.size() && multiple; ++t)
          if (vs[t] != ratio * cand[t]) multiple = false;
        if (!multiple) {
          w = &cand;
          break;
        }
      }
      if (!w) throw InvariantViolation("conformalDecompose: kernel basis degenerate");
      // Cancel the coordinate with the smallest |v_i / w_i|; signs survive.
      bool first = true;
      Rational bestAbs, t;
      for (size_t i = 0; i < supp.size(); ++i) {
        if ((*w)[i].isZero()) continue;
        Rational r = vs[i] / (*w)[i];
        if (first || r.abs() < bestAbs) {
          first = false;
          bestAbs = r.abs();
          t = r;
        }
      }
      RatVector v2(n);
      for (size_t i = 0; i < supp.size(); ++i) v2[supp[i]] = vs[i] - t * (*w)[i];
      v = std::move(v2);
    }
    std::vector<size_t> supp;
    for (size_t j = 0; j < n; ++j)
      if (!v[j].isZero()) supp.push_back(j);
    RatVector vsupp(supp.size());
    for (size_t t = 0; t < supp.size(); ++t) vsupp[t] = v[supp[t]];
    auto prim = primitiveInteger(vsupp);
    Circuit c;
    c.coeff.assign(n, 0);
    for (size_t t = 0; t < supp.size(); ++t) c.coeff[supp[t]] = prim[t];
    if ((c.coeff[supp[0]] > 0) != (g[supp[0]].sgn() > 0)) c = c.negated();
    bool first = true;
    Rational lambda;
    for (size_t j : supp) {
      Rational r = g[j] / Rational(c.coeff[j]);
      if (r.sgn() <= 0) throw InvariantViolation("conformalDecompose: non-conformal circuit");
      if (first || r < lambda) {
        first = false;
        lambda = r;
      }
    }
    RatVector cg(n);
    for (size_t j = 0; j < n; ++j) cg[j] = Rational(c.coeff[j]);
    g = sub(g, scale(lambda, cg));
    terms.push_back({std::move(c), lambda});
  }
  return terms;
}

Standardized standardize(const Configuration& a) {
  RatMatrix w = a.matrix();
  std::vector<size_t> pivots;
  size_t pr = 0;
  for (size_t c = 0; c < w.cols() && pr < w.rows(); ++c) {
    size_t sel = pr;
    while (sel < w.rows() && w.at(sel, c).isZero()) ++sel;
    if (sel == w.rows()) continue;
    if (sel != pr)
      for (size_t j = 0; j < w.cols(); ++j) std::swap(w.at(sel, j), w.at(pr, j));
    Rational inv = Rational(1) / w.at(pr, c);
    for (size_t j = 0; j < w.cols(); ++j) w.at(pr, j) *= inv;
    for (size_t i = 0; i < w.rows(); ++i) {
      if (i == pr || w.at(i, c).isZero()) continue;
      Rational f = w.at(i, c);
      for (size_t j = 0; j < w.cols(); ++j) w.at(i, j) -= f * w.at(pr, j);
    }
    pivots.push_back(c);
    ++pr;
  }
  size_t r = pivots.size(), n = a.size();
  std::vector<bool> isPivot(n, false);
  for (size_t c : pivots) isPivot[c] = true;
  Standardized out;
  out.basis = pivots;
  std::vector<size_t> nonpivot;
  for (size_t c = 0; c < n; ++c)
    if (!isPivot[c]) nonpivot.push_back(c);
  out.d = RatMatrix(r, n - r);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < nonpivot.size(); ++j) out.d.at(i, j) = w.at(i, nonpivot[j]);
  out.colOrder = nonpivot;
  out.colOrder.insert(out.colOrder.end(), pivots.begin(), pivots.end());
  return out;
}

Configuration dualConfiguration(const Configuration& a) {
  Standardized s = standardize(a);
  size_t n = a.size(), r = s.basis.size();
  Configuration dual(n - r);
  for (size_t pos = 0; pos < n; ++pos) {
    RatVector col(n - r);
    if (pos < n - r) {
      col[pos] = Rational(1);
    } else {
      for (size_t i = 0; i < n - r; ++i) col[i] = -s.d.at(pos - (n - r), i);
    }
    dual.push(a.labels[s.colOrder[pos]], std::move(col));
  }
  return dual;
}

std::vector<Circuit> cocircuits(const Configuration& a, int supportCap) {
  Standardized s = standardize(a);
  Configuration dual = dualConfiguration(a);
  auto cs = circuits(dual, supportCap);
  std::vector<Circuit> out;
  out.reserve(cs.size());
  for (const auto& c : cs) {
    Circuit o;
    o.coeff.assign(a.size(), 0);
    for (size_t pos = 0; pos < a.size(); ++pos) o.coeff[s.colOrder[pos]] = c.coeff[pos];
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<long long> zeroOnBasis(const Configuration& a, const std::vector<size_t>& basisIdx,
                                   const std::vector<long long>& w) {
  if (w.size() != a.size()) throw ValidationError("zeroOnBasis: dimension mismatch");
  RatMatrix m = a.matrix();
  RatMatrix b = m.selectCols(basisIdx);
  if (rank(b) != static_cast<int>(basisIdx.size()) || rank(b) != rank(m))
    throw ValidationError("zeroOnBasis: given labels are not a basis");
  // Row i of the coordinate matrix (columns written in the basis) is the
  // fundamental cocircuit of basis element i, normalized to 1 there.
  std::vector<RatVector> coords(a.size());
  for (size_t j = 0; j < a.size(); ++j) {
    if (!solveLinear(b, m.col(j), coords[j]))
      throw InvariantViolation("zeroOnBasis: column outside basis span");
  }
  RatVector w2(a.size());
  for (size_t j = 0; j < a.size(); ++j) w2[j] = Rational(w[j]);
  for (size_t i = 0; i < basisIdx.size(); ++i) {
    Rational wi = Rational(w[basisIdx[i]]);
    if (wi.isZero()) continue;
    for (size_t j = 0; j < a.size(); ++j) w2[j] -= wi * coords[j][i];
  }
  std::vector<long long> out(a.size());
  for (size_t j = 0; j < a.size(); ++j) {
    if (!w2[j].isInteger())
      throw InvariantViolation("zeroOnBasis: non-integer equivalent weight (non-regular input?)");
    out[j] = w2[j].toLongLong();
  }
  return out;
}

namespace {

// Exhaustive 1-separation test: a column bipartition whose column spaces
// intersect only in the origin.
bool hasOneSeparation(const Configuration& a) {
  size_t n = a.size();
  if (n < 2) return false;
  RatMatrix m = a.matrix();
  int total = rank(m);
  for (uint32_t mask = 1; mask < (uint32_t(1) << (n - 1)); ++mask) {
    std::vector<size_t> s1, s2;
    s1.push_back(0);  // fix column 0 on side 1 (complement symmetry)
    for (size_t j = 1; j < n; ++j)
      ((mask >> (j - 1)) & 1 ? s2 : s1).push_back(j);
    if (s2.empty()) continue;
    int r1 = rank(m.selectCols(s1)), r2 = rank(m.selectCols(s2));
    if (r1 + r2 == total) return true;
  }
  return false;
}

}  // namespace

bool isTame(const Configuration& a, const IntMatrix& w, size_t rootCol, bool assumeTwoConnected,
            int supportCap) {
  if (w.cols != a.size()) throw ValidationError("isTame: dimension mismatch");
  if (rootCol >= a.size()) throw ValidationError("isTame: root column out of range");
  if (a.size() == 1) return true;
  if (!assumeTwoConnected && hasOneSeparation(a))
    throw ValidationError("isTame: configuration is not 2-connected");

  auto ref = firstCircuitThrough(a, rootCol, supportCap);
  if (!ref) throw ValidationError("isTame: no circuit crosses the root column (coloop)");
  if (std::llabs(ref->coeff[rootCol]) != 1)
    throw ValidationError("isTame: root coefficient not +-1 (non-regular input)");

  // Zero out the reference crossing circuit, then require every fundamental
  // circuit of a root-free basis to have zero weight.
  IntMatrix w2 = w;
  for (size_t i = 0; i < w.rows; ++i) {
    long long s = 0;
    for (size_t j = 0; j < a.size(); ++j)
      if (j != rootCol) s += w.at(i, j) * ref->coeff[j];
    w2.at(i, rootCol) = -s;
  }

  RatMatrix m = a.matrix();
  std::vector<size_t> order;
  for (size_t j = 0; j < a.size(); ++j)
    if (j != rootCol) order.push_back(j);
  order.push_back(rootCol);
  std::vector<size_t> basis;
  {
    std::vector<size_t> cur;
    for (size_t j : order) {
      cur.push_back(j);
      if (rank(m.selectCols(cur)) == static_cast<int>(cur.size()))
        basis.push_back(j);
      else
        cur.pop_back();
    }
  }
  std::sort(basis.begin(), basis.end());
  RatMatrix b = m.selectCols(basis);
  for (size_t v = 0; v < a.size(); ++v) {
    if (std::find(basis.begin(), basis.end(), v) != basis.end()) continue;
    RatVector coords;
    if (!solveLinear(b, m.col(v), coords))
      throw InvariantViolation("isTame: column outside basis span");
    for (size_t i = 0; i < w2.rows; ++i) {
      Rational s = Rational(w2.at(i, v));
      for (size_t t = 0; t < basis.size(); ++t) s -= coords[t] * Rational(w2.at(i, basis[t]));
      if (!s.isZero()) return false;
    }
  }
  return true;
}

}  // namespace ntu
