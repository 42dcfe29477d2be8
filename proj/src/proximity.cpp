#include "proximity.hpp"

#include <algorithm>

namespace ntu {

InequalityInstance GeneralIpInstance::asInequality() const {
  if (!extraColIdx.empty())
    throw InvariantViolation("asInequality: extra columns not eliminated yet");
  InequalityInstance out;
  std::vector<bool> isW(m.rows, false);
  for (size_t i : wRowIdx) isW[i] = true;
  std::vector<std::vector<long long>> arows, wrows;
  std::vector<long long> ab, wd;
  for (size_t i = 0; i < m.rows; ++i) {
    if (isW[i]) {
      wrows.push_back(m.row(i));
      wd.push_back(b[i]);
    } else {
      arows.push_back(m.row(i));
      ab.push_back(b[i]);
    }
  }
  out.aRows = arows.empty() ? IntMatrix(0, m.cols) : IntMatrix::fromRows(arows);
  out.wRows = wrows.empty() ? IntMatrix(0, m.cols) : IntMatrix::fromRows(wrows);
  out.b = ab;
  out.d = wd;
  out.p = p;
  out.delta = delta;
  return out;
}

long long fBound(long long k, long long delta) {
  if (k < 0 || delta < 1) throw ValidationError("fBound: need k >= 0 and delta >= 1");
  if (k == 0) return 0;
  __int128 base = 2 * k * delta + 1;
  __int128 pw = 1;
  for (long long i = 0; i < k; ++i) {
    pw *= base;
    if (pw > (__int128)4'000'000'000'000'000'000LL)
      throw CapExceeded("fBound: value out of range");
  }
  __int128 res = (__int128)k * pw;
  if (res > (__int128)4'000'000'000'000'000'000LL) throw CapExceeded("fBound: value out of range");
  return static_cast<long long>(res);
}

long long proximityBound(long long k, long long delta) { return 1 + k + fBound(k, delta); }

namespace {

// LP relaxation of the inequality instance in slack form:
// [A; W] x + s = [b; d], s >= 0, x free.
LpOutcome solveInequalityLp(const InequalityInstance& inst, const std::vector<long long>& obj) {
  size_t n = inst.nVars();
  size_t rows = inst.aRows.rows + inst.wRows.rows;
  RatMatrix a(rows, n + rows);
  RatVector rhs(rows);
  for (size_t i = 0; i < inst.aRows.rows; ++i) {
    for (size_t j = 0; j < n; ++j) a.at(i, j) = Rational(inst.aRows.at(i, j));
    rhs[i] = Rational(inst.b[i]);
  }
  for (size_t i = 0; i < inst.wRows.rows; ++i) {
    size_t r = inst.aRows.rows + i;
    for (size_t j = 0; j < n; ++j) a.at(r, j) = Rational(inst.wRows.at(i, j));
    rhs[r] = Rational(inst.d[i]);
  }
  for (size_t i = 0; i < rows; ++i) a.at(i, n + i) = Rational(1);
  std::vector<ExtendedBound> lo(n, ExtendedBound::minusInf()), hi(n, ExtendedBound::plusInf());
  for (size_t i = 0; i < rows; ++i) {
    lo.push_back(ExtendedBound::of(0));
    hi.push_back(ExtendedBound::plusInf());
  }
  RatVector p(n + rows);
  for (size_t j = 0; j < n; ++j) p[j] = Rational(obj[j]);
  LpOutcome out = lpSolve(a, rhs, lo, hi, p);
  if (out.status == LpOutcome::Status::Optimal) out.x.resize(n);
  if (out.status == LpOutcome::Status::Unbounded) out.ray.resize(n);
  return out;
}

}  // namespace

EqualityFormResult toEqualityForm(const InequalityInstance& inst) {
  size_t n = inst.nVars();
  size_t m = inst.aRows.rows, k = inst.wRows.rows;
  EqualityFormResult res;
  LpOutcome lp = solveInequalityLp(inst, inst.p);
  if (lp.status == LpOutcome::Status::Infeasible) {
    res.status = EqFormStatus::Infeasible;
    return res;
  }
  if (lp.status == LpOutcome::Status::Unbounded) {
    res.status = EqFormStatus::Unbounded;
    res.ray = lp.ray;
    return res;
  }
  res.status = EqFormStatus::Ok;
  res.xstar = lp.x;
  res.lpValue = lp.value;

  long long radius = static_cast<long long>(n) * inst.delta;
  std::vector<long long> lo(n), hi(n);
  for (size_t j = 0; j < n; ++j) {
    lo[j] = lp.x[j].floor().toLongLong() - radius;
    hi[j] = lp.x[j].ceil().toLongLong() + radius;
  }

  EqualityInstance eq;
  eq.delta = inst.delta;
  eq.a = Configuration(m);
  for (size_t j = 0; j < n; ++j) {
    RatVector col(m);
    for (size_t i = 0; i < m; ++i) col[i] = Rational(inst.aRows.at(i, j));
    eq.a.push("x" + std::to_string(j), std::move(col));
  }
  for (size_t i = 0; i < m; ++i) {
    RatVector col(m);
    col[i] = Rational(1);
    eq.a.push("s" + std::to_string(i), std::move(col));
  }
  for (size_t i = 0; i < k; ++i) eq.a.push("t" + std::to_string(i), RatVector(m));

  eq.b = inst.b;
  eq.w = IntMatrix(k, n + m + k);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < n; ++j) eq.w.at(i, j) = inst.wRows.at(i, j);
    eq.w.at(i, n + m + i) = 1;
  }
  eq.d = inst.d;
  eq.p.assign(n + m + k, 0);
  for (size_t j = 0; j < n; ++j) eq.p[j] = inst.p[j];

  eq.lo = lo;
  eq.hi = hi;
  // Slack ranges by interval arithmetic over the x box.
  for (size_t i = 0; i < m; ++i) {
    long long minAx = 0;
    for (size_t j = 0; j < n; ++j) {
      long long c = inst.aRows.at(i, j);
      minAx += c >= 0 ? c * lo[j] : c * hi[j];
    }
    eq.lo.push_back(0);
    eq.hi.push_back(std::max<long long>(0, inst.b[i] - minAx));
  }
  for (size_t i = 0; i < k; ++i) {
    long long minWx = 0;
    for (size_t j = 0; j < n; ++j) {
      long long c = inst.wRows.at(i, j);
      minWx += c >= 0 ? c * lo[j] : c * hi[j];
    }
    eq.lo.push_back(0);
    eq.hi.push_back(std::max<long long>(0, inst.d[i] - minWx));
  }
  res.eq = std::move(eq);
  return res;
}

UnboundedVerdict handleUnbounded(const InequalityInstance& inst,
                                 const std::function<bool(const InequalityInstance&)>& integerFeasible) {
  LpOutcome lp = solveInequalityLp(inst, inst.p);
  if (lp.status != LpOutcome::Status::Unbounded)
    throw ValidationError("handleUnbounded: LP relaxation is not unbounded");
  InequalityInstance zero = inst;
  std::fill(zero.p.begin(), zero.p.end(), 0);
  return integerFeasible(zero) ? UnboundedVerdict::Unbounded : UnboundedVerdict::Infeasible;
}

std::vector<ElimBranch> eliminateColumns(const GeneralIpInstance& inst, const RatVector& xstar,
                                         long long enumerationCap) {
  size_t n = inst.m.cols;
  if (xstar.size() != n) throw ValidationError("eliminateColumns: dimension mismatch");
  long long radius = static_cast<long long>(n) * inst.delta;

  std::vector<long long> lo, hi;
  long long total = 1;
  for (size_t c : inst.extraColIdx) {
    long long l = xstar[c].floor().toLongLong() - radius;
    long long h = xstar[c].ceil().toLongLong() + radius;
    lo.push_back(l);
    hi.push_back(h);
    if (total > enumerationCap / (h - l + 1) + 1)
      throw CapExceeded("eliminateColumns: assignment box exceeds cap");
    total *= h - l + 1;
    if (total > enumerationCap) throw CapExceeded("eliminateColumns: assignment box exceeds cap");
  }

  std::vector<size_t> keepCols;
  std::vector<bool> isExtra(n, false);
  for (size_t c : inst.extraColIdx) isExtra[c] = true;
  for (size_t j = 0; j < n; ++j)
    if (!isExtra[j]) keepCols.push_back(j);

  std::vector<ElimBranch> out;
  std::vector<long long> assign(lo);
  const size_t t = inst.extraColIdx.size();
  for (;;) {
    ElimBranch br;
    GeneralIpInstance sub;
    sub.delta = inst.delta;
    sub.wRowIdx = inst.wRowIdx;
    sub.m = IntMatrix(inst.m.rows, keepCols.size());
    sub.b = inst.b;
    Rational offset;
    for (size_t i = 0; i < inst.m.rows; ++i)
      for (size_t j = 0; j < keepCols.size(); ++j) sub.m.at(i, j) = inst.m.at(i, keepCols[j]);
    for (size_t ti = 0; ti < t; ++ti) {
      size_t c = inst.extraColIdx[ti];
      br.fixed.push_back({c, assign[ti]});
      for (size_t i = 0; i < inst.m.rows; ++i) sub.b[i] -= inst.m.at(i, c) * assign[ti];
      offset += Rational(inst.p[c] * assign[ti]);
    }
    sub.p.clear();
    for (size_t j : keepCols) sub.p.push_back(inst.p[j]);
    br.sub = sub.asInequality();
    br.objOffset = offset;
    out.push_back(std::move(br));

    size_t j = t;
    bool adv = false;
    while (j > 0) {
      --j;
      if (assign[j] < hi[j]) {
        ++assign[j];
        for (size_t r = j + 1; r < t; ++r) assign[r] = lo[r];
        adv = true;
        break;
      }
    }
    if (!adv) break;
  }
  return out;
}

std::vector<long long> roundToAnchor(const EqualityInstance& eq, const RatVector& xstar) {
  size_t n = eq.nVars();
  if (xstar.size() != n) throw ValidationError("roundToAnchor: dimension mismatch");
  RatMatrix a = eq.aMatrix();
  RatVector b(eq.b.size());
  for (size_t i = 0; i < eq.b.size(); ++i) b[i] = Rational(eq.b[i]);
  auto lo = finiteBounds(eq.lo), hi = finiteBounds(eq.hi);
  {
    RatVector ax = a.apply(xstar);
    for (size_t i = 0; i < eq.b.size(); ++i)
      if (ax[i] != b[i]) throw ValidationError("roundToAnchor: point violates Ax=b");
    for (size_t i = 0; i < eq.w.rows; ++i) {
      Rational s;
      for (size_t j = 0; j < n; ++j) s += Rational(eq.w.at(i, j)) * xstar[j];
      if (s != Rational(eq.d[i])) throw ValidationError("roundToAnchor: point violates Wx=d");
    }
    for (size_t j = 0; j < n; ++j)
      if (xstar[j] < Rational(eq.lo[j]) || xstar[j] > Rational(eq.hi[j]))
        throw ValidationError("roundToAnchor: point violates bounds");
  }

  std::vector<ExtendedBound> faceLo, faceHi;
  minimalFaceBounds(a, b, lo, hi, xstar, faceLo, faceHi);
  RatVector zPrime = vertexOfPolytope(a, b, faceLo, faceHi);
  auto terms = conformalDecompose(eq.a, xstar, zPrime, faceLo, faceHi);
  // z = z' - sum floor(lambda_j) c_j: an integer point of the face within
  // max-norm distance < k of xstar.
  RatVector z = zPrime;
  for (const auto& t : terms) {
    Rational fl = t.lambda.floor();
    if (fl.isZero()) continue;
    for (size_t j = 0; j < n; ++j) z[j] -= fl * Rational(t.circuit.coeff[j]);
  }
  std::vector<long long> out(n);
  for (size_t j = 0; j < n; ++j) {
    if (!z[j].isInteger()) throw InvariantViolation("roundToAnchor: non-integer anchor");
    out[j] = z[j].toLongLong();
  }
  {
    RatVector az = a.apply(z);
    for (size_t i = 0; i < eq.b.size(); ++i)
      if (az[i] != b[i]) throw InvariantViolation("roundToAnchor: anchor violates Ax=b");
    for (size_t j = 0; j < n; ++j)
      if (out[j] < eq.lo[j] || out[j] > eq.hi[j])
        throw InvariantViolation("roundToAnchor: anchor violates bounds");
    Rational dist = maxNorm(sub(xstar, z));
    if (eq.k() == 0) {
      if (!dist.isZero()) throw InvariantViolation("roundToAnchor: nonzero distance with k=0");
    } else if (dist >= Rational(eq.k())) {
      throw InvariantViolation("roundToAnchor: anchor too far from the LP vertex");
    }
  }
  return out;
}

AnchoredInstance reduceToCircuitSearch(const EqualityInstance& eq, const RatVector& xstar) {
  std::vector<long long> z = roundToAnchor(eq, xstar);
  AnchoredInstance out;
  out.anchor = z;
  out.tMax = fBound(eq.k(), eq.delta);
  out.eq = eq;
  out.eq.b.assign(eq.b.size(), 0);
  out.objectiveOffset = Rational(0);
  for (size_t j = 0; j < eq.nVars(); ++j) {
    out.eq.lo[j] = eq.lo[j] - z[j];
    out.eq.hi[j] = eq.hi[j] - z[j];
    out.objectiveOffset += Rational(eq.p[j] * z[j]);
  }
  for (size_t i = 0; i < eq.w.rows; ++i) {
    long long wz = 0;
    for (size_t j = 0; j < eq.nVars(); ++j) wz += eq.w.at(i, j) * z[j];
    out.eq.d[i] = eq.d[i] - wz;
  }
  return out;
}

void validateEqualityInstance(const EqualityInstance& eq, int circuitCap) {
  size_t n = eq.nVars();
  if (eq.b.size() != eq.a.ambient || eq.w.cols != n || eq.d.size() != eq.w.rows ||
      eq.p.size() != n || eq.lo.size() != n || eq.hi.size() != n)
    throw ValidationError("equality instance: inconsistent dimensions");
  for (size_t j = 0; j < n; ++j)
    if (eq.lo[j] > eq.hi[j]) throw ValidationError("equality instance: lower bound exceeds upper");
  if (eq.delta < 1) throw ValidationError("equality instance: delta must be >= 1");
  if (!isTotallyUnimodular(eq.a))
    throw ValidationError("equality instance: A is not totally unimodular");
  if (maxCircuitWeight(eq.a, eq.w, circuitCap) > eq.delta)
    throw ValidationError("equality instance: circuit weight exceeds delta");
}

}  // namespace ntu
