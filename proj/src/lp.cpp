#include "lp.hpp"

#include <algorithm>
#include <optional>

namespace ntu {

namespace {

enum class VarState { Basic, AtLower, AtUpper, FreeZero };

// Bounded-variable simplex working set. Column indices >= nStruct are
// phase-1 artificials.
struct Tableau {
  RatMatrix a;  // rows = independent rows only
  RatVector b;
  std::vector<ExtendedBound> lo, hi;
  RatVector obj;
  size_t n = 0;  // total columns
  std::vector<VarState> state;
  std::vector<size_t> basis;  // one column per row
  RatVector x;                // current values, all columns

  Rational value() const {
    Rational v;
    for (size_t j = 0; j < n; ++j) v += obj[j] * x[j];
    return v;
  }

  void recomputeBasics() {
    // x_B solves A_B x_B = b - A_N x_N.
    RatVector rhs = b;
    for (size_t j = 0; j < n; ++j) {
      if (state[j] == VarState::Basic || x[j].isZero()) continue;
      for (size_t i = 0; i < a.rows(); ++i) rhs[i] -= a.at(i, j) * x[j];
    }
    RatMatrix ab = a.selectCols(basis);
    RatVector xb;
    if (!solveLinear(ab, rhs, xb)) throw InvariantViolation("simplex: singular basis");
    for (size_t i = 0; i < basis.size(); ++i) x[basis[i]] = xb[i];
  }
};

struct PivotResult {
  bool optimal = false;
  bool unbounded = false;
  size_t entering = 0;
  int dir = 0;
  RatVector w;  // A_B^{-1} A_entering
};

// One Bland step: find entering column and direction, or report optimal.
PivotResult chooseEntering(const Tableau& t) {
  PivotResult r;
  // y solves A_B' y = obj_B.
  RatMatrix abT = t.a.selectCols(t.basis).transpose();
  RatVector objB(t.basis.size());
  for (size_t i = 0; i < t.basis.size(); ++i) objB[i] = t.obj[t.basis[i]];
  RatVector y;
  if (!solveLinear(abT, objB, y)) throw InvariantViolation("simplex: singular basis transpose");
  for (size_t j = 0; j < t.n; ++j) {
    if (t.state[j] == VarState::Basic) continue;
    // Fixed variables can never improve.
    if (t.lo[j].isFinite() && t.hi[j].isFinite() && t.lo[j].value() == t.hi[j].value()) continue;
    Rational d = t.obj[j];
    for (size_t i = 0; i < t.a.rows(); ++i) d -= y[i] * t.a.at(i, j);
    int dir = 0;
    if (t.state[j] == VarState::AtLower && d.sgn() > 0) dir = 1;
    else if (t.state[j] == VarState::AtUpper && d.sgn() < 0) dir = -1;
    else if (t.state[j] == VarState::FreeZero && d.sgn() != 0) dir = d.sgn();
    if (dir != 0) {
      r.entering = j;
      r.dir = dir;
      RatMatrix ab = t.a.selectCols(t.basis);
      if (!solveLinear(ab, t.a.col(j), r.w)) throw InvariantViolation("simplex: singular basis");
      return r;
    }
  }
  r.optimal = true;
  return r;
}

// Runs simplex to optimality on the current (feasible) tableau.
// Returns false when unbounded; fills rayOut in that case.
bool optimize(Tableau& t, RatVector& rayOut) {
  for (;;) {
    PivotResult pr = chooseEntering(t);
    if (pr.optimal) return true;
    size_t j = pr.entering;
    int dir = pr.dir;

    // Ratio test. Candidates: entering's own opposite bound, and each basic
    // variable hitting one of its bounds. Bland: smallest blocking index.
    std::optional<Rational> tmax;
    size_t blockIdx = t.n;  // column index of blocker; t.n+? entering self marker
    bool selfBlock = false;
    int blockSide = 0;  // -1 lower, +1 upper (for basic blocker)

    if (dir > 0 && t.hi[j].isFinite()) {
      tmax = t.hi[j].value() - t.x[j];
      selfBlock = true;
    } else if (dir < 0 && t.lo[j].isFinite()) {
      tmax = t.x[j] - t.lo[j].value();
      selfBlock = true;
    }
    for (size_t i = 0; i < t.basis.size(); ++i) {
      Rational delta = Rational(dir) * pr.w[i];  // x_basis[i] moves by -delta * step
      if (delta.sgn() == 0) continue;
      size_t bj = t.basis[i];
      std::optional<Rational> cap;
      int side = 0;
      if (delta.sgn() > 0) {  // basic decreases toward lower bound
        if (t.lo[bj].isFinite()) { cap = (t.x[bj] - t.lo[bj].value()) / delta; side = -1; }
      } else {  // basic increases toward upper bound
        if (t.hi[bj].isFinite()) { cap = (t.hi[bj].value() - t.x[bj]) / -delta; side = 1; }
      }
      if (!cap) continue;
      // Bland tie-break: smallest blocking column index wins.
      size_t currentBlocker = selfBlock ? j : blockIdx;
      if (!tmax || *cap < *tmax || (*cap == *tmax && bj < currentBlocker)) {
        tmax = *cap;
        blockIdx = bj;
        blockSide = side;
        selfBlock = false;
      }
    }

    if (!tmax) {
      // Improving ray.
      rayOut.assign(t.n, Rational());
      rayOut[j] = Rational(dir);
      for (size_t i = 0; i < t.basis.size(); ++i) rayOut[t.basis[i]] = Rational(-dir) * pr.w[i];
      return false;
    }

    Rational step = *tmax;
    t.x[j] += Rational(dir) * step;
    for (size_t i = 0; i < t.basis.size(); ++i) t.x[t.basis[i]] -= Rational(dir) * step * pr.w[i];

    if (selfBlock) {
      // Bound flip, basis unchanged.
      t.state[j] = (dir > 0) ? VarState::AtUpper : VarState::AtLower;
    } else {
      size_t pos = 0;
      while (t.basis[pos] != blockIdx) ++pos;
      t.state[blockIdx] = (blockSide < 0) ? VarState::AtLower : VarState::AtUpper;
      // Snap the leaving value exactly onto its bound.
      t.x[blockIdx] = (blockSide < 0) ? t.lo[blockIdx].value() : t.hi[blockIdx].value();
      t.basis[pos] = j;
      t.state[j] = VarState::Basic;
      t.recomputeBasics();
    }
  }
}

}  // namespace

LpOutcome lpSolve(const RatMatrix& a, const RatVector& b,
                  const std::vector<ExtendedBound>& lo,
                  const std::vector<ExtendedBound>& hi, const RatVector& p) {
  size_t n = a.cols();
  if (b.size() != a.rows() || lo.size() != n || hi.size() != n || p.size() != n)
    throw ValidationError("lpSolve: dimension mismatch");
  for (size_t j = 0; j < n; ++j) {
    if (lo[j].isPosInf() || hi[j].isNegInf()) throw ValidationError("lpSolve: empty bound range");
    if (lo[j].isFinite() && hi[j].isFinite() && lo[j].value() > hi[j].value())
      throw ValidationError("lpSolve: lower bound exceeds upper bound");
  }

  LpOutcome out;

  // Keep an independent set of rows; reject inconsistent dependent rows.
  std::vector<size_t> keptRows = greedyColumnBasis(a.transpose());
  {
    RatMatrix aug(a.rows(), n + 1);
    for (size_t i = 0; i < a.rows(); ++i) {
      for (size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
      aug.at(i, n) = b[i];
    }
    if (rank(aug) != static_cast<int>(keptRows.size())) {
      out.status = LpOutcome::Status::Infeasible;
      return out;
    }
  }

  size_t m = keptRows.size();
  Tableau t;
  t.a = RatMatrix(m, n + m);
  t.b.resize(m);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) t.a.at(i, j) = a.at(keptRows[i], j);
    t.b[i] = b[keptRows[i]];
  }
  t.n = n + m;
  t.lo = lo;
  t.hi = hi;
  t.state.assign(t.n, VarState::AtLower);
  t.x.assign(t.n, Rational());

  for (size_t j = 0; j < n; ++j) {
    if (lo[j].isFinite()) {
      t.state[j] = VarState::AtLower;
      t.x[j] = lo[j].value();
    } else if (hi[j].isFinite()) {
      t.state[j] = VarState::AtUpper;
      t.x[j] = hi[j].value();
    } else {
      t.state[j] = VarState::FreeZero;
      t.x[j] = Rational();
    }
  }

  // Phase 1: artificials cover the residual.
  RatVector resid = t.b;
  for (size_t j = 0; j < n; ++j)
    if (!t.x[j].isZero())
      for (size_t i = 0; i < m; ++i) resid[i] -= t.a.at(i, j) * t.x[j];
  for (size_t i = 0; i < m; ++i) {
    size_t aj = n + i;
    t.a.at(i, aj) = Rational(resid[i].sgn() < 0 ? -1 : 1);
    t.lo.push_back(ExtendedBound::of(Rational(0)));
    t.hi.push_back(ExtendedBound::plusInf());
    t.x[aj] = resid[i].abs();
    t.state[aj] = VarState::Basic;
    t.basis.push_back(aj);
  }

  t.obj.assign(t.n, Rational());
  for (size_t i = 0; i < m; ++i) t.obj[n + i] = Rational(-1);

  RatVector ray;
  if (!optimize(t, ray)) throw InvariantViolation("simplex: phase 1 unbounded");
  if (t.value().sgn() < 0) {
    out.status = LpOutcome::Status::Infeasible;
    return out;
  }

  // Drive remaining artificials out of the basis by degenerate pivots.
  for (size_t i = 0; i < t.basis.size(); ++i) {
    if (t.basis[i] < n) continue;
    RatMatrix ab = t.a.selectCols(t.basis);
    bool pivoted = false;
    for (size_t j = 0; j < n && !pivoted; ++j) {
      if (t.state[j] == VarState::Basic) continue;
      RatVector w;
      if (!solveLinear(ab, t.a.col(j), w)) throw InvariantViolation("simplex: singular basis");
      if (!w[i].isZero()) {
        size_t old = t.basis[i];
        t.basis[i] = j;
        t.state[j] = VarState::Basic;
        t.state[old] = VarState::AtLower;
        t.x[old] = Rational();
        t.recomputeBasics();
        pivoted = true;
      }
    }
    if (t.basis[i] >= n && !pivoted)
      throw InvariantViolation("simplex: cannot remove artificial from basis");
  }

  // Phase 2: real objective, artificials pinned to zero.
  for (size_t i = 0; i < m; ++i) {
    t.lo[n + i] = ExtendedBound::of(Rational(0));
    t.hi[n + i] = ExtendedBound::of(Rational(0));
    t.x[n + i] = Rational();
  }
  t.obj.assign(t.n, Rational());
  for (size_t j = 0; j < n; ++j) t.obj[j] = p[j];

  if (!optimize(t, ray)) {
    out.status = LpOutcome::Status::Unbounded;
    out.ray.assign(ray.begin(), ray.begin() + n);
    return out;
  }

  out.status = LpOutcome::Status::Optimal;
  out.x.assign(t.x.begin(), t.x.begin() + n);
  out.value = dot(out.x, p);
  return out;
}

void minimalFaceBounds(const RatMatrix& a, const RatVector& b,
                       const std::vector<ExtendedBound>& lo,
                       const std::vector<ExtendedBound>& hi, const RatVector& xstar,
                       std::vector<ExtendedBound>& loOut, std::vector<ExtendedBound>& hiOut) {
  size_t n = a.cols();
  if (xstar.size() != n) throw ValidationError("minimalFaceBounds: dimension mismatch");
  RatVector ax = a.apply(xstar);
  for (size_t i = 0; i < a.rows(); ++i)
    if (ax[i] != b[i]) throw ValidationError("minimalFaceBounds: point violates equalities");
  loOut = lo;
  hiOut = hi;
  for (size_t j = 0; j < n; ++j) {
    if (!lo[j].lessEq(xstar[j]) || !hi[j].greaterEq(xstar[j]))
      throw ValidationError("minimalFaceBounds: point violates bounds");
    bool tight = (lo[j].isFinite() && lo[j].value() == xstar[j]) ||
                 (hi[j].isFinite() && hi[j].value() == xstar[j]);
    if (tight) {
      loOut[j] = ExtendedBound::of(xstar[j]);
      hiOut[j] = ExtendedBound::of(xstar[j]);
    }
  }
}

RatVector lexMinOptimal(const RatMatrix& a, const RatVector& b,
                        const std::vector<ExtendedBound>& lo,
                        const std::vector<ExtendedBound>& hi, const RatVector& p) {
  size_t n = a.cols();
  for (size_t j = 0; j < n; ++j)
    if (!lo[j].isFinite() || !hi[j].isFinite())
      throw InfiniteBoundError("lexMinOptimal: finite bounds required");

  LpOutcome first = lpSolve(a, b, lo, hi, p);
  if (first.status == LpOutcome::Status::Infeasible)
    throw ValidationError("lexMinOptimal: infeasible system");
  if (first.status == LpOutcome::Status::Unbounded)
    throw InvariantViolation("lexMinOptimal: unbounded despite finite bounds");

  // Pin the objective, then minimize coordinates one at a time.
  RatMatrix ext(a.rows() + 1, n);
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < n; ++j) ext.at(i, j) = a.at(i, j);
  for (size_t j = 0; j < n; ++j) ext.at(a.rows(), j) = p[j];
  RatVector extB = b;
  extB.push_back(first.value);

  std::vector<ExtendedBound> l = lo, h = hi;
  RatVector result(n);
  for (size_t j = 0; j < n; ++j) {
    RatVector objJ(n);
    objJ[j] = Rational(-1);
    LpOutcome r = lpSolve(ext, extB, l, h, objJ);
    if (r.status != LpOutcome::Status::Optimal)
      throw InvariantViolation("lexMinOptimal: inner solve failed");
    result[j] = r.x[j];
    l[j] = ExtendedBound::of(result[j]);
    h[j] = ExtendedBound::of(result[j]);
  }
  return result;
}

RatVector vertexOfPolytope(const RatMatrix& a, const RatVector& b,
                           const std::vector<ExtendedBound>& lo,
                           const std::vector<ExtendedBound>& hi) {
  RatVector zero(a.cols());
  return lexMinOptimal(a, b, lo, hi, zero);
}

std::vector<ExtendedBound> finiteBounds(const std::vector<long long>& v) {
  std::vector<ExtendedBound> r;
  r.reserve(v.size());
  for (long long x : v) r.push_back(ExtendedBound::of(x));
  return r;
}

std::vector<ExtendedBound> finiteBounds(const RatVector& v) {
  std::vector<ExtendedBound> r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(ExtendedBound::of(x));
  return r;
}

}  // namespace ntu
