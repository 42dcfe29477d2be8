#pragma once

#include <functional>
#include <map>
#include <optional>

#include "configuration.hpp"
#include "lp.hpp"

namespace ntu {

/// max { p'x : Ax <= b, Wx <= d, x integer } with A totally unimodular and
/// [A; W] totally Delta-modular.
struct InequalityInstance {
  IntMatrix aRows;  // m x n
  std::vector<long long> b;
  IntMatrix wRows;  // k x n
  std::vector<long long> d;
  std::vector<long long> p;
  long long delta = 1;

  size_t nVars() const { return p.size(); }
  long long k() const { return static_cast<long long>(wRows.rows); }
};

/// max { p'x : Mx <= b, x integer } plus the split metadata naming which
/// rows of M are weight rows and which columns are extra.
struct GeneralIpInstance {
  IntMatrix m;
  std::vector<long long> b;
  std::vector<long long> p;
  std::vector<size_t> wRowIdx;
  std::vector<size_t> extraColIdx;
  long long delta = 1;

  /// The instance with the extra columns already removed (requires
  /// extraColIdx empty) as an InequalityInstance.
  InequalityInstance asInequality() const;
};

/// Equality form: max { p'x : Ax = b, Wx = d, lo <= x <= hi, x integer }.
struct EqualityInstance {
  Configuration a;  // totally unimodular
  std::vector<long long> b;
  IntMatrix w;
  std::vector<long long> d;
  std::vector<long long> p;
  std::vector<long long> lo, hi;
  long long delta = 1;

  size_t nVars() const { return a.size(); }
  long long k() const { return static_cast<long long>(w.rows); }
  RatMatrix aMatrix() const { return a.matrix(); }
};

/// Equality instance translated so b = 0 and the origin is feasible, plus
/// the anchor taking solutions back to the original coordinates.
struct AnchoredInstance {
  EqualityInstance eq;  // b == 0 componentwise
  std::vector<long long> anchor;
  Rational objectiveOffset;  // p' anchor
  long long tMax = 0;
};

/// k (2 k Delta + 1)^k; 0 when k = 0.
long long fBound(long long k, long long delta);

/// 1 + k + fBound(k, delta).
long long proximityBound(long long k, long long delta);

enum class EqFormStatus { Ok, Infeasible, Unbounded };

struct EqualityFormResult {
  EqFormStatus status = EqFormStatus::Infeasible;
  std::optional<EqualityInstance> eq;
  RatVector xstar;       // LP relaxation optimum of the inequality form
  RatVector ray;         // set when status == Unbounded
  Rational lpValue;
};

/// Adds slack variables and a Cook-style box of radius nVars * delta around
/// the LP optimum. The equality instance has the same integer optimum.
EqualityFormResult toEqualityForm(const InequalityInstance& inst);

enum class UnboundedVerdict { Unbounded, Infeasible };

/// Footnote protocol for an unbounded LP relaxation: re-solve with the zero
/// objective; integer feasibility decides. The callback runs the full
/// integer pipeline on the zero-objective instance.
UnboundedVerdict handleUnbounded(const InequalityInstance& inst,
                                 const std::function<bool(const InequalityInstance&)>& integerFeasible);

struct ElimBranch {
  std::vector<std::pair<size_t, long long>> fixed;  // (original column, value)
  InequalityInstance sub;
  Rational objOffset;
};

/// One branch per integer assignment of the extra columns within the Cook
/// box around the LP vertex xstar; extra columns are substituted out.
std::vector<ElimBranch> eliminateColumns(const GeneralIpInstance& inst, const RatVector& xstar,
                                         long long enumerationCap = 100000);

/// Rounds an optimal LP vertex to an integer anchor on the minimal face:
/// A z = b, lo <= z <= hi, ||xstar - z||_inf < k (distance 0 when k = 0).
std::vector<long long> roundToAnchor(const EqualityInstance& eq, const RatVector& xstar);

/// Translates by the anchor so b = 0 and the origin is feasible, and fixes
/// the circuit budget tMax = fBound(k, delta).
AnchoredInstance reduceToCircuitSearch(const EqualityInstance& eq, const RatVector& xstar);

/// Loader-side validation: A totally unimodular and every circuit weight
/// bounded by delta (both cap-guarded).
void validateEqualityInstance(const EqualityInstance& eq, int circuitCap = kDefaultCircuitCap);

}  // namespace ntu
