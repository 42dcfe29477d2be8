#pragma once

#include "linalg.hpp"

namespace ntu {

/// Raised when an operation requires finite bounds but received an
/// infinite one.
struct InfiniteBoundError : ValidationError {
  using ValidationError::ValidationError;
};

struct LpOutcome {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  RatVector x;      // Optimal: a basic optimal solution
  Rational value;   // Optimal: objective value
  RatVector ray;    // Unbounded: improving feasible direction
};

/// Exact maximization of p'x over {Ax = b, lo <= x <= hi} by primal
/// simplex on the bounded-variable form, Bland's rule throughout.
/// When all bounds are finite the optimal point is a vertex.
LpOutcome lpSolve(const RatMatrix& a, const RatVector& b,
                  const std::vector<ExtendedBound>& lo,
                  const std::vector<ExtendedBound>& hi, const RatVector& p);

/// Bounds of the minimal face of {Ax=b, lo<=x<=hi} containing the feasible
/// point xstar: coordinates at a finite bound get pinned, others keep their
/// bounds. Throws ValidationError when xstar is infeasible.
void minimalFaceBounds(const RatMatrix& a, const RatVector& b,
                       const std::vector<ExtendedBound>& lo,
                       const std::vector<ExtendedBound>& hi, const RatVector& xstar,
                       std::vector<ExtendedBound>& loOut, std::vector<ExtendedBound>& hiOut);

/// Optimal solution with lexicographically-smallest tie-breaking.
/// Requires finite bounds. Throws ValidationError("infeasible") when empty.
RatVector lexMinOptimal(const RatMatrix& a, const RatVector& b,
                        const std::vector<ExtendedBound>& lo,
                        const std::vector<ExtendedBound>& hi, const RatVector& p);

/// Lexicographically smallest vertex of a nonempty polytope (finite bounds).
RatVector vertexOfPolytope(const RatMatrix& a, const RatVector& b,
                           const std::vector<ExtendedBound>& lo,
                           const std::vector<ExtendedBound>& hi);

std::vector<ExtendedBound> finiteBounds(const std::vector<long long>& v);
std::vector<ExtendedBound> finiteBounds(const RatVector& v);

}  // namespace ntu
