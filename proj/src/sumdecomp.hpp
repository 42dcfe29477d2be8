#pragma once

#include <map>
#include <optional>

#include "configuration.hpp"
#include "lp.hpp"

namespace ntu {

inline constexpr int kSeparationCap = 18;

/// max { p'x : Ax = 0, Wx = d, lo <= x <= hi, x integer } over a regular
/// configuration.
struct McicpInstance {
  Configuration a;
  IntMatrix w;
  std::vector<long long> d;
  std::vector<long long> p;
  std::vector<long long> lo, hi;
  long long delta = 1;

  long long k() const { return static_cast<long long>(w.rows); }
  size_t nVars() const { return a.size(); }
};

/// MCICP plus a root column with prescribed flow (lo = hi = flow there).
struct RootedMcicpInstance {
  McicpInstance base;
  size_t rootCol = 0;
  long long flow = 0;
};

struct Separation {
  std::vector<size_t> side1, side2;  // column indices; side1 contains column 0
  int order = 0;                     // dim(colspan1 cap colspan2) + 1
};

/// Exhaustive bipartition search: a q-separation of minimum order if one
/// exists (lexicographic tie-break), else nullopt. q in {1, 2}.
std::optional<Separation> findSeparation(const Configuration& a, int q,
                                         int cap = kSeparationCap);

/// Decomposition tree: pieces joined by 2-sums along shared private marker
/// columns. Markers carry fresh labels present in exactly two pieces.
struct DecompositionTree {
  std::vector<Configuration> pieces;
  struct Edge {
    size_t t1 = 0, t2 = 0;
    std::string marker;
  };
  std::vector<Edge> edges;
};

/// Recursive 2-separation splitting of a 2-connected configuration with at
/// least 3 columns; all pieces end up 3-connected or minimal.
DecompositionTree buildDecompositionTree(const Configuration& a, int cap = kSeparationCap);

/// Re-composes the tree by performing all 2-sums in the given edge order
/// (any permutation of the edges); validates each step's span condition.
Configuration recompose(const DecompositionTree& tree, const std::vector<size_t>& edgeOrder);

struct SolveEntry {
  long long value = 0;
  std::vector<long long> x;  // over the instance columns covered by this entry
};

/// Sparse value table: weight target -> best entry.
using TargetTable = std::map<std::vector<long long>, SolveEntry>;

struct McicpSolution {
  bool feasible = false;
  long long value = 0;
  std::vector<long long> x;
};

/// Column classes of the finest 1-sum decomposition (exhaustive separation
/// search; singleton classes for zero columns and coloops come out
/// naturally).
std::vector<std::vector<size_t>> oneSumComponents(const Configuration& a,
                                                  int cap = kSeparationCap);

/// Full solver: 1-sum split, per-component rooted 2-sum dynamic program with
/// gadget substitution for tame subtrees, then the 1-sum combination.
/// Callers must feed instances whose optimum is a bounded conformal circuit
/// sum from the origin (anchored instances qualify).
McicpSolution solveMcicp(const McicpInstance& inst);

/// The 1-sum dynamic program over explicitly given component instances.
McicpSolution solveOneSum(const std::vector<McicpInstance>& components,
                          const std::vector<long long>& d, long long delta);

/// Weight of the far side of a reference circuit crossing the marker:
/// sum over non-marker columns of w(v) c(v), with the circuit normalized to
/// -1 at the marker (so the near side uses it with +1).
long long upperWeight(const Configuration& farSide, size_t markerIdx,
                      const std::vector<long long>& wRow);

enum class ChildKind { Tame, Wild };

/// Tame iff all circuits of the subtree configuration crossing the marker
/// share one weight vector.
ChildKind classifyChild(const Configuration& subtree, const IntMatrix& wOnSubtree,
                        size_t markerIdx);

/// Parallel-vector gadget replacing a tame subtree. Value function f is
/// given on [-gamma, gamma] (nullopt = infeasible); f(0) must be 0 and f
/// concave on its finite range.
struct Gadget {
  Configuration cfg;            // root marker copy + 2*gamma parallel copies
  std::vector<Rational> profits;  // per gadget column (0 for the marker)
  std::vector<long long> lo, hi;
  IntMatrix w;                  // weights making every gadget circuit zero
};
Gadget buildGadget(const RatVector& markerVec, long long gamma,
                   const std::vector<std::optional<Rational>>& f,
                   const std::vector<long long>& zeta);

/// Rooted 2-sum dynamic program over a decomposition tree of the instance's
/// configuration. Returns the full root table: (d, value/witness) for the
/// prescribed root flow. Witnesses cover all non-root instance columns.
TargetTable solveTwoSumDp(const RootedMcicpInstance& inst, const DecompositionTree& tree);

}  // namespace ntu
