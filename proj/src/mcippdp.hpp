#pragma once

#include <optional>

#include "cographic.hpp"

namespace ntu {

inline constexpr long long kGuessBudget = 2'000'000;

/// Rooted tree-decomposition with the adhesion/child-count parameter.
struct SpecialTreeDecomposition {
  std::vector<std::vector<size_t>> bags;  // vertex indices per node
  std::vector<size_t> parent;             // SIZE_MAX at the root
  size_t root = 0;
  long long ell = 0;

  size_t nNodes() const { return bags.size(); }
  std::vector<size_t> adhesion(size_t t) const;
  std::vector<std::vector<size_t>> childrenLists() const;
};

struct TdValidation {
  bool valid = true;
  std::vector<std::string> violations;
};

/// Checks the tree-decomposition axioms plus the adhesion and child-count
/// bounds; collects all violations instead of stopping at the first.
TdValidation validateSpecialTd(const DirectedGraph& g, const SpecialTreeDecomposition& td);

/// Single bag holding every vertex.
SpecialTreeDecomposition trivialTd(const DirectedGraph& g);

/// Exact docset profile of a root subset: intersections of nontrivial
/// docsets with the given set, deduplicated and ascending.
std::vector<uint32_t> bruteSuperprofile(const DirectedGraph& g, uint32_t rootSubset);

/// Validates a supplied superprofile against the exact profile.
bool superprofileSound(const DirectedGraph& g, uint32_t rootSubset,
                       const std::vector<uint32_t>& candidate);

struct LdcpResult {
  bool feasible = false;
  long long value = 0;
  std::vector<long long> y;  // per bag vertex
};

/// Local completion: maximize profits over the bag's internal difference
/// constraints with the listed vertices pinned. Solved as an exact LP; the
/// constraint system is totally unimodular, so the optimum is integral.
LdcpResult solveLdcp(const McippInstance& inst, const std::vector<size_t>& bag,
                     const std::vector<long long>& profits,
                     const std::vector<std::pair<size_t, long long>>& fixed);

struct McippSolution {
  bool feasible = false;
  long long value = 0;
  std::vector<long long> y;  // per vertex
};

/// Bottom-up dynamic program over the tree-decomposition guided by docset
/// superprofiles. Exact optimum of the vertex-potential instance.
McippSolution dpSolve(const McippInstance& inst, const SpecialTreeDecomposition& td,
                      const std::vector<std::vector<uint32_t>>& superprofiles,
                      long long guessBudget = kGuessBudget);

/// Shift so the minimum entry becomes 0; objective and feasibility are
/// invariant under uniform shifts.
std::vector<long long> shiftNormalize(std::vector<long long> y);

/// Backtracking check that y is a sum of at most budget docset indicator
/// vectors (y must be nonnegative).
bool decomposesIntoDocsets(const DirectedGraph& g, const std::vector<long long>& y,
                           long long budget);

}  // namespace ntu
