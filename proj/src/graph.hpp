#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"

namespace ntu {

inline constexpr int kDocsetVertexCap = 22;
inline constexpr int kModelSearchVertexCap = 10;

/// Directed graph with stable vertex labels. Parallel and antiparallel
/// edges allowed, loops are not.
struct DirectedGraph {
  std::vector<std::string> vertexLabels;
  std::vector<std::pair<size_t, size_t>> edges;  // (tail, head)

  size_t nV() const { return vertexLabels.size(); }
  size_t nE() const { return edges.size(); }
  size_t addVertex(const std::string& label);
  void addEdge(size_t tail, size_t head);
  size_t indexOfVertex(const std::string& label) const;

  /// Undirected adjacency bitmask per vertex (orientation and multiplicity
  /// ignored).
  std::vector<uint32_t> adjacencyMasks() const;
};

bool isWeaklyConnected(const DirectedGraph& g);
/// No parallel or antiparallel edge pair.
bool isSimple(const DirectedGraph& g);
/// Undirected 2-connectedness (connected, no cutvertex; single edges and
/// triangles count as 2-connected).
bool isTwoConnected(const DirectedGraph& g);
/// Undirected 3-connectedness (connected, >= 4 vertices, no 2-cut).
bool isThreeConnected(const DirectedGraph& g);
/// True when g arises from a 3-connected simple graph by subdividing edges
/// (suppress degree-2 vertices, then test).
bool isSubdividedThreeConnected(const DirectedGraph& g);

/// All vertex sets S with G[S] and G[complement] connected, ascending by
/// bitmask. includeTrivial adds the empty set and the full set.
std::vector<uint32_t> docsets(const DirectedGraph& g, bool includeTrivial);

/// Max of a(S) over docsets for zero-sum vertex weights a; always >= 0.
long long beta(const DirectedGraph& g, const std::vector<long long>& a);

/// A K_{2,t} minor model with the t central branch sets each holding a root.
struct RootedModel {
  uint32_t hubA = 0, hubB = 0;
  std::vector<uint32_t> centrals;
  // One witness edge (index into g.edges) per (central, hub) pair.
  std::vector<std::pair<size_t, size_t>> witnesses;  // (edge to hubA, edge to hubB)
};

/// Exhaustive rooted K_{2,t} model search with connectivity memoization and
/// subset-packing for the central sets. nullopt when no model exists.
std::optional<RootedModel> findRootedK2tModel(const DirectedGraph& g, uint32_t rootsMask, int t);

/// Full structural validation of a claimed model.
bool verifyRootedModel(const DirectedGraph& g, uint32_t rootsMask, int t, const RootedModel& m);

/// Spot check for the structural bound: with every docset weight bounded by
/// delta, no rooted K_{2,4 k delta + 1} model may exist. Returns true when
/// the exhaustive search finds none.
bool verifyNoRootedModelBound(const DirectedGraph& g,
                              const std::vector<std::vector<long long>>& wRows, long long k,
                              long long delta);

/// Contraction of one edge; roots follow the contraction (merged vertex is
/// a root iff one endpoint was).
struct ContractionResult {
  DirectedGraph g;
  uint32_t rootsMask = 0;
};
ContractionResult contractEdge(const DirectedGraph& g, size_t edgeIdx, uint32_t rootsMask);

/// Suppresses degree-2 vertices by merging their two incident edges
/// (orientation of the surviving edge is arbitrary); used for subdivision
/// structure checks.
DirectedGraph suppressDegreeTwo(const DirectedGraph& g);

}  // namespace ntu
