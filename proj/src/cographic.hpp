#pragma once

#include "configuration.hpp"
#include "graph.hpp"
#include "proximity.hpp"

namespace ntu {

/// Vertex-potential problem on a directed graph:
/// max p'y s.t. lo_e <= y(tail) - y(head) <= hi_e, W y = d, y integer.
struct McippInstance {
  DirectedGraph g;
  std::vector<long long> p;               // per vertex, sums to zero
  std::vector<std::vector<long long>> w;  // k rows over vertices, each sums to zero
  std::vector<long long> d;
  std::vector<long long> lo, hi;  // per edge
  long long delta = 1;

  long long k() const { return static_cast<long long>(w.size()); }
};

/// One incidence column per edge: chi^tail - chi^head.
Configuration incidenceConfiguration(const DirectedGraph& g);

/// The edge-space configuration whose kernel is exactly the set of
/// potential-difference vectors of g: one row per non-tree edge holding the
/// signed fundamental cycle of a BFS spanning tree. Columns follow the edge
/// order; the result is linearly equivalent to [I | -D'] for the network
/// matrix D of the tree.
Configuration cographicConfiguration(const DirectedGraph& g);

/// Edge-space linear forms evaluating vertex-space forms on potentials
/// anchored at the deleted vertex: row r of the result satisfies
/// rows[r] . y = result[r] . x whenever x(e) = y(tail) - y(head) and
/// y(deletedVertex) = 0. Rows must sum to zero.
std::vector<std::vector<long long>> vertexToEdgeForms(
    const DirectedGraph& g, const std::vector<std::vector<long long>>& rows);

/// Integer potentials of an integer circulation-compatible edge vector,
/// anchored at the deleted vertex (y = 0 there).
std::vector<long long> potentialsFromEdges(const DirectedGraph& g,
                                           const std::vector<long long>& x);

/// Checks that the configuration's circuits are exactly the signed docset
/// images +- M' chi^S over nontrivial docsets avoiding the deleted vertex
/// (the lexicographically first label). Returns false with a reason.
bool verifyCographicCorrespondence(const Configuration& a, const DirectedGraph& g,
                                   std::string* whyNot = nullptr,
                                   int circuitCap = kDefaultCircuitCap);

/// The deleted incidence row: index of the lexicographically first vertex.
size_t deletedVertex(const DirectedGraph& g);

/// Change of variables from an anchored cographic instance (b = 0, columns
/// in edge order of g) to the vertex-potential form. Verifies the
/// correspondence first.
McippInstance cographicToMcipp(const AnchoredInstance& anch, const DirectedGraph& g);

/// Potentials back to edge flows: x(e) = y(tail) - y(head).
std::vector<long long> mcippSolutionToMcicp(const std::vector<long long>& y,
                                            const DirectedGraph& g);

/// Loader-side validation: connectivity, zero sums, bound order, docset
/// weight bound (enumeration, cap-guarded).
void validateMcippInstance(const McippInstance& inst);

}  // namespace ntu
