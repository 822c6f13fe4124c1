#pragma once

// Constrained Delaunay triangulations over exact lattice predicates.
//
// Vertices are indices into the point span given to build_cdt.

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "cfs/geometry.hpp"

namespace cfs {

/// Undirected edge, stored with first < second.
using Edge = std::pair<int, int>;

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

struct ConstraintSet {
  std::vector<Edge> edges;

  bool contains(int a, int b) const;
};

struct TriangulationMesh {
  std::vector<Point> points;
  std::vector<Edge> edges;                     // sorted
  std::vector<std::array<int, 3>> triangles;   // CCW, rotated to start at the smallest index, sorted
  std::map<Edge, std::array<int, 2>> adjacency;  // apex left / right of first -> second, -1 if none

  bool has_edge(int a, int b) const { return adjacency.count(make_edge(a, b)) != 0; }
  bool is_hull_edge(int a, int b) const;

  bool operator==(const TriangulationMesh& other) const {
    return edges == other.edges && triangles == other.triangles;
  }
};

/// The unique triangulation containing S with no flippable non-constraint
/// edge. `insertion_seed` only changes the internal construction order.
/// Throws DegenerateInputError unless the set is ok_for_cdt and
/// std::invalid_argument for crossing or malformed constraints.
TriangulationMesh build_cdt(std::span<const Point> points, const ConstraintSet& constraints,
                            std::uint64_t insertion_seed = 0);

/// Interior non-constraint edge whose quadrilateral is convex and whose
/// opposite vertex lies inside the circumcircle of either triangle.
/// Throws std::invalid_argument for hull, constraint or missing edges.
bool is_flippable(const TriangulationMesh& mesh, Edge e, const ConstraintSet& constraints);

}  // namespace cfs
