#pragma once

// Matching and spanning-cycle counting over annotated constrained Delaunay
// triangulations, split along triangular paths.
//
// The public helpers (rays, triangular paths, annotations) use indices into
// the input point span.

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "cfs/cdt.hpp"
#include "cfs/count.hpp"
#include "cfs/geometry.hpp"
#include "cfs/onion.hpp"

namespace cfs {

struct RayAssignment {
  std::vector<bool> has_ray;      // false on layer 1
  std::vector<Vec2> direction;    // lattice direction, valid where has_ray
};

/// Rays close to the exterior angle bisector of each point's own layer. Every
/// ray avoids the interior of its layer's hull and passes through no other
/// point.
RayAssignment assign_rays(std::span<const Point> points, const OnionDecomposition& decomp);

/// True iff the ray of p hits the closed hull of its layer only at p and
/// misses every other point.
bool ray_is_valid(std::span<const Point> points, const OnionDecomposition& decomp,
                  const RayAssignment& rays, int p);

struct TriangularPath {
  std::vector<int> anchors;                   // p0, p1, ..., last point on layer 1
  std::vector<std::array<int, 3>> triangles;  // one per anchor except the last, CCW starting at the anchor
};

/// Throws std::invalid_argument if p is on layer 1 and DegenerateInputError if
/// a ray runs along a mesh edge.
TriangularPath triangular_path(const TriangulationMesh& mesh, const OnionDecomposition& decomp,
                               int p, const RayAssignment& rays);

struct MatchingAnnotation {
  std::vector<int> mate;      // -1 when unmatched
  std::map<Edge, int> bit;    // every mesh edge
};

struct CycleAnnotation {
  std::vector<int> pos;       // 1..n along the cycle from the root
  std::vector<int> prev;
  std::vector<int> next;
  std::map<Edge, int> bit;
};

/// Throws std::invalid_argument unless `matching` is a crossing-free set of
/// vertex-disjoint edges.
std::pair<TriangulationMesh, MatchingAnnotation> annotate_matching(std::span<const Point> points,
                                                                   std::span<const Edge> matching);

/// `order` lists every point once: the root first, then along the chosen
/// orientation. Throws std::invalid_argument for self-intersecting orders.
std::pair<TriangulationMesh, CycleAnnotation> annotate_cycle(std::span<const Point> points,
                                                             std::span<const int> order);

bool is_legal_annotated_cdt(const TriangulationMesh& mesh, const MatchingAnnotation& annotation);
bool is_legal_annotated_cdt(const TriangulationMesh& mesh, const CycleAnnotation& annotation);

/// All crossing-free matchings, partial and empty ones included.
CountResult count_matchings(std::span<const Point> points, CountOptions options = {});

/// Simple polygons through all points.
CountResult count_spanning_cycles(std::span<const Point> points, CountOptions options = {});

/// Rooted and oriented cycle total before the division by 2n.
CountResult count_rooted_cycles(std::span<const Point> points, CountOptions options = {});

}  // namespace cfs
