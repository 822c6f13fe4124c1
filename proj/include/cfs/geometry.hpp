#pragma once

// Exact planar predicates.
//
// Two coordinate representations live side by side:
//  - Point carries exact rationals and is what callers hand in and get back.
//  - Vec2 is an integer lattice point. A whole point set is scaled by the
//    common denominator of its coordinates (see to_lattice), after which every
//    predicate is evaluated with fixed-width integer arithmetic. Signs of
//    orientation and in-circle tests are invariant under that positive scaling.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cfs {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct Point {
  Rational x;
  Rational y;
  int id = 0;

  friend bool operator==(const Point& a, const Point& b) {
    return a.x == b.x && a.y == b.y && a.id == b.id;
  }
};

using PointSet = std::vector<Point>;

enum class Orientation : int { CW = -1, COLLINEAR = 0, CCW = 1 };
enum class CircleSide : int { OUTSIDE = -1, COCIRCULAR = 0, INSIDE = 1 };

struct Segment {
  Point a;
  Point b;
};

/// Thrown when an input violates a geometric precondition (collinear or
/// cocircular configurations, coinciding points, ...).
class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Rational API

Orientation orientation(const Point& a, const Point& b, const Point& c);

/// Position of d relative to the circumcircle of the CCW triangle abc.
/// Throws DegenerateInputError when a, b, c are collinear.
CircleSide in_circle(const Point& a, const Point& b, const Point& c, const Point& d);

bool segments_properly_cross(const Segment& s1, const Segment& s2);

/// CCW boundary of the hull including collinear boundary points. The walk
/// starts at the lexicographically smallest point.
std::vector<Point> convex_hull(std::span<const Point> points);

/// Closed-triangle emptiness: abc must be non-degenerate and no other point of
/// `points` may lie inside it or on its edges. Points are matched by id.
bool empty_triangle(const Point& a, const Point& b, const Point& c,
                    std::span<const Point> points);

struct GeneralPositionReport {
  std::int64_t collinear_triples = 0;
  std::int64_t cocircular_quadruples = 0;
  bool ok_for_triangulations = false;
  bool ok_for_cdt = false;
};

GeneralPositionReport validate_general_position(std::span<const Point> points);

/// Seeded rational jitter of magnitude < 1/denominator per coordinate. Retries
/// until the result is in general position; throws after a bounded number of
/// attempts. Ids are preserved.
PointSet perturb(std::span<const Point> points, std::uint64_t seed, std::int64_t denominator);

// ---------------------------------------------------------------------------
// Integer lattice

struct Vec2 {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Largest absolute lattice coordinate accepted by the integer predicates.
inline constexpr std::int64_t kLatticeLimit = std::int64_t{1} << 60;

/// Scales every point by the least common denominator of all coordinates.
/// Throws DegenerateInputError if the scaled coordinates exceed kLatticeLimit
/// and std::invalid_argument if two points coincide.
std::vector<Vec2> to_lattice(std::span<const Point> points);

inline __int128 cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return static_cast<__int128>(a.x - o.x) * (b.y - o.y) -
         static_cast<__int128>(a.y - o.y) * (b.x - o.x);
}

inline int orient_sign(const Vec2& a, const Vec2& b, const Vec2& c) {
  const __int128 d = cross(a, b, c);
  return (d > 0) - (d < 0);
}

/// Sign of the in-circle determinant: +1 if d lies inside the circumcircle of
/// the CCW triangle abc, 0 if cocircular, -1 outside. Caller guarantees abc is
/// CCW.
int in_circle_sign(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

/// Proper crossing of open segments: a single common point interior to both,
/// or a collinear overlap of positive length.
bool properly_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

/// True iff p lies on the closed segment ab (ab non-degenerate).
bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p);

/// Strictly inside, on the boundary of, or outside the closed triangle abc.
/// +1 strictly inside, 0 on the boundary, -1 outside. abc may be either
/// orientation but must be non-degenerate.
int triangle_location(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p);

/// Collinear-inclusive CCW hull of the selected indices into `pts`. Starts at
/// the lexicographically smallest point.
std::vector<int> hull_indices(std::span<const Vec2> pts, std::span<const int> subset);

}  // namespace cfs
