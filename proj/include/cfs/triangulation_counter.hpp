#pragma once

// Exact triangulation counting by splitting along descending paths.
//
// Vertices are identified by their labels (1..n, layer-monotone) throughout
// this header; CountingInstance converts between labels and input indices.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cfs/count.hpp"
#include "cfs/counting_instance.hpp"
#include "cfs/geometry.hpp"

namespace cfs {

/// Labels with strictly decreasing layer. A complete path ends on layer 1.
struct DescendingPath {
  std::vector<int> vertices;

  int start() const { return vertices.front(); }
  int terminal() const { return vertices.back(); }
  bool operator==(const DescendingPath&) const = default;
};

/// The part of the hull to the left of the directed edge x -> y, cut off by
/// the complete descending paths from x and from y.
struct SnRegion {
  int x = 0;
  int y = 0;
  DescendingPath left_path;   // from x
  DescendingPath right_path;  // from y
};

class TriangulationCounter {
 public:
  /// Throws DegenerateInputError for fewer than 3 points, coinciding points
  /// or an all-collinear set.
  explicit TriangulationCounter(std::span<const Point> points, CountOptions options = {});

  /// Only count triangulations whose edges all belong to `edges` (pairs of
  /// indices into the point span).
  void restrict_to(std::span<const std::pair<int, int>> edges);

  CountResult count();

  const CountingInstance& instance() const { return *inst_; }

  SnRegion root_region() const;
  /// CCW boundary starting at x; fewer than 3 vertices means the region is empty.
  std::vector<int> boundary(const SnRegion& region) const;
  std::string canonical_key(const SnRegion& region) const;

  std::vector<int> enumerate_apexes(const SnRegion& region) const;
  /// Portions inside the region, from z up to and including the first
  /// boundary vertex reached. A boundary apex yields the single portion [z].
  std::vector<DescendingPath> enumerate_descending_portions(int z, const SnRegion& region) const;

 private:
  struct Frame;

  Frame frame(int x, int y, const std::vector<int>& px, const std::vector<int>& py) const;
  bool allowed(int a, int b) const;
  bool apex_ok(const Frame& f, int z) const;
  void complete_paths(const Frame& f, int z, std::vector<std::vector<int>>& out) const;
  BigCount solve(int x, int y, const std::vector<int>& px, const std::vector<int>& py);

  std::vector<Point> points_;
  OnionDecomposition decomp_;
  std::unique_ptr<CountingInstance> inst_;
  CountOptions options_;
  std::vector<std::uint8_t> allowed_;  // (n+1)^2, empty when unrestricted
  std::unordered_map<std::string, BigCount> memo_;
  CountStats stats_;
};

CountResult count_triangulations(std::span<const Point> points, CountOptions options = {});

CountResult count_restricted_triangulations(std::span<const Point> points,
                                            std::span<const std::pair<int, int>> edges,
                                            CountOptions options = {});

/// f(x) = (x^3 + 3x^2 + 2x + 2) / 2
double bound_f(double x);
/// g(x) = f(x)^(1/x)
double bound_g(double x);
/// log2 of k^2 * g(n/k)^n.
double theoretical_bound(int n, int k);

}  // namespace cfs
