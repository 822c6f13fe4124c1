#pragma once

// Exhaustive enumerators used as ground truth. Independent of the counters:
// only the geometric predicates are shared.

#include <chrono>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cfs/cdt.hpp"
#include "cfs/count.hpp"
#include "cfs/geometry.hpp"

namespace cfs {

/// The instance is larger than the oracle's cap.
class OracleRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleOptions {
  int cap = 0;  // 0 selects the per-oracle default
  /// Receives every structure as a sorted edge list (indices into the input).
  std::function<void(const std::vector<Edge>&)> sink;
};

struct EnumerationResult {
  BigCount count;
  std::chrono::nanoseconds elapsed{0};
};

inline constexpr int kTriangulationCap = 12;
inline constexpr int kMatchingCap = 10;
inline constexpr int kPolygonizationCap = 10;

EnumerationResult enumerate_triangulations(std::span<const Point> points, const OracleOptions& options = {});

/// Edges are index pairs into `points`.
EnumerationResult enumerate_restricted(std::span<const Point> points, std::span<const Edge> allowed,
                                       const OracleOptions& options = {});

EnumerationResult enumerate_matchings(std::span<const Point> points, bool perfect_only,
                                      const OracleOptions& options = {});

EnumerationResult enumerate_polygonizations(std::span<const Point> points, const OracleOptions& options = {});

}  // namespace cfs
