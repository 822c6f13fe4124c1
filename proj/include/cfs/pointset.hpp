#pragma once

// Instance generators and the plain-text point-set format.
//
// File format: the first record is n, followed by n records "x y". Numbers are
// integers or p/q rationals. '#' starts a comment; blank lines are ignored.
//
// Randomised generators draw from std::mt19937_64 seeded with the given seed,
// taking raw 64-bit outputs modulo the range, so fixtures are reproducible
// across platforms.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfs/geometry.hpp"

namespace cfs {

class PointSetParseError : public std::runtime_error {
 public:
  PointSetParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

/// Strictly convex integer points near a large circle.
PointSet gen_convex(int n);

/// Uniform points in [0, 2^20)^2, resampled until in general position.
PointSet gen_square(int n, std::uint64_t seed);

/// Random points on three concentric circles with exactly three onion layers.
/// Throws std::runtime_error when the retry budget runs out.
PointSet gen_three_layers(int n, std::uint64_t seed);

/// Nested triangles giving ceil(n/3) onion layers.
PointSet gen_max_layers(int n);

/// {0..cols-1} x {0..rows-1}.
PointSet gen_grid(int rows, int cols);

/// True iff no three points are collinear and no four cocircular.
bool in_general_position(const std::vector<Vec2>& pts);

PointSet parse_point_set(std::string_view text);
std::string serialize_point_set(const PointSet& points);

PointSet read_point_set(const std::filesystem::path& path);
void write_point_set(const std::filesystem::path& path, const PointSet& points);

/// One "i j" record per line, 0-based indices below n.
std::vector<std::pair<int, int>> parse_edges(std::string_view text, int n);
std::vector<std::pair<int, int>> read_edges(const std::filesystem::path& path, int n);

}  // namespace cfs
