#pragma once

#include <vector>

#include "cfs/geometry.hpp"

namespace cfs::test {

inline PointSet pts(std::initializer_list<std::pair<long, long>> xy) {
  PointSet out;
  int id = 0;
  for (auto [x, y] : xy) out.push_back(Point{Rational(x), Rational(y), id++});
  return out;
}

inline Point pt(long x, long y, int id = 0) { return Point{Rational(x), Rational(y), id}; }

}  // namespace cfs::test
