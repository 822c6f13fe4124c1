#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cfs {

/// Exact non-negative count.
using BigCount = boost::multiprecision::cpp_int;

struct CountStats {
  std::int64_t subproblems = 0;  // memo entries at termination
  std::int64_t calls = 0;        // non-trivial region evaluations, memo hits included
  std::chrono::nanoseconds elapsed{0};
  std::int64_t peak_memo_bytes = 0;  // estimate
};

struct CountResult {
  BigCount count;
  CountStats stats;
};

struct CountOptions {
  bool memoize = true;
  std::int64_t memo_cap = std::numeric_limits<std::int64_t>::max();
  std::uint64_t labeling_seed = 0;  // 0: canonical labels, else shuffled within layers
};

/// The memo table outgrew CountOptions::memo_cap. Carries the statistics
/// gathered up to the abort.
class ResourceLimitError : public std::runtime_error {
 public:
  ResourceLimitError(const std::string& what, CountStats partial)
      : std::runtime_error(what), stats(partial) {}
  CountStats stats;
};

}  // namespace cfs
