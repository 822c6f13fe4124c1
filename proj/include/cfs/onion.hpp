#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cfs/geometry.hpp"

namespace cfs {

/// Onion-layer decomposition of a point set.
///
/// Indices in `layers` and `layer_of` / `labels` refer to positions in the
/// input span, not to Point::id. Layers are 1-based in `layer_of`; labels run
/// over 1..n and never decrease from an outer layer to an inner one.
struct OnionDecomposition {
  std::vector<std::vector<int>> layers;  // CCW, collinear boundary points included
  std::vector<int> layer_of;
  std::vector<int> labels;

  int layer_count() const { return static_cast<int>(layers.size()); }
  int size() const { return static_cast<int>(layer_of.size()); }
};

OnionDecomposition compute_onion(std::span<const Point> points);

int layer_count(std::span<const Point> points);

/// Layer-monotone relabeling: shuffles labels within every layer. Seed 0
/// returns the canonical labeling unchanged.
OnionDecomposition relabel_within_layers(const OnionDecomposition& decomp, std::uint64_t seed);

/// True iff labels are a bijection onto 1..n and respect layer order.
bool is_layer_monotone(const OnionDecomposition& decomp);

}  // namespace cfs
