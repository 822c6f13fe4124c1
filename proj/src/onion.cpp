#include "cfs/onion.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace cfs {

OnionDecomposition compute_onion(std::span<const Point> points) {
  OnionDecomposition d;
  const int n = static_cast<int>(points.size());
  d.layer_of.assign(n, 0);
  d.labels.assign(n, 0);
  if (n == 0) return d;

  const auto lattice = to_lattice(points);
  std::vector<int> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 0);
  int next_label = 1;
  while (!remaining.empty()) {
    // hull_indices starts at the lexicographically smallest point and walks
    // CCW, which is exactly the in-layer label order.
    std::vector<int> layer = hull_indices(lattice, remaining);
    const int index = static_cast<int>(d.layers.size()) + 1;
    for (int i : layer) {
      d.layer_of[i] = index;
      d.labels[i] = next_label++;
    }
    std::vector<bool> taken(n, false);
    for (int i : layer) taken[i] = true;
    std::erase_if(remaining, [&](int i) { return taken[i]; });
    d.layers.push_back(std::move(layer));
  }
  return d;
}

int layer_count(std::span<const Point> points) { return compute_onion(points).layer_count(); }

OnionDecomposition relabel_within_layers(const OnionDecomposition& decomp, std::uint64_t seed) {
  OnionDecomposition out = decomp;
  if (seed == 0) return out;
  std::mt19937_64 rng(seed);
  for (const auto& layer : decomp.layers) {
    std::vector<int> labels;
    for (int i : layer) labels.push_back(decomp.labels[i]);
    // Fisher-Yates on raw engine output keeps the permutation reproducible
    // across standard library implementations.
    for (std::size_t k = labels.size(); k > 1; --k) std::swap(labels[k - 1], labels[rng() % k]);
    for (std::size_t k = 0; k < layer.size(); ++k) out.labels[layer[k]] = labels[k];
  }
  return out;
}

bool is_layer_monotone(const OnionDecomposition& decomp) {
  const int n = decomp.size();
  std::vector<int> sorted = decomp.labels;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i)
    if (sorted[i] != i + 1) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (decomp.layer_of[i] < decomp.layer_of[j] && decomp.labels[i] > decomp.labels[j]) return false;
  return true;
}

}  // namespace cfs
