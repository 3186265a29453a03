#pragma once

#include <cstdint>
#include <vector>

#include "semistream/measure.hpp"
#include "semistream/weighted_set.hpp"

namespace semistream {

// Nearest neighbor map over a weighted set: target[i] / dist[i] give the
// index and dissimilarity of the nearest other point for entry i. Ties
// resolve toward the greatest point id among equidistant minimizers; that
// rule is what keeps every cycle of the map at length exactly 2.
struct NearestNeighborMap {
  std::vector<std::int32_t> target;
  std::vector<double> dist;
};

// Exact O(n^2) construction (the batch path; the streaming path maintains
// the same map incrementally).
NearestNeighborMap nearest_neighbor_map(const WeightedPointSet& a,
                                        const DissimilarityMeasure& measure);

// Proper 2-coloring of the functional graph of the map. Each component is a
// pair of trees whose roots point at each other; roots get opposite colors
// (the smaller-id root takes color 0) and colors alternate down the trees.
// A cycle of length > 2 would mean a broken tie rule and raises
// InvariantError.
std::vector<std::uint8_t> bitree_two_color(const WeightedPointSet& a,
                                           const NearestNeighborMap& map);

struct CompressResult {
  WeightedPointSet z;
  double lambda = 0.0;  // exact movement cost of the merged points
};

// Halves the support: drops the k entries with the largest w(a)*D(a,pi(a))
// from coloring consideration, then merges every remaining point of the
// larger color class into its map image (adding weights). Total weight is
// preserved and |support(Z)| <= floor((n+k)/2). With k >= n the input comes
// back unchanged with lambda = 0.
CompressResult compress_b(const WeightedPointSet& a, int k,
                          const NearestNeighborMap& map,
                          const DissimilarityMeasure& measure);

}  // namespace semistream
