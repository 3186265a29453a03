#pragma once

#include <vector>

#include "semistream/measure.hpp"
#include "semistream/weighted_set.hpp"

namespace semistream {

struct KMedianSolution {
  double value = 0.0;
  std::vector<Point> centers;
};

// Exhaustive weighted k-median over all k-subsets of the support. Refuses
// supports larger than max_support (the subset count explodes); ties between
// optimal subsets resolve to the lexicographically first in id order.
KMedianSolution opt_bar_exact(const WeightedPointSet& demands, int k,
                              const DissimilarityMeasure& measure,
                              int max_support = 14);

// Single-swap local search over centers drawn from the support, seeded by
// greedy farthest-point traversal from the minimum-id point. Deterministic;
// stops when no swap improves the cost or after max_rounds swaps.
KMedianSolution local_search_kmedian(const WeightedPointSet& demands, int k,
                                     const DissimilarityMeasure& measure,
                                     int max_rounds = 256);

}  // namespace semistream
