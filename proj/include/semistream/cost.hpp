#pragma once

#include <span>
#include <utility>
#include <vector>

#include "semistream/measure.hpp"
#include "semistream/point.hpp"
#include "semistream/weighted_set.hpp"

namespace semistream {

// Sum over demands of the dissimilarity to the nearest center, with the
// realized assignment (demand id -> center id).
struct CostReport {
  double value = 0.0;
  std::vector<std::pair<PointId, PointId>> assignment;
};

CostReport cost(std::span<const Point> demands, std::span<const Point> centers,
                const DissimilarityMeasure& measure);

// Nearest-center cost of a weighted set: sum of w(a) * min_c D(a, c).
double weighted_cost(const WeightedPointSet& demands, std::span<const Point> centers,
                     const DissimilarityMeasure& measure);

}  // namespace semistream
