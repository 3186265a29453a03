#include "semistream/cost.hpp"

#include <limits>

#include "semistream/errors.hpp"

namespace semistream {

namespace {

std::pair<double, std::size_t> nearest(const Point& p, std::span<const Point> centers,
                                       const DissimilarityMeasure& measure) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const double d = measure(p, centers[i]);
    if (d < best) {
      best = d;
      best_i = i;
    }
  }
  return {best, best_i};
}

}  // namespace

CostReport cost(std::span<const Point> demands, std::span<const Point> centers,
                const DissimilarityMeasure& measure) {
  if (centers.empty()) throw InputError("cost: center set must be nonempty");
  CostReport report;
  report.assignment.reserve(demands.size());
  for (const Point& p : demands) {
    const auto [d, i] = nearest(p, centers, measure);
    report.value += d;
    report.assignment.emplace_back(p.id, centers[i].id);
  }
  return report;
}

double weighted_cost(const WeightedPointSet& demands, std::span<const Point> centers,
                     const DissimilarityMeasure& measure) {
  if (centers.empty()) throw InputError("cost: center set must be nonempty");
  double total = 0.0;
  for (std::size_t i = 0; i < demands.support_size(); ++i) {
    const auto [d, ci] = nearest(demands.point(i), centers, measure);
    total += static_cast<double>(demands.weight(i)) * d;
  }
  return total;
}

}  // namespace semistream
