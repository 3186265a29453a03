#include "semistream/weighted_set.hpp"

#include <map>
#include <utility>

#include "semistream/errors.hpp"

namespace semistream {

void WeightedPointSet::add(Point p, std::int64_t weight) {
  if (weight < 1) throw InputError("weights must be positive");
  pts_.push_back(std::move(p));
  w_.push_back(weight);
  total_ += weight;
}

void WeightedPointSet::add_weight(std::size_t i, std::int64_t weight) {
  w_[i] += weight;
  total_ += weight;
}

WeightedPointSet WeightedPointSet::from_points(std::span<const Point> pts) {
  WeightedPointSet s;
  std::map<std::pair<std::int32_t, std::vector<double>>, std::size_t> seen;
  for (const Point& p : pts) {
    auto key = std::make_pair(p.node, p.coords);
    const auto it = seen.find(key);
    if (it != seen.end()) {
      s.add_weight(it->second, 1);
    } else {
      seen.emplace(std::move(key), s.pts_.size());
      s.add(p, 1);
    }
  }
  return s;
}

}  // namespace semistream
