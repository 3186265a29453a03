#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "semistream/point.hpp"

namespace semistream {

// Distinct points with positive integer weights. Storage order is insertion
// order; all code in this project inserts in increasing id order, so storage
// order and the global point order coincide.
class WeightedPointSet {
 public:
  WeightedPointSet() = default;

  // Appends a point the caller guarantees to be distinct from all present.
  void add(Point p, std::int64_t weight);

  // Adds weight to the entry at index i.
  void add_weight(std::size_t i, std::int64_t weight);

  // Builds a weighted set from a point list, merging duplicate locations
  // (the first occurrence keeps its id).
  static WeightedPointSet from_points(std::span<const Point> pts);

  std::size_t support_size() const { return pts_.size(); }
  std::int64_t total_weight() const { return total_; }
  const Point& point(std::size_t i) const { return pts_[i]; }
  std::int64_t weight(std::size_t i) const { return w_[i]; }
  const std::vector<Point>& points() const { return pts_; }

 private:
  std::vector<Point> pts_;
  std::vector<std::int64_t> w_;
  std::int64_t total_ = 0;
};

}  // namespace semistream
