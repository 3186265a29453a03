#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace semistream {

using PointId = std::int32_t;

// A stored point. The id is a dataset-unique ordinal; it doubles as the
// global tie-breaking order everywhere ties need breaking. The payload is
// either a coordinate vector (Euclidean data) or a node index into an
// explicit finite metric (distance matrix or tree).
struct Point {
  PointId id = -1;
  std::vector<double> coords;
  std::int32_t node = -1;

  bool is_node() const { return node >= 0; }
};

inline Point make_coord_point(PointId id, std::vector<double> coords) {
  Point p;
  p.id = id;
  p.coords = std::move(coords);
  return p;
}

inline Point make_node_point(PointId id, std::int32_t node) {
  Point p;
  p.id = id;
  p.node = node;
  return p;
}

// Exact location equality (no epsilon): two points coincide iff they carry
// the same node or bitwise-equal coordinates.
inline bool same_location(const Point& a, const Point& b) {
  if (a.is_node() != b.is_node()) return false;
  if (a.is_node()) return a.node == b.node;
  return a.coords == b.coords;
}

}  // namespace semistream
