#pragma once

#include <memory>
#include <string>
#include <vector>

#include "semistream/measure.hpp"
#include "semistream/point.hpp"

namespace semistream {

// An ingested dataset: coordinate points, or node points plus the distance
// matrix they index.
struct Dataset {
  std::vector<Point> points;
  std::shared_ptr<const DistanceMatrix> matrix;  // null for coordinate data

  bool is_matrix() const { return matrix != nullptr; }
};

// CSV: one point per row, comma-separated coordinates, uniform width.
// Ids are assigned by row order, which is also the global tie-break order.
Dataset ingest_csv(const std::string& path);

// Square distance matrix: first line n, then n rows of n reals.
Dataset ingest_matrix(const std::string& path);

// format is "csv" or "matrix".
Dataset ingest_points(const std::string& path, const std::string& format);

// Resolves a measure name against the dataset's base metric.
DissimilarityMeasure measure_for(const Dataset& data, const std::string& name);

// Deterministic float formatting for CSV output (%.12g).
std::string format_double(double v);

}  // namespace semistream
