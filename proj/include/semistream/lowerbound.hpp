#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "semistream/measure.hpp"
#include "semistream/point.hpp"

namespace semistream {

// A hard input for online facility location at adversary strength t: a
// complete z-ary tree metric with a hidden root-to-leaf path. Demands pile
// up along the hidden path (m^i of them at depth i) with the rest at the
// root, and an adversary that releases points in non-decreasing depth order
// forces any online algorithm to chase the path downward.
struct TreeInstance {
  std::int64_t t = 0;
  int m = 0;            // ceil(log2(t) / log2(log2(t)))
  int h = 0;            // m - 1, the tree depth
  double edge_scale = 0.0;  // f / h
  int z = 0;
  double f = 0.0;
  std::int64_t n = 0;
  std::vector<std::int32_t> hidden;  // b_1..b_h, each in [1, z]
  std::shared_ptr<TreeMetric> metric;
  std::vector<std::int32_t> path_nodes;  // node ids of root = x_0, x_1, ..., x_h
  std::vector<Point> demands;            // n points in construction order
};

// Parameters m, h and the node geometry are all derived from t; the hidden
// path is sampled uniformly from the z^h possibilities. Requires t >= 4
// (the derivation of m is meaningless below that), z >= 2, n >= t, f > 0.
TreeInstance build_tree_instance(std::int64_t t, int z, std::int64_t n, double f,
                                 std::uint64_t seed);

// Exact cost of the two-facility reference solution: facilities at the root
// and at x_h, every off-root demand connected to x_h. Always below 3f;
// raises InvariantError otherwise.
double opt_certificate(const TreeInstance& inst);

// Depth-order release for this instance's points (capacity must exceed the
// number of off-root demands, which is < t by construction).
std::int64_t demand_depth_key(const TreeInstance& inst, const Point& p);

struct LowerboundRow {
  std::int64_t t = 0;
  int m = 0;
  int h = 0;
  double opt = 0.0;
  double mean_ratio = 0.0;
  double stderr_ratio = 0.0;
  int trials = 0;
};

// Monte-Carlo competitive ratio of the online facility location algorithm on
// the instance family: per trial, sample an instance, shuffle, release
// through the depth-order adversary (or leave the shuffle untouched when
// adversarial = false), run the algorithm, and divide total cost by the
// reference optimum. n below t is raised to t per row.
std::vector<LowerboundRow> run_lowerbound_experiment(
    std::span<const std::int64_t> t_values, int z, std::int64_t n, double f,
    int trials, std::uint64_t seed, bool adversarial = true);

}  // namespace semistream
