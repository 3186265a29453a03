#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "semistream/point.hpp"

namespace semistream {

// Loss applied to base distances. Linear recovers k-median, Gaussian (squared
// distance) recovers k-means; the rest are the usual robust estimators with
// scale constants fixed at 1.
enum class Rho { Linear, Gaussian, Huber, Cauchy, Tukey, LpPower };

// rho as a scalar function of a nonnegative base distance.
double rho_scalar(Rho rho, double p, double x);

// The constant beta >= 1 such that rho(c) <= beta * (rho(a) + rho(b)) holds
// for all scalars c <= a + b.
double beta_of(Rho rho, double p);

const char* rho_name(Rho rho);

// Symmetric n x n base distances for node-payload points.
struct DistanceMatrix {
  std::int32_t n = 0;
  std::vector<double> values;  // row-major

  double at(std::int32_t i, std::int32_t j) const {
    return values[static_cast<std::size_t>(i) * n + j];
  }

  // Validates symmetry (tolerance 1e-9), zero diagonal and positive
  // off-diagonal entries; throws InputError naming the offending entry.
  static DistanceMatrix validated(std::int32_t n, std::vector<double> values);
};

// Complete z-ary tree of depth h. Nodes are identified by their child-index
// path from the root; the edge from a depth-i node to any child has length
// scale * (m^-i - m^-(i+1)). Only nodes actually referenced are materialized.
class TreeMetric {
 public:
  TreeMetric(std::int32_t z, std::int32_t m, std::int32_t h, double scale);

  // Returns the node index for a path, interning it if new. Path entries are
  // child indices in [1, z]; the empty path is the root (node 0).
  std::int32_t intern(const std::vector<std::int32_t>& path);

  std::int32_t node_count() const { return static_cast<std::int32_t>(paths_.size()); }
  const std::vector<std::int32_t>& path(std::int32_t node) const { return paths_[node]; }
  std::int32_t depth(std::int32_t node) const {
    return static_cast<std::int32_t>(paths_[node].size());
  }

  double distance(std::int32_t a, std::int32_t b) const;

  // Distance from the root to any node at the given depth.
  double root_distance(std::int32_t depth) const;

  // Interns every node of the complete tree; intended for exhaustive checks
  // at small z and h only.
  void materialize_all_nodes();

  std::int32_t z() const { return z_; }
  std::int32_t m() const { return m_; }
  std::int32_t h() const { return h_; }
  double scale() const { return scale_; }

 private:
  std::int32_t z_, m_, h_;
  double scale_;
  std::vector<double> inv_pow_;  // inv_pow_[d] = m^-d for d in [0, h]
  std::vector<std::vector<std::int32_t>> paths_;
};

// A dissimilarity: rho applied to a base distance. Symmetric, nonnegative,
// zero exactly on coincident points, and obeying the weak triangle
// inequality D(a,c) <= beta() * (D(a,b) + D(b,c)).
class DissimilarityMeasure {
 public:
  enum class Base { Euclidean, Matrix, Tree };

  static DissimilarityMeasure euclidean(Rho rho, double p = 2.0);
  static DissimilarityMeasure with_matrix(std::shared_ptr<const DistanceMatrix> m,
                                          Rho rho, double p = 2.0);
  static DissimilarityMeasure with_tree(std::shared_ptr<const TreeMetric> t,
                                        Rho rho, double p = 2.0);

  // Parses "linear", "gaussian", "huber", "cauchy", "tukey" or "lp:<p>".
  static DissimilarityMeasure parse(std::string_view name);

  double operator()(const Point& a, const Point& b) const {
    return rho_scalar(rho_, p_, base_distance(a, b));
  }

  double base_distance(const Point& a, const Point& b) const;
  double rho_of(double distance) const { return rho_scalar(rho_, p_, distance); }
  double beta() const { return beta_of(rho_, p_); }
  Rho rho() const { return rho_; }
  double lp_exponent() const { return p_; }
  Base base() const { return base_; }
  std::string name() const;

  // Re-bases this measure's rho onto a different base metric.
  DissimilarityMeasure rebase_matrix(std::shared_ptr<const DistanceMatrix> m) const;
  DissimilarityMeasure rebase_tree(std::shared_ptr<const TreeMetric> t) const;

 private:
  DissimilarityMeasure(Base base, Rho rho, double p) : base_(base), rho_(rho), p_(p) {}

  Base base_;
  Rho rho_;
  double p_;
  std::shared_ptr<const DistanceMatrix> matrix_;
  std::shared_ptr<const TreeMetric> tree_;
};

}  // namespace semistream
