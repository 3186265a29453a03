#include "semistream/measure.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "semistream/errors.hpp"

namespace semistream {

double rho_scalar(Rho rho, double p, double x) {
  switch (rho) {
    case Rho::Linear:
      return x;
    case Rho::Gaussian:
      return x * x;
    case Rho::Huber:
      return x < 1.0 ? x * x : 2.0 * x - 1.0;
    case Rho::Cauchy:
      return std::log1p(x * x);
    case Rho::Tukey: {
      if (x >= 1.0) return 1.0;
      const double s = 1.0 - x * x;
      return 1.0 - s * s * s;
    }
    case Rho::LpPower:
      return std::pow(x, p);
  }
  return x;
}

double beta_of(Rho rho, double p) {
  switch (rho) {
    case Rho::Linear:
      return 1.0;
    case Rho::Gaussian:
    case Rho::Huber:
    case Rho::Cauchy:
    case Rho::Tukey:
      return 2.0;
    case Rho::LpPower:
      return std::exp2(p - 1.0);
  }
  return 1.0;
}

const char* rho_name(Rho rho) {
  switch (rho) {
    case Rho::Linear:
      return "linear";
    case Rho::Gaussian:
      return "gaussian";
    case Rho::Huber:
      return "huber";
    case Rho::Cauchy:
      return "cauchy";
    case Rho::Tukey:
      return "tukey";
    case Rho::LpPower:
      return "lp";
  }
  return "?";
}

DistanceMatrix DistanceMatrix::validated(std::int32_t n, std::vector<double> values) {
  if (n <= 0) throw InputError("distance matrix: n must be positive");
  if (values.size() != static_cast<std::size_t>(n) * n)
    throw InputError("distance matrix: wrong number of entries");
  DistanceMatrix m;
  m.n = n;
  m.values = std::move(values);
  char buf[160];
  for (std::int32_t i = 0; i < n; ++i) {
    if (m.at(i, i) != 0.0) {
      std::snprintf(buf, sizeof buf, "distance matrix: nonzero diagonal at (%d,%d)", i, i);
      throw InputError(buf);
    }
    for (std::int32_t j = i + 1; j < n; ++j) {
      const double a = m.at(i, j), b = m.at(j, i);
      if (std::abs(a - b) > 1e-9) {
        std::snprintf(buf, sizeof buf,
                      "distance matrix: asymmetric at (%d,%d): %.12g vs %.12g", i, j, a, b);
        throw InputError(buf);
      }
      if (!(a > 0.0)) {
        std::snprintf(buf, sizeof buf,
                      "distance matrix: off-diagonal entry (%d,%d) must be positive", i, j);
        throw InputError(buf);
      }
    }
  }
  return m;
}

TreeMetric::TreeMetric(std::int32_t z, std::int32_t m, std::int32_t h, double scale)
    : z_(z), m_(m), h_(h), scale_(scale) {
  if (z < 2) throw InputError("tree metric: branching factor must be >= 2");
  if (m < 2) throw InputError("tree metric: m must be >= 2");
  if (h < 1) throw InputError("tree metric: depth must be >= 1");
  if (!(scale > 0.0)) throw InputError("tree metric: scale must be positive");
  inv_pow_.resize(static_cast<std::size_t>(h) + 1);
  inv_pow_[0] = 1.0;
  for (std::int32_t d = 1; d <= h; ++d) inv_pow_[d] = inv_pow_[d - 1] / m;
  paths_.push_back({});  // node 0: root
}

std::int32_t TreeMetric::intern(const std::vector<std::int32_t>& path) {
  if (static_cast<std::int32_t>(path.size()) > h_)
    throw InputError("tree metric: path deeper than the tree");
  for (std::int32_t c : path)
    if (c < 1 || c > z_) throw InputError("tree metric: child index out of range");
  for (std::size_t i = 0; i < paths_.size(); ++i)
    if (paths_[i] == path) return static_cast<std::int32_t>(i);
  paths_.push_back(path);
  return static_cast<std::int32_t>(paths_.size() - 1);
}

double TreeMetric::root_distance(std::int32_t depth) const {
  // Telescoping sum of edge lengths scale*(m^-i - m^-(i+1)) for i < depth.
  return scale_ * (1.0 - inv_pow_[depth]);
}

double TreeMetric::distance(std::int32_t a, std::int32_t b) const {
  const auto& pa = paths_[a];
  const auto& pb = paths_[b];
  std::size_t l = 0;
  while (l < pa.size() && l < pb.size() && pa[l] == pb[l]) ++l;
  const double up = root_distance(static_cast<std::int32_t>(pa.size())) -
                    root_distance(static_cast<std::int32_t>(l));
  const double down = root_distance(static_cast<std::int32_t>(pb.size())) -
                      root_distance(static_cast<std::int32_t>(l));
  return up + down;
}

void TreeMetric::materialize_all_nodes() {
  std::vector<std::int32_t> path;
  // Depth-first over the complete tree.
  struct Frame {
    std::int32_t next_child;
  };
  std::vector<Frame> stack;
  intern(path);
  stack.push_back({1});
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (static_cast<std::int32_t>(path.size()) == h_ || f.next_child > z_) {
      stack.pop_back();
      if (!path.empty()) path.pop_back();
      continue;
    }
    path.push_back(f.next_child++);
    intern(path);
    stack.push_back({1});
  }
}

DissimilarityMeasure DissimilarityMeasure::euclidean(Rho rho, double p) {
  if (rho == Rho::LpPower && (p < 1.0 || p > 8.0))
    throw InputError("lp power exponent must lie in [1, 8]");
  return DissimilarityMeasure(Base::Euclidean, rho, p);
}

DissimilarityMeasure DissimilarityMeasure::with_matrix(
    std::shared_ptr<const DistanceMatrix> m, Rho rho, double p) {
  DissimilarityMeasure d = euclidean(rho, p);
  d.base_ = Base::Matrix;
  d.matrix_ = std::move(m);
  return d;
}

DissimilarityMeasure DissimilarityMeasure::with_tree(
    std::shared_ptr<const TreeMetric> t, Rho rho, double p) {
  DissimilarityMeasure d = euclidean(rho, p);
  d.base_ = Base::Tree;
  d.tree_ = std::move(t);
  return d;
}

DissimilarityMeasure DissimilarityMeasure::parse(std::string_view name) {
  if (name == "linear") return euclidean(Rho::Linear);
  if (name == "gaussian") return euclidean(Rho::Gaussian);
  if (name == "huber") return euclidean(Rho::Huber);
  if (name == "cauchy") return euclidean(Rho::Cauchy);
  if (name == "tukey") return euclidean(Rho::Tukey);
  if (name.substr(0, 3) == "lp:") {
    const std::string_view rest = name.substr(3);
    double p = 0.0;
    const auto res = std::from_chars(rest.data(), rest.data() + rest.size(), p);
    if (res.ec != std::errc{} || res.ptr != rest.data() + rest.size())
      throw InputError("bad lp exponent in measure name: " + std::string(name));
    return euclidean(Rho::LpPower, p);
  }
  throw InputError("unknown measure name: " + std::string(name) +
                   " (expected linear|gaussian|huber|cauchy|tukey|lp:<p>)");
}

std::string DissimilarityMeasure::name() const {
  if (rho_ == Rho::LpPower) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "lp:%.12g", p_);
    return buf;
  }
  return rho_name(rho_);
}

double DissimilarityMeasure::base_distance(const Point& a, const Point& b) const {
  if (a.is_node() != b.is_node())
    throw InputError("mismatched point payload kinds in dissimilarity");
  switch (base_) {
    case Base::Euclidean: {
      if (a.is_node())
        throw InputError("node points require a matrix or tree base metric");
      if (a.coords.size() != b.coords.size())
        throw InputError("dimension mismatch in dissimilarity");
      double s = 0.0;
      for (std::size_t i = 0; i < a.coords.size(); ++i) {
        const double d = a.coords[i] - b.coords[i];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case Base::Matrix:
      if (!a.is_node()) throw InputError("matrix base metric requires node points");
      return matrix_->at(a.node, b.node);
    case Base::Tree:
      if (!a.is_node()) throw InputError("tree base metric requires node points");
      return tree_->distance(a.node, b.node);
  }
  return 0.0;
}

DissimilarityMeasure DissimilarityMeasure::rebase_matrix(
    std::shared_ptr<const DistanceMatrix> m) const {
  return with_matrix(std::move(m), rho_, p_);
}

DissimilarityMeasure DissimilarityMeasure::rebase_tree(
    std::shared_ptr<const TreeMetric> t) const {
  return with_tree(std::move(t), rho_, p_);
}

}  // namespace semistream
