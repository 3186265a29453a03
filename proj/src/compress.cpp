#include "semistream/compress.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "semistream/errors.hpp"

namespace semistream {

NearestNeighborMap nearest_neighbor_map(const WeightedPointSet& a,
                                        const DissimilarityMeasure& measure) {
  const std::size_t n = a.support_size();
  if (n < 2) throw InputError("nearest_neighbor_map: need at least 2 distinct points");
  NearestNeighborMap map;
  map.target.assign(n, -1);
  map.dist.assign(n, std::numeric_limits<double>::infinity());
  const auto better = [&](double d, std::int32_t cand, double best_d, std::int32_t best) {
    if (d < best_d) return true;
    if (d > best_d) return false;
    return a.point(cand).id > a.point(best).id;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = measure(a.point(i), a.point(j));
      const auto ii = static_cast<std::int32_t>(i);
      const auto jj = static_cast<std::int32_t>(j);
      if (map.target[i] < 0 || better(d, jj, map.dist[i], map.target[i])) {
        map.target[i] = jj;
        map.dist[i] = d;
      }
      if (map.target[j] < 0 || better(d, ii, map.dist[j], map.target[j])) {
        map.target[j] = ii;
        map.dist[j] = d;
      }
    }
  }
  return map;
}

std::vector<std::uint8_t> bitree_two_color(const WeightedPointSet& a,
                                           const NearestNeighborMap& map) {
  const std::size_t n = map.target.size();
  std::vector<std::vector<std::int32_t>> children(n);
  for (std::size_t i = 0; i < n; ++i)
    children[map.target[i]].push_back(static_cast<std::int32_t>(i));

  constexpr std::uint8_t kUncolored = 0xFF;
  std::vector<std::uint8_t> color(n, kUncolored);
  std::vector<std::int32_t> queue;

  for (std::size_t start = 0; start < n; ++start) {
    if (color[start] != kUncolored) continue;
    // Walk parent pointers to the mutual pair at the top of this component.
    std::int32_t u = static_cast<std::int32_t>(start);
    std::int32_t v = map.target[u];
    std::size_t steps = 0;
    while (map.target[v] != u) {
      u = v;
      v = map.target[u];
      if (++steps > n)
        throw InvariantError(
            "nearest-neighbor graph has a cycle longer than 2; tie rule broken");
    }
    const std::int32_t r0 = a.point(u).id < a.point(v).id ? u : v;
    const std::int32_t r1 = r0 == u ? v : u;
    color[r0] = 0;
    color[r1] = 1;
    queue.clear();
    queue.push_back(r0);
    queue.push_back(r1);
    while (!queue.empty()) {
      const std::int32_t x = queue.back();
      queue.pop_back();
      for (const std::int32_t c : children[x]) {
        if (color[c] != kUncolored) continue;
        color[c] = static_cast<std::uint8_t>(1 - color[x]);
        queue.push_back(c);
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i)
    if (color[i] == color[map.target[i]])
      throw InvariantError("two-coloring of the nearest-neighbor graph is not proper");
  return color;
}

CompressResult compress_b(const WeightedPointSet& a, int k,
                          const NearestNeighborMap& map,
                          const DissimilarityMeasure& measure) {
  const std::size_t n = a.support_size();
  if (k < 1) throw InputError("compress_b: k must be >= 1");
  if (static_cast<std::size_t>(k) >= n) return {a, 0.0};
  if (map.target.size() != n) throw InputError("compress_b: map does not index the set");
  (void)measure;  // distances were fixed when the map was built

  // Movement cost per entry; the k largest leave coloring consideration.
  std::vector<double> move(n);
  for (std::size_t i = 0; i < n; ++i)
    move[i] = static_cast<double>(a.weight(i)) * map.dist[i];

  std::vector<std::int32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto removal_rank = [&](std::int32_t x, std::int32_t y) {
    if (move[x] != move[y]) return move[x] > move[y];
    return a.point(x).id > a.point(y).id;  // ties: larger id removed first
  };
  std::nth_element(order.begin(), order.begin() + k, order.end(), removal_rank);
  std::vector<std::uint8_t> removed(n, 0);
  for (int i = 0; i < k; ++i) removed[order[i]] = 1;

  const std::vector<std::uint8_t> color = bitree_two_color(a, map);

  std::size_t count[2] = {0, 0};
  for (std::size_t i = 0; i < n; ++i)
    if (!removed[i]) ++count[color[i]];
  // Merge the larger class; on equal sizes merge class 1.
  const std::uint8_t merge_color = count[0] > count[1] ? 0 : 1;

  std::vector<std::int64_t> gain(n, 0);
  std::vector<std::uint8_t> gone(n, 0);
  double lambda = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (removed[i] || color[i] != merge_color) continue;
    gone[i] = 1;
    gain[map.target[i]] += a.weight(i);
    lambda += move[i];
  }

  CompressResult result;
  for (std::size_t i = 0; i < n; ++i) {
    if (gone[i]) continue;
    result.z.add(a.point(i), a.weight(i) + gain[i]);
  }
  result.lambda = lambda;

  if (result.z.support_size() > (n + static_cast<std::size_t>(k)) / 2)
    throw InvariantError("compress_b: output support exceeds floor((n+k)/2)");
  if (result.z.total_weight() != a.total_weight())
    throw InvariantError("compress_b: total weight not preserved");
  return result;
}

}  // namespace semistream
