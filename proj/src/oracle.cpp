#include "semistream/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "semistream/errors.hpp"

namespace semistream {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::size_t> indices_by_id(const WeightedPointSet& a) {
  std::vector<std::size_t> idx(a.support_size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    return a.point(x).id < a.point(y).id;
  });
  return idx;
}

}  // namespace

KMedianSolution opt_bar_exact(const WeightedPointSet& demands, int k,
                              const DissimilarityMeasure& measure, int max_support) {
  const int n = static_cast<int>(demands.support_size());
  if (k < 1) throw InputError("opt_bar_exact: k must be >= 1");
  if (k > n) throw InputError("opt_bar_exact: k exceeds the number of distinct points");
  if (n > max_support)
    throw InputError("opt_bar_exact: support of " + std::to_string(n) +
                     " exceeds the brute-force cap of " + std::to_string(max_support) +
                     "; use local_search_kmedian");

  const auto by_id = indices_by_id(demands);

  // All pairwise dissimilarities once; subsets then evaluate by lookup.
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = measure(demands.point(by_id[i]), demands.point(by_id[j]));
      d[static_cast<std::size_t>(i) * n + j] = v;
      d[static_cast<std::size_t>(j) * n + i] = v;
    }

  std::vector<int> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<int> best_pick;
  double best = kInf;

  for (;;) {
    double value = 0.0;
    for (int a = 0; a < n; ++a) {
      double nearest = kInf;
      for (int c : pick) nearest = std::min(nearest, d[static_cast<std::size_t>(a) * n + c]);
      value += static_cast<double>(demands.weight(by_id[a])) * nearest;
      if (value >= best) break;
    }
    if (value < best) {
      best = value;
      best_pick = pick;
    }
    // Advance the combination odometer (lexicographic order).
    int pos = k - 1;
    while (pos >= 0 && pick[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++pick[pos];
    for (int q = pos + 1; q < k; ++q) pick[q] = pick[q - 1] + 1;
  }

  KMedianSolution sol;
  sol.value = best;
  for (int c : best_pick) sol.centers.push_back(demands.point(by_id[c]));
  return sol;
}

KMedianSolution local_search_kmedian(const WeightedPointSet& demands, int k,
                                     const DissimilarityMeasure& measure,
                                     int max_rounds) {
  const int n = static_cast<int>(demands.support_size());
  if (k < 1) throw InputError("local_search_kmedian: k must be >= 1");
  if (k > n)
    throw InputError("local_search_kmedian: k exceeds the number of distinct points");

  const auto point = [&](int i) -> const Point& { return demands.point(i); };
  const auto w = [&](int i) { return static_cast<double>(demands.weight(i)); };

  // Greedy farthest-point start anchored at the minimum-id point.
  std::vector<int> centers;
  {
    int first = 0;
    for (int i = 1; i < n; ++i)
      if (point(i).id < point(first).id) first = i;
    centers.push_back(first);
    std::vector<double> dist(n, kInf);
    for (int round = 1; round < k; ++round) {
      for (int i = 0; i < n; ++i)
        dist[i] = std::min(dist[i], measure(point(i), point(centers.back())));
      int far = -1;
      for (int i = 0; i < n; ++i) {
        if (dist[i] == 0.0) continue;
        if (far < 0 || dist[i] > dist[far] ||
            (dist[i] == dist[far] && point(i).id < point(far).id))
          far = i;
      }
      if (far < 0) break;  // fewer distinct locations than k cannot happen here
      centers.push_back(far);
    }
  }

  std::vector<bool> is_center(n, false);
  for (int c : centers) is_center[c] = true;

  std::vector<double> d1(n), d2(n);
  std::vector<int> nn(n);
  const int kk = static_cast<int>(centers.size());

  const auto recompute = [&]() {
    double value = 0.0;
    for (int i = 0; i < n; ++i) {
      double b1 = kInf, b2 = kInf;
      int bi = -1;
      for (int c = 0; c < kk; ++c) {
        const double dd = measure(point(i), point(centers[c]));
        if (dd < b1) {
          b2 = b1;
          b1 = dd;
          bi = c;
        } else if (dd < b2) {
          b2 = dd;
        }
      }
      d1[i] = b1;
      d2[i] = b2;
      nn[i] = bi;
      value += w(i) * b1;
    }
    return value;
  };

  double value = recompute();
  std::vector<double> corr(kk);

  for (int round = 0; round < max_rounds; ++round) {
    double best_delta = 0.0;
    int best_in = -1, best_out = -1;
    for (int x = 0; x < n; ++x) {
      if (is_center[x]) continue;
      double base = 0.0;
      std::fill(corr.begin(), corr.end(), 0.0);
      for (int a = 0; a < n; ++a) {
        const double dax = measure(point(a), point(x));
        base += w(a) * (std::min(dax, d1[a]) - d1[a]);
        corr[nn[a]] += w(a) * (std::min(dax, d2[a]) - std::min(dax, d1[a]));
      }
      for (int c = 0; c < kk; ++c) {
        const double delta = base + corr[c];
        if (delta < best_delta) {
          best_delta = delta;
          best_in = x;
          best_out = c;
        }
      }
    }
    if (best_in < 0 || -best_delta <= value * 1e-12) break;
    is_center[centers[best_out]] = false;
    is_center[best_in] = true;
    centers[best_out] = best_in;
    value = recompute();
  }

  KMedianSolution sol;
  sol.value = value;
  std::sort(centers.begin(), centers.end(),
            [&](int a, int b) { return point(a).id < point(b).id; });
  for (int c : centers) sol.centers.push_back(point(c));
  return sol;
}

}  // namespace semistream
