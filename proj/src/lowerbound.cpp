#include "semistream/lowerbound.hpp"

#include <cmath>
#include <string>

#include "semistream/errors.hpp"
#include "semistream/ofl.hpp"
#include "semistream/rng.hpp"
#include "semistream/stream_order.hpp"

namespace semistream {

namespace {

int derive_m(std::int64_t t) {
  const double lg = std::log2(static_cast<double>(t));
  return static_cast<int>(std::ceil(lg / std::log2(lg)));
}

}  // namespace

TreeInstance build_tree_instance(std::int64_t t, int z, std::int64_t n, double f,
                                 std::uint64_t seed) {
  if (t < 4) throw InputError("tree instance: t must be >= 4");
  if (z < 2) throw InputError("tree instance: z must be >= 2");
  if (n < t) throw InputError("tree instance: n must be >= t");
  if (!(f > 0.0)) throw InputError("tree instance: f must be positive");

  TreeInstance inst;
  inst.t = t;
  inst.z = z;
  inst.n = n;
  inst.f = f;
  inst.m = derive_m(t);
  inst.h = inst.m - 1;
  inst.edge_scale = f / inst.h;

  // Off-root demand count must stay below t so the depth-order adversary can
  // always buffer everything off-root.
  std::int64_t off_root = 0;
  std::int64_t power = 1;
  for (int i = 1; i <= inst.h; ++i) {
    power *= inst.m;
    off_root += power;
  }
  if (off_root >= t)
    throw InvariantError("tree instance: off-root demand count " +
                         std::to_string(off_root) + " not below t = " +
                         std::to_string(t));

  SplitMix64 rng(seed);
  inst.hidden.resize(inst.h);
  for (int i = 0; i < inst.h; ++i)
    inst.hidden[i] = static_cast<std::int32_t>(rng.next_below(z)) + 1;

  inst.metric = std::make_shared<TreeMetric>(z, inst.m, inst.h, inst.edge_scale);
  inst.path_nodes.resize(inst.h + 1);
  std::vector<std::int32_t> path;
  inst.path_nodes[0] = inst.metric->intern(path);  // root
  for (int i = 1; i <= inst.h; ++i) {
    path.push_back(inst.hidden[i - 1]);
    inst.path_nodes[i] = inst.metric->intern(path);
  }

  inst.demands.reserve(n);
  PointId id = 0;
  power = 1;
  for (int i = 1; i <= inst.h; ++i) {
    power *= inst.m;
    for (std::int64_t c = 0; c < power; ++c)
      inst.demands.push_back(make_node_point(id++, inst.path_nodes[i]));
  }
  for (std::int64_t c = off_root; c < n; ++c)
    inst.demands.push_back(make_node_point(id++, inst.path_nodes[0]));
  return inst;
}

double opt_certificate(const TreeInstance& inst) {
  double value = 2.0 * inst.f;  // two facilities
  std::int64_t power = 1;
  const std::int32_t deepest = inst.path_nodes[inst.h];
  for (int i = 1; i <= inst.h; ++i) {
    power *= inst.m;
    value += static_cast<double>(power) *
             inst.metric->distance(inst.path_nodes[i], deepest);
  }
  if (!(value < 3.0 * inst.f))
    throw InvariantError("tree instance: reference solution cost reached 3f");
  return value;
}

std::int64_t demand_depth_key(const TreeInstance& inst, const Point& p) {
  return inst.metric->depth(p.node);
}

std::vector<LowerboundRow> run_lowerbound_experiment(
    std::span<const std::int64_t> t_values, int z, std::int64_t n, double f,
    int trials, std::uint64_t seed, bool adversarial) {
  if (trials < 1) throw InputError("lowerbound experiment: trials must be >= 1");
  std::vector<LowerboundRow> rows;
  rows.reserve(t_values.size());

  for (std::size_t ti = 0; ti < t_values.size(); ++ti) {
    const std::int64_t t = t_values[ti];
    const std::int64_t n_t = std::max(n, t);
    double sum = 0.0, sum_sq = 0.0;
    LowerboundRow row;
    row.t = t;
    row.trials = trials;

    for (int trial = 0; trial < trials; ++trial) {
      const std::uint64_t trial_seed = derive_seed(seed, ti * 1000003ull + trial);
      TreeInstance inst =
          build_tree_instance(t, z, n_t, f, derive_seed(trial_seed, 0));
      row.m = inst.m;
      row.h = inst.h;
      row.opt = opt_certificate(inst);

      std::vector<Point> stream =
          shuffle_points(inst.demands, derive_seed(trial_seed, 1));
      if (adversarial) {
        auto strategy = delay_sort_strategy(
            [&inst](const Point& p) { return demand_depth_key(inst, p); }, 0);
        auto [reordered, trace] =
            apply_adversary(stream, *strategy, static_cast<int>(t));
        stream = std::move(reordered);
      }

      const DissimilarityMeasure measure =
          DissimilarityMeasure::with_tree(inst.metric, Rho::Linear);
      const OflState state =
          ofl_run(stream, f, measure, derive_seed(trial_seed, 2));
      const double ratio = state.total_cost() / row.opt;
      sum += ratio;
      sum_sq += ratio * ratio;
    }

    row.mean_ratio = sum / trials;
    const double var =
        trials > 1 ? (sum_sq - sum * sum / trials) / (trials - 1) : 0.0;
    row.stderr_ratio = trials > 1 ? std::sqrt(std::max(0.0, var) / trials) : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace semistream
