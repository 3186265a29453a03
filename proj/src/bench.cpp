#include "semistream/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <memory>
#include <sstream>
#include <thread>

#include "semistream/cost.hpp"
#include "semistream/errors.hpp"
#include "semistream/io.hpp"
#include "semistream/oracle.hpp"
#include "semistream/rng.hpp"
#include "semistream/stream_kmedian.hpp"
#include "semistream/stream_order.hpp"

namespace semistream {

namespace {

void parallel_for(int jobs, std::size_t count,
                  const std::function<void(std::size_t)>& fn) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  std::atomic<std::size_t> next{0};
  const int width =
      static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(jobs), count));
  workers.reserve(static_cast<std::size_t>(width));
  for (int w = 0; w < width; ++w) {
    workers.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& th : workers) th.join();
}

std::unique_ptr<AdversaryStrategy> strategy_for(const std::string& name,
                                                std::span<const Point> stream,
                                                std::int64_t t, std::uint64_t seed) {
  if (name == "passthrough") return passthrough_strategy();
  if (name == "delay-set") {
    // A random target set smaller than the buffer, so the protocol always
    // has room for one passing element.
    const std::int64_t want =
        std::min<std::int64_t>(t - 1, static_cast<std::int64_t>(stream.size()) / 8);
    std::vector<PointId> targets;
    if (want > 0) {
      const auto perm = random_shuffle(static_cast<std::int64_t>(stream.size()), seed);
      targets.reserve(want);
      for (std::int64_t i = 0; i < want; ++i) targets.push_back(stream[perm[i]].id);
    }
    return delay_set_strategy(std::move(targets));
  }
  if (name == "depth-order") {
    // Coordinate data has no tree depth; bucketed distance from the origin
    // plays the same role of a sort key the adversary chases.
    return delay_sort_strategy(
        [](const Point& p) {
          double s = 0.0;
          for (const double c : p.coords) s += c * c;
          return static_cast<std::int64_t>(std::floor(std::sqrt(s) * 16.0));
        },
        0);
  }
  throw InputError("unknown adversary strategy '" + name +
                   "' (expected passthrough|delay-set|depth-order)");
}

}  // namespace

std::vector<Point> gaussian_mixture(const MixtureSpec& spec, std::uint64_t seed,
                                    std::vector<std::vector<double>>* means_out) {
  if (spec.clusters < 1) throw InputError("mixture: clusters must be >= 1");
  if (spec.n < spec.clusters) throw InputError("mixture: n must be >= clusters");
  if (spec.dim < 1) throw InputError("mixture: dim must be >= 1");

  std::vector<std::vector<double>> means(spec.clusters);
  for (int c = 0; c < spec.clusters; ++c)
    means[c].assign(spec.dim, c * spec.separation_sigma * spec.sigma);
  if (means_out) *means_out = means;

  SplitMix64 rng(seed);
  std::vector<Point> points;
  points.reserve(spec.n);
  for (std::int64_t i = 0; i < spec.n; ++i) {
    const int c = static_cast<int>(i % spec.clusters);
    std::vector<double> x(spec.dim);
    for (int d = 0; d < spec.dim; ++d)
      x[d] = means[c][d] + spec.sigma * rng.next_normal();
    points.push_back(make_coord_point(static_cast<PointId>(i), std::move(x)));
  }
  return points;
}

std::vector<RatioBenchRow> bench_ratio_vs_t(const RatioBenchConfig& config) {
  const auto adversarial = run_lowerbound_experiment(
      config.t_list, config.z, config.n, config.f, config.trials, config.seed, true);
  const auto control = run_lowerbound_experiment(
      config.t_list, config.z, config.n, config.f, config.trials, config.seed, false);
  std::vector<RatioBenchRow> rows(adversarial.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].adversarial = adversarial[i];
    rows[i].random_order = control[i];
  }
  return rows;
}

std::vector<ClusterBenchRow> bench_cluster_quality(const ClusterBenchConfig& config) {
  if (config.trials_per_cell < 1)
    throw InputError("cluster bench: trials must be >= 1");
  const DissimilarityMeasure measure = DissimilarityMeasure::parse(config.measure);

  struct Cell {
    std::int64_t t;
    std::string strategy;
    int trial;
  };
  std::vector<Cell> cells;
  for (const std::int64_t t : config.t_list)
    for (const std::string& s : config.strategies)
      for (int trial = 0; trial < config.trials_per_cell; ++trial)
        cells.push_back({t, s, trial});

  std::vector<ClusterBenchRow> rows(cells.size());
  parallel_for(config.jobs, cells.size(), [&](std::size_t i) {
    const Cell& cell = cells[i];
    const std::uint64_t trial_seed = derive_seed(config.seed, i);

    const std::vector<Point> points =
        gaussian_mixture(config.mixture, derive_seed(trial_seed, 0));
    std::vector<Point> stream = shuffle_points(points, derive_seed(trial_seed, 1));
    auto strategy =
        strategy_for(cell.strategy, stream, cell.t, derive_seed(trial_seed, 2));
    auto [reordered, trace] =
        apply_adversary(stream, *strategy, static_cast<int>(cell.t));
    stream = std::move(reordered);

    const int m = config.m_override > 0 ? config.m_override
                                        : m_for(config.k, cell.t);
    const ClusterRunReport report =
        cluster_stream(stream, m, measure, derive_seed(trial_seed, 3));

    ClusterBenchRow row;
    row.t = cell.t;
    row.strategy = cell.strategy;
    row.trial = cell.trial;
    row.n = config.mixture.n;
    row.k = config.k;
    row.m_param = m;
    row.max_support = report.max_support;
    row.support_bound = 29 * m;
    row.max_evals_per_point = report.max_evals_per_point;
    row.epochs = report.epochs;
    row.l_final = report.L_final;
    if (config.with_ratio) {
      const std::vector<Point> centers = extract_centers(report.psi, config.k, measure);
      const double achieved = cost(points, centers, measure).value;
      const WeightedPointSet weighted = WeightedPointSet::from_points(points);
      const double offline =
          local_search_kmedian(weighted, config.k, measure).value;
      row.ratio = offline > 0.0 ? achieved / offline : (achieved > 0.0 ? HUGE_VAL : 1.0);
    }
    rows[i] = std::move(row);
  });
  return rows;
}

namespace {

void append_lowerbound_row(std::ostringstream& out, const LowerboundRow& r) {
  out << r.t << ',' << r.m << ',' << r.h << ',' << format_double(r.opt) << ','
      << format_double(r.mean_ratio) << ',' << format_double(r.stderr_ratio) << ','
      << r.trials;
}

}  // namespace

std::string lowerbound_rows_to_csv(const std::vector<LowerboundRow>& rows,
                                   const std::string& config_echo) {
  std::ostringstream out;
  out << "# config: " << config_echo << "\n";
  out << "t,m,h,opt,mean_ratio,stderr,trials\n";
  for (const auto& r : rows) {
    append_lowerbound_row(out, r);
    out << "\n";
  }
  return out.str();
}

std::string ratio_rows_to_csv(const std::vector<RatioBenchRow>& rows,
                              const std::string& config_echo) {
  std::ostringstream out;
  out << "# config: " << config_echo << "\n";
  out << "t,m,h,opt,adversarial_mean_ratio,adversarial_stderr,"
         "random_mean_ratio,random_stderr,trials\n";
  for (const auto& r : rows) {
    out << r.adversarial.t << ',' << r.adversarial.m << ',' << r.adversarial.h << ','
        << format_double(r.adversarial.opt) << ','
        << format_double(r.adversarial.mean_ratio) << ','
        << format_double(r.adversarial.stderr_ratio) << ','
        << format_double(r.random_order.mean_ratio) << ','
        << format_double(r.random_order.stderr_ratio) << ',' << r.adversarial.trials
        << "\n";
  }
  return out.str();
}

std::string cluster_rows_to_csv(const std::vector<ClusterBenchRow>& rows,
                                const std::string& config_echo) {
  std::ostringstream out;
  out << "# config: " << config_echo << "\n";
  out << "t,strategy,trial,n,k,m,ratio,max_support,support_bound,"
         "max_evals_per_point,epochs,L_final\n";
  for (const auto& r : rows) {
    out << r.t << ',' << r.strategy << ',' << r.trial << ',' << r.n << ',' << r.k
        << ',' << r.m_param << ',' << format_double(r.ratio) << ',' << r.max_support
        << ',' << r.support_bound << ',' << r.max_evals_per_point << ',' << r.epochs
        << ',' << format_double(r.l_final) << "\n";
  }
  return out.str();
}

}  // namespace semistream
