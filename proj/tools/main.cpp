// Command-line surface for the streaming clustering toolkit: single binary,
// one subcommand per operation, deterministic output for a fixed seed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "semistream/bench.hpp"
#include "semistream/compress.hpp"
#include "semistream/cost.hpp"
#include "semistream/errors.hpp"
#include "semistream/io.hpp"
#include "semistream/lowerbound.hpp"
#include "semistream/ofl.hpp"
#include "semistream/oracle.hpp"
#include "semistream/rng.hpp"
#include "semistream/stream_kmedian.hpp"
#include "semistream/stream_order.hpp"

namespace ss = semistream;
using nlohmann::json;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

void write_output(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw ss::InputError("cannot write " + output_path);
  out << text;
}

std::vector<std::int64_t> parse_int_list(const std::string& csv) {
  std::vector<std::int64_t> values;
  std::stringstream in(csv);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    values.push_back(std::stoll(token));
  }
  if (values.empty()) throw ss::InputError("empty list: " + csv);
  return values;
}

std::vector<std::string> parse_string_list(const std::string& csv) {
  std::vector<std::string> values;
  std::stringstream in(csv);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (!token.empty()) values.push_back(token);
  }
  if (values.empty()) throw ss::InputError("empty list: " + csv);
  return values;
}

json point_json(const ss::Point& p) {
  json j;
  j["id"] = p.id;
  if (p.is_node())
    j["node"] = p.node;
  else
    j["coords"] = p.coords;
  return j;
}

// Ordering options shared by the subcommands that consume a point stream.
struct OrderOptions {
  std::string order = "random";  // random | identity
  std::string adversary;         // empty | passthrough | delay-set | depth-order
  std::int64_t t = 1;
  std::string delay_targets;  // comma-separated ids; empty draws a random set
  std::string order_file;     // replay a stored trace instead
  std::string trace_out;      // export the applied trace
};

void add_order_flags(CLI::App* cmd, OrderOptions& opts) {
  cmd->add_option("--order", opts.order, "initial order: random|identity")
      ->check(CLI::IsMember({"random", "identity"}));
  cmd->add_option("--adversary", opts.adversary,
                  "buffering adversary: passthrough|delay-set|depth-order")
      ->check(CLI::IsMember({"passthrough", "delay-set", "depth-order"}));
  cmd->add_option("--t", opts.t, "adversary buffer capacity");
  cmd->add_option("--delay-targets", opts.delay_targets,
                  "comma-separated point ids for delay-set");
  cmd->add_option("--order-file", opts.order_file,
                  "JSON trace whose sigma reorders the input");
  cmd->add_option("--trace-out", opts.trace_out, "write the applied trace as JSON");
}

std::int64_t norm_key(const ss::Point& p) {
  if (p.is_node()) return p.node;
  double s = 0.0;
  for (const double c : p.coords) s += c * c;
  return static_cast<std::int64_t>(std::floor(std::sqrt(s) * 16.0));
}

std::vector<ss::Point> arrange_stream(const std::vector<ss::Point>& points,
                                      const OrderOptions& opts, std::uint64_t seed) {
  if (!opts.order_file.empty()) {
    std::ifstream in(opts.order_file);
    if (!in) throw ss::InputError("cannot open " + opts.order_file);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.contains("sigma"))
      throw ss::InputError(opts.order_file + ": expected JSON with a sigma array");
    const std::vector<std::int32_t> sigma = j["sigma"].get<std::vector<std::int32_t>>();
    if (sigma.size() != points.size())
      throw ss::InputError("order file length does not match the input");
    ss::min_bound(sigma);  // validates the bijection
    std::vector<ss::Point> out(points.size());
    for (std::size_t s = 0; s < points.size(); ++s)
      out[static_cast<std::size_t>(sigma[s])] = points[s];
    return out;
  }

  std::vector<ss::Point> stream =
      opts.order == "identity" ? points
                               : ss::shuffle_points(points, ss::derive_seed(seed, 1));
  if (opts.adversary.empty()) return stream;

  std::unique_ptr<ss::AdversaryStrategy> strategy;
  if (opts.adversary == "passthrough") {
    strategy = ss::passthrough_strategy();
  } else if (opts.adversary == "delay-set") {
    std::vector<ss::PointId> targets;
    if (!opts.delay_targets.empty()) {
      for (const std::int64_t v : parse_int_list(opts.delay_targets))
        targets.push_back(static_cast<ss::PointId>(v));
    } else {
      const std::int64_t want = std::min<std::int64_t>(
          opts.t - 1, static_cast<std::int64_t>(stream.size()) / 8);
      if (want > 0) {
        const auto perm = ss::random_shuffle(
            static_cast<std::int64_t>(stream.size()), ss::derive_seed(seed, 2));
        for (std::int64_t i = 0; i < want; ++i)
          targets.push_back(stream[static_cast<std::size_t>(perm[i])].id);
      }
    }
    strategy = ss::delay_set_strategy(std::move(targets));
  } else {
    strategy = ss::delay_sort_strategy(norm_key, 0);
  }

  auto [reordered, trace] =
      ss::apply_adversary(stream, *strategy, static_cast<int>(opts.t));
  if (!opts.trace_out.empty()) {
    json j;
    j["sigma"] = trace.sigma;
    j["hand_high_water"] = trace.hand_high_water;
    write_output(j.dump(2) + "\n", opts.trace_out);
  }
  return std::move(reordered);
}

json order_config_json(const OrderOptions& opts) {
  json j;
  j["order"] = opts.order;
  if (!opts.adversary.empty()) {
    j["adversary"] = opts.adversary;
    j["t"] = opts.t;
    if (!opts.delay_targets.empty()) j["delay_targets"] = opts.delay_targets;
  }
  if (!opts.order_file.empty()) j["order_file"] = opts.order_file;
  return j;
}

// ---- subcommand runners ----------------------------------------------------

int run_ofl(const std::string& input, const std::string& format, double f,
            const std::string& measure_name, std::uint64_t seed,
            const OrderOptions& order, const std::string& sweep,
            const std::string& output) {
  const ss::Dataset data = ss::ingest_points(input, format);
  const ss::DissimilarityMeasure measure = ss::measure_for(data, measure_name);
  const std::vector<ss::Point> stream = arrange_stream(data.points, order, seed);

  json config = order_config_json(order);
  config["command"] = "ofl";
  config["input"] = input;
  config["measure"] = measure.name();
  config["seed"] = seed;

  json out;
  if (sweep.empty()) {
    const ss::OflState state =
        ss::ofl_run(stream, f, measure, ss::derive_seed(seed, 3));
    config["f"] = f;
    out["config"] = config;
    json facilities = json::array();
    for (const ss::Point& p : state.facilities) facilities.push_back(p.id);
    out["facilities"] = facilities;
    out["facility_cost"] = state.facility_cost();
    out["connection_cost"] = state.connection_cost;
    out["total"] = state.total_cost();
  } else {
    // Log-spaced facility-cost sweep; each run is scored against the offline
    // facility-location optimum min_k (k*f + local-search k-median cost).
    const auto parts = parse_string_list(sweep);
    if (parts.size() != 3)
      throw ss::InputError("--f-sweep expects lo,hi,steps");
    const double lo = std::stod(parts[0]);
    const double hi = std::stod(parts[1]);
    const int steps = static_cast<int>(std::stoll(parts[2]));
    if (!(lo > 0.0) || !(hi >= lo) || steps < 1)
      throw ss::InputError("--f-sweep requires 0 < lo <= hi and steps >= 1");
    config["f_sweep"] = sweep;
    out["config"] = config;

    const ss::WeightedPointSet weighted =
        ss::WeightedPointSet::from_points(data.points);
    const int k_max =
        static_cast<int>(std::min<std::size_t>(12, weighted.support_size()));
    std::vector<double> kmedian_cost(static_cast<std::size_t>(k_max) + 1, 0.0);
    for (int k = 1; k <= k_max; ++k)
      kmedian_cost[k] = ss::local_search_kmedian(weighted, k, measure).value;

    json rows = json::array();
    std::vector<double> ratios;
    for (int i = 0; i < steps; ++i) {
      const double f_i =
          steps == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (steps - 1));
      const ss::OflState state =
          ss::ofl_run(stream, f_i, measure, ss::derive_seed(seed, 3));
      double opt = std::numeric_limits<double>::infinity();
      for (int k = 1; k <= k_max; ++k) opt = std::min(opt, k * f_i + kmedian_cost[k]);
      const double ratio = state.total_cost() / opt;
      ratios.push_back(ratio);
      json row;
      row["f"] = f_i;
      row["facilities"] = state.facilities.size();
      row["facility_cost"] = state.facility_cost();
      row["connection_cost"] = state.connection_cost;
      row["total"] = state.total_cost();
      row["ratio"] = ratio;
      rows.push_back(row);
    }
    out["sweep"] = rows;
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    out["best_ratio"] = sorted.front();
    out["median_ratio"] = sorted[sorted.size() / 2];
  }
  write_output(out.dump(2) + "\n", output);
  return 0;
}

int run_compress(const std::string& input, const std::string& format, int k,
                 const std::string& measure_name, const std::string& output) {
  const ss::Dataset data = ss::ingest_points(input, format);
  const ss::DissimilarityMeasure measure = ss::measure_for(data, measure_name);
  const ss::WeightedPointSet a = ss::WeightedPointSet::from_points(data.points);

  ss::CompressResult result;
  if (static_cast<std::size_t>(k) >= a.support_size()) {
    result.z = a;
    result.lambda = 0.0;
  } else {
    const ss::NearestNeighborMap map = ss::nearest_neighbor_map(a, measure);
    result = ss::compress_b(a, k, map, measure);
  }

  std::ostringstream out;
  for (std::size_t i = 0; i < result.z.support_size(); ++i) {
    const ss::Point& p = result.z.point(i);
    if (p.is_node()) {
      out << p.node;
    } else {
      for (std::size_t d = 0; d < p.coords.size(); ++d) {
        if (d) out << ',';
        out << ss::format_double(p.coords[d]);
      }
    }
    out << ',' << result.z.weight(i) << "\n";
  }
  out << "# lambda " << ss::format_double(result.lambda) << "\n";
  write_output(out.str(), output);
  return 0;
}

int run_cluster(const std::string& input, const std::string& format, int k, int m,
                const std::string& measure_name, double delta, std::uint64_t seed,
                const OrderOptions& order, const std::string& output) {
  const ss::Dataset data = ss::ingest_points(input, format);
  const ss::DissimilarityMeasure measure = ss::measure_for(data, measure_name);
  const std::vector<ss::Point> stream = arrange_stream(data.points, order, seed);

  const int m_param = m > 0 ? m : ss::m_for(k, order.t);
  const auto reports = ss::cluster_amplified_all(stream, m_param, measure, delta,
                                                 ss::derive_seed(seed, 3));

  // Keep the cheapest extracted solution across instances.
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<ss::Point> best_centers;
  const ss::ClusterRunReport* best_report = &reports.front();
  for (const auto& report : reports) {
    const std::vector<ss::Point> centers = ss::extract_centers(report.psi, k, measure);
    const double c = ss::cost(data.points, centers, measure).value;
    if (c < best_cost) {
      best_cost = c;
      best_centers = centers;
      best_report = &report;
    }
  }

  json config = order_config_json(order);
  config["command"] = "cluster";
  config["input"] = input;
  config["measure"] = measure.name();
  config["k"] = k;
  config["m"] = m_param;
  config["delta"] = delta;
  config["seed"] = seed;

  json out;
  out["config"] = config;
  json centers = json::array();
  for (const ss::Point& p : best_centers) centers.push_back(point_json(p));
  out["centers"] = centers;
  out["cost"] = best_cost;
  out["L_final"] = best_report->L_final;
  out["max_support"] = best_report->max_support;
  out["epochs"] = best_report->epochs;
  out["instances"] = reports.size();
  write_output(out.dump(2) + "\n", output);
  return 0;
}

int run_lowerbound(const std::string& t_list, int z, std::int64_t n, double f,
                   int trials, std::uint64_t seed, const std::string& output) {
  const auto ts = parse_int_list(t_list);
  const auto rows = ss::run_lowerbound_experiment(ts, z, n, f, trials, seed, true);
  std::ostringstream echo;
  echo << "command=lowerbound t_list=" << t_list << " z=" << z << " n=" << n
       << " f=" << ss::format_double(f) << " trials=" << trials << " seed=" << seed;
  write_output(ss::lowerbound_rows_to_csv(rows, echo.str()), output);
  return 0;
}

int run_bench_ratio(const std::string& t_list, int z, std::int64_t n, double f,
                    int trials, std::uint64_t seed, const std::string& output) {
  ss::RatioBenchConfig config;
  config.t_list = parse_int_list(t_list);
  config.z = z;
  config.n = n;
  config.f = f;
  config.trials = trials;
  config.seed = seed;
  const auto rows = ss::bench_ratio_vs_t(config);
  std::ostringstream echo;
  echo << "command=bench-ratio t_list=" << t_list << " z=" << z << " n=" << n
       << " f=" << ss::format_double(f) << " trials=" << trials << " seed=" << seed;
  write_output(ss::ratio_rows_to_csv(rows, echo.str()), output);
  return 0;
}

int run_bench_cluster(const std::string& t_list, const std::string& strategies,
                      int trials, int k, int m, std::int64_t n, int clusters,
                      double separation, int dim, const std::string& measure,
                      std::uint64_t seed, int jobs, bool no_ratio,
                      const std::string& output) {
  ss::ClusterBenchConfig config;
  config.t_list = parse_int_list(t_list);
  config.strategies = parse_string_list(strategies);
  config.trials_per_cell = trials;
  config.k = k;
  config.m_override = m;
  config.mixture.n = n;
  config.mixture.clusters = clusters;
  config.mixture.separation_sigma = separation;
  config.mixture.dim = dim;
  config.measure = measure;
  config.seed = seed;
  config.jobs = jobs;
  config.with_ratio = !no_ratio;
  const auto rows = ss::bench_cluster_quality(config);
  std::ostringstream echo;
  echo << "command=bench-cluster t_list=" << t_list << " strategies=" << strategies
       << " trials=" << trials << " k=" << k << " m=" << m << " n=" << n
       << " clusters=" << clusters << " sep=" << ss::format_double(separation)
       << " dim=" << dim << " measure=" << measure << " seed=" << seed
       << " ratio=" << (no_ratio ? 0 : 1);
  write_output(ss::cluster_rows_to_csv(rows, echo.str()), output);
  return 0;
}

int run_check_order(const std::string& input, const std::string& perm,
                    const std::string& output) {
  std::vector<std::int32_t> sigma;
  if (!perm.empty()) {
    for (const std::int64_t v : parse_int_list(perm))
      sigma.push_back(static_cast<std::int32_t>(v));
  } else {
    std::ifstream in(input);
    if (!in) throw ss::InputError("cannot open " + input);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ss::InputError(input + ": invalid JSON");
    if (j.is_array())
      sigma = j.get<std::vector<std::int32_t>>();
    else if (j.contains("sigma"))
      sigma = j["sigma"].get<std::vector<std::int32_t>>();
    else
      throw ss::InputError(input + ": expected a JSON array or a trace with sigma");
  }
  json out;
  out["n"] = sigma.size();
  out["min_bound"] = ss::min_bound(sigma);
  write_output(out.dump(2) + "\n", output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streaming clustering toolkit: online facility location, "
               "buffer-bounded adversaries, and sketch-based k-median"};
  app.require_subcommand(1);

  std::string input, format = "csv", measure = "linear", output;
  std::uint64_t seed = 0;
  OrderOptions order;

  // ofl
  auto* ofl = app.add_subcommand("ofl", "online facility location over a stream");
  double f = 1.0;
  std::string f_sweep;
  ofl->add_option("--input", input, "points file")->required();
  ofl->add_option("--format", format, "csv|matrix");
  ofl->add_option("--f", f, "facility cost");
  ofl->add_option("--measure", measure, "dissimilarity name");
  ofl->add_option("--seed", seed, "RNG seed")->envname("SEMISTREAM_SEED");
  ofl->add_option("--f-sweep", f_sweep, "lo,hi,steps log-spaced facility costs");
  ofl->add_option("--output", output, "write here instead of stdout");
  add_order_flags(ofl, order);

  // compress
  auto* comp = app.add_subcommand("compress", "halve a weighted set's support");
  int k = 1;
  comp->add_option("--input", input, "points file")->required();
  comp->add_option("--format", format, "csv|matrix");
  comp->add_option("--k", k, "budget parameter")->required();
  comp->add_option("--measure", measure, "dissimilarity name");
  comp->add_option("--output", output, "write here instead of stdout");

  // cluster
  auto* clus = app.add_subcommand("cluster", "streaming k-median sketch + centers");
  int m = 0;
  double delta = 0.5;
  clus->add_option("--input", input, "points file")->required();
  clus->add_option("--format", format, "csv|matrix");
  clus->add_option("--k", k, "number of centers")->required();
  clus->add_option("--m", m, "sketch size parameter (default k*(4+ceil(log2 t)))");
  clus->add_option("--measure", measure, "dissimilarity name");
  clus->add_option("--delta", delta, "failure budget in (0,1)");
  clus->add_option("--seed", seed, "RNG seed")->envname("SEMISTREAM_SEED");
  clus->add_option("--output", output, "write here instead of stdout");
  add_order_flags(clus, order);

  // lowerbound
  auto* lb = app.add_subcommand("lowerbound", "hard-instance ratio experiment");
  std::string t_list = "4,16,256";
  int z = 64;
  std::int64_t n = 0;
  int trials = 100;
  lb->add_option("--t-list", t_list, "comma-separated t values");
  lb->add_option("--z", z, "tree branching factor");
  lb->add_option("--n", n, "demands per instance (raised to t)");
  lb->add_option("--f", f, "facility cost");
  lb->add_option("--trials", trials, "trials per t");
  lb->add_option("--seed", seed, "RNG seed")->envname("SEMISTREAM_SEED");
  lb->add_option("--output", output, "write here instead of stdout");

  // bench-ratio
  auto* br = app.add_subcommand("bench-ratio",
                                "hard-instance ratios plus a random-order control");
  br->add_option("--t-list", t_list, "comma-separated t values");
  br->add_option("--z", z, "tree branching factor");
  br->add_option("--n", n, "demands per instance (raised to t)");
  br->add_option("--f", f, "facility cost");
  br->add_option("--trials", trials, "trials per t");
  br->add_option("--seed", seed, "RNG seed")->envname("SEMISTREAM_SEED");
  br->add_option("--output", output, "write here instead of stdout");

  // bench-cluster
  auto* bc = app.add_subcommand("bench-cluster",
                                "sketch quality sweep over t and adversaries");
  std::string strategies = "passthrough,delay-set,depth-order";
  int clusters = 4, dim = 1, jobs = 1;
  double separation = 10.0;
  bool no_ratio = false;
  bc->add_option("--t-list", t_list, "comma-separated t values");
  bc->add_option("--strategies", strategies, "comma-separated adversary names");
  bc->add_option("--trials", trials, "trials per (t, strategy) cell");
  bc->add_option("--k", k, "number of centers");
  bc->add_option("--m", m, "sketch size override (0: derive from k and t)");
  bc->add_option("--n", n, "points per trial");
  bc->add_option("--clusters", clusters, "mixture component count");
  bc->add_option("--sep", separation, "component separation in sigmas");
  bc->add_option("--dim", dim, "coordinate dimension");
  bc->add_option("--measure", measure, "dissimilarity name");
  bc->add_option("--seed", seed, "RNG seed")->envname("SEMISTREAM_SEED");
  bc->add_option("--jobs", jobs, "concurrent trials");
  bc->add_flag("--no-ratio", no_ratio, "skip the offline oracle ratio");
  bc->add_option("--output", output, "write here instead of stdout");

  // check-order
  auto* co = app.add_subcommand("check-order", "buffer bound of a permutation");
  std::string perm;
  co->add_option("--input", input, "trace JSON or bare permutation array");
  co->add_option("--perm", perm, "inline comma-separated permutation");
  co->add_option("--output", output, "write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Timer timer;
  int rc = 0;
  try {
    if (app.got_subcommand(ofl)) {
      rc = run_ofl(input, format, f, measure, seed, order, f_sweep, output);
    } else if (app.got_subcommand(comp)) {
      rc = run_compress(input, format, k, measure, output);
    } else if (app.got_subcommand(clus)) {
      rc = run_cluster(input, format, k, m, measure, delta, seed, order, output);
    } else if (app.got_subcommand(lb)) {
      rc = run_lowerbound(t_list, z, n <= 0 ? 4 : n, f, trials, seed, output);
    } else if (app.got_subcommand(br)) {
      rc = run_bench_ratio(t_list, z, n <= 0 ? 4 : n, f, trials, seed, output);
    } else if (app.got_subcommand(bc)) {
      rc = run_bench_cluster(t_list, strategies, trials, k, m, n <= 0 ? 2000 : n,
                             clusters, separation, dim, measure, seed, jobs,
                             no_ratio, output);
    } else if (app.got_subcommand(co)) {
      if (input.empty() && perm.empty())
        throw ss::InputError("check-order needs --input or --perm");
      rc = run_check_order(input, perm, output);
    }
  } catch (const ss::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ss::InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "elapsed " << ss::format_double(timer.seconds()) << "s\n";
  return rc;
}
