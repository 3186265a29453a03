#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semistream/lowerbound.hpp"
#include "semistream/measure.hpp"
#include "semistream/point.hpp"

namespace semistream {

// Equal-size Gaussian clusters on a line of pitch separation_sigma * sigma,
// replicated across dim coordinates when dim > 1.
struct MixtureSpec {
  int clusters = 4;
  double separation_sigma = 10.0;
  double sigma = 1.0;
  int dim = 1;
  std::int64_t n = 5000;
};

std::vector<Point> gaussian_mixture(const MixtureSpec& spec, std::uint64_t seed,
                                    std::vector<std::vector<double>>* means_out = nullptr);

struct RatioBenchConfig {
  std::vector<std::int64_t> t_list;
  int z = 64;
  std::int64_t n = 0;  // raised to t per row
  double f = 1.0;
  int trials = 500;
  std::uint64_t seed = 0;
};

struct RatioBenchRow {
  LowerboundRow adversarial;
  LowerboundRow random_order;  // passthrough control on the same family
};

std::vector<RatioBenchRow> bench_ratio_vs_t(const RatioBenchConfig& config);

struct ClusterBenchConfig {
  std::vector<std::int64_t> t_list;
  std::vector<std::string> strategies;  // passthrough | delay-set | depth-order
  int trials_per_cell = 10;
  int k = 4;
  MixtureSpec mixture;
  std::string measure = "linear";
  std::uint64_t seed = 0;
  int m_override = 0;  // 0: m = k * (4 + ceil(log2 t))
  int jobs = 1;
  bool with_ratio = true;  // divide by the offline local-search cost
};

struct ClusterBenchRow {
  std::int64_t t = 0;
  std::string strategy;
  int trial = 0;
  std::int64_t n = 0;
  int k = 0;
  int m_param = 0;
  double ratio = 0.0;
  int max_support = 0;
  int support_bound = 0;  // 29m
  std::int64_t max_evals_per_point = 0;
  int epochs = 0;
  double l_final = 0.0;
};

std::vector<ClusterBenchRow> bench_cluster_quality(const ClusterBenchConfig& config);

std::string ratio_rows_to_csv(const std::vector<RatioBenchRow>& rows,
                              const std::string& config_echo);
std::string lowerbound_rows_to_csv(const std::vector<LowerboundRow>& rows,
                                   const std::string& config_echo);
std::string cluster_rows_to_csv(const std::vector<ClusterBenchRow>& rows,
                                const std::string& config_echo);

}  // namespace semistream
