#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "semistream/compress.hpp"
#include "semistream/measure.hpp"
#include "semistream/weighted_set.hpp"

namespace semistream {

struct EpochRecord {
  double lambda = 0.0;  // movement cost paid by the compression call
  double L = 0.0;       // threshold right after the update
};

struct ClusterRunReport {
  WeightedPointSet psi;
  double L_final = 0.0;
  int max_support = 0;
  int epochs = 0;  // number of compression calls
  std::vector<EpochRecord> history;
  std::int64_t points_seen = 0;
  std::int64_t eval_count = 0;            // dissimilarity evaluations, total
  std::int64_t max_evals_per_point = 0;   // worst single-arrival work
  double constructive_cost = 0.0;         // accumulated movement ledger
  bool degenerate_short_stream = false;   // stream ended during the initial fill
};

struct ClusterStreamOptions {
  // Full O(|psi|^2) neighbor-map rebuild at each compression call instead of
  // the amortized incremental maintenance; for differential testing.
  bool batch_pi = false;
  // Hard-assert the space bound, weight conservation and the movement-ledger
  // threshold at every arrival.
  bool check_invariants = true;
};

// One pass of the doubling sketch: maintains a weighted set psi of at most
// 29*m distinct points whose nearest-center cost tracks the stream within a
// constant factor. m is the only size parameter; the result is valid for any
// k and adversary strength the caller had in mind as long as m was chosen
// large enough for them.
ClusterRunReport cluster_stream(std::span<const Point> stream, int m_param,
                                const DissimilarityMeasure& measure,
                                std::uint64_t seed,
                                const ClusterStreamOptions& options = {});

// ceil(log2(1/delta)) independent passes over the same stream order with
// derived seeds. `all` returns every report; the plain variant returns the
// one with the smallest final L (ties to the lowest instance index).
std::vector<ClusterRunReport> cluster_amplified_all(
    std::span<const Point> stream, int m_param, const DissimilarityMeasure& measure,
    double delta, std::uint64_t seed, const ClusterStreamOptions& options = {});

ClusterRunReport cluster_amplified(std::span<const Point> stream, int m_param,
                                   const DissimilarityMeasure& measure, double delta,
                                   std::uint64_t seed,
                                   const ClusterStreamOptions& options = {});

// k centers out of the sketch by weighted local search. Asking for more
// centers than the support holds returns the whole support.
std::vector<Point> extract_centers(const WeightedPointSet& psi, int k,
                                   const DissimilarityMeasure& measure);

struct RamClusterResult {
  std::vector<Point> centers;
  double cost = 0.0;  // nearest-center cost over the full input
};

// Batch k-median: shuffle, sketch with m = 4k, amplify, and keep the
// cheapest extracted solution across instances.
RamClusterResult cluster_ram(std::span<const Point> points, int k,
                             const DissimilarityMeasure& measure, double delta,
                             std::uint64_t seed);

// Size parameter matched to k and adversary strength: m = k*(4 + ceil(log2 t)).
int m_for(int k, std::int64_t t);

}  // namespace semistream
