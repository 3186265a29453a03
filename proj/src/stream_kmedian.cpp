#include "semistream/stream_kmedian.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "semistream/cost.hpp"
#include "semistream/errors.hpp"
#include "semistream/oracle.hpp"
#include "semistream/rng.hpp"
#include "semistream/stream_order.hpp"

namespace semistream {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Working state for one pass. Entries only append within an epoch, so the
// indices held by the pending queue stay valid until the next compression
// call rebuilds everything.
class Sketch {
 public:
  Sketch(int m_param, const DissimilarityMeasure& measure,
         const ClusterStreamOptions& options)
      : m_(m_param), cap_(29 * m_param), measure_(measure), options_(options) {}

  void run(std::span<const Point> stream, std::uint64_t seed, ClusterRunReport& out) {
    SplitMix64 rng(seed);
    std::size_t pos = 0;
    const std::size_t n = stream.size();

    // Initial fill: the first 29m stream elements, duplicates merging at
    // zero distance.
    while (pos < n && static_cast<std::int64_t>(pos) < static_cast<std::int64_t>(cap_)) {
      process(stream[pos++], /*in_fill=*/true, 0.0);
    }
    // Streams shorter than 29m never reach a compression call.
    out.degenerate_short_stream = n < static_cast<std::size_t>(cap_);

    while (pos < n) {
      compress_epoch();
      while (support() < static_cast<std::size_t>(cap_) && cost_guard()) {
        if (pos >= n) break;  // mid-epoch exhaustion: keep psi as-is
        process(stream[pos++], /*in_fill=*/false, rng.next_unit());
      }
      if (pos >= n) break;
    }

    finalize(out);
  }

 private:
  struct Entry {
    Point pt;
    std::int64_t w = 1;
    std::int32_t nn = -1;  // index of nearest indexed entry
    double nn_dist = kInf;
    bool indexed = false;
  };

  std::size_t support() const { return entries_.size(); }

  bool cost_guard() const { return L_ == 0.0 ? true : epoch_cost_ < 14.0 * L_; }

  double dist(const Point& a, const Point& b) {
    ++evals_;
    return measure_(a, b);
  }

  void process(const Point& p, bool in_fill, double u) {
    const std::int64_t evals_before = evals_;
    ++points_seen_;

    // Nearest entry by linear scan; first minimum wins, and storage order is
    // id order, so ties resolve to the smallest id.
    double d_min = kInf;
    std::int32_t y = -1;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const double d = dist(p, entries_[i].pt);
      if (d < d_min) {
        d_min = d;
        y = static_cast<std::int32_t>(i);
      }
    }

    bool open;
    if (entries_.empty()) {
      open = true;
    } else if (in_fill) {
      open = d_min > 0.0;  // duplicates merge at zero cost during the fill
    } else {
      // A zero distance never opens (u*L < 0 is impossible), which also
      // settles the L = 0 duplicate case.
      open = u * L_ < static_cast<double>(m_) * d_min;
    }

    if (open) {
      Entry e;
      e.pt = p;
      entries_.push_back(std::move(e));
      pending_.push_back(static_cast<std::int32_t>(entries_.size() - 1));
    } else {
      entries_[y].w += 1;
      epoch_cost_ += d_min;
      constructive_ += d_min;
    }

    // Amortized neighbor maintenance: fold up to three queued insertions
    // into the indexed prefix per arrival.
    if (!options_.batch_pi) {
      for (int r = 0; r < 3 && !pending_.empty(); ++r) index_one();
    }

    max_support_ = std::max(max_support_, static_cast<int>(support()));
    max_point_evals_ = std::max(max_point_evals_, evals_ - evals_before);
    if (options_.check_invariants) check_arrival_invariants();
  }

  void index_one() {
    const std::int32_t q = pending_.front();
    pending_.pop_front();
    Entry& eq = entries_[q];
    for (std::size_t j = 0; j < entries_.size(); ++j) {
      if (!entries_[j].indexed) continue;
      Entry& ej = entries_[j];
      const double d = dist(eq.pt, ej.pt);
      if (d < eq.nn_dist ||
          (d == eq.nn_dist && eq.nn >= 0 && ej.pt.id > entries_[eq.nn].pt.id)) {
        eq.nn_dist = d;
        eq.nn = static_cast<std::int32_t>(j);
      }
      if (d < ej.nn_dist ||
          (d == ej.nn_dist && ej.nn >= 0 && eq.pt.id > entries_[ej.nn].pt.id)) {
        ej.nn_dist = d;
        ej.nn = static_cast<std::int32_t>(q);
      }
    }
    eq.indexed = true;
  }

  void compress_epoch() {
    const std::size_t n = support();
    if (n > static_cast<std::size_t>(m_)) {
      if (options_.check_invariants && n > static_cast<std::size_t>(cap_))
        throw InvariantError("sketch entered compression above the 29m bound");

      WeightedPointSet a;
      NearestNeighborMap map;
      if (options_.batch_pi) {
        for (const Entry& e : entries_) a.add(e.pt, e.w);
        map = nearest_neighbor_map(a, measure_);
        eval_credit_ +=
            static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
      } else {
        // Drain any stragglers; the arrival schedule covers everything in
        // normal operation, so a nonempty queue here is a bug.
        if (!pending_.empty())
          throw InvariantError("neighbor map incomplete at compression time");
        for (const Entry& e : entries_) a.add(e.pt, e.w);
        map.target.reserve(n);
        map.dist.reserve(n);
        for (const Entry& e : entries_) {
          map.target.push_back(e.nn);
          map.dist.push_back(e.nn_dist);
        }
      }

      CompressResult res = compress_b(a, m_, map, measure_);
      if (options_.check_invariants &&
          res.z.support_size() > static_cast<std::size_t>(15 * m_))
        throw InvariantError("compression left more than 15m points");

      entries_.clear();
      pending_.clear();
      for (std::size_t i = 0; i < res.z.support_size(); ++i) {
        Entry e;
        e.pt = res.z.point(i);
        e.w = res.z.weight(i);
        entries_.push_back(std::move(e));
        pending_.push_back(static_cast<std::int32_t>(i));
      }
      lambda_last_ = res.lambda;
      constructive_ += res.lambda;
    } else {
      lambda_last_ = 0.0;
    }

    const double next_l = std::max(10.0 * L_, lambda_last_ / 3.0);
    if (options_.check_invariants && next_l < L_)
      throw InvariantError("threshold L decreased across an epoch");
    L_ = next_l;
    epoch_cost_ = 0.0;
    ++epochs_;
    history_.push_back({lambda_last_, L_});
    if (options_.check_invariants) check_ledger();
  }

  void check_arrival_invariants() {
    if (support() > static_cast<std::size_t>(cap_))
      throw InvariantError("sketch support exceeded the 29m space bound");
    std::int64_t w = 0;
    if (points_seen_ % 64 == 0 || support() <= 2) {
      for (const Entry& e : entries_) w += e.w;
      if (w != points_seen_)
        throw InvariantError("sketch weight does not match points seen");
    }
    check_ledger();
  }

  void check_ledger() {
    if (L_ == 0.0) {
      if (constructive_ != 0.0)
        throw InvariantError("movement ledger nonzero while the threshold is zero");
    } else if (!(constructive_ < 20.0 * L_)) {
      throw InvariantError("movement ledger reached 20L");
    }
  }

  void finalize(ClusterRunReport& out) {
    for (const Entry& e : entries_) out.psi.add(e.pt, e.w);
    out.L_final = L_;
    out.max_support = max_support_;
    out.epochs = epochs_;
    out.history = std::move(history_);
    out.points_seen = points_seen_;
    out.eval_count = evals_ + eval_credit_;
    out.max_evals_per_point = max_point_evals_;
    out.constructive_cost = constructive_;
  }

  int m_;
  int cap_;
  const DissimilarityMeasure& measure_;
  const ClusterStreamOptions& options_;

  std::vector<Entry> entries_;
  std::deque<std::int32_t> pending_;

  double L_ = 0.0;
  double epoch_cost_ = 0.0;
  double constructive_ = 0.0;
  double lambda_last_ = 0.0;
  int epochs_ = 0;
  int max_support_ = 0;
  std::int64_t points_seen_ = 0;
  std::int64_t evals_ = 0;
  std::int64_t eval_credit_ = 0;  // batch-mode rebuild work, kept out of per-point stats
  std::int64_t max_point_evals_ = 0;
  std::vector<EpochRecord> history_;
};

}  // namespace

ClusterRunReport cluster_stream(std::span<const Point> stream, int m_param,
                                const DissimilarityMeasure& measure,
                                std::uint64_t seed,
                                const ClusterStreamOptions& options) {
  if (m_param < 1) throw InputError("cluster_stream: m must be >= 1");
  if (stream.empty()) throw InputError("cluster_stream: stream must be nonempty");
  ClusterRunReport report;
  Sketch sketch(m_param, measure, options);
  sketch.run(stream, seed, report);
  return report;
}

std::vector<ClusterRunReport> cluster_amplified_all(
    std::span<const Point> stream, int m_param, const DissimilarityMeasure& measure,
    double delta, std::uint64_t seed, const ClusterStreamOptions& options) {
  if (!(delta > 0.0 && delta < 1.0))
    throw InputError("cluster_amplified: delta must lie in (0, 1)");
  const int instances =
      std::max(1, static_cast<int>(std::ceil(std::log2(1.0 / delta))));
  std::vector<ClusterRunReport> reports;
  reports.reserve(instances);
  for (int i = 0; i < instances; ++i)
    reports.push_back(
        cluster_stream(stream, m_param, measure, derive_seed(seed, i), options));
  return reports;
}

ClusterRunReport cluster_amplified(std::span<const Point> stream, int m_param,
                                   const DissimilarityMeasure& measure, double delta,
                                   std::uint64_t seed,
                                   const ClusterStreamOptions& options) {
  auto reports = cluster_amplified_all(stream, m_param, measure, delta, seed, options);
  std::size_t best = 0;
  for (std::size_t i = 1; i < reports.size(); ++i)
    if (reports[i].L_final < reports[best].L_final) best = i;
  return std::move(reports[best]);
}

std::vector<Point> extract_centers(const WeightedPointSet& psi, int k,
                                   const DissimilarityMeasure& measure) {
  if (k < 1) throw InputError("extract_centers: k must be >= 1");
  if (static_cast<std::size_t>(k) >= psi.support_size()) return psi.points();
  return local_search_kmedian(psi, k, measure).centers;
}

RamClusterResult cluster_ram(std::span<const Point> points, int k,
                             const DissimilarityMeasure& measure, double delta,
                             std::uint64_t seed) {
  if (k < 1) throw InputError("cluster_ram: k must be >= 1");
  if (points.size() < static_cast<std::size_t>(k))
    throw InputError("cluster_ram: fewer points than requested centers");

  const std::vector<Point> shuffled = shuffle_points(points, derive_seed(seed, 0));
  const auto reports = cluster_amplified_all(shuffled, 4 * k, measure, delta,
                                             derive_seed(seed, 1));
  RamClusterResult best;
  best.cost = kInf;
  for (const ClusterRunReport& report : reports) {
    const std::vector<Point> centers = extract_centers(report.psi, k, measure);
    const double c = cost(points, centers, measure).value;
    if (c < best.cost) {
      best.cost = c;
      best.centers = centers;
    }
  }
  return best;
}

int m_for(int k, std::int64_t t) {
  if (k < 1) throw InputError("m_for: k must be >= 1");
  if (t < 1) throw InputError("m_for: t must be >= 1");
  int log_ceil = 0;
  while ((std::int64_t{1} << log_ceil) < t) ++log_ceil;
  return k * (4 + log_ceil);
}

}  // namespace semistream
