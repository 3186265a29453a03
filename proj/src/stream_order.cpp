#include "semistream/stream_order.hpp"

#include <algorithm>
#include <string>

#include "semistream/errors.hpp"
#include "semistream/rng.hpp"

namespace semistream {

std::vector<std::int32_t> random_shuffle(std::int64_t n, std::uint64_t seed) {
  if (n < 1) throw InputError("random_shuffle: n must be >= 1");
  std::vector<std::int32_t> perm(n);
  for (std::int64_t i = 0; i < n; ++i) perm[i] = static_cast<std::int32_t>(i);
  SplitMix64 rng(seed);
  for (std::int64_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

std::vector<Point> permute_stream(std::span<const Point> stream,
                                  std::span<const std::int32_t> perm) {
  if (stream.size() != perm.size())
    throw InputError("permute_stream: permutation length mismatch");
  std::vector<Point> out;
  out.reserve(stream.size());
  for (const std::int32_t s : perm) {
    if (s < 0 || static_cast<std::size_t>(s) >= stream.size())
      throw InputError("permute_stream: index out of range");
    out.push_back(stream[s]);
  }
  return out;
}

std::vector<Point> shuffle_points(std::span<const Point> stream, std::uint64_t seed) {
  return permute_stream(stream, random_shuffle(static_cast<std::int64_t>(stream.size()), seed));
}

int min_bound(std::span<const std::int32_t> sigma) {
  const std::size_t n = sigma.size();
  if (n == 0) throw InputError("min_bound: empty permutation");
  std::vector<char> seen(n, 0);
  for (const std::int32_t v : sigma) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || seen[v])
      throw InputError("min_bound: input is not a permutation of 0.." +
                       std::to_string(n - 1));
    seen[v] = 1;
  }
  // For each arrival s in order, count earlier arrivals emitted later.
  std::vector<int> tree(n + 1, 0);
  const auto add = [&](std::size_t i) {
    for (++i; i <= n; i += i & (0 - i)) ++tree[i];
  };
  const auto prefix = [&](std::size_t i) {  // count of values <= i
    int s = 0;
    for (++i; i > 0; i -= i & (0 - i)) s += tree[i];
    return s;
  };
  int worst = 0;
  for (std::size_t s = 0; s < n; ++s) {
    const int later = static_cast<int>(s) - prefix(static_cast<std::size_t>(sigma[s]));
    worst = std::max(worst, later);
    add(static_cast<std::size_t>(sigma[s]));
  }
  return worst + 1;
}

namespace {

class Passthrough final : public AdversaryStrategy {
 public:
  std::optional<std::size_t> select_emit(std::span<const std::int32_t> hand,
                                         std::span<const Point>, bool, bool) override {
    if (hand.empty()) return std::nullopt;
    return 0;
  }
  const char* name() const override { return "passthrough"; }
};

class DelaySet final : public AdversaryStrategy {
 public:
  explicit DelaySet(std::vector<PointId> targets) : targets_(std::move(targets)) {
    std::sort(targets_.begin(), targets_.end());
  }

  std::optional<std::size_t> select_emit(std::span<const std::int32_t> hand,
                                         std::span<const Point> stream, bool,
                                         bool forced) override {
    for (std::size_t i = 0; i < hand.size(); ++i)
      if (!is_target(stream[hand[i]])) return i;
    if (forced && !hand.empty()) return 0;  // oldest held target
    return std::nullopt;
  }
  const char* name() const override { return "delay-set"; }

 private:
  bool is_target(const Point& p) const {
    return std::binary_search(targets_.begin(), targets_.end(), p.id);
  }
  std::vector<PointId> targets_;
};

class DelaySort final : public AdversaryStrategy {
 public:
  DelaySort(std::function<std::int64_t(const Point&)> key, std::int64_t min_key)
      : key_(std::move(key)), min_key_(min_key) {}

  std::optional<std::size_t> select_emit(std::span<const std::int32_t> hand,
                                         std::span<const Point> stream, bool,
                                         bool forced) override {
    if (hand.empty()) return std::nullopt;
    std::size_t best = 0;
    std::int64_t best_key = key_(stream[hand[0]]);
    for (std::size_t i = 1; i < hand.size(); ++i) {
      const std::int64_t k = key_(stream[hand[i]]);
      if (k < best_key) {  // strict: stable within equal keys (oldest first)
        best = i;
        best_key = k;
      }
    }
    if (best_key <= min_key_ || forced) return best;
    return std::nullopt;
  }
  const char* name() const override { return "depth-order"; }

 private:
  std::function<std::int64_t(const Point&)> key_;
  std::int64_t min_key_;
};

class Custom final : public AdversaryStrategy {
 public:
  Custom(std::function<std::optional<std::size_t>(std::span<const std::int32_t>,
                                                  std::span<const Point>, bool, bool)>
             select,
         const char* name)
      : select_(std::move(select)), name_(name) {}

  std::optional<std::size_t> select_emit(std::span<const std::int32_t> hand,
                                         std::span<const Point> stream, bool deck_empty,
                                         bool forced) override {
    return select_(hand, stream, deck_empty, forced);
  }
  const char* name() const override { return name_; }

 private:
  std::function<std::optional<std::size_t>(std::span<const std::int32_t>,
                                           std::span<const Point>, bool, bool)>
      select_;
  const char* name_;
};

}  // namespace

std::unique_ptr<AdversaryStrategy> passthrough_strategy() {
  return std::make_unique<Passthrough>();
}

std::unique_ptr<AdversaryStrategy> delay_set_strategy(std::vector<PointId> target_ids) {
  return std::make_unique<DelaySet>(std::move(target_ids));
}

std::unique_ptr<AdversaryStrategy> delay_sort_strategy(
    std::function<std::int64_t(const Point&)> key, std::int64_t min_key) {
  return std::make_unique<DelaySort>(std::move(key), min_key);
}

std::unique_ptr<AdversaryStrategy> custom_strategy(
    std::function<std::optional<std::size_t>(std::span<const std::int32_t>,
                                             std::span<const Point>, bool, bool)>
        select,
    const char* name) {
  return std::make_unique<Custom>(std::move(select), name);
}

std::pair<std::vector<Point>, AdversaryTrace> apply_adversary(
    std::span<const Point> stream, AdversaryStrategy& strategy, int t,
    bool record_steps) {
  if (t < 1) throw InputError("apply_adversary: capacity t must be >= 1");
  const std::size_t n = stream.size();

  std::vector<std::int32_t> hand;  // arrival indices, draw order
  hand.reserve(static_cast<std::size_t>(t));
  AdversaryTrace trace;
  trace.sigma.assign(n, -1);

  std::size_t next_draw = 0;
  std::size_t emitted = 0;
  std::vector<Point> out;
  out.reserve(n);

  while (emitted < n) {
    const bool deck_empty = next_draw >= n;
    const bool hand_full = hand.size() >= static_cast<std::size_t>(t);
    const bool forced = deck_empty || hand_full;

    std::optional<std::size_t> choice =
        strategy.select_emit({hand.data(), hand.size()}, stream, deck_empty, forced);

    if (!choice.has_value()) {
      if (forced)
        throw InputError(std::string("adversary protocol violation at step ") +
                         std::to_string(emitted + next_draw) + ": strategy '" +
                         strategy.name() + "' holds " + std::to_string(hand.size()) +
                         " elements and refuses to emit with capacity " +
                         std::to_string(t));
      // Draw.
      hand.push_back(static_cast<std::int32_t>(next_draw++));
      trace.hand_high_water =
          std::max(trace.hand_high_water, static_cast<int>(hand.size()));
      if (record_steps) trace.steps.emplace_back(hand.back(), -1);
      continue;
    }

    const std::size_t pick = *choice;
    if (pick >= hand.size())
      throw InputError("adversary strategy selected an element outside its hand");
    const std::int32_t arrival = hand[pick];
    hand.erase(hand.begin() + static_cast<std::ptrdiff_t>(pick));
    trace.sigma[arrival] = static_cast<std::int32_t>(emitted);
    out.push_back(stream[arrival]);
    if (record_steps) trace.steps.emplace_back(-1, arrival);
    ++emitted;
  }

  return {std::move(out), std::move(trace)};
}

}  // namespace semistream
