#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "semistream/point.hpp"

namespace semistream {

// Uniform random permutation of {0, ..., n-1} by seeded Fisher-Yates.
// perm[i] gives the source index of the i-th element after shuffling.
std::vector<std::int32_t> random_shuffle(std::int64_t n, std::uint64_t seed);

// Applies a permutation: out[i] = stream[perm[i]].
std::vector<Point> permute_stream(std::span<const Point> stream,
                                  std::span<const std::int32_t> perm);

std::vector<Point> shuffle_points(std::span<const Point> stream, std::uint64_t seed);

// The smallest buffer capacity that could have produced this reordering.
// sigma[s] is the emission position of arrival s; the bound is
// 1 + max over s of |{s' < s : sigma[s'] > sigma[s]}|. Identity gives 1,
// full reversal gives n. Throws InputError if sigma is not a bijection.
int min_bound(std::span<const std::int32_t> sigma);

// Record of one adversary run. sigma maps arrival position to emission
// position; hand_high_water is the largest number of elements simultaneously
// buffered; steps optionally logs (received arrival, emitted arrival) pairs
// with -1 for "no draw this step".
struct AdversaryTrace {
  std::vector<std::int32_t> sigma;
  int hand_high_water = 0;
  std::vector<std::pair<std::int32_t, std::int32_t>> steps;
};

// A buffering strategy. The harness drives the protocol: the strategy sees
// the buffered arrivals and says which to emit, or declines (nullopt) to
// request another draw. Declining when the hand is full or the deck is empty
// is a protocol violation surfaced by the harness.
class AdversaryStrategy {
 public:
  virtual ~AdversaryStrategy() = default;

  // hand holds arrival indices in draw order. forced means the hand is at
  // capacity or the deck is exhausted, so something must be emitted.
  virtual std::optional<std::size_t> select_emit(std::span<const std::int32_t> hand,
                                                 std::span<const Point> stream,
                                                 bool deck_empty, bool forced) = 0;

  virtual const char* name() const = 0;
};

// Emits every element as soon as it is drawn.
std::unique_ptr<AdversaryStrategy> passthrough_strategy();

// Holds the targeted ids for as long as possible; everything else passes
// through in arrival order. Targets drain in arrival order at the end.
std::unique_ptr<AdversaryStrategy> delay_set_strategy(std::vector<PointId> target_ids);

// Emits in non-decreasing key order as far as the buffer allows, stable
// within equal keys. Elements at the globally minimal key pass through
// immediately; everything else is held until forced or the deck is empty.
std::unique_ptr<AdversaryStrategy> delay_sort_strategy(
    std::function<std::int64_t(const Point&)> key, std::int64_t min_key = 0);

// Arbitrary emission logic supplied by the caller.
std::unique_ptr<AdversaryStrategy> custom_strategy(
    std::function<std::optional<std::size_t>(std::span<const std::int32_t>,
                                             std::span<const Point>, bool, bool)>
        select,
    const char* name = "custom");

// Runs the buffering protocol: the adversary draws from the stream in order,
// holds at most t elements, and emits per the strategy. The emitted stream
// and a trace with sigma come back; a strategy that tries to hold more than
// t elements raises InputError naming the failing step.
std::pair<std::vector<Point>, AdversaryTrace> apply_adversary(
    std::span<const Point> stream, AdversaryStrategy& strategy, int t,
    bool record_steps = false);

}  // namespace semistream
