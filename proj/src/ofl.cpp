#include "semistream/ofl.hpp"

#include <limits>

#include "semistream/errors.hpp"
#include "semistream/rng.hpp"

namespace semistream {

OflState make_ofl_state(double f, std::vector<Point> initial_facilities) {
  if (!(f > 0.0)) throw InputError("ofl: facility cost must be positive");
  OflState state;
  state.facility_cost_param = f;
  state.facilities = std::move(initial_facilities);
  return state;
}

void ofl_step(OflState& state, const Point& p, double u,
              const DissimilarityMeasure& measure) {
  const double f = state.facility_cost_param;
  if (!(f > 0.0)) throw InputError("ofl: facility cost must be positive");

  double delta = std::numeric_limits<double>::infinity();
  for (const Point& q : state.facilities) {
    const double d = measure(p, q);
    if (d < delta) delta = d;
  }

  const double open_probability = delta >= f ? 1.0 : delta / f;
  const bool open = u < open_probability;
  if (open) {
    state.facilities.push_back(p);
  } else {
    state.connection_cost += delta;
  }
  state.decisions.push_back({p.id, delta, open});
}

OflState ofl_run(std::span<const Point> stream, double f,
                 const DissimilarityMeasure& measure, std::uint64_t seed,
                 std::vector<Point> initial_facilities) {
  if (stream.empty()) throw InputError("ofl: stream must be nonempty");
  OflState state = make_ofl_state(f, std::move(initial_facilities));
  state.decisions.reserve(stream.size());
  SplitMix64 rng(seed);
  for (const Point& p : stream) ofl_step(state, p, rng.next_unit(), measure);
  return state;
}

double connection_cost_before_first_open(const OflState& state) {
  double cost = 0.0;
  for (const OflDecision& d : state.decisions) {
    if (d.opened) break;
    cost += d.delta;
  }
  return cost;
}

}  // namespace semistream
