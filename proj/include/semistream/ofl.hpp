#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "semistream/measure.hpp"
#include "semistream/point.hpp"

namespace semistream {

struct OflDecision {
  PointId point = -1;
  double delta = 0.0;  // distance to the nearest open facility (inf if none)
  bool opened = false;
};

// Running state of randomized online facility location. Facilities are
// irrevocable: once opened they are never removed or moved.
struct OflState {
  double facility_cost_param = 0.0;  // f
  std::vector<Point> facilities;
  double connection_cost = 0.0;
  std::vector<OflDecision> decisions;

  double facility_cost() const {
    return facility_cost_param * static_cast<double>(facilities.size());
  }
  double total_cost() const { return facility_cost() + connection_cost; }
};

OflState make_ofl_state(double f, std::vector<Point> initial_facilities = {});

// One arrival: delta(p) is the distance to the nearest open facility
// (infinite when none, so the first arrival always opens). Opens with
// probability min(1, delta/f) -- decided by the supplied uniform u in [0,1)
// -- and otherwise connects at cost delta.
void ofl_step(OflState& state, const Point& p, double u,
              const DissimilarityMeasure& measure);

// Folds ofl_step over the stream, drawing one u per point from the seeded
// generator. Identical (stream, f, seed) gives an identical decision log.
OflState ofl_run(std::span<const Point> stream, double f,
                 const DissimilarityMeasure& measure, std::uint64_t seed,
                 std::vector<Point> initial_facilities = {});

// Connection cost accrued strictly before the first facility the run opened.
double connection_cost_before_first_open(const OflState& state);

}  // namespace semistream
