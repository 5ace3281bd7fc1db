#ifndef AGC_ORCHESTRATOR_HPP_
#define AGC_ORCHESTRATOR_HPP_

#include <cstdint>

#include "agc/sca.hpp"
#include "agc/types.hpp"

namespace agc {

struct SolveOptions {
  double tol = 1e-3;  // J, stop when the round-over-round decrease drops below
  int max_iters = 10;
  // per-round node budget for the placement search (0 = unlimited / fully
  // exact). On large scenarios the budget caps the round's wall time; the
  // search then returns its best placement, warm-started from the previous
  // round so rounds never regress.
  int64_t bnb_max_nodes = 1000000;
  ScaOptions sca;
};

// Alternating optimization over the three blocks: exact placement +
// offloading (branch and bound), closed-form CPU allocation, SCA trajectory.
// per_iteration_energy records the objective after every full round and is
// non-increasing.
SolutionReport alternating_solve(const ScenarioSpec& spec,
                                 const SolveOptions& opts = {});

// Seeded random-order placement baseline; straight-line trajectory, exact
// offloading given the placement.
SolutionReport baseline_random(const ScenarioSpec& spec, uint64_t seed);

// Smallest-service-first packing baseline.
SolutionReport baseline_greedy(const ScenarioSpec& spec);

// Everything local; the energy upper bound.
SolutionReport baseline_local(const ScenarioSpec& spec);

}  // namespace agc

#endif
