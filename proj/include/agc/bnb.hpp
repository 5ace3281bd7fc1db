#ifndef AGC_BNB_HPP_
#define AGC_BNB_HPP_

#include <cstdint>
#include <iosfwd>

#include "agc/offload.hpp"
#include "agc/types.hpp"

namespace agc {

// Objective of a placement (bitmask form) under fixed trajectory tables:
// sum of per-slot exact offloading optima. No caching; tests and the brute
// force oracle use this directly.
double score_placement(const TaskTables& tables, const ServerCaps& caps,
                       uint64_t uav_mask, uint64_t bs_mask);

struct PlacementResult {
  Placement placement;
  OffloadPlan plan;
  double objective = 0.0;
  int64_t nodes_explored = 0;
};

struct BnbOptions {
  // optional node/bound trace for debugging
  std::ostream* trace = nullptr;
  // stop expanding after this many explored nodes (0 = unlimited). When the
  // budget is hit the best placement found so far is returned instead of a
  // certified optimum; with no budget the search is exact.
  int64_t max_nodes = 0;
  // optional known-good placement seeded into the incumbent, e.g. the
  // previous alternating round's placement
  const Placement* warm_start = nullptr;
};

// Branch-and-bound over service placement. Branches one service at a time
// (four server combinations); a node is bounded by the tighter of two
// admissible relaxations: every undecided service placed on both servers
// (caps exact, storage ignored) and a per-server fractional knapsack of
// standalone service savings over the remaining storage (storage exact,
// cross-service cap competition ignored). The incumbent starts from the
// better of greedy packing, saving-density packing, and an exchange local
// search. Exact when run without a node budget; ties are broken by the
// lexicographically smallest placement.
PlacementResult bnb_place(const ScenarioSpec& spec, const Trajectory& traj,
                          const BnbOptions& opts = {});

// Exhaustive enumeration oracle; requires num_services * 2 <= 16.
PlacementResult brute_force_place(const ScenarioSpec& spec, const Trajectory& traj);

// Ascending-size packing on each server (the count-maximizing baseline rule,
// also the incumbent initializer for bnb_place).
Placement greedy_placement(const ScenarioSpec& spec);

}  // namespace agc

#endif
