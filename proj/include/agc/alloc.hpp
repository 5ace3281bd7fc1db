#ifndef AGC_ALLOC_HPP_
#define AGC_ALLOC_HPP_

#include <utility>
#include <vector>

#include "agc/types.hpp"

namespace agc {

struct AllocationResult {
  OffloadPlan plan;
  // (ue, slot) pairs that cannot be served: transmission alone eats the slot,
  // or the minimal frequencies of a server-slot overshoot its CPU capacity.
  std::vector<std::pair<int, int>> infeasible;
};

// Closed-form computation-resource allocation for fixed venues. UE energy is
// independent of server frequency, so the energy-optimal allocation is the
// minimum deadline-meeting one: f* = cpu_cycles / (slot_len - comm_time).
// cpu_alloc of infeasible pairs is left at zero; callers decide how to
// reroute them.
AllocationResult allocate_cpu(const ScenarioSpec& spec, const Placement& placement,
                              const OffloadPlan& plan_venues, const Trajectory& traj);

}  // namespace agc

#endif
