#ifndef AGC_ENERGY_HPP_
#define AGC_ENERGY_HPP_

#include <vector>

#include "agc/phys.hpp"
#include "agc/types.hpp"

namespace agc {

// Energy one task costs the UE when executed at the given venue in the given
// slot. Local: kappa*C*f^2. Offloaded: tx_power * input_bits / link rate.
double task_energy(const ScenarioSpec& spec, int ue, int slot, Venue venue,
                   const Trajectory& traj);

// Uplink rate for (ue, slot) toward the given server under the trajectory.
double task_rate(const ScenarioSpec& spec, int ue, int slot, Venue server,
                 const Trajectory& traj);

// Total UE energy of the triple without feasibility checking. Solvers use
// this on intermediate iterates whose cpu_alloc may be stale.
double total_energy_unchecked(const ScenarioSpec& spec, const OffloadPlan& plan,
                              const Trajectory& traj);

std::vector<double> per_ue_energy(const ScenarioSpec& spec, const OffloadPlan& plan,
                                  const Trajectory& traj);

// All Constraint 1..5 and CPU-capacity violations of the triple.
std::vector<Violation> check_feasible(const ScenarioSpec& spec,
                                      const Placement& placement,
                                      const OffloadPlan& plan,
                                      const Trajectory& traj);

// Objective evaluator shared by every solver. Throws std::runtime_error
// naming the first violated constraint if the triple is infeasible.
double evaluate_energy(const ScenarioSpec& spec, const Placement& placement,
                       const OffloadPlan& plan, const Trajectory& traj);

}  // namespace agc

#endif
