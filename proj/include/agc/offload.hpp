#ifndef AGC_OFFLOAD_HPP_
#define AGC_OFFLOAD_HPP_

#include <cstdint>
#include <vector>

#include "agc/types.hpp"

namespace agc {

// Per-(ue, slot) energies and minimal server frequencies under a fixed
// trajectory. Everything the per-slot assignment kernel needs, precomputed.
struct TaskTables {
  int num_ues = 0;
  int num_slots = 0;
  std::vector<double> e_local;  // [ue * num_slots + slot]
  std::vector<double> e_uav;
  std::vector<double> e_bs;
  std::vector<double> f_uav;  // minimal deadline-meeting frequency, Hz
  std::vector<double> f_bs;
  std::vector<uint8_t> uav_ok;  // coverage and deadline permit the UAV
  std::vector<uint8_t> bs_ok;   // deadline permits the BS
  std::vector<int> service;

  int idx(int ue, int slot) const { return ue * num_slots + slot; }
};

TaskTables build_task_tables(const ScenarioSpec& spec, const Trajectory& traj);

struct ServerCaps {
  int uav_count = 0;
  int bs_count = 0;
  double uav_cpu = 0.0;
  double bs_cpu = 0.0;

  static ServerCaps of(const ScenarioSpec& spec) {
    return {spec.uav.max_associated_ues, spec.bs.max_associated_ues,
            spec.uav.cpu_capacity, spec.bs.cpu_capacity};
  }
};

// Exact single-slot assignment: minimizes slot energy subject to C2/C3/C5
// and CPU capacity, with services restricted to the given placement bitmasks.
struct SlotSolution {
  double saving = 0.0;  // total energy saved vs all-Local
  std::vector<Venue> venue;
  std::vector<double> freq;
};

// cost-only query used by the branch-and-bound scoring loop
double solve_slot_saving(const TaskTables& tables, int slot, uint64_t uav_mask,
                         uint64_t bs_mask, const ServerCaps& caps);

SlotSolution solve_slot(const TaskTables& tables, int slot, uint64_t uav_mask,
                        uint64_t bs_mask, const ServerCaps& caps);

uint64_t placement_mask(const std::vector<uint8_t>& bits);

// Exact per-slot offloading for a fixed placement and trajectory; slots are
// independent, so the kernel runs one OpenMP task per slot.
OffloadPlan solve_offload_given_placement(const ScenarioSpec& spec,
                                          const Placement& placement,
                                          const Trajectory& traj);

// Serial reference of the same kernel, kept for testing and benchmarking.
OffloadPlan solve_offload_reference(const ScenarioSpec& spec,
                                    const Placement& placement,
                                    const Trajectory& traj);

}  // namespace agc

#endif
