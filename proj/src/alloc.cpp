#include "agc/alloc.hpp"

#include "agc/energy.hpp"

namespace agc {

AllocationResult allocate_cpu(const ScenarioSpec& spec, const Placement& placement,
                              const OffloadPlan& plan_venues, const Trajectory& traj) {
  (void)placement;  // venues are assumed C5-feasible; placement not needed here
  AllocationResult out;
  out.plan = plan_venues;
  const int n_ue = spec.num_ues();

  for (int t = 0; t < spec.num_slots; ++t) {
    double load[2] = {0.0, 0.0};  // UAV, BS
    std::vector<std::pair<int, int>> slot_pairs[2];
    for (int i = 0; i < n_ue; ++i) {
      const Venue v = plan_venues.venue[i][t];
      out.plan.cpu_alloc[i][t] = 0.0;
      if (v == Venue::Local) continue;
      const TaskSpec& task = spec.task(i, t);
      const double tc = comm_time(task, task_rate(spec, i, t, v, traj));
      if (tc >= spec.slot_len) {
        out.infeasible.emplace_back(i, t);
        continue;
      }
      const double f = task.cpu_cycles / (spec.slot_len - tc);
      out.plan.cpu_alloc[i][t] = f;
      const int s = v == Venue::Uav ? 0 : 1;
      load[s] += f;
      slot_pairs[s].emplace_back(i, t);
    }
    const double caps[2] = {spec.uav.cpu_capacity, spec.bs.cpu_capacity};
    for (int s = 0; s < 2; ++s) {
      if (load[s] > caps[s] * (1.0 + 1e-12)) {
        for (auto& p : slot_pairs[s]) {
          out.plan.cpu_alloc[p.first][p.second] = 0.0;
          out.infeasible.push_back(p);
        }
      }
    }
  }
  return out;
}

}  // namespace agc
