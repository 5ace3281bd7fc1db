#include "agc/orchestrator.hpp"

#include <chrono>
#include <numeric>
#include <vector>

#include "agc/alloc.hpp"
#include "agc/bnb.hpp"
#include "agc/energy.hpp"
#include "agc/offload.hpp"
#include "agc/rng.hpp"

namespace agc {

namespace {

constexpr uint64_t kStreamRandomPlacement = 100;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

SolutionReport report_for(const ScenarioSpec& spec, const Placement& placement,
                          const OffloadPlan& plan, const Trajectory& traj) {
  SolutionReport rep;
  rep.placement = placement;
  rep.plan = plan;
  rep.trajectory = traj;
  rep.total_energy = evaluate_energy(spec, placement, plan, traj);
  rep.per_iteration_energy = {rep.total_energy};
  rep.per_ue_energy = per_ue_energy(spec, plan, traj);
  return rep;
}

SolutionReport fixed_placement_baseline(const ScenarioSpec& spec,
                                        const Placement& placement) {
  const auto t0 = Clock::now();
  const Trajectory traj = Trajectory::straight_line(spec.uav, spec.num_slots);
  const OffloadPlan plan = solve_offload_given_placement(spec, placement, traj);
  SolutionReport rep = report_for(spec, placement, plan, traj);
  rep.stats.wall_seconds = seconds_since(t0);
  return rep;
}

}  // namespace

SolutionReport alternating_solve(const ScenarioSpec& spec, const SolveOptions& opts) {
  spec.validate();
  const auto t0 = Clock::now();

  Trajectory traj = Trajectory::straight_line(spec.uav, spec.num_slots);
  Placement placement = greedy_placement(spec);
  OffloadPlan plan = solve_offload_given_placement(spec, placement, traj);
  double energy = total_energy_unchecked(spec, plan, traj);

  SolutionReport rep;
  rep.per_iteration_energy.push_back(energy);

  for (int round = 0; round < opts.max_iters; ++round) {
    // block 1+2: exact placement + offloading + closed-form allocation
    BnbOptions bnb;
    bnb.max_nodes = opts.bnb_max_nodes;
    bnb.warm_start = &placement;
    PlacementResult pr = bnb_place(spec, traj, bnb);
    rep.stats.bnb_nodes += pr.nodes_explored;

    // block 3: trajectory under the new plan
    ScaResult sr = sca_optimize(spec, pr.placement, pr.plan, traj, opts.sca);
    rep.stats.sca_iterations += sr.iterations;

    // the moved UAV changes communication times; refresh the offloading and
    // allocation under the new trajectory and keep whichever round is better.
    // The feasibility re-check guards against residual projection error in
    // the moved trajectory leaking into the next round.
    OffloadPlan plan2 = solve_offload_given_placement(spec, pr.placement, sr.traj);
    const double e_moved = total_energy_unchecked(spec, plan2, sr.traj);
    const bool moved_ok = check_feasible(spec, pr.placement, plan2, sr.traj).empty();

    double round_energy;
    placement = pr.placement;
    if (moved_ok && e_moved <= pr.objective + 1e-12) {
      traj = sr.traj;
      plan = std::move(plan2);
      round_energy = e_moved;
    } else {
      plan = pr.plan;
      round_energy = pr.objective;
    }

    const double prev = rep.per_iteration_energy.back();
    rep.per_iteration_energy.push_back(std::min(prev, round_energy));
    if (prev - round_energy < opts.tol) break;
  }

  rep.placement = placement;
  rep.plan = plan;
  rep.trajectory = traj;
  rep.total_energy = evaluate_energy(spec, placement, plan, traj);
  rep.per_iteration_energy.back() = rep.total_energy;
  rep.per_ue_energy = per_ue_energy(spec, plan, traj);
  rep.stats.wall_seconds = seconds_since(t0);
  return rep;
}

SolutionReport baseline_random(const ScenarioSpec& spec, uint64_t seed) {
  const int K = spec.services.num_services();
  std::vector<int> order(K);
  std::iota(order.begin(), order.end(), 0);
  Substream rng(seed, kStreamRandomPlacement);
  for (int k = K - 1; k > 0; --k) std::swap(order[k], order[rng.uniform_int(0, k)]);

  Placement p = Placement::empty(K);
  double rem_u = spec.uav.storage_capacity, rem_b = spec.bs.storage_capacity;
  for (int s : order) {
    const double size = spec.services.sizes[s];
    if (size <= rem_u + 1e-12) {
      p.on_uav[s] = 1;
      rem_u -= size;
    }
    if (size <= rem_b + 1e-12) {
      p.on_bs[s] = 1;
      rem_b -= size;
    }
  }
  return fixed_placement_baseline(spec, p);
}

SolutionReport baseline_greedy(const ScenarioSpec& spec) {
  return fixed_placement_baseline(spec, greedy_placement(spec));
}

SolutionReport baseline_local(const ScenarioSpec& spec) {
  const auto t0 = Clock::now();
  const Trajectory traj = Trajectory::straight_line(spec.uav, spec.num_slots);
  const OffloadPlan plan = OffloadPlan::all_local(spec.num_ues(), spec.num_slots);
  SolutionReport rep =
      report_for(spec, Placement::empty(spec.services.num_services()), plan, traj);
  rep.stats.wall_seconds = seconds_since(t0);
  return rep;
}

}  // namespace agc
