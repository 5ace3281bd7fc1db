#include "agc/energy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace agc {

namespace {
constexpr double kGeomTol = 1e-9;   // m
constexpr double kCpuTol = 1e-6;    // relative, CPU capacity sums
}  // namespace

double task_rate(const ScenarioSpec& spec, int ue, int slot, Venue server,
                 const Trajectory& traj) {
  const UeSpec& u = spec.ues[ue];
  LinkGeometry geom;
  geom.server_kind = server;
  if (server == Venue::Uav) {
    geom.horizontal_dist = dist(u.position, traj.serving_pos(slot));
    geom.altitude = spec.uav.altitude;
  } else {
    geom.horizontal_dist = dist(u.position, spec.bs.position);
    geom.altitude = 0.0;
  }
  return link_rate(geom, u.tx_power, spec.physics);
}

double task_energy(const ScenarioSpec& spec, int ue, int slot, Venue venue,
                   const Trajectory& traj) {
  const TaskSpec& t = spec.task(ue, slot);
  if (venue == Venue::Local)
    return local_energy(t, spec.ues[ue].local_cpu_freq, spec.physics.kappa);
  return tx_energy(t, spec.ues[ue].tx_power, task_rate(spec, ue, slot, venue, traj));
}

double total_energy_unchecked(const ScenarioSpec& spec, const OffloadPlan& plan,
                              const Trajectory& traj) {
  double total = 0.0;
  for (int i = 0; i < spec.num_ues(); ++i)
    for (int t = 0; t < spec.num_slots; ++t)
      total += task_energy(spec, i, t, plan.venue[i][t], traj);
  return total;
}

std::vector<double> per_ue_energy(const ScenarioSpec& spec, const OffloadPlan& plan,
                                  const Trajectory& traj) {
  std::vector<double> out(spec.num_ues(), 0.0);
  for (int i = 0; i < spec.num_ues(); ++i)
    for (int t = 0; t < spec.num_slots; ++t)
      out[i] += task_energy(spec, i, t, plan.venue[i][t], traj);
  return out;
}

std::vector<Violation> check_feasible(const ScenarioSpec& spec,
                                      const Placement& placement,
                                      const OffloadPlan& plan,
                                      const Trajectory& traj) {
  std::vector<Violation> out;
  const int n_ue = spec.num_ues();
  const int n_slot = spec.num_slots;

  // C1: storage capacities
  if (placement.used_storage_uav(spec.services) >
      spec.uav.storage_capacity + kGeomTol)
    out.push_back({"C1", -1, -1, "UAV storage capacity exceeded"});
  if (placement.used_storage_bs(spec.services) > spec.bs.storage_capacity + kGeomTol)
    out.push_back({"C1", -1, -1, "BS storage capacity exceeded"});

  // C4: trajectory shape
  if (traj.positions.size() != static_cast<size_t>(n_slot + 1)) {
    out.push_back({"C4", -1, -1, "trajectory length != num_slots + 1"});
    return out;  // slot-indexed checks below would be ill-defined
  }
  if (dist(traj.positions.front(), spec.uav.start_pos) > kGeomTol)
    out.push_back({"C4", -1, 0, "trajectory does not start at start_pos"});
  if (dist(traj.positions.back(), spec.uav.end_pos) > kGeomTol)
    out.push_back({"C4", -1, n_slot, "trajectory does not end at end_pos"});
  for (int t = 0; t < n_slot; ++t) {
    if (dist(traj.positions[t + 1], traj.positions[t]) > spec.uav.max_step + kGeomTol)
      out.push_back({"C4", -1, t, "flight step exceeds max_step"});
  }

  if (plan.venue.size() != static_cast<size_t>(n_ue) ||
      plan.cpu_alloc.size() != static_cast<size_t>(n_ue)) {
    out.push_back({"C2", -1, -1, "plan does not cover every UE"});
    return out;
  }

  for (int t = 0; t < n_slot; ++t) {
    int uav_count = 0, bs_count = 0;
    double uav_cpu = 0.0, bs_cpu = 0.0;
    for (int i = 0; i < n_ue; ++i) {
      const Venue v = plan.venue[i][t];
      if (v == Venue::Local) continue;
      const int svc = spec.task(i, t).required_service;
      if (!placement.placed(svc, v))
        out.push_back({"C5", i, t, std::string("service ") + std::to_string(svc) +
                                       " not placed on " + venue_name(v)});
      if (v == Venue::Uav) {
        ++uav_count;
        uav_cpu += plan.cpu_alloc[i][t];
        if (dist(spec.ues[i].position, traj.serving_pos(t)) >
            spec.uav.coverage_radius + kGeomTol)
          out.push_back({"C3", i, t, "UE outside UAV coverage"});
      } else {
        ++bs_count;
        bs_cpu += plan.cpu_alloc[i][t];
      }
    }
    if (uav_count > spec.uav.max_associated_ues)
      out.push_back({"C2", -1, t, "too many UEs associated with UAV"});
    if (bs_count > spec.bs.max_associated_ues)
      out.push_back({"C2", -1, t, "too many UEs associated with BS"});
    if (uav_cpu > spec.uav.cpu_capacity * (1.0 + kCpuTol))
      out.push_back({"CPU", -1, t, "UAV CPU capacity exceeded"});
    if (bs_cpu > spec.bs.cpu_capacity * (1.0 + kCpuTol))
      out.push_back({"CPU", -1, t, "BS CPU capacity exceeded"});
  }
  return out;
}

double evaluate_energy(const ScenarioSpec& spec, const Placement& placement,
                       const OffloadPlan& plan, const Trajectory& traj) {
  const std::vector<Violation> bad = check_feasible(spec, placement, plan, traj);
  if (!bad.empty()) {
    const Violation& v = bad.front();
    throw std::runtime_error("evaluate_energy: constraint " + v.constraint +
                             " violated (ue=" + std::to_string(v.ue) +
                             ", slot=" + std::to_string(v.slot) + "): " + v.detail);
  }
  return total_energy_unchecked(spec, plan, traj);
}

}  // namespace agc
