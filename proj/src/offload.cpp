#include "agc/offload.hpp"

#include <algorithm>
#include <stdexcept>

#include "agc/energy.hpp"
#include "agc/phys.hpp"

namespace agc {

namespace {
constexpr double kCapSlack = 1.0 + 1e-12;

// One UE's offload options inside a slot.
struct Cand {
  int ue = 0;
  double save_uav = 0.0;  // <= 0 means unavailable
  double save_bs = 0.0;
  double f_uav = 0.0;
  double f_bs = 0.0;
  double best = 0.0;
};

struct SlotDfs {
  const std::vector<Cand>& cands;
  const ServerCaps& caps;
  std::vector<double> suffix;  // suffix[i] = sum of best savings from i on
  bool track;

  double best_saving = 0.0;
  std::vector<Venue> cur, best;
  std::vector<double> cur_f, best_f;

  explicit SlotDfs(const std::vector<Cand>& c, const ServerCaps& k, bool t)
      : cands(c), caps(k), track(t) {
    suffix.assign(c.size() + 1, 0.0);
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
      suffix[i] = suffix[i + 1] + c[i].best;
    if (track) {
      cur.assign(c.size(), Venue::Local);
      best.assign(c.size(), Venue::Local);
      cur_f.assign(c.size(), 0.0);
      best_f.assign(c.size(), 0.0);
    }
  }

  void run(size_t i, double acc, int un, int bn, double uf, double bf) {
    if (acc + suffix[i] <= best_saving) return;  // cannot strictly improve
    if (i == cands.size()) {
      best_saving = acc;
      if (track) {
        best = cur;
        best_f = cur_f;
      }
      return;
    }
    const Cand& c = cands[i];
    const bool uav_fits = c.save_uav > 0.0 && un < caps.uav_count &&
                          uf + c.f_uav <= caps.uav_cpu * kCapSlack;
    const bool bs_fits = c.save_bs > 0.0 && bn < caps.bs_count &&
                         bf + c.f_bs <= caps.bs_cpu * kCapSlack;
    // better venue first so the incumbent tightens quickly
    const bool uav_first = c.save_uav >= c.save_bs;
    for (int pass = 0; pass < 2; ++pass) {
      const bool do_uav = (pass == 0) == uav_first;
      if (do_uav && uav_fits) {
        if (track) {
          cur[i] = Venue::Uav;
          cur_f[i] = c.f_uav;
        }
        run(i + 1, acc + c.save_uav, un + 1, bn, uf + c.f_uav, bf);
      } else if (!do_uav && bs_fits) {
        if (track) {
          cur[i] = Venue::Bs;
          cur_f[i] = c.f_bs;
        }
        run(i + 1, acc + c.save_bs, un, bn + 1, uf, bf + c.f_bs);
      }
    }
    if (track) {
      cur[i] = Venue::Local;
      cur_f[i] = 0.0;
    }
    run(i + 1, acc, un, bn, uf, bf);
  }
};

std::vector<Cand> slot_candidates(const TaskTables& tab, int slot, uint64_t uav_mask,
                                  uint64_t bs_mask) {
  std::vector<Cand> cands;
  for (int i = 0; i < tab.num_ues; ++i) {
    const int k = tab.idx(i, slot);
    Cand c;
    c.ue = i;
    if (tab.uav_ok[k] && (uav_mask >> tab.service[k] & 1))
      c.save_uav = tab.e_local[k] - tab.e_uav[k];
    if (tab.bs_ok[k] && (bs_mask >> tab.service[k] & 1))
      c.save_bs = tab.e_local[k] - tab.e_bs[k];
    c.f_uav = tab.f_uav[k];
    c.f_bs = tab.f_bs[k];
    c.best = std::max({0.0, c.save_uav, c.save_bs});
    if (c.best > 0.0) cands.push_back(c);
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Cand& a, const Cand& b) { return a.best > b.best; });
  return cands;
}
}  // namespace

TaskTables build_task_tables(const ScenarioSpec& spec, const Trajectory& traj) {
  TaskTables tab;
  tab.num_ues = spec.num_ues();
  tab.num_slots = spec.num_slots;
  const int n = tab.num_ues * tab.num_slots;
  tab.e_local.resize(n);
  tab.e_uav.resize(n);
  tab.e_bs.resize(n);
  tab.f_uav.resize(n);
  tab.f_bs.resize(n);
  tab.uav_ok.resize(n);
  tab.bs_ok.resize(n);
  tab.service.resize(n);
  for (int i = 0; i < tab.num_ues; ++i) {
    for (int t = 0; t < tab.num_slots; ++t) {
      const int k = tab.idx(i, t);
      const TaskSpec& task = spec.task(i, t);
      tab.service[k] = task.required_service;
      tab.e_local[k] = local_energy(task, spec.ues[i].local_cpu_freq, spec.physics.kappa);

      const double r_uav = task_rate(spec, i, t, Venue::Uav, traj);
      const double tc_uav = comm_time(task, r_uav);
      const bool covered = dist(spec.ues[i].position, traj.serving_pos(t)) <=
                           spec.uav.coverage_radius + 1e-9;
      tab.uav_ok[k] = covered && tc_uav < spec.slot_len;
      tab.e_uav[k] = tx_energy(task, spec.ues[i].tx_power, r_uav);
      tab.f_uav[k] = tab.uav_ok[k] ? task.cpu_cycles / (spec.slot_len - tc_uav) : 0.0;

      const double r_bs = task_rate(spec, i, t, Venue::Bs, traj);
      const double tc_bs = comm_time(task, r_bs);
      tab.bs_ok[k] = tc_bs < spec.slot_len;
      tab.e_bs[k] = tx_energy(task, spec.ues[i].tx_power, r_bs);
      tab.f_bs[k] = tab.bs_ok[k] ? task.cpu_cycles / (spec.slot_len - tc_bs) : 0.0;
    }
  }
  return tab;
}

double solve_slot_saving(const TaskTables& tab, int slot, uint64_t uav_mask,
                         uint64_t bs_mask, const ServerCaps& caps) {
  const std::vector<Cand> cands = slot_candidates(tab, slot, uav_mask, bs_mask);
  if (cands.empty()) return 0.0;
  SlotDfs dfs(cands, caps, /*track=*/false);
  dfs.run(0, 0.0, 0, 0, 0.0, 0.0);
  return dfs.best_saving;
}

SlotSolution solve_slot(const TaskTables& tab, int slot, uint64_t uav_mask,
                        uint64_t bs_mask, const ServerCaps& caps) {
  SlotSolution sol;
  sol.venue.assign(tab.num_ues, Venue::Local);
  sol.freq.assign(tab.num_ues, 0.0);
  const std::vector<Cand> cands = slot_candidates(tab, slot, uav_mask, bs_mask);
  if (cands.empty()) return sol;
  SlotDfs dfs(cands, caps, /*track=*/true);
  dfs.run(0, 0.0, 0, 0, 0.0, 0.0);
  sol.saving = dfs.best_saving;
  for (size_t j = 0; j < cands.size(); ++j) {
    sol.venue[cands[j].ue] = dfs.best[j];
    sol.freq[cands[j].ue] = dfs.best_f[j];
  }
  return sol;
}

uint64_t placement_mask(const std::vector<uint8_t>& bits) {
  if (bits.size() > 64) throw std::invalid_argument("more than 64 services");
  uint64_t m = 0;
  for (size_t k = 0; k < bits.size(); ++k)
    if (bits[k]) m |= uint64_t{1} << k;
  return m;
}

namespace {
OffloadPlan solve_offload_impl(const ScenarioSpec& spec, const Placement& placement,
                               const Trajectory& traj, bool parallel) {
  const TaskTables tab = build_task_tables(spec, traj);
  const ServerCaps caps = ServerCaps::of(spec);
  const uint64_t um = placement_mask(placement.on_uav);
  const uint64_t bm = placement_mask(placement.on_bs);
  OffloadPlan plan = OffloadPlan::all_local(spec.num_ues(), spec.num_slots);

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int t = 0; t < spec.num_slots; ++t) {
    const SlotSolution sol = solve_slot(tab, t, um, bm, caps);
    for (int i = 0; i < spec.num_ues(); ++i) {
      plan.venue[i][t] = sol.venue[i];
      plan.cpu_alloc[i][t] = sol.freq[i];
    }
  }
  return plan;
}
}  // namespace

OffloadPlan solve_offload_given_placement(const ScenarioSpec& spec,
                                          const Placement& placement,
                                          const Trajectory& traj) {
  return solve_offload_impl(spec, placement, traj, true);
}

OffloadPlan solve_offload_reference(const ScenarioSpec& spec,
                                    const Placement& placement,
                                    const Trajectory& traj) {
  return solve_offload_impl(spec, placement, traj, false);
}

}  // namespace agc
