#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "agc/energy.hpp"
#include "agc/offload.hpp"
#include "agc/rng.hpp"
#include "agc/scenario.hpp"
#include "test_util.hpp"

using namespace agc;
using agc::test::TinyBuilder;
using agc::test::enumerate_slot;

TEST_CASE("empty placement forces all-Local") {
  TinyBuilder b(3);
  b.add_ue({50.0, 50.0}).add_ue({120.0, 80.0});
  const Trajectory traj = Trajectory::straight_line(b.spec.uav, 3);
  const Placement empty = Placement::empty(1);
  const OffloadPlan plan = solve_offload_given_placement(b.spec, empty, traj);
  for (int i = 0; i < 2; ++i)
    for (int t = 0; t < 3; ++t) CHECK(plan.venue[i][t] == Venue::Local);
}

TEST_CASE("a single profitable BS offload is taken") {
  TinyBuilder b;
  b.add_ue({100.0, 90.0}, 1e9, 8e5);  // local 1 J, BS cheap nearby
  Placement p = Placement::empty(1);
  p.on_bs[0] = 1;
  const Trajectory traj = Trajectory::straight_line(b.spec.uav, 1);
  const OffloadPlan plan = solve_offload_given_placement(b.spec, p, traj);
  CHECK(plan.venue[0][0] == Venue::Bs);
  CHECK(task_energy(b.spec, 0, 0, Venue::Bs, traj) <
        task_energy(b.spec, 0, 0, Venue::Local, traj));
}

TEST_CASE("UAV cap 1 picks the UE with the largest saving") {
  TinyBuilder b;
  b.spec.uav.start_pos = {100.0, 100.0};
  b.spec.uav.end_pos = {100.0, 100.0};
  b.spec.uav.max_associated_ues = 1;
  b.spec.bs.storage_capacity = 0.0;  // BS unusable: only Local vs UAV
  b.spec.bs.position = {0.0, 0.0};
  b.add_ue({100.0, 100.0}, 9e8, 1e6)
      .add_ue({110.0, 100.0}, 5e8, 1e6)
      .add_ue({90.0, 95.0}, 2e8, 1e6);
  Placement p = Placement::empty(1);
  p.on_uav[0] = 1;
  const Trajectory traj = Trajectory::straight_line(b.spec.uav, 1);
  const OffloadPlan plan = solve_offload_given_placement(b.spec, p, traj);
  const auto oracle = enumerate_slot(b.spec, p, traj, 0);
  CHECK(total_energy_unchecked(b.spec, plan, traj) ==
        doctest::Approx(oracle.energy).epsilon(1e-12));
  for (int i = 0; i < 3; ++i) CHECK(plan.venue[i][0] == oracle.venue[i]);
}

TEST_CASE("exhaustive single-slot oracle on 100 seeded instances") {
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    Substream rng(seed, 17);
    const int n = rng.uniform_int(1, 4);
    TinyBuilder b(1, 2);
    b.spec.uav.start_pos = {rng.uniform(0.0, 200.0), rng.uniform(0.0, 200.0)};
    b.spec.uav.end_pos = b.spec.uav.start_pos;
    b.spec.uav.cpu_capacity = rng.uniform(2e9, 10e9);
    b.spec.uav.max_associated_ues = rng.uniform_int(1, 3);
    b.spec.bs.max_associated_ues = rng.uniform_int(1, 3);
    b.spec.bs.cpu_capacity = rng.uniform(2e9, 10e9);
    for (int i = 0; i < n; ++i)
      b.add_ue({rng.uniform(0.0, 200.0), rng.uniform(0.0, 200.0)},
               rng.uniform(1e8, 1e9), rng.uniform(8e5, 8e6), rng.uniform_int(0, 1));
    Placement p = Placement::empty(2);
    p.on_uav[0] = static_cast<uint8_t>(rng.uniform_int(0, 1));
    p.on_uav[1] = static_cast<uint8_t>(rng.uniform_int(0, 1));
    p.on_bs[0] = static_cast<uint8_t>(rng.uniform_int(0, 1));
    p.on_bs[1] = 1;
    const Trajectory traj = Trajectory::straight_line(b.spec.uav, 1);
    const OffloadPlan plan = solve_offload_given_placement(b.spec, p, traj);
    const auto oracle = enumerate_slot(b.spec, p, traj, 0);
    CHECK(total_energy_unchecked(b.spec, plan, traj) ==
          doctest::Approx(oracle.energy).epsilon(1e-12));
    CHECK(check_feasible(b.spec, p, plan, traj).empty());
  }
}

TEST_CASE("parallel kernel matches the serial reference bit-for-bit") {
  GeneratorParams params;
  params.seed = 4;
  const ScenarioSpec spec = generate(params);
  const Trajectory traj = Trajectory::straight_line(spec.uav, spec.num_slots);
  Placement p = Placement::empty(spec.services.num_services());
  double used = 0.0;
  for (int k = 0; k < spec.services.num_services(); ++k) {
    p.on_bs[k] = 1;
    if (used + spec.services.sizes[k] <= spec.uav.storage_capacity) {
      p.on_uav[k] = 1;
      used += spec.services.sizes[k];
    }
  }
  const OffloadPlan a = solve_offload_given_placement(spec, p, traj);
  const OffloadPlan b = solve_offload_reference(spec, p, traj);
  for (int i = 0; i < spec.num_ues(); ++i)
    for (int t = 0; t < spec.num_slots; ++t) {
      CHECK(a.venue[i][t] == b.venue[i][t]);
      CHECK(a.cpu_alloc[i][t] == b.cpu_alloc[i][t]);
    }
}

TEST_CASE("placement_mask round-trips bits") {
  std::vector<uint8_t> bits = {1, 0, 1, 1, 0};
  CHECK(placement_mask(bits) == 0b01101ull);
  CHECK(placement_mask(std::vector<uint8_t>(64, 0)) == 0ull);
  CHECK_THROWS(placement_mask(std::vector<uint8_t>(65, 0)));
}

TEST_CASE("solve_slot_saving agrees with the tracked variant") {
  GeneratorParams params;
  params.seed = 12;
  params.num_slots = 10;
  const ScenarioSpec spec = generate(params);
  const Trajectory traj = Trajectory::straight_line(spec.uav, spec.num_slots);
  const TaskTables tables = build_task_tables(spec, traj);
  const ServerCaps caps = ServerCaps::of(spec);
  const uint64_t full = (1ull << spec.services.num_services()) - 1;
  for (int t = 0; t < spec.num_slots; ++t) {
    const double s = solve_slot_saving(tables, t, full, full, caps);
    const SlotSolution sol = solve_slot(tables, t, full, full, caps);
    CHECK(s == doctest::Approx(sol.saving).epsilon(1e-12));
    CHECK(s >= 0.0);
  }
}
