#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "agc/bnb.hpp"
#include "agc/energy.hpp"
#include "agc/rng.hpp"
#include "agc/scenario.hpp"
#include "test_util.hpp"

using namespace agc;
using agc::test::TinyBuilder;

namespace {

ScenarioSpec small_instance(uint64_t seed) {
  GeneratorParams params;
  params.num_ues = 3;
  params.num_services = 4;
  params.num_slots = 10;
  params.uav_storage = 1.5;
  params.seed = seed;
  return generate(params);
}

}  // namespace

TEST_CASE("ample storage places every requested service with a saving") {
  TinyBuilder b(2, 3);
  b.spec.uav.storage_capacity = 100.0;
  b.spec.bs.storage_capacity = 100.0;
  b.add_ue({90.0, 110.0}, 9e8, 1e6, 0).add_ue({120.0, 90.0}, 8e8, 1e6, 1);
  const Trajectory traj = Trajectory::straight_line(b.spec.uav, 2);
  const auto res = bnb_place(b.spec, traj);
  // objective equals the unconstrained best offloading
  Placement full = Placement::empty(3);
  for (int k = 0; k < 3; ++k) full.on_uav[k] = full.on_bs[k] = 1;
  const OffloadPlan best = solve_offload_given_placement(b.spec, full, traj);
  CHECK(res.objective ==
        doctest::Approx(total_energy_unchecked(b.spec, best, traj)).epsilon(1e-12));
  CHECK(check_feasible(b.spec, res.placement, res.plan, traj).empty());
}

TEST_CASE("binding UAV storage chooses the enumerated best service") {
  TinyBuilder b(1, 2);
  b.spec.services.sizes = {0.6, 0.5};
  b.spec.uav.storage_capacity = 1.0;
  b.spec.bs.storage_capacity = 2.0;
  b.spec.uav.start_pos = {100.0, 100.0};
  b.spec.uav.end_pos = {100.0, 100.0};
  b.spec.bs.position = {0.0, 0.0};
  b.add_ue({100.0, 100.0}, 9e8, 1e6, 0).add_ue({105.0, 100.0}, 8e8, 1e6, 1);
  const Trajectory traj = Trajectory::straight_line(b.spec.uav, 1);
  const auto bf = brute_force_place(b.spec, traj);
  const auto res = bnb_place(b.spec, traj);
  CHECK(res.placement.on_uav[0] + res.placement.on_uav[1] <= 1);  // 1.1 > 1.0
  CHECK(res.objective == doctest::Approx(bf.objective).epsilon(1e-12));
  CHECK(res.placement == bf.placement);
}

TEST_CASE("zero storage collapses to all-Local") {
  ScenarioSpec spec = small_instance(2);
  spec.uav.storage_capacity = 0.0;
  spec.bs.storage_capacity = 0.0;
  const Trajectory traj = Trajectory::straight_line(spec.uav, spec.num_slots);
  const auto res = bnb_place(spec, traj);
  double local = 0.0;
  for (int i = 0; i < spec.num_ues(); ++i)
    for (int t = 0; t < spec.num_slots; ++t)
      local += task_energy(spec, i, t, Venue::Local, traj);
  CHECK(res.objective == doctest::Approx(local).epsilon(1e-12));
  for (uint8_t bit : res.placement.on_uav) CHECK(bit == 0);
  for (uint8_t bit : res.placement.on_bs) CHECK(bit == 0);
}

TEST_CASE("bnb equals brute force on 50 seeded small instances") {
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    const ScenarioSpec spec = small_instance(seed);
    const Trajectory traj = Trajectory::straight_line(spec.uav, spec.num_slots);
    const auto bf = brute_force_place(spec, traj);
    const auto bb = bnb_place(spec, traj);
    CHECK(std::abs(bb.objective - bf.objective) <= 1e-9);
    CHECK(bb.placement == bf.placement);  // shared lexicographic tie-break
    CHECK(bb.nodes_explored <= 1 + 4 * 256);  // never worse than enumeration
    CHECK(check_feasible(spec, bb.placement, bb.plan, traj).empty());
  }
}

TEST_CASE("storage monotonicity of the optimum") {
  for (uint64_t seed : {3ull, 7ull, 13ull}) {
    GeneratorParams params;
    params.num_ues = 3;
    params.num_services = 4;
    params.num_slots = 10;
    params.seed = seed;
    double prev = 1e300;
    for (double storage : {0.5, 1.0, 2.0, 4.0}) {
      params.uav_storage = storage;
      const ScenarioSpec spec = generate(params);
      const Trajectory traj = Trajectory::straight_line(spec.uav, spec.num_slots);
      const double obj = bnb_place(spec, traj).objective;
      CHECK(obj <= prev + 1e-9);
      prev = obj;
    }
  }
}

TEST_CASE("bound validity at the root") {
  // The root bound (everything placed on both servers) must not exceed the
  // objective of any feasible placement; spot-check against all of them.
  const ScenarioSpec spec = small_instance(9);
  const Trajectory traj = Trajectory::straight_line(spec.uav, spec.num_slots);
  const TaskTables tables = build_task_tables(spec, traj);
  const ServerCaps caps = ServerCaps::of(spec);
  const int K = spec.services.num_services();
  const uint64_t full = (1ull << K) - 1;
  const double root_bound = score_placement(tables, caps, full, full);
  for (uint64_t uav = 0; uav < (1ull << K); ++uav)
    for (uint64_t bs = 0; bs < (1ull << K); ++bs)
      CHECK(root_bound <= score_placement(tables, caps, uav, bs) + 1e-9);
}

TEST_CASE("greedy placement packs ascending sizes") {
  TinyBuilder b(1, 3);
  b.spec.services.sizes = {0.9, 0.5, 0.7};
  b.spec.uav.storage_capacity = 1.3;
  b.spec.bs.storage_capacity = 1.3;
  b.add_ue({50.0, 50.0});
  const Placement p = greedy_placement(b.spec);
  CHECK(p.on_uav[0] == 0);
  CHECK(p.on_uav[1] == 1);
  CHECK(p.on_uav[2] == 1);
  CHECK(p.on_bs[0] == 0);
  CHECK(p.on_bs[1] == 1);
  CHECK(p.on_bs[2] == 1);
}

TEST_CASE("greedy placement maximizes count with equal sizes") {
  TinyBuilder b(1, 5);
  b.spec.services.sizes.assign(5, 0.5);
  b.spec.uav.storage_capacity = 1.6;  // floor(1.6/0.5) = 3
  b.add_ue({50.0, 50.0});
  const Placement p = greedy_placement(b.spec);
  int count = 0;
  for (uint8_t bit : p.on_uav) count += bit;
  CHECK(count == 3);
}
