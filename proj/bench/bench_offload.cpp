// Compares the OpenMP per-slot offload kernel against the serial reference.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "agc/bnb.hpp"
#include "agc/offload.hpp"
#include "agc/scenario.hpp"

namespace {
double time_of(const char* name, int reps, auto&& fn) {
  using Clock = std::chrono::steady_clock;
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
  }
  std::printf("%-28s %8.3f ms\n", name, best * 1e3);
  return best;
}
}  // namespace

int main(int argc, char** argv) {
  agc::GeneratorParams params;
  params.num_ues = argc > 1 ? std::atoi(argv[1]) : 10;
  params.num_slots = argc > 2 ? std::atoi(argv[2]) : 400;
  params.seed = 1;
  const agc::ScenarioSpec spec = agc::generate(params);
  const agc::Trajectory traj = agc::Trajectory::straight_line(spec.uav, spec.num_slots);
  const agc::Placement placement = agc::greedy_placement(spec);

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP unavailable)\n");
#endif
  std::printf("%d UEs, %d slots, %d services\n", spec.num_ues(), spec.num_slots,
              spec.services.num_services());

  const int reps = 5;
  const double serial = time_of("offload (serial reference)", reps, [&] {
    agc::solve_offload_reference(spec, placement, traj);
  });
  const double parallel = time_of("offload (OpenMP)", reps, [&] {
    agc::solve_offload_given_placement(spec, placement, traj);
  });
  std::printf("speedup: %.2fx\n", serial / parallel);
  return 0;
}
