#include "agc/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include "agc/rng.hpp"

namespace agc {

namespace {
// substream ids; fixed forever so seeds stay stable across versions
enum StreamId : uint64_t {
  kStreamPositions = 1,
  kStreamCycles = 2,
  kStreamDataBits = 3,
  kStreamServices = 4,
  kStreamSizes = 5,
  kStreamUav = 6,
};
}  // namespace

std::vector<double> zipf_popularity(int num_services, double skew) {
  if (num_services < 1) throw std::invalid_argument("zipf_popularity: num_services >= 1");
  if (skew < 0.0) throw std::invalid_argument("zipf_popularity: skew >= 0");
  std::vector<double> p(num_services);
  double z = 0.0;
  for (int k = 1; k <= num_services; ++k) z += std::pow(k, -skew);
  for (int k = 1; k <= num_services; ++k) p[k - 1] = std::pow(k, -skew) / z;
  return p;
}

ScenarioSpec generate(const GeneratorParams& params) {
  if (params.num_ues < 1 || params.num_services < 1 || params.num_slots < 1)
    throw std::invalid_argument("generate: counts must be >= 1");
  if (params.workload_coefficient <= 0.0)
    throw std::invalid_argument("generate: workload_coefficient must be > 0");
  if (params.uav_storage < 0.0)
    throw std::invalid_argument("generate: uav_storage must be >= 0");

  ScenarioSpec spec;
  spec.area_side = params.area_side;
  spec.num_slots = params.num_slots;
  spec.slot_len = params.slot_len;
  spec.seed = params.seed;

  spec.services.sizes.resize(params.num_services);
  {
    Substream rng(params.seed, kStreamSizes);
    for (double& s : spec.services.sizes) s = rng.uniform(0.5, 1.0);
  }
  spec.services.popularity = zipf_popularity(params.num_services, params.zipf_skew);

  spec.ues.resize(params.num_ues);
  {
    Substream rng(params.seed, kStreamPositions);
    for (UeSpec& ue : spec.ues) {
      ue.position = {rng.uniform(0.0, params.area_side),
                     rng.uniform(0.0, params.area_side)};
      ue.local_cpu_freq = params.ue_local_cpu_freq;
      ue.tx_power = params.ue_tx_power;
    }
  }

  spec.tasks.assign(params.num_ues, std::vector<TaskSpec>(params.num_slots));
  {
    Substream cycles(params.seed, kStreamCycles);
    Substream bits(params.seed, kStreamDataBits);
    Substream services(params.seed, kStreamServices);
    for (int i = 0; i < params.num_ues; ++i) {
      spec.ues[i].requested_service.resize(params.num_slots);
      for (int t = 0; t < params.num_slots; ++t) {
        TaskSpec& task = spec.tasks[i][t];
        task.cpu_cycles = cycles.uniform(1e8, 1e9) * params.workload_coefficient;
        task.input_bits = bits.uniform(100.0, 1000.0) * 8000.0;  // KB -> bits
        task.required_service = services.discrete(spec.services.popularity);
        spec.ues[i].requested_service[t] = task.required_service;
      }
    }
  }

  {
    Substream rng(params.seed, kStreamUav);
    spec.uav.start_pos = {0.0, 0.0};
    spec.uav.end_pos = {params.area_side, params.area_side};
    spec.uav.altitude = 50.0;
    spec.uav.storage_capacity = params.uav_storage;
    spec.uav.cpu_capacity = rng.uniform(5e9, 10e9);
    spec.uav.max_associated_ues = rng.uniform_int(3, 5);
    spec.uav.coverage_radius = 100.0;
    spec.uav.max_step = 30.0;
  }

  spec.bs.position = {params.area_side / 2.0, params.area_side / 2.0};
  spec.bs.storage_capacity = 2.0 * params.uav_storage;
  spec.bs.cpu_capacity = params.bs_cpu_capacity;
  spec.bs.max_associated_ues = params.bs_max_associated_ues;

  spec.validate();
  return spec;
}

}  // namespace agc
