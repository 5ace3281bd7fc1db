#ifndef AGC_SCENARIO_HPP_
#define AGC_SCENARIO_HPP_

#include <cstdint>
#include <vector>

#include "agc/types.hpp"

namespace agc {

struct GeneratorParams {
  int num_ues = 10;
  int num_services = 30;
  double zipf_skew = 0.5;
  double workload_coefficient = 1.0;
  double uav_storage = 6.0;  // units; BS gets twice this
  uint64_t seed = 1;

  double area_side = 200.0;
  int num_slots = 100;
  double slot_len = 1.0;
  double ue_local_cpu_freq = 1e9;
  double ue_tx_power = 0.1;
  double bs_cpu_capacity = 20e9;
  int bs_max_associated_ues = 10;
};

// Zipf popularity p_k = k^(-skew) / sum_j j^(-skew), k = 1..num_services.
std::vector<double> zipf_popularity(int num_services, double skew);

// Deterministic seeded scenario construction. Independent substreams per
// field family keep parameter sweeps common-random-number coupled: changing
// workload_coefficient or uav_storage perturbs nothing else.
ScenarioSpec generate(const GeneratorParams& params);

}  // namespace agc

#endif
