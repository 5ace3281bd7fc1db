#ifndef AGC_PHYS_HPP_
#define AGC_PHYS_HPP_

#include "agc/types.hpp"

namespace agc {

struct LinkGeometry {
  double horizontal_dist = 0.0;  // m
  double altitude = 0.0;         // m, 0 for BS links
  Venue server_kind = Venue::Bs;
};

// Achievable uplink rate in bit/s under the distance-based path-loss model:
//   R = B * log2(1 + P * g0 / (N0 * d^e)),  d = sqrt(h^2 + r^2).
// Throws on degenerate d = 0.
double link_rate(const LinkGeometry& geom, double tx_power,
                 const PhysicsConstants& physics);

// Seconds to ship the task input over a link of the given rate.
double comm_time(const TaskSpec& task, double rate);

// Seconds to execute the task at the given CPU frequency.
double comp_time(const TaskSpec& task, double cpu_freq);

// Local computation energy kappa * C * f^2 in joules.
double local_energy(const TaskSpec& task, double local_cpu_freq, double kappa);

// UE transmission energy tx_power * comm_time in joules.
double tx_energy(const TaskSpec& task, double tx_power, double rate);

}  // namespace agc

#endif
