#include "agc/phys.hpp"

#include <cmath>
#include <stdexcept>

namespace agc {

double link_rate(const LinkGeometry& geom, double tx_power,
                 const PhysicsConstants& physics) {
  if (tx_power <= 0.0) throw std::invalid_argument("link_rate: tx_power must be > 0");
  const double d2 =
      geom.horizontal_dist * geom.horizontal_dist + geom.altitude * geom.altitude;
  if (d2 <= 0.0) throw std::domain_error("link_rate: degenerate zero-distance link");
  const double e = geom.server_kind == Venue::Uav ? physics.uav_pathloss_exponent
                                                  : physics.bs_pathloss_exponent;
  const double d = std::sqrt(d2);
  const double snr =
      tx_power * physics.ref_channel_gain / (physics.noise_power * std::pow(d, e));
  return physics.bandwidth * std::log2(1.0 + snr);
}

double comm_time(const TaskSpec& task, double rate) {
  if (rate <= 0.0) throw std::invalid_argument("comm_time: rate must be > 0");
  return task.input_bits / rate;
}

double comp_time(const TaskSpec& task, double cpu_freq) {
  if (cpu_freq <= 0.0) throw std::invalid_argument("comp_time: cpu_freq must be > 0");
  return task.cpu_cycles / cpu_freq;
}

double local_energy(const TaskSpec& task, double local_cpu_freq, double kappa) {
  if (local_cpu_freq <= 0.0)
    throw std::invalid_argument("local_energy: cpu frequency must be > 0");
  return kappa * task.cpu_cycles * local_cpu_freq * local_cpu_freq;
}

double tx_energy(const TaskSpec& task, double tx_power, double rate) {
  return tx_power * comm_time(task, rate);
}

}  // namespace agc
