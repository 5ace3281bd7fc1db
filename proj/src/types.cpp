#include "agc/types.hpp"

#include <stdexcept>

namespace agc {

void ScenarioSpec::validate() const {
  if (area_side <= 0.0) throw std::invalid_argument("area_side must be > 0");
  if (num_slots < 1) throw std::invalid_argument("num_slots must be >= 1");
  if (slot_len <= 0.0) throw std::invalid_argument("slot_len must be > 0");
  if (services.num_services() < 1) throw std::invalid_argument("empty service catalog");
  if (services.popularity.size() != services.sizes.size())
    throw std::invalid_argument("popularity/sizes length mismatch");
  double psum = 0.0;
  for (size_t k = 0; k < services.popularity.size(); ++k) {
    psum += services.popularity[k];
    if (k > 0 && services.popularity[k] > services.popularity[k - 1] + 1e-12)
      throw std::invalid_argument("popularity must be non-increasing");
  }
  if (std::abs(psum - 1.0) > 1e-9)
    throw std::invalid_argument("popularity must sum to 1");
  if (tasks.size() != ues.size())
    throw std::invalid_argument("tasks must cover every UE");
  for (size_t i = 0; i < ues.size(); ++i) {
    const UeSpec& ue = ues[i];
    if (ue.position.x < 0.0 || ue.position.x > area_side || ue.position.y < 0.0 ||
        ue.position.y > area_side)
      throw std::invalid_argument("UE position outside area");
    if (ue.tx_power <= 0.0 || ue.tx_power > 0.1)
      throw std::invalid_argument("UE tx_power must be in (0, 0.1] W");
    if (ue.local_cpu_freq <= 0.0)
      throw std::invalid_argument("UE local_cpu_freq must be > 0");
    if (tasks[i].size() != static_cast<size_t>(num_slots))
      throw std::invalid_argument("tasks must cover every slot");
    for (const TaskSpec& t : tasks[i]) {
      if (t.required_service < 0 || t.required_service >= services.num_services())
        throw std::invalid_argument("task references unknown service");
      if (t.cpu_cycles < 0.0 || t.input_bits < 0.0)
        throw std::invalid_argument("task with negative demand");
    }
  }
  if (uav.coverage_radius <= 0.0) throw std::invalid_argument("coverage_radius must be > 0");
  if (uav.max_step <= 0.0) throw std::invalid_argument("max_step must be > 0");
  if (dist(uav.start_pos, uav.end_pos) > num_slots * uav.max_step + 1e-9)
    throw std::invalid_argument("UAV cannot reach end_pos within the horizon");
  if (physics.bandwidth <= 0.0 || physics.kappa <= 0.0 ||
      physics.ref_channel_gain <= 0.0 || physics.noise_power <= 0.0 ||
      physics.bs_pathloss_exponent <= 0.0 || physics.uav_pathloss_exponent <= 0.0)
    throw std::invalid_argument("physics constants must be strictly positive");
}

double Placement::used_storage_uav(const ServiceCatalog& cat) const {
  double s = 0.0;
  for (size_t k = 0; k < on_uav.size(); ++k)
    if (on_uav[k]) s += cat.sizes[k];
  return s;
}

double Placement::used_storage_bs(const ServiceCatalog& cat) const {
  double s = 0.0;
  for (size_t k = 0; k < on_bs.size(); ++k)
    if (on_bs[k]) s += cat.sizes[k];
  return s;
}

bool Placement::lex_less(const Placement& other) const {
  for (size_t k = 0; k < on_uav.size(); ++k) {
    if (on_uav[k] != other.on_uav[k]) return on_uav[k] < other.on_uav[k];
    if (on_bs[k] != other.on_bs[k]) return on_bs[k] < other.on_bs[k];
  }
  return false;
}

Trajectory Trajectory::straight_line(const UavSpec& uav, int num_slots) {
  Trajectory traj;
  traj.positions.resize(num_slots + 1);
  for (int t = 0; t <= num_slots; ++t) {
    const double a = num_slots == 0 ? 0.0 : static_cast<double>(t) / num_slots;
    traj.positions[t] = uav.start_pos + a * (uav.end_pos - uav.start_pos);
  }
  return traj;
}

}  // namespace agc
