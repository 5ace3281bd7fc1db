#ifndef AGC_TYPES_HPP_
#define AGC_TYPES_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "agc/vec2.hpp"

namespace agc {

enum class Venue : uint8_t { Local = 0, Uav = 1, Bs = 2 };

inline const char* venue_name(Venue v) {
  switch (v) {
    case Venue::Local: return "local";
    case Venue::Uav: return "uav";
    case Venue::Bs: return "bs";
  }
  return "?";
}

struct PhysicsConstants {
  double bandwidth = 1e6;            // Hz, per offloading UE in its slot
  double kappa = 1e-27;              // effective switched capacitance, E = kappa*C*f^2
  double ref_channel_gain = 1e-5;    // power gain at 1 m
  double noise_power = 1e-13;        // W
  double bs_pathloss_exponent = 3.0;
  double uav_pathloss_exponent = 2.0;  // LoS
};

struct TaskSpec {
  double cpu_cycles = 0.0;
  double input_bits = 0.0;
  int required_service = 0;
};

struct UeSpec {
  Vec2 position;
  double local_cpu_freq = 1e9;  // Hz
  double tx_power = 0.1;        // W
  // requested service per slot; mirrors tasks[ue][slot].required_service
  std::vector<int> requested_service;
};

struct ServerSpec {
  Vec2 position;
  double storage_capacity = 0.0;  // abstract units
  double cpu_capacity = 0.0;      // Hz
  int max_associated_ues = 0;
};

struct UavSpec {
  Vec2 start_pos;
  Vec2 end_pos;
  double altitude = 50.0;         // m, fixed
  double storage_capacity = 0.0;  // abstract units
  double cpu_capacity = 0.0;      // Hz
  int max_associated_ues = 0;
  double coverage_radius = 100.0;  // m, ground radius
  double max_step = 30.0;          // m per slot
};

struct ServiceCatalog {
  std::vector<double> sizes;       // storage units, one per service
  std::vector<double> popularity;  // Zipf, non-increasing, sums to 1

  int num_services() const { return static_cast<int>(sizes.size()); }
};

struct ScenarioSpec {
  double area_side = 200.0;  // m
  int num_slots = 100;
  double slot_len = 1.0;  // s
  std::vector<UeSpec> ues;
  ServerSpec bs;
  UavSpec uav;
  ServiceCatalog services;
  // tasks[ue][slot]
  std::vector<std::vector<TaskSpec>> tasks;
  PhysicsConstants physics;
  uint64_t seed = 0;

  int num_ues() const { return static_cast<int>(ues.size()); }
  const TaskSpec& task(int ue, int slot) const { return tasks[ue][slot]; }

  // Throws std::invalid_argument on the first violated structural invariant.
  void validate() const;
};

// Binary service placement on the two servers.
struct Placement {
  std::vector<uint8_t> on_uav;
  std::vector<uint8_t> on_bs;

  static Placement empty(int num_services) {
    Placement p;
    p.on_uav.assign(num_services, 0);
    p.on_bs.assign(num_services, 0);
    return p;
  }
  bool placed(int service, Venue server) const {
    return server == Venue::Uav ? on_uav[service] != 0 : on_bs[service] != 0;
  }
  double used_storage_uav(const ServiceCatalog& cat) const;
  double used_storage_bs(const ServiceCatalog& cat) const;

  // Flattened (service-major, UAV bit before BS bit) lexicographic order,
  // not-placed < placed. Used as the deterministic tie-break among optima.
  bool lex_less(const Placement& other) const;
  bool operator==(const Placement& other) const = default;
};

struct OffloadPlan {
  // venue[ue][slot]
  std::vector<std::vector<Venue>> venue;
  // cpu_alloc[ue][slot], Hz; zero when venue is Local
  std::vector<std::vector<double>> cpu_alloc;

  static OffloadPlan all_local(int num_ues, int num_slots) {
    OffloadPlan p;
    p.venue.assign(num_ues, std::vector<Venue>(num_slots, Venue::Local));
    p.cpu_alloc.assign(num_ues, std::vector<double>(num_slots, 0.0));
    return p;
  }
};

struct Trajectory {
  // num_slots + 1 horizontal positions; positions[0] = start, back() = end.
  // The UAV serves slot t from positions[t + 1].
  std::vector<Vec2> positions;

  Vec2 serving_pos(int slot) const { return positions[slot + 1]; }

  static Trajectory straight_line(const UavSpec& uav, int num_slots);
};

struct SolverStats {
  int64_t bnb_nodes = 0;
  int sca_iterations = 0;
  double wall_seconds = 0.0;
};

struct SolutionReport {
  double total_energy = 0.0;  // J
  std::vector<double> per_iteration_energy;
  Placement placement;
  OffloadPlan plan;
  Trajectory trajectory;
  std::vector<double> per_ue_energy;
  SolverStats stats;
};

struct Violation {
  std::string constraint;  // C1..C5, CPU
  int ue = -1;
  int slot = -1;
  std::string detail;
};

}  // namespace agc

#endif
