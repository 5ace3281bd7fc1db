#include "agc/config_io.hpp"

#include <fstream>
#include <stdexcept>

namespace agc {

using nlohmann::json;

namespace {
json vec2_to_json(Vec2 v) { return json::array({v.x, v.y}); }
Vec2 vec2_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

Venue venue_from_string(const std::string& s) {
  if (s == "local") return Venue::Local;
  if (s == "uav") return Venue::Uav;
  if (s == "bs") return Venue::Bs;
  throw std::runtime_error("unknown venue: " + s);
}
}  // namespace

json scenario_to_json(const ScenarioSpec& spec) {
  json j;
  j["area_side"] = spec.area_side;
  j["num_slots"] = spec.num_slots;
  j["slot_len"] = spec.slot_len;
  j["seed"] = spec.seed;

  json ues = json::array();
  for (const UeSpec& ue : spec.ues) {
    ues.push_back({{"position", vec2_to_json(ue.position)},
                   {"local_cpu_freq", ue.local_cpu_freq},
                   {"tx_power", ue.tx_power},
                   {"requested_service", ue.requested_service}});
  }
  j["ues"] = std::move(ues);

  j["bs"] = {{"position", vec2_to_json(spec.bs.position)},
             {"storage_capacity", spec.bs.storage_capacity},
             {"cpu_capacity", spec.bs.cpu_capacity},
             {"max_associated_ues", spec.bs.max_associated_ues}};
  j["uav"] = {{"start_pos", vec2_to_json(spec.uav.start_pos)},
              {"end_pos", vec2_to_json(spec.uav.end_pos)},
              {"altitude", spec.uav.altitude},
              {"storage_capacity", spec.uav.storage_capacity},
              {"cpu_capacity", spec.uav.cpu_capacity},
              {"max_associated_ues", spec.uav.max_associated_ues},
              {"coverage_radius", spec.uav.coverage_radius},
              {"max_step", spec.uav.max_step}};
  j["services"] = {{"sizes", spec.services.sizes},
                   {"popularity", spec.services.popularity}};

  json tasks = json::array();
  for (const auto& row : spec.tasks) {
    json r = json::array();
    for (const TaskSpec& t : row)
      r.push_back({{"cpu_cycles", t.cpu_cycles},
                   {"input_bits", t.input_bits},
                   {"required_service", t.required_service}});
    tasks.push_back(std::move(r));
  }
  j["tasks"] = std::move(tasks);

  const PhysicsConstants& p = spec.physics;
  j["physics"] = {{"bandwidth", p.bandwidth},
                  {"kappa", p.kappa},
                  {"ref_channel_gain", p.ref_channel_gain},
                  {"noise_power", p.noise_power},
                  {"bs_pathloss_exponent", p.bs_pathloss_exponent},
                  {"uav_pathloss_exponent", p.uav_pathloss_exponent}};
  return j;
}

ScenarioSpec scenario_from_json(const json& j) {
  ScenarioSpec spec;
  spec.area_side = j.at("area_side").get<double>();
  spec.num_slots = j.at("num_slots").get<int>();
  spec.slot_len = j.at("slot_len").get<double>();
  spec.seed = j.at("seed").get<uint64_t>();

  for (const json& u : j.at("ues")) {
    UeSpec ue;
    ue.position = vec2_from_json(u.at("position"));
    ue.local_cpu_freq = u.at("local_cpu_freq").get<double>();
    ue.tx_power = u.at("tx_power").get<double>();
    ue.requested_service = u.at("requested_service").get<std::vector<int>>();
    spec.ues.push_back(std::move(ue));
  }

  const json& b = j.at("bs");
  spec.bs.position = vec2_from_json(b.at("position"));
  spec.bs.storage_capacity = b.at("storage_capacity").get<double>();
  spec.bs.cpu_capacity = b.at("cpu_capacity").get<double>();
  spec.bs.max_associated_ues = b.at("max_associated_ues").get<int>();

  const json& u = j.at("uav");
  spec.uav.start_pos = vec2_from_json(u.at("start_pos"));
  spec.uav.end_pos = vec2_from_json(u.at("end_pos"));
  spec.uav.altitude = u.at("altitude").get<double>();
  spec.uav.storage_capacity = u.at("storage_capacity").get<double>();
  spec.uav.cpu_capacity = u.at("cpu_capacity").get<double>();
  spec.uav.max_associated_ues = u.at("max_associated_ues").get<int>();
  spec.uav.coverage_radius = u.at("coverage_radius").get<double>();
  spec.uav.max_step = u.at("max_step").get<double>();

  spec.services.sizes = j.at("services").at("sizes").get<std::vector<double>>();
  spec.services.popularity =
      j.at("services").at("popularity").get<std::vector<double>>();

  for (const json& row : j.at("tasks")) {
    std::vector<TaskSpec> r;
    for (const json& t : row)
      r.push_back({t.at("cpu_cycles").get<double>(), t.at("input_bits").get<double>(),
                   t.at("required_service").get<int>()});
    spec.tasks.push_back(std::move(r));
  }

  const json& p = j.at("physics");
  spec.physics.bandwidth = p.at("bandwidth").get<double>();
  spec.physics.kappa = p.at("kappa").get<double>();
  spec.physics.ref_channel_gain = p.at("ref_channel_gain").get<double>();
  spec.physics.noise_power = p.at("noise_power").get<double>();
  spec.physics.bs_pathloss_exponent = p.at("bs_pathloss_exponent").get<double>();
  spec.physics.uav_pathloss_exponent = p.at("uav_pathloss_exponent").get<double>();

  spec.validate();
  return spec;
}

json params_to_json(const GeneratorParams& p) {
  return {{"num_ues", p.num_ues},
          {"num_services", p.num_services},
          {"zipf_skew", p.zipf_skew},
          {"workload_coefficient", p.workload_coefficient},
          {"uav_storage", p.uav_storage},
          {"seed", p.seed},
          {"area_side", p.area_side},
          {"num_slots", p.num_slots},
          {"slot_len", p.slot_len},
          {"ue_local_cpu_freq", p.ue_local_cpu_freq},
          {"ue_tx_power", p.ue_tx_power},
          {"bs_cpu_capacity", p.bs_cpu_capacity},
          {"bs_max_associated_ues", p.bs_max_associated_ues}};
}

GeneratorParams params_from_json(const json& j) {
  GeneratorParams p;
  p.num_ues = j.value("num_ues", p.num_ues);
  p.num_services = j.value("num_services", p.num_services);
  p.zipf_skew = j.value("zipf_skew", p.zipf_skew);
  p.workload_coefficient = j.value("workload_coefficient", p.workload_coefficient);
  p.uav_storage = j.value("uav_storage", p.uav_storage);
  p.seed = j.value("seed", p.seed);
  p.area_side = j.value("area_side", p.area_side);
  p.num_slots = j.value("num_slots", p.num_slots);
  p.slot_len = j.value("slot_len", p.slot_len);
  p.ue_local_cpu_freq = j.value("ue_local_cpu_freq", p.ue_local_cpu_freq);
  p.ue_tx_power = j.value("ue_tx_power", p.ue_tx_power);
  p.bs_cpu_capacity = j.value("bs_cpu_capacity", p.bs_cpu_capacity);
  p.bs_max_associated_ues = j.value("bs_max_associated_ues", p.bs_max_associated_ues);
  return p;
}

json report_to_json(const SolutionReport& rep) {
  json plan_venue = json::array();
  for (const auto& row : rep.plan.venue) {
    json r = json::array();
    for (Venue v : row) r.push_back(venue_name(v));
    plan_venue.push_back(std::move(r));
  }
  json traj = json::array();
  for (Vec2 p : rep.trajectory.positions) traj.push_back(vec2_to_json(p));
  return {{"total_energy", rep.total_energy},
          {"per_iteration_energy", rep.per_iteration_energy},
          {"placement", {{"on_uav", rep.placement.on_uav}, {"on_bs", rep.placement.on_bs}}},
          {"plan", {{"venue", plan_venue}, {"cpu_alloc", rep.plan.cpu_alloc}}},
          {"trajectory", traj},
          {"per_ue_energy", rep.per_ue_energy},
          {"stats",
           {{"bnb_nodes", rep.stats.bnb_nodes},
            {"sca_iterations", rep.stats.sca_iterations},
            {"wall_seconds", rep.stats.wall_seconds}}}};
}

SolutionReport report_from_json(const json& j) {
  SolutionReport rep;
  rep.total_energy = j.at("total_energy").get<double>();
  rep.per_iteration_energy = j.at("per_iteration_energy").get<std::vector<double>>();
  rep.placement.on_uav = j.at("placement").at("on_uav").get<std::vector<uint8_t>>();
  rep.placement.on_bs = j.at("placement").at("on_bs").get<std::vector<uint8_t>>();
  for (const json& row : j.at("plan").at("venue")) {
    std::vector<Venue> r;
    for (const json& v : row) r.push_back(venue_from_string(v.get<std::string>()));
    rep.plan.venue.push_back(std::move(r));
  }
  rep.plan.cpu_alloc =
      j.at("plan").at("cpu_alloc").get<std::vector<std::vector<double>>>();
  for (const json& p : j.at("trajectory"))
    rep.trajectory.positions.push_back(vec2_from_json(p));
  rep.per_ue_energy = j.at("per_ue_energy").get<std::vector<double>>();
  const json& s = j.at("stats");
  rep.stats.bnb_nodes = s.at("bnb_nodes").get<int64_t>();
  rep.stats.sca_iterations = s.at("sca_iterations").get<int>();
  rep.stats.wall_seconds = s.at("wall_seconds").get<double>();
  return rep;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace agc
