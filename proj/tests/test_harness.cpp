#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "agc/config_io.hpp"
#include "agc/experiment.hpp"
#include "agc/scenario.hpp"

using namespace agc;
namespace fs = std::filesystem;

namespace {

GeneratorParams tiny_generator() {
  GeneratorParams g;
  g.num_ues = 3;
  g.num_slots = 10;
  g.num_services = 5;
  g.uav_storage = 2.0;
  g.seed = 1;
  return g;
}

ExperimentPlan tiny_plan(ExperimentPlan::Kind kind) {
  ExperimentPlan plan;
  plan.kind = kind;
  plan.num_seeds = 2;
  plan.generator = tiny_generator();
  if (kind == ExperimentPlan::Kind::StorageSweep) plan.sweep_values = {2.0, 4.0};
  if (kind == ExperimentPlan::Kind::WorkloadSweep) plan.sweep_values = {1.0, 2.0};
  return plan;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const char* tag) {
    path = fs::temp_directory_path() / (std::string("agcmec_test_") + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("scenario JSON round trip") {
  const ScenarioSpec spec = generate(tiny_generator());
  const ScenarioSpec back = scenario_from_json(scenario_to_json(spec));
  CHECK(back.num_slots == spec.num_slots);
  CHECK(back.uav.storage_capacity == spec.uav.storage_capacity);
  CHECK(back.services.sizes == spec.services.sizes);
  REQUIRE(back.num_ues() == spec.num_ues());
  for (int i = 0; i < spec.num_ues(); ++i) {
    CHECK(back.ues[i].position.x == spec.ues[i].position.x);
    for (int t = 0; t < spec.num_slots; ++t)
      CHECK(back.tasks[i][t].cpu_cycles == spec.tasks[i][t].cpu_cycles);
  }
  CHECK_NOTHROW(back.validate());
}

TEST_CASE("generator params and plan JSON round trips") {
  GeneratorParams g = tiny_generator();
  g.workload_coefficient = 1.5;
  const GeneratorParams gb = params_from_json(params_to_json(g));
  CHECK(gb.num_ues == g.num_ues);
  CHECK(gb.workload_coefficient == g.workload_coefficient);
  CHECK(gb.seed == g.seed);

  const ExperimentPlan plan = tiny_plan(ExperimentPlan::Kind::StorageSweep);
  const ExperimentPlan pb = plan_from_json(plan_to_json(plan));
  CHECK(pb.kind == plan.kind);
  CHECK(pb.sweep_values == plan.sweep_values);
  CHECK(pb.num_seeds == plan.num_seeds);
  CHECK(pb.generator.num_ues == plan.generator.num_ues);
}

TEST_CASE("plan validation rejects bad sweeps") {
  ExperimentPlan plan = tiny_plan(ExperimentPlan::Kind::StorageSweep);
  CHECK_NOTHROW(plan.validate());
  plan.sweep_values = {4.0, 2.0};
  CHECK_THROWS(plan.validate());
  plan.sweep_values.clear();
  CHECK_THROWS(plan.validate());
}

TEST_CASE("workload sweep doubles the Local column exactly") {
  const ExperimentPlan plan = tiny_plan(ExperimentPlan::Kind::WorkloadSweep);
  const ExperimentResult res = run_experiment(plan);
  for (uint64_t seed = plan.generator.seed;
       seed < plan.generator.seed + plan.num_seeds; ++seed) {
    double at1 = -1.0, at2 = -1.0;
    for (const ResultRow& row : res.rows) {
      if (row.algorithm != "local" || row.seed != seed) continue;
      (row.sweep_value == 1.0 ? at1 : at2) = row.total_energy;
    }
    REQUIRE(at1 > 0.0);
    REQUIRE(at2 > 0.0);
    CHECK(at2 == doctest::Approx(2.0 * at1).epsilon(1e-12));
  }
  // everything non-decreasing in the coefficient
  for (const char* alg : {"proposed", "random", "greedy", "local"}) {
    for (uint64_t seed = plan.generator.seed;
         seed < plan.generator.seed + plan.num_seeds; ++seed) {
      double prev = -1.0;
      for (const ResultRow& row : res.rows) {
        if (row.algorithm != alg || row.seed != seed) continue;
        CHECK(row.total_energy >= prev - 1e-9);
        prev = row.total_energy;
      }
    }
  }
}

TEST_CASE("storage sweep: proposed and greedy non-increasing, local flat") {
  const ExperimentPlan plan = tiny_plan(ExperimentPlan::Kind::StorageSweep);
  const ExperimentResult res = run_experiment(plan);
  for (const char* alg : {"proposed", "greedy"}) {
    for (uint64_t seed = plan.generator.seed;
         seed < plan.generator.seed + plan.num_seeds; ++seed) {
      double prev = 1e300;
      for (const ResultRow& row : res.rows) {
        if (row.algorithm != alg || row.seed != seed) continue;
        CHECK(row.total_energy <= prev + 1e-9);
        prev = row.total_energy;
      }
    }
  }
  for (uint64_t seed = plan.generator.seed;
       seed < plan.generator.seed + plan.num_seeds; ++seed) {
    double first = -1.0;
    for (const ResultRow& row : res.rows) {
      if (row.algorithm != "local" || row.seed != seed) continue;
      if (first < 0.0)
        first = row.total_energy;
      else
        CHECK(row.total_energy == first);  // exact: no placement dependence
    }
  }
}

TEST_CASE("convergence experiment emits a monotone trace") {
  const ExperimentPlan plan = tiny_plan(ExperimentPlan::Kind::Convergence);
  const ExperimentResult res = run_experiment(plan);
  REQUIRE(!res.convergence_trace.empty());
  for (size_t k = 1; k < res.convergence_trace.size(); ++k)
    CHECK(res.convergence_trace[k] <= res.convergence_trace[k - 1] + 1e-12);
}

TEST_CASE("outputs are byte-identical across runs and plots render") {
  const ExperimentPlan plan = tiny_plan(ExperimentPlan::Kind::WorkloadSweep);
  TempDir a("a"), b("b");
  {
    const ExperimentResult res = run_experiment(plan);
    write_outputs(res, plan, a.path.string());
  }
  {
    const ExperimentResult res = run_experiment(plan);
    write_outputs(res, plan, b.path.string());
  }
  CHECK(slurp(a.path / "results.csv") == slurp(b.path / "results.csv"));
  CHECK(slurp(a.path / "summary.txt") == slurp(b.path / "summary.txt"));
  const std::string header = slurp(a.path / "results.csv").substr(0, 60);
  CHECK(header.find("kind,sweep_value,seed,algorithm,total_energy_j") == 0);

  emit_plots(a.path.string());
  CHECK(fs::exists(a.path / "energy_vs_workload.svg"));
  emit_plots(b.path.string());
  CHECK(slurp(a.path / "energy_vs_workload.svg") ==
        slurp(b.path / "energy_vs_workload.svg"));
}

TEST_CASE("convergence and trajectory runs emit their sidecar files") {
  TempDir d("conv");
  {
    const ExperimentPlan plan = tiny_plan(ExperimentPlan::Kind::Convergence);
    const ExperimentResult res = run_experiment(plan);
    write_outputs(res, plan, d.path.string());
    CHECK(fs::exists(d.path / "trace.csv"));
    emit_plots(d.path.string());
    CHECK(fs::exists(d.path / "convergence.svg"));
  }
  TempDir t("traj");
  {
    const ExperimentPlan plan = tiny_plan(ExperimentPlan::Kind::TrajectoryPlot);
    const ExperimentResult res = run_experiment(plan);
    write_outputs(res, plan, t.path.string());
    CHECK(fs::exists(t.path / "trajectory.csv"));
    CHECK(fs::exists(t.path / "ues.csv"));
    emit_plots(t.path.string());
    CHECK(fs::exists(t.path / "trajectory.svg"));
  }
}

TEST_CASE("emit_plots refuses an empty results directory") {
  TempDir d("empty");
  CHECK_THROWS(emit_plots(d.path.string()));
}

TEST_CASE("solution report JSON round trip") {
  const ScenarioSpec spec = generate(tiny_generator());
  SolutionReport rep = baseline_greedy(spec);
  const SolutionReport back = report_from_json(report_to_json(rep));
  CHECK(back.total_energy == rep.total_energy);
  CHECK(back.placement == rep.placement);
  REQUIRE(back.plan.venue.size() == rep.plan.venue.size());
  for (size_t i = 0; i < rep.plan.venue.size(); ++i)
    CHECK(back.plan.venue[i] == rep.plan.venue[i]);
  CHECK(back.trajectory.positions.size() == rep.trajectory.positions.size());
}

TEST_CASE("load_json_file reports the offending path") {
  CHECK_THROWS_WITH_AS(load_json_file("/nonexistent/agcmec.json"),
                       doctest::Contains("/nonexistent/agcmec.json"),
                       std::runtime_error);
}
