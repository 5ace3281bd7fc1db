#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "agc/config_io.hpp"
#include "agc/energy.hpp"
#include "agc/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"air-ground collaborative MEC energy-minimization experiments"};
  app.require_subcommand(1);

  std::string plan_path, out_dir = "out", results_dir;
  std::string scenario_path, solution_path;
  uint64_t seed_override = 0;
  bool have_seed = false;
  int threads = 0;

  CLI::App* run = app.add_subcommand("run", "run an experiment plan");
  run->add_option("--plan", plan_path, "experiment plan file (JSON)")->required();
  run->add_option("--seed", seed_override, "override the generator base seed")
      ->each([&](const std::string&) { have_seed = true; });
  run->add_option("--out-dir", out_dir, "output directory");
  run->add_option("--threads", threads, "worker threads (0 = library default)");

  CLI::App* plot = app.add_subcommand("plot", "render figures from a results directory");
  plot->add_option("dir", results_dir, "directory holding results.csv")->required();

  CLI::App* validate =
      app.add_subcommand("validate", "check a solution file against a scenario");
  validate->add_option("--scenario", scenario_path, "scenario file (JSON)")->required();
  validate->add_option("--solution", solution_path, "solution report file (JSON)")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
#ifdef _OPENMP
      if (threads > 0) omp_set_num_threads(threads);
#endif
      agc::ExperimentPlan plan = agc::plan_from_json(agc::load_json_file(plan_path));
      if (have_seed) plan.generator.seed = seed_override;
      const agc::ExperimentResult result = agc::run_experiment(plan);
      agc::write_outputs(result, plan, out_dir);
      agc::emit_plots(out_dir);
      std::printf("wrote %zu result rows to %s\n", result.rows.size(), out_dir.c_str());
      std::fputs(result.summary.c_str(), stdout);
    } else if (*plot) {
      agc::emit_plots(results_dir);
      std::printf("figures written to %s\n", results_dir.c_str());
    } else if (*validate) {
      const agc::ScenarioSpec spec =
          agc::scenario_from_json(agc::load_json_file(scenario_path));
      const agc::SolutionReport rep =
          agc::report_from_json(agc::load_json_file(solution_path));
      const auto violations =
          agc::check_feasible(spec, rep.placement, rep.plan, rep.trajectory);
      if (violations.empty()) {
        std::printf("solution feasible; total energy %.6f J\n",
                    agc::total_energy_unchecked(spec, rep.plan, rep.trajectory));
      } else {
        for (const agc::Violation& v : violations)
          std::printf("violation %s (ue=%d, slot=%d): %s\n", v.constraint.c_str(),
                      v.ue, v.slot, v.detail.c_str());
        return 2;
      }
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
