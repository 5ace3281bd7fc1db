#ifndef AGC_EXPERIMENT_HPP_
#define AGC_EXPERIMENT_HPP_

#include <string>
#include <vector>

#include <json.hpp>

#include "agc/orchestrator.hpp"
#include "agc/scenario.hpp"

namespace agc {

struct ExperimentPlan {
  enum class Kind { Convergence, TrajectoryPlot, StorageSweep, WorkloadSweep };
  Kind kind = Kind::Convergence;
  std::vector<double> sweep_values;  // strictly increasing; sweeps only
  int num_seeds = 20;
  GeneratorParams generator;
  SolveOptions solver;

  void validate() const;
};

nlohmann::json plan_to_json(const ExperimentPlan& plan);
ExperimentPlan plan_from_json(const nlohmann::json& j);

struct ResultRow {
  std::string kind;
  double sweep_value = 0.0;
  uint64_t seed = 0;
  std::string algorithm;  // proposed | random | greedy | local
  double total_energy = 0.0;
  int iterations = 0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<double> wall_seconds;  // parallel with rows; kept out of the table
  // sidecar series for the convergence / trajectory figures
  std::vector<double> convergence_trace;
  Trajectory trajectory;
  Trajectory straight;
  std::vector<Vec2> ue_positions;
  std::string summary;
};

// Runs all four algorithms on common-random-numbers scenarios for every
// (sweep value, seed) cell. Cells execute in parallel; row order is fixed by
// (sweep value, seed, algorithm). Every solution is re-validated before its
// row is recorded.
ExperimentResult run_experiment(const ExperimentPlan& plan);

// results.csv, timings.csv, summary.txt plus the per-kind sidecar series.
void write_outputs(const ExperimentResult& result, const ExperimentPlan& plan,
                   const std::string& out_dir);

// Reads the CSV outputs back from a results directory and renders the
// matching SVG figures next to them.
void emit_plots(const std::string& results_dir);

}  // namespace agc

#endif
