#include "agc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "agc/config_io.hpp"
#include "agc/energy.hpp"

namespace agc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string kind_name(ExperimentPlan::Kind k) {
  switch (k) {
    case ExperimentPlan::Kind::Convergence: return "convergence";
    case ExperimentPlan::Kind::TrajectoryPlot: return "trajectory";
    case ExperimentPlan::Kind::StorageSweep: return "storage_sweep";
    case ExperimentPlan::Kind::WorkloadSweep: return "workload_sweep";
  }
  return "?";
}

ExperimentPlan::Kind kind_from_name(const std::string& s) {
  if (s == "convergence") return ExperimentPlan::Kind::Convergence;
  if (s == "trajectory") return ExperimentPlan::Kind::TrajectoryPlot;
  if (s == "storage_sweep") return ExperimentPlan::Kind::StorageSweep;
  if (s == "workload_sweep") return ExperimentPlan::Kind::WorkloadSweep;
  throw std::runtime_error("unknown experiment kind: " + s);
}

struct CellOutput {
  SolutionReport reports[4];  // proposed, random, greedy, local
};

constexpr const char* kAlgorithms[4] = {"proposed", "random", "greedy", "local"};

CellOutput run_cell(const GeneratorParams& gp, const SolveOptions& solver) {
  const ScenarioSpec spec = generate(gp);
  CellOutput out;
  out.reports[0] = alternating_solve(spec, solver);
  out.reports[1] = baseline_random(spec, gp.seed);
  out.reports[2] = baseline_greedy(spec);
  out.reports[3] = baseline_local(spec);
  for (const SolutionReport& rep : out.reports) {
    if (!check_feasible(spec, rep.placement, rep.plan, rep.trajectory).empty())
      throw std::runtime_error("run_experiment: infeasible solution produced");
  }
  return out;
}

}  // namespace

void ExperimentPlan::validate() const {
  const bool sweep = kind == Kind::StorageSweep || kind == Kind::WorkloadSweep;
  if (sweep) {
    if (sweep_values.empty())
      throw std::runtime_error("sweep plan needs non-empty sweep_values");
    for (size_t i = 1; i < sweep_values.size(); ++i)
      if (sweep_values[i] <= sweep_values[i - 1])
        throw std::runtime_error("sweep_values must be strictly increasing");
  }
  if (num_seeds < 1) throw std::runtime_error("num_seeds must be >= 1");
  if (solver.tol <= 0.0) throw std::runtime_error("solver tol must be > 0");
}

json plan_to_json(const ExperimentPlan& plan) {
  return {{"kind", kind_name(plan.kind)},
          {"sweep_values", plan.sweep_values},
          {"num_seeds", plan.num_seeds},
          {"generator", params_to_json(plan.generator)},
          {"solver",
           {{"tol", plan.solver.tol},
            {"max_iters", plan.solver.max_iters},
            {"sca_max_iters", plan.solver.sca.max_iters},
            {"sca_obj_tol", plan.solver.sca.obj_tol}}}};
}

ExperimentPlan plan_from_json(const json& j) {
  ExperimentPlan plan;
  plan.kind = kind_from_name(j.at("kind").get<std::string>());
  plan.sweep_values = j.value("sweep_values", std::vector<double>{});
  plan.num_seeds = j.value("num_seeds", plan.num_seeds);
  if (j.contains("generator")) plan.generator = params_from_json(j.at("generator"));
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    plan.solver.tol = s.value("tol", plan.solver.tol);
    plan.solver.max_iters = s.value("max_iters", plan.solver.max_iters);
    plan.solver.sca.max_iters = s.value("sca_max_iters", plan.solver.sca.max_iters);
    plan.solver.sca.obj_tol = s.value("sca_obj_tol", plan.solver.sca.obj_tol);
  }
  plan.validate();
  return plan;
}

ExperimentResult run_experiment(const ExperimentPlan& plan) {
  plan.validate();
  const std::string kind = kind_name(plan.kind);
  const bool sweep = plan.kind == ExperimentPlan::Kind::StorageSweep ||
                     plan.kind == ExperimentPlan::Kind::WorkloadSweep;

  std::vector<GeneratorParams> cells;
  std::vector<double> cell_values;
  if (sweep) {
    for (double v : plan.sweep_values) {
      for (int s = 0; s < plan.num_seeds; ++s) {
        GeneratorParams gp = plan.generator;
        gp.seed = plan.generator.seed + static_cast<uint64_t>(s);
        if (plan.kind == ExperimentPlan::Kind::StorageSweep)
          gp.uav_storage = v;
        else
          gp.workload_coefficient = v;
        cells.push_back(gp);
        cell_values.push_back(v);
      }
    }
  } else {
    cells.push_back(plan.generator);
    cell_values.push_back(plan.generator.uav_storage);
  }

  std::vector<CellOutput> outputs(cells.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (size_t c = 0; c < cells.size(); ++c) {
    try {
      outputs[c] = run_cell(cells[c], plan.solver);
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentResult result;
  for (size_t c = 0; c < cells.size(); ++c) {
    for (int a = 0; a < 4; ++a) {
      const SolutionReport& rep = outputs[c].reports[a];
      ResultRow row;
      row.kind = kind;
      row.sweep_value = cell_values[c];
      row.seed = cells[c].seed;
      row.algorithm = kAlgorithms[a];
      row.total_energy = rep.total_energy;
      row.iterations =
          a == 0 ? static_cast<int>(rep.per_iteration_energy.size()) - 1 : 0;
      result.rows.push_back(std::move(row));
      result.wall_seconds.push_back(rep.stats.wall_seconds);
    }
  }

  if (!sweep) {
    const SolutionReport& proposed = outputs[0].reports[0];
    result.convergence_trace = proposed.per_iteration_energy;
    result.trajectory = proposed.trajectory;
    const ScenarioSpec spec = generate(cells[0]);
    result.straight = Trajectory::straight_line(spec.uav, spec.num_slots);
    for (const UeSpec& ue : spec.ues) result.ue_positions.push_back(ue.position);
  }

  // mean energy reduction of the proposed algorithm vs each baseline
  double red[3] = {0.0, 0.0, 0.0};
  for (size_t c = 0; c < cells.size(); ++c) {
    const double ep = outputs[c].reports[0].total_energy;
    for (int a = 1; a < 4; ++a) {
      const double eb = outputs[c].reports[a].total_energy;
      red[a - 1] += eb > 0.0 ? (eb - ep) / eb : 0.0;
    }
  }
  std::ostringstream summary;
  const char* names[3] = {"random", "greedy", "local"};
  for (int a = 0; a < 3; ++a) {
    summary << "mean energy reduction vs " << names[a] << ": "
            << fmt(100.0 * red[a] / static_cast<double>(cells.size())) << "%\n";
  }
  result.summary = summary.str();
  return result;
}

void write_outputs(const ExperimentResult& result, const ExperimentPlan& plan,
                   const std::string& out_dir) {
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);

  {
    std::ofstream out(dir / "results.csv");
    out << "kind,sweep_value,seed,algorithm,total_energy_j,iterations\n";
    for (const ResultRow& r : result.rows)
      out << r.kind << ',' << fmt(r.sweep_value) << ',' << r.seed << ','
          << r.algorithm << ',' << fmt(r.total_energy) << ',' << r.iterations << '\n';
  }
  {
    // wall times vary run to run; kept out of the deterministic table
    std::ofstream out(dir / "timings.csv");
    out << "row,algorithm,wall_seconds\n";
    for (size_t i = 0; i < result.wall_seconds.size(); ++i)
      out << i << ',' << result.rows[i].algorithm << ','
          << fmt(result.wall_seconds[i]) << '\n';
  }
  {
    std::ofstream out(dir / "summary.txt");
    out << result.summary;
  }
  if (!result.convergence_trace.empty() &&
      plan.kind == ExperimentPlan::Kind::Convergence) {
    std::ofstream out(dir / "trace.csv");
    out << "iteration,total_energy_j\n";
    for (size_t i = 0; i < result.convergence_trace.size(); ++i)
      out << i << ',' << fmt(result.convergence_trace[i]) << '\n';
  }
  if (plan.kind == ExperimentPlan::Kind::TrajectoryPlot) {
    std::ofstream traj(dir / "trajectory.csv");
    traj << "x,y\n";
    for (Vec2 p : result.trajectory.positions)
      traj << fmt(p.x) << ',' << fmt(p.y) << '\n';
    std::ofstream straight(dir / "straight.csv");
    straight << "x,y\n";
    for (Vec2 p : result.straight.positions)
      straight << fmt(p.x) << ',' << fmt(p.y) << '\n';
    std::ofstream ues(dir / "ues.csv");
    ues << "x,y\n";
    for (Vec2 p : result.ue_positions) ues << fmt(p.x) << ',' << fmt(p.y) << '\n';
  }
}

// ---------------------------------------------------------------------------
// plotting

namespace {

struct Series {
  std::string name;
  std::string color;
  std::vector<Vec2> points;
  bool line = true;
};

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) cols.push_back(col);
    rows.push_back(std::move(cols));
  }
  return rows;
}

std::string svg_chart(const std::string& title, const std::string& xlabel,
                      const std::string& ylabel, const std::vector<Series>& series,
                      bool equal_axes = false) {
  constexpr double W = 640, H = 480, ML = 70, MR = 150, MT = 40, MB = 55;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const Series& s : series) {
    for (Vec2 p : s.points) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  if (xmin > xmax) throw std::runtime_error("svg_chart: no data points");
  if (xmax == xmin) {
    xmin -= 1.0;
    xmax += 1.0;
  }
  if (ymax == ymin) {
    ymin -= 1.0;
    ymax += 1.0;
  }
  if (equal_axes) {
    const double span = std::max(xmax - xmin, ymax - ymin);
    xmax = xmin + span;
    ymax = ymin + span;
  }
  const double pw = W - ML - MR, ph = H - MT - MB;
  auto X = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * pw; };
  auto Y = [&](double y) { return MT + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
      << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
  svg << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double fx = xmin + (xmax - xmin) * k / 5.0;
    const double fy = ymin + (ymax - ymin) * k / 5.0;
    svg << "<text x=\"" << fmt(X(fx)) << "\" y=\"" << H - MB + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(fx) << "</text>\n";
    svg << "<text x=\"" << ML - 8 << "\" y=\"" << fmt(Y(fy) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(fy) << "</text>\n";
  }
  svg << "<text x=\"" << ML + pw / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << xlabel << "</text>\n";
  svg << "<text x=\"18\" y=\"" << MT + ph / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << MT + ph / 2 << ")\">" << ylabel
      << "</text>\n";

  int legend = 0;
  for (const Series& s : series) {
    if (s.line && s.points.size() > 1) {
      svg << "<polyline fill=\"none\" stroke=\"" << s.color
          << "\" stroke-width=\"1.5\" points=\"";
      for (Vec2 p : s.points) svg << fmt(X(p.x)) << ',' << fmt(Y(p.y)) << ' ';
      svg << "\"/>\n";
    }
    for (Vec2 p : s.points)
      svg << "<circle cx=\"" << fmt(X(p.x)) << "\" cy=\"" << fmt(Y(p.y))
          << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
    const double ly = MT + 14 + 18 * legend++;
    svg << "<line x1=\"" << W - MR + 12 << "\" y1=\"" << ly << "\" x2=\""
        << W - MR + 36 << "\" y2=\"" << ly << "\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << W - MR + 42 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.name
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::vector<Vec2> csv_points(const fs::path& path) {
  std::vector<Vec2> pts;
  const auto rows = read_csv(path);
  for (size_t i = 1; i < rows.size(); ++i)
    pts.push_back({std::stod(rows[i][0]), std::stod(rows[i][1])});
  return pts;
}

const std::map<std::string, std::string> kAlgoColors = {
    {"proposed", "#d62728"},
    {"random", "#1f77b4"},
    {"greedy", "#2ca02c"},
    {"local", "#7f7f7f"}};

void emit_sweep_plot(const fs::path& dir, const std::vector<std::vector<std::string>>& rows,
                     const std::string& kind, const std::string& xlabel,
                     const std::string& outfile) {
  // mean energy per (algorithm, sweep value)
  std::map<std::string, std::map<double, std::pair<double, int>>> acc;
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][0] != kind) continue;
    auto& cell = acc[rows[i][3]][std::stod(rows[i][1])];
    cell.first += std::stod(rows[i][4]);
    cell.second += 1;
  }
  if (acc.empty()) return;
  std::vector<Series> series;
  for (const char* algo : {"proposed", "random", "greedy", "local"}) {
    auto it = acc.find(algo);
    if (it == acc.end()) continue;
    Series s{algo, kAlgoColors.at(algo), {}};
    for (const auto& [x, cell] : it->second)
      s.points.push_back({x, cell.first / cell.second});
    series.push_back(std::move(s));
  }
  write_text(dir / outfile,
             svg_chart("Overall energy consumption", xlabel, "energy (J)", series));
}

}  // namespace

void emit_plots(const std::string& results_dir) {
  const fs::path dir(results_dir);
  const auto rows = read_csv(dir / "results.csv");
  if (rows.size() <= 1) throw std::runtime_error("emit_plots: empty result table");

  if (fs::exists(dir / "trace.csv")) {
    const auto trace = read_csv(dir / "trace.csv");
    Series s{"proposed", kAlgoColors.at("proposed"), {}};
    for (size_t i = 1; i < trace.size(); ++i)
      s.points.push_back({std::stod(trace[i][0]), std::stod(trace[i][1])});
    if (s.points.empty())
      throw std::runtime_error("emit_plots: empty convergence trace");
    write_text(dir / "convergence.svg",
               svg_chart("Convergence", "iteration", "energy (J)", {s}));
  }

  if (fs::exists(dir / "trajectory.csv")) {
    std::vector<Series> series;
    const std::vector<Vec2> path = csv_points(dir / "trajectory.csv");
    if (path.empty()) throw std::runtime_error("emit_plots: empty trajectory series");
    series.push_back({"optimized", "#d62728", path});
    if (fs::exists(dir / "straight.csv"))
      series.push_back({"straight line", "#7f7f7f", csv_points(dir / "straight.csv")});
    if (fs::exists(dir / "ues.csv")) {
      Series ues{"UEs", "#1f77b4", csv_points(dir / "ues.csv"), /*line=*/false};
      series.push_back(std::move(ues));
    }
    write_text(dir / "trajectory.svg",
               svg_chart("UAV trajectory", "x (m)", "y (m)", series, true));
  }

  emit_sweep_plot(dir, rows, "storage_sweep", "UAV storage capacity (units)",
                  "energy_vs_storage.svg");
  emit_sweep_plot(dir, rows, "workload_sweep", "workload coefficient",
                  "energy_vs_workload.svg");
}

}  // namespace agc
