#ifndef AGC_SCA_HPP_
#define AGC_SCA_HPP_

#include "agc/types.hpp"

namespace agc {

// First-order lower bound of the UAV link rate in the squared-distance
// variable, expanded around expansion_point. The true rate is convex in the
// squared distance, so the linearization is a global lower bound, tight (in
// value and gradient) at the expansion point, and concave in traj_point.
double surrogate_rate(Vec2 traj_point, Vec2 ue_pos, Vec2 expansion_point,
                      double altitude, double tx_power,
                      const PhysicsConstants& physics);

struct ScaOptions {
  int max_iters = 30;
  double obj_tol = 1e-4;    // J, stop when per-iteration decrease drops below
  double kkt_tol = 1e-6;    // projected-gradient residual of the subproblem
  int max_pg_iters = 4000;
};

struct ScaResult {
  Trajectory traj;
  double objective = 0.0;  // total UE energy of (plan, traj)
  int iterations = 0;
  // true objective before the first iteration and after each accepted one
  std::vector<double> objective_trace;
};

// Successive convex approximation over the UAV trajectory for a fixed
// placement and offload plan. Each round minimizes the surrogate transmit
// energy (a global upper bound on the true energy, tight at the current
// trajectory) over the convex set cut by coverage balls (C3, for
// UAV-assigned pairs), flight steps (C4) and fixed endpoints, using
// projected gradient descent with Dykstra projections. The true objective is
// non-increasing across iterations.
ScaResult sca_optimize(const ScenarioSpec& spec, const Placement& placement,
                       const OffloadPlan& plan, const Trajectory& init_traj,
                       const ScaOptions& opts = {});

}  // namespace agc

#endif
