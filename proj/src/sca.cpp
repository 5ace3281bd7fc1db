#include "agc/sca.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "agc/energy.hpp"

namespace agc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kProjTol = 1e-10;  // m, Dykstra sweep convergence
constexpr int kProjMaxSweeps = 2000;
constexpr double kFeasTol = 1e-10;  // m, residual violation allowed in iterates

double rate_of_s(double s, double gamma, double bandwidth) {
  return bandwidth * std::log2(1.0 + gamma / s);
}

double rate_slope_s(double s, double gamma, double bandwidth) {
  // d/ds [B log2(1 + gamma/s)] = -B*gamma / (ln2 * s * (s + gamma))
  return -bandwidth * gamma / (std::log(2.0) * s * (s + gamma));
}

// One transmit-energy term c / R(s), s = h^2 + |p_q - u|^2.
struct Term {
  int q = 0;  // trajectory position index (1..T), q = slot + 1
  Vec2 ue;
  double coeff = 0.0;  // tx_power * input_bits
  double gamma = 0.0;  // tx_power * g0 / N0
  // linearization of the rate at the current expansion trajectory
  double r0 = 0.0, slope = 0.0, s0 = 0.0;
};

// Projection onto the intersection of step constraints and coverage balls
// via Dykstra's alternating projections. Positions 0 and T stay fixed.
class FeasibleSet {
 public:
  FeasibleSet(const ScenarioSpec& spec, const std::vector<Term>& terms)
      : spec_(spec), T_(spec.num_slots) {
    for (const Term& t : terms)
      if (t.q >= 1 && t.q <= T_ - 1) balls_.push_back({t.q, t.ue});
  }

  // projects in place; returns the residual infeasibility after projection
  double project(std::vector<Vec2>& pos) const {
    const size_t n_sets = static_cast<size_t>(T_) + balls_.size();
    std::vector<Vec2> corr(2 * n_sets);  // two correction slots per set
    for (int sweep = 0; sweep < kProjMaxSweeps; ++sweep) {
      double moved = 0.0;
      size_t m = 0;
      for (int t = 0; t < T_; ++t, ++m)
        moved = std::max(moved, project_step(pos, t, &corr[2 * m], &corr[2 * m + 1]));
      for (const Ball& b : balls_) {
        moved = std::max(moved, project_ball(pos, b, &corr[2 * m]));
        ++m;
      }
      if (moved < kProjTol) break;
    }
    return violation(pos);
  }

  double violation(const std::vector<Vec2>& pos) const {
    double v = 0.0;
    for (int t = 0; t < T_; ++t)
      v = std::max(v, dist(pos[t + 1], pos[t]) - spec_.uav.max_step);
    for (const Ball& b : balls_)
      v = std::max(v, dist(pos[b.q], b.center) - spec_.uav.coverage_radius);
    return v;
  }

 private:
  struct Ball {
    int q;
    Vec2 center;
  };

  double project_step(std::vector<Vec2>& pos, int t, Vec2* ca, Vec2* cb) const {
    const bool a_free = t >= 1 && t <= T_ - 1;
    const bool b_free = t + 1 >= 1 && t + 1 <= T_ - 1;
    Vec2 a = pos[t] + (a_free ? *ca : Vec2{});
    Vec2 b = pos[t + 1] + (b_free ? *cb : Vec2{});
    const double d = dist(a, b);
    const double cap = spec_.uav.max_step;
    Vec2 na = a, nb = b;
    if (d > cap) {
      const Vec2 u = (1.0 / d) * (b - a);
      if (a_free && b_free) {
        const double shift = 0.5 * (d - cap);
        na = a + shift * u;
        nb = b - shift * u;
      } else if (a_free) {
        na = b - cap * u;
      } else if (b_free) {
        nb = a + cap * u;
      }
    }
    double moved = 0.0;
    if (a_free) {
      *ca = a - na;
      moved = std::max(moved, dist(pos[t], na));
      pos[t] = na;
    }
    if (b_free) {
      *cb = b - nb;
      moved = std::max(moved, dist(pos[t + 1], nb));
      pos[t + 1] = nb;
    }
    return moved;
  }

  double project_ball(std::vector<Vec2>& pos, const Ball& ball, Vec2* c) const {
    Vec2 p = pos[ball.q] + *c;
    const double d = dist(p, ball.center);
    Vec2 np = p;
    if (d > spec_.uav.coverage_radius)
      np = ball.center + (spec_.uav.coverage_radius / d) * (p - ball.center);
    *c = p - np;
    const double moved = dist(pos[ball.q], np);
    pos[ball.q] = np;
    return moved;
  }

  const ScenarioSpec& spec_;
  int T_;
  std::vector<Ball> balls_;
};

double surrogate_objective(const std::vector<Term>& terms, const std::vector<Vec2>& pos,
                           double altitude) {
  double e = 0.0;
  for (const Term& t : terms) {
    const double s = altitude * altitude + norm2(pos[t.q] - t.ue);
    const double rhat = t.r0 + t.slope * (s - t.s0);
    if (rhat <= 0.0) return kInf;
    e += t.coeff / rhat;
  }
  return e;
}

void surrogate_gradient(const std::vector<Term>& terms, const std::vector<Vec2>& pos,
                        double altitude, std::vector<Vec2>& grad) {
  for (Vec2& g : grad) g = {0.0, 0.0};
  for (const Term& t : terms) {
    const Vec2 diff = pos[t.q] - t.ue;
    const double s = altitude * altitude + norm2(diff);
    const double rhat = t.r0 + t.slope * (s - t.s0);
    // d/dp [c / rhat(s)] = -c * slope / rhat^2 * 2 (p - u)
    const double scale = -t.coeff * t.slope / (rhat * rhat) * 2.0;
    grad[t.q].x += scale * diff.x;
    grad[t.q].y += scale * diff.y;
  }
}

double true_uav_energy(const std::vector<Term>& terms, const std::vector<Vec2>& pos,
                       double altitude, double bandwidth) {
  double e = 0.0;
  for (const Term& t : terms) {
    const double s = altitude * altitude + norm2(pos[t.q] - t.ue);
    e += t.coeff / rate_of_s(s, t.gamma, bandwidth);
  }
  return e;
}

}  // namespace

double surrogate_rate(Vec2 traj_point, Vec2 ue_pos, Vec2 expansion_point,
                      double altitude, double tx_power,
                      const PhysicsConstants& physics) {
  const double h2 = altitude * altitude;
  const double s0 = h2 + norm2(expansion_point - ue_pos);
  if (s0 <= 0.0) throw std::domain_error("surrogate_rate: degenerate geometry");
  const double s = h2 + norm2(traj_point - ue_pos);
  const double gamma = tx_power * physics.ref_channel_gain / physics.noise_power;
  return rate_of_s(s0, gamma, physics.bandwidth) +
         rate_slope_s(s0, gamma, physics.bandwidth) * (s - s0);
}

ScaResult sca_optimize(const ScenarioSpec& spec, const Placement& placement,
                       const OffloadPlan& plan, const Trajectory& init_traj,
                       const ScaOptions& opts) {
  const int T = spec.num_slots;
  {
    const std::vector<Violation> bad = check_feasible(spec, placement, plan, init_traj);
    for (const Violation& v : bad)
      if (v.constraint == "C3" || v.constraint == "C4")
        throw std::runtime_error("sca_optimize: infeasible initial trajectory (" +
                                 v.constraint + ": " + v.detail + ")");
  }

  // transmit-energy terms tied to the trajectory: UAV-assigned pairs whose
  // serving position is free (interior); everything else is constant
  std::vector<Term> terms;
  double const_energy = 0.0;
  for (int i = 0; i < spec.num_ues(); ++i) {
    for (int t = 0; t < T; ++t) {
      const Venue v = plan.venue[i][t];
      if (v == Venue::Uav && t + 1 <= T - 1) {
        Term term;
        term.q = t + 1;
        term.ue = spec.ues[i].position;
        term.coeff = spec.ues[i].tx_power * spec.task(i, t).input_bits;
        term.gamma = spec.ues[i].tx_power * spec.physics.ref_channel_gain /
                     spec.physics.noise_power;
        terms.push_back(term);
      } else {
        const_energy += task_energy(spec, i, t, v, init_traj);
      }
    }
  }

  ScaResult result;
  result.traj = init_traj;
  if (terms.empty()) {
    result.objective = const_energy;
    result.objective_trace = {const_energy};
    return result;
  }

  const double h = spec.uav.altitude;
  const double B = spec.physics.bandwidth;
  const FeasibleSet feasible(spec, terms);
  std::vector<Vec2> pos = init_traj.positions;
  double e_true = const_energy + true_uav_energy(terms, pos, h, B);
  result.objective_trace.push_back(e_true);

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    // re-expand the surrogate at the current trajectory
    for (Term& t : terms) {
      t.s0 = h * h + norm2(pos[t.q] - t.ue);
      t.r0 = rate_of_s(t.s0, t.gamma, B);
      t.slope = rate_slope_s(t.s0, t.gamma, B);
    }

    // convex subproblem: projected gradient descent with backtracking
    std::vector<Vec2> x = pos;
    double fx = surrogate_objective(terms, x, h);
    std::vector<Vec2> grad(T + 1), trial(T + 1);
    double alpha = 1e6;  // gradients are of order 1e-6 J/m; rescaled adaptively
    for (int pg = 0; pg < opts.max_pg_iters; ++pg) {
      surrogate_gradient(terms, x, h, grad);
      // KKT residual: displacement of a unit-step projected gradient point
      trial = x;
      for (int q = 1; q <= T - 1; ++q) trial[q] = trial[q] - grad[q];
      if (feasible.project(trial) > 1e-6)
        throw std::runtime_error("sca_optimize: subproblem projection failed");
      double resid = 0.0;
      for (int q = 1; q <= T - 1; ++q) resid = std::max(resid, dist(trial[q], x[q]));
      if (resid <= opts.kkt_tol) break;

      bool accepted = false;
      for (int bt = 0; bt < 60; ++bt) {
        trial = x;
        for (int q = 1; q <= T - 1; ++q) trial[q] = trial[q] - alpha * grad[q];
        feasible.project(trial);
        const double ft = surrogate_objective(terms, trial, h);
        double step2 = 0.0;
        for (int q = 1; q <= T - 1; ++q) step2 += norm2(trial[q] - x[q]);
        if (step2 == 0.0) break;
        if (ft <= fx - 1e-4 / alpha * step2) {
          x.swap(trial);
          fx = ft;
          alpha *= 1.5;
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted) break;
    }

    // only adopt iterates that are cleanly inside the feasible set; a
    // projection that stalled at its sweep limit could otherwise leak a
    // residual constraint violation into the returned trajectory
    if (feasible.violation(x) > kFeasTol) {
      feasible.project(x);
      if (feasible.violation(x) > kFeasTol) break;
    }
    const double e_new = const_energy + true_uav_energy(terms, x, h, B);
    ++result.iterations;
    if (e_new > e_true + 1e-12) break;  // numerical stall; keep current point
    const double decrease = e_true - e_new;
    pos = x;
    e_true = e_new;
    result.objective_trace.push_back(e_true);
    if (decrease < opts.obj_tol) break;
  }

  result.traj.positions = pos;
  result.objective = e_true;
  return result;
}

}  // namespace agc
