#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gwp/dynamics.hpp"

namespace gwp {

/// Classical phase point; the Verlet stepper works on these.
struct PhasePoint {
  Vec q, p;
};

/// Kick-drift-kick step for dq = p/m, dp = -grad V(q); second order,
/// time-reversible.
PhasePoint stormer_verlet_step(const PhasePoint& z, double dt, const PotentialModel& model,
                               const SimulationConfig& cfg);

/// Leapfrog for the (q, p, Q, P, S) system: kicks act on (p, P) through
/// (grad V(q), hess V(q) Q), drifts on (q, Q). Every substep is the tangent
/// lift of the corresponding classical substep, so the symplectic-pair
/// constraints are preserved to roundoff. S accumulates
/// dt (|p_half|^2/2m - (V(q) + V(q'))/2).
HagedornState hagedorn_verlet_step(const HagedornState& h, double dt, const PotentialModel& model,
                                   const SimulationConfig& cfg);

/// Strang composition half-potential / full-kinetic / half-potential of the
/// asymptotic Hamiltonian. Potential subflow (q, B frozen):
///   p -= t (grad V(q) + (hbar/4) d/dq tr(B^{-1} hess V(q))),  A -= t hess V(q).
/// Kinetic subflow (p frozen): q += t p/m, C -> C (I + (t/m) C)^{-1}.
/// Both subflows are exact Hamiltonian flows; the composition is symmetric and
/// degenerates to the Verlet step on (q, p) as hbar -> 0.
ReducedState variational_splitting_step(const ReducedState& w, double dt,
                                        const PotentialModel& model,
                                        const SimulationConfig& cfg);

ReducedState advance(const ReducedState& s, const TangentReduced& t, double h);
FullState advance(const FullState& s, const TangentFull& t, double h);
HagedornState advance(const HagedornState& s, const TangentHagedorn& t, double h);
FirstVariationState advance(const FirstVariationState& s, const TangentFirstVariation& t,
                            double h);
inline double advance(double s, double t, double h) { return s + h * t; }

/// Classical fourth-order Runge-Kutta step for any right-hand side whose
/// tangent type supports + and scalar *.
template <class State, class Tangent>
State rk4_step(const std::function<Tangent(const State&)>& rhs, const State& s, double dt) {
  const Tangent k1 = rhs(s);
  const Tangent k2 = rhs(advance(s, k1, 0.5 * dt));
  const Tangent k3 = rhs(advance(s, k2, 0.5 * dt));
  const Tangent k4 = rhs(advance(s, k3, dt));
  return advance(s, (1.0 / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4), dt);
}

template <class State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;

  int records() const { return static_cast<int>(times.size()); }
};

/// Fixed-step driver: records the initial state and every stride-th step
/// (record count = floor(nsteps/stride) + 1). A stepper failure is rethrown
/// with the offending step index and time attached.
template <class State>
Trajectory<State> integrate(State s0, const std::function<State(const State&, double)>& stepper,
                            double dt, long nsteps, int stride) {
  if (dt <= 0) throw Error(ErrorCode::config, "dt must be positive");
  if (nsteps < 0) throw Error(ErrorCode::config, "step count must be nonnegative");
  if (stride <= 0) throw Error(ErrorCode::config, "stride must be positive");
  Trajectory<State> out;
  out.times.reserve(nsteps / stride + 1);
  out.states.reserve(nsteps / stride + 1);
  out.times.push_back(0.0);
  out.states.push_back(s0);
  State s = std::move(s0);
  for (long k = 1; k <= nsteps; ++k) {
    try {
      s = stepper(s, dt);
    } catch (const Error& e) {
      throw Error(e.code(), "state invalidated at step " + std::to_string(k) + " (t = " +
                                std::to_string(k * dt) + "): " + e.what());
    }
    if (k % stride == 0) {
      out.times.push_back(k * dt);
      out.states.push_back(s);
    }
  }
  return out;
}

inline long step_count(const SimulationConfig& cfg) {
  return std::lround(cfg.t_end / cfg.dt);
}

}  // namespace gwp
