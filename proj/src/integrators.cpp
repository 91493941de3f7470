#include "gwp/integrators.hpp"

#include <Eigen/LU>

namespace gwp {

namespace {

Mat symmetrize(const Mat& m) { return 0.5 * (m + m.transpose()); }

// Exact potential subflow of the splitting; q and B stay frozen.
void potential_kick(Vec& p, Mat& a, const Vec& q, const Mat& b_inv, double t,
                    const PotentialModel& model, const SimulationConfig& cfg) {
  Vec force = model.gradient(q);
  if (cfg.hbar != 0.0) force += 0.25 * cfg.hbar * hessian_trace_gradient(model, q, b_inv);
  p -= t * force;
  a -= t * model.hessian(q);
}

// Exact kinetic subflow: free flight of q and the closed-form free width flow
// C -> C (I + (t/m) C)^{-1}, which keeps C in the Siegel upper half space.
void kinetic_drift(Vec& q, Mat& a, Mat& b, const Vec& p, double t, const SimulationConfig& cfg) {
  q += t * p / cfg.mass;
  const int d = static_cast<int>(q.size());
  const CMat c = a.cast<Complex>() + Complex(0, 1) * b.cast<Complex>();
  const CMat den = CMat::Identity(d, d) + (t / cfg.mass) * c;
  Eigen::FullPivLU<CMat> lu(den.transpose());
  if (!lu.isInvertible())
    throw Error(ErrorCode::numerical, "free width flow produced a singular resolvent");
  const CMat cn = lu.solve(c.transpose()).transpose();
  a = symmetrize(cn.real());
  b = symmetrize(cn.imag());
}

}  // namespace

PhasePoint stormer_verlet_step(const PhasePoint& z, double dt, const PotentialModel& model,
                               const SimulationConfig& cfg) {
  Vec p_half = z.p - 0.5 * dt * model.gradient(z.q);
  Vec q_new = z.q + dt * p_half / cfg.mass;
  Vec p_new = p_half - 0.5 * dt * model.gradient(q_new);
  return {std::move(q_new), std::move(p_new)};
}

HagedornState hagedorn_verlet_step(const HagedornState& h, double dt, const PotentialModel& model,
                                   const SimulationConfig& cfg) {
  const Mat hess0 = model.hessian(h.q);
  const double v0 = model.value(h.q);
  Vec p_half = h.p - 0.5 * dt * model.gradient(h.q);
  CMat p_mat_half = h.P - 0.5 * dt * hess0.cast<Complex>() * h.Q;

  Vec q_new = h.q + dt * p_half / cfg.mass;
  CMat q_mat_new = h.Q + (dt / cfg.mass) * p_mat_half;

  const Mat hess1 = model.hessian(q_new);
  const double v1 = model.value(q_new);
  Vec p_new = p_half - 0.5 * dt * model.gradient(q_new);
  CMat p_mat_new = p_mat_half - 0.5 * dt * hess1.cast<Complex>() * q_mat_new;

  const double s_new =
      h.S + dt * (p_half.squaredNorm() / (2.0 * cfg.mass) - 0.5 * (v0 + v1));
  return HagedornState::raw(std::move(q_new), std::move(p_new), std::move(q_mat_new),
                            std::move(p_mat_new), s_new);
}

ReducedState variational_splitting_step(const ReducedState& w, double dt,
                                        const PotentialModel& model,
                                        const SimulationConfig& cfg) {
  Vec q = w.q;
  Vec p = w.p;
  Mat a = w.A();
  Mat b = w.B();
  potential_kick(p, a, q, w.C.B_inverse(), 0.5 * dt, model, cfg);
  kinetic_drift(q, a, b, p, dt, cfg);
  const Mat b_inv_new = symmetrize(b.inverse());
  potential_kick(p, a, q, b_inv_new, 0.5 * dt, model, cfg);
  return ReducedState(std::move(q), std::move(p), SiegelPoint(a, b, cfg.tol));
}

ReducedState advance(const ReducedState& s, const TangentReduced& t, double h) {
  return ReducedState(s.q + h * t.dq, s.p + h * t.dp,
                      SiegelPoint(Mat(s.A() + h * t.dA), Mat(s.B() + h * t.dB)));
}

FullState advance(const FullState& s, const TangentFull& t, double h) {
  return FullState{advance(s.w, t.w, h), s.phi + h * t.dphi, s.delta + h * t.ddelta};
}

HagedornState advance(const HagedornState& s, const TangentHagedorn& t, double h) {
  return HagedornState::raw(s.q + h * t.dq, s.p + h * t.dp, s.Q + h * t.dQ, s.P + h * t.dP,
                            s.S + h * t.dS);
}

FirstVariationState advance(const FirstVariationState& s, const TangentFirstVariation& t,
                            double h) {
  return FirstVariationState{s.q + h * t.q_dot, s.p + h * t.p_dot, s.dq + h * t.dq_dot,
                             s.dp + h * t.dp_dot};
}

}  // namespace gwp
