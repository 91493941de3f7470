#include "gwp/dynamics.hpp"

namespace gwp {

namespace {

Mat symmetrize(const Mat& m) { return 0.5 * (m + m.transpose()); }

// Width-matrix part shared by the exact and asymptotic systems, given the
// effective Hessian term.
void width_rates(const Mat& a, const Mat& b, const Mat& hess_term, double mass, Mat& da, Mat& db) {
  da = -(a * a - b * b) / mass - hess_term;
  db = -(a * b + b * a) / mass;
  da = symmetrize(da);
  db = symmetrize(db);
}

}  // namespace

TangentReduced operator+(const TangentReduced& a, const TangentReduced& b) {
  return {a.dq + b.dq, a.dp + b.dp, a.dA + b.dA, a.dB + b.dB};
}
TangentReduced operator*(double s, const TangentReduced& t) {
  return {s * t.dq, s * t.dp, s * t.dA, s * t.dB};
}
TangentFull operator+(const TangentFull& a, const TangentFull& b) {
  return {a.w + b.w, a.dphi + b.dphi, a.ddelta + b.ddelta};
}
TangentFull operator*(double s, const TangentFull& t) {
  return {s * t.w, s * t.dphi, s * t.ddelta};
}
TangentHagedorn operator+(const TangentHagedorn& a, const TangentHagedorn& b) {
  return {a.dq + b.dq, a.dp + b.dp, a.dQ + b.dQ, a.dP + b.dP, a.dS + b.dS};
}
TangentHagedorn operator*(double s, const TangentHagedorn& t) {
  return {s * t.dq, s * t.dp, s * t.dQ, s * t.dP, s * t.dS};
}
TangentFirstVariation operator+(const TangentFirstVariation& a, const TangentFirstVariation& b) {
  return {a.q_dot + b.q_dot, a.p_dot + b.p_dot, a.dq_dot + b.dq_dot, a.dp_dot + b.dp_dot};
}
TangentFirstVariation operator*(double s, const TangentFirstVariation& t) {
  return {s * t.q_dot, s * t.p_dot, s * t.dq_dot, s * t.dp_dot};
}

TangentFull heller_full_rhs(const FullState& y, const PotentialModel& model,
                            const SimulationConfig& cfg) {
  const ReducedState& w = y.w;
  const GaussianAverages avg = gaussian_average(model, w.q, w.B(), cfg.hbar);
  const Mat binv = w.C.B_inverse();

  TangentFull out;
  out.w.dq = w.p / cfg.mass;
  out.w.dp = -avg.gradient;
  width_rates(w.A(), w.B(), avg.hessian, cfg.mass, out.w.dA, out.w.dB);
  out.dphi = w.p.squaredNorm() / (2.0 * cfg.mass) - avg.value -
             (cfg.hbar / (2.0 * cfg.mass)) * w.B().trace() +
             0.25 * cfg.hbar * (binv * avg.hessian).trace();
  out.ddelta = (cfg.hbar / (2.0 * cfg.mass)) * w.A().trace();
  return out;
}

TangentReduced heller_reduced_rhs(const ReducedState& w, const PotentialModel& model,
                                  const SimulationConfig& cfg) {
  const GaussianAverages avg = gaussian_average(model, w.q, w.B(), cfg.hbar);
  TangentReduced out;
  out.dq = w.p / cfg.mass;
  out.dp = -avg.gradient;
  width_rates(w.A(), w.B(), avg.hessian, cfg.mass, out.dA, out.dB);
  return out;
}

TangentReduced heller_asymptotic_rhs(const ReducedState& w, const PotentialModel& model,
                                     const SimulationConfig& cfg) {
  TangentReduced out;
  out.dq = w.p / cfg.mass;
  out.dp = -model.gradient(w.q);
  if (cfg.hbar != 0.0)
    out.dp -= 0.25 * cfg.hbar * hessian_trace_gradient(model, w.q, w.C.B_inverse());
  width_rates(w.A(), w.B(), model.hessian(w.q), cfg.mass, out.dA, out.dB);
  return out;
}

CMat riccati_rhs(const SiegelPoint& c, const Vec& q, const PotentialModel& model,
                 const SimulationConfig& cfg) {
  const CMat cc = c.complex_matrix();
  return -(cc * cc) / cfg.mass - model.hessian(q).cast<Complex>();
}

TangentHagedorn hagedorn_rhs(const HagedornState& h, const PotentialModel& model,
                             const SimulationConfig& cfg) {
  TangentHagedorn out;
  out.dq = h.p / cfg.mass;
  out.dp = -model.gradient(h.q);
  out.dQ = h.P / cfg.mass;
  out.dP = -model.hessian(h.q).cast<Complex>() * h.Q;
  out.dS = h.p.squaredNorm() / (2.0 * cfg.mass) - model.value(h.q);
  return out;
}

TangentFirstVariation first_variation_rhs(const FirstVariationState& s,
                                          const PotentialModel& model,
                                          const SimulationConfig& cfg) {
  TangentFirstVariation out;
  out.q_dot = s.p / cfg.mass;
  out.p_dot = -model.gradient(s.q);
  out.dq_dot = s.dp / cfg.mass;
  out.dp_dot = -model.hessian(s.q) * s.dq;
  return out;
}

double classical_hamiltonian(const Vec& q, const Vec& p, const PotentialModel& model,
                             const SimulationConfig& cfg) {
  return p.squaredNorm() / (2.0 * cfg.mass) + model.value(q);
}

double reduced_hamiltonian(const ReducedState& w, const PotentialModel& model,
                           const SimulationConfig& cfg, DynamicsVariant variant) {
  const double kinetic = w.p.squaredNorm() / (2.0 * cfg.mass);
  const Mat binv = w.C.B_inverse();
  const Mat ab2 = w.A() * w.A() + w.B() * w.B();
  if (variant == DynamicsVariant::exact) {
    const GaussianAverages avg = gaussian_average(model, w.q, w.B(), cfg.hbar);
    return kinetic + 0.25 * cfg.hbar / cfg.mass * (binv * ab2).trace() + avg.value;
  }
  return kinetic + model.value(w.q) +
         0.25 * cfg.hbar * (binv * (ab2 / cfg.mass + model.hessian(w.q))).trace();
}

}  // namespace gwp
