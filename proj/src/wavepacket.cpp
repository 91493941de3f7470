#include "gwp/wavepacket.hpp"

#include <cmath>

#include <Eigen/LU>

namespace gwp {

void SimulationConfig::validate() const {
  if (dim <= 0) throw Error(ErrorCode::config, "dim must be positive");
  if (hbar <= 0) throw Error(ErrorCode::config, "hbar must be positive");
  if (mass <= 0) throw Error(ErrorCode::config, "mass must be positive");
  if (dt <= 0) throw Error(ErrorCode::config, "dt must be positive");
  if (t_end < 0) throw Error(ErrorCode::config, "t_end must be nonnegative");
  if (stride <= 0) throw Error(ErrorCode::config, "stride must be positive");
  if (quad_order < 1) throw Error(ErrorCode::config, "quad_order must be at least 1");
  if (integrator == IntegratorKind::variational_splitting &&
      dynamics != DynamicsVariant::asymptotic)
    throw Error(ErrorCode::config,
                "variational splitting requires the asymptotic dynamics variant");
}

ReducedState::ReducedState(Vec q_in, Vec p_in, SiegelPoint c_in)
    : q(std::move(q_in)), p(std::move(p_in)), C(std::move(c_in)) {
  if (q.size() != p.size() || static_cast<int>(q.size()) != C.dim())
    throw Error(ErrorCode::config, "q, p and width matrix dimensions disagree");
}

HagedornState::HagedornState(Vec q_in, Vec p_in, CMat q_mat, CMat p_mat, double s, double tol)
    : HagedornState(raw_tag{}, std::move(q_in), std::move(p_in), std::move(q_mat),
                    std::move(p_mat), s) {
  const auto [r1, r2] = constraint_residuals(Q, P);
  if (r1 > tol || r2 > tol)
    throw Error(ErrorCode::invariant, "symplectic-pair constraint residuals (" +
                                          std::to_string(r1) + ", " + std::to_string(r2) +
                                          ") exceed tolerance");
}

HagedornState::HagedornState(raw_tag, Vec q_in, Vec p_in, CMat q_mat, CMat p_mat, double s)
    : q(std::move(q_in)), p(std::move(p_in)), Q(std::move(q_mat)), P(std::move(p_mat)), S(s) {
  const auto d = q.size();
  if (p.size() != d || Q.rows() != d || Q.cols() != d || P.rows() != d || P.cols() != d)
    throw Error(ErrorCode::config, "Hagedorn state dimensions disagree");
}

HagedornState HagedornState::raw(Vec q_in, Vec p_in, CMat q_mat, CMat p_mat, double s) {
  return HagedornState(raw_tag{}, std::move(q_in), std::move(p_in), std::move(q_mat),
                       std::move(p_mat), s);
}

SymplecticMatrix2d HagedornState::lift(double tol) const { return SymplecticMatrix2d(Q, P, tol); }

double BranchTracker::update(Complex det_q) {
  const double raw = std::arg(det_q);
  if (!started_) {
    started_ = true;
    theta_ = raw;
    last_raw_ = raw;
    return theta_;
  }
  double delta = raw - last_raw_;
  const double two_pi = 2.0 * M_PI;
  while (delta > M_PI) delta -= two_pi;
  while (delta < -M_PI) delta += two_pi;
  theta_ += delta;
  last_raw_ = raw;
  return theta_;
}

Complex evaluate_psi0(const ReducedState& w, const SimulationConfig& cfg, const Vec& x) {
  if (x.size() != w.q.size()) throw Error(ErrorCode::config, "evaluation point dimension mismatch");
  const Vec dx = x - w.q;
  const Complex quad =
      0.5 * (dx.dot(w.A() * dx) + Complex(0, 1) * dx.dot(w.B() * dx)) + w.p.dot(dx);
  const double det_b = w.B().determinant();
  const double norm = std::pow(det_b / std::pow(M_PI * cfg.hbar, w.dim()), 0.25);
  return norm * std::exp(Complex(0, 1) / cfg.hbar * quad);
}

double chi_norm_squared(const FullState& y, const SimulationConfig& cfg) {
  const double det_b = y.w.B().determinant();
  return std::sqrt(std::pow(M_PI * cfg.hbar, y.dim()) / det_b) *
         std::exp(-2.0 * y.delta / cfg.hbar);
}

double delta_star(const SimulationConfig& cfg, const Mat& b) {
  return 0.25 * cfg.hbar *
         std::log(std::pow(M_PI * cfg.hbar, b.rows()) / b.determinant());
}

Complex evaluate_hagedorn_ground(const HagedornState& h, const SimulationConfig& cfg, const Vec& x,
                                 BranchTracker& branch) {
  if (x.size() != h.q.size()) throw Error(ErrorCode::config, "evaluation point dimension mismatch");
  const Complex det_q = h.Q.determinant();
  if (std::abs(det_q) == 0.0)
    throw Error(ErrorCode::numerical, "det Q = 0: width parametrization degenerate");
  const double theta = branch.update(det_q);
  // (det Q)^{-1/2} on the tracked branch
  const Complex det_root_inv =
      std::exp(Complex(0, -0.5 * theta)) / std::sqrt(std::abs(det_q));

  Eigen::FullPivLU<CMat> lu(h.Q.transpose());
  if (!lu.isInvertible())
    throw Error(ErrorCode::numerical, "singular Q in ground-state evaluation");
  const CMat c = lu.solve(h.P.transpose()).transpose();

  const CVec dx = (x - h.q).cast<Complex>();
  const Complex quad = 0.5 * (dx.transpose() * c * dx)(0, 0) + Complex(h.p.dot(x - h.q));
  return std::pow(M_PI * cfg.hbar, -0.25 * h.dim()) * det_root_inv *
         std::exp(Complex(0, 1) / cfg.hbar * quad);
}

ReducedState hagedorn_to_reduced(const HagedornState& h, double check_tol) {
  Eigen::FullPivLU<CMat> lu(h.Q.transpose());
  if (!lu.isInvertible()) throw Error(ErrorCode::numerical, "singular Q");
  const CMat c = lu.solve(h.P.transpose()).transpose();
  const Mat a = 0.5 * (c.real() + c.real().transpose());
  const Mat b = 0.5 * (c.imag() + c.imag().transpose());
  const Mat qq = (h.Q * h.Q.adjoint()).real();
  const double id_res = max_abs(Mat(b * qq - Mat::Identity(h.dim(), h.dim())));
  if (id_res > check_tol)
    throw Error(ErrorCode::invariant,
                "Im(P Q^{-1}) (Q Q*) deviates from identity by " + std::to_string(id_res));
  return ReducedState(h.q, h.p, SiegelPoint(a, b));
}

FullState reduced_to_full(const ReducedState& w, double phi, double delta) {
  return FullState{w, phi, delta};
}

ReducedState full_to_reduced(const FullState& y) { return y.w; }

ReducedState so_action_reduced(const Mat& r, const ReducedState& w, const Tolerances& tol) {
  require_rotation(r, tol.rotation);
  return ReducedState(r * w.q, r * w.p, rotate(r, w.C, tol));
}

HagedornState hagedorn_from_reduced(const ReducedState& w, double s) {
  auto [q_mat, p_mat] = siegel_to_qp(w.C);
  return HagedornState(w.q, w.p, std::move(q_mat), std::move(p_mat), s);
}

}  // namespace gwp
