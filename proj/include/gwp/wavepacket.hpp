#pragma once

#include "gwp/geometry.hpp"

namespace gwp {

enum class DynamicsVariant { exact, asymptotic };
enum class IntegratorKind { variational_splitting, rk4 };

/// Scalar parameters shared by all evolution equations.
struct SimulationConfig {
  int dim = 2;
  double hbar = 1.0;
  double mass = 1.0;
  double dt = 0.01;
  double t_end = 1.0;
  int stride = 1;
  DynamicsVariant dynamics = DynamicsVariant::asymptotic;
  IntegratorKind integrator = IntegratorKind::variational_splitting;
  int quad_order = 20;  // Gauss-Hermite order for quadrature fallbacks
  Tolerances tol;

  void validate() const;
};

/// Reduced phase point (q, p, A, B) on T*R^d x Sigma_d.
struct ReducedState {
  Vec q, p;
  SiegelPoint C;

  ReducedState(Vec q_in, Vec p_in, SiegelPoint c_in);
  int dim() const { return static_cast<int>(q.size()); }
  const Mat& A() const { return C.A(); }
  const Mat& B() const { return C.B(); }
};

/// Reduced state plus the phase phi and the log-norm parameter delta. phi is
/// stored unwrapped; no modular reduction is applied.
struct FullState {
  ReducedState w;
  double phi = 0.0;
  double delta = 0.0;

  int dim() const { return w.dim(); }
};

/// Wave packet in the (q, p, Q, P, S) parametrization. Q and P are complex
/// d x d matrices subject to the symplectic-pair constraints; tolerances are
/// looser than for geometry types so that integrated states remain admissible.
struct HagedornState {
  Vec q, p;
  CMat Q, P;
  double S = 0.0;

  HagedornState(Vec q_in, Vec p_in, CMat q_mat, CMat p_mat, double s = 0.0,
                double tol = Tolerances{}.hagedorn);

  /// Skips constraint validation; for integrator-internal stage values.
  static HagedornState raw(Vec q_in, Vec p_in, CMat q_mat, CMat p_mat, double s);

  int dim() const { return static_cast<int>(q.size()); }
  SymplecticMatrix2d lift(double tol = Tolerances{}.symplectic) const;

 private:
  struct raw_tag {};
  HagedornState(raw_tag, Vec q_in, Vec p_in, CMat q_mat, CMat p_mat, double s);
};

/// Keeps arg(det Q) continuous along a trajectory so that (det Q)^{-1/2} stays
/// on one branch. Starts on the principal branch; each update must move the
/// argument by less than pi.
class BranchTracker {
 public:
  /// Feeds the current det Q; returns the unwrapped argument.
  double update(Complex det_q);
  double angle() const { return theta_; }

 private:
  bool started_ = false;
  double theta_ = 0.0;
  double last_raw_ = 0.0;
};

/// Normalized Gaussian profile at x (phase-free projective representative).
Complex evaluate_psi0(const ReducedState& w, const SimulationConfig& cfg, const Vec& x);

/// Squared norm of the unnormalized packet: sqrt((pi hbar)^d / det B) exp(-2 delta / hbar).
double chi_norm_squared(const FullState& y, const SimulationConfig& cfg);

/// The delta that normalizes the packet for the given width matrix.
double delta_star(const SimulationConfig& cfg, const Mat& b);

/// Ground-state profile in the (q, p, Q, P) parametrization; branch of
/// (det Q)^{-1/2} maintained by the tracker.
Complex evaluate_hagedorn_ground(const HagedornState& h, const SimulationConfig& cfg, const Vec& x,
                                 BranchTracker& branch);

/// C = P Q^{-1}; also checks Im(P Q^{-1}) * (Q Q*) = I, which must hold for
/// constraint-satisfying pairs.
ReducedState hagedorn_to_reduced(const HagedornState& h, double check_tol = 1e-8);

FullState reduced_to_full(const ReducedState& w, double phi, double delta);
ReducedState full_to_reduced(const FullState& y);

/// Rotation action on the reduced space: (q, p, A, B) -> (Rq, Rp, RAR^T, RBR^T).
ReducedState so_action_reduced(const Mat& r, const ReducedState& w,
                               const Tolerances& tol = Tolerances{});

/// Seeds a Hagedorn state from a reduced one through the canonical section,
/// with action value s.
HagedornState hagedorn_from_reduced(const ReducedState& w, double s = 0.0);

}  // namespace gwp
