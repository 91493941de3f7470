#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gwp/dynamics.hpp"
#include "gwp/integrators.hpp"

namespace gwp {

/// Scalar time series of a monitored quantity; the reference is the value at
/// the first record.
struct InvariantSeries {
  std::string name;
  std::vector<double> times;
  std::vector<double> values;

  double reference() const;
  void validate() const;  // requires strictly increasing times
};

struct DriftReport {
  double max_abs_drift = 0.0;
  double max_rel_drift = 0.0;
  double peak_to_peak = 0.0;
};

DriftReport drift_report(const InvariantSeries& series);
std::string drift_report_json(const std::string& name, const DriftReport& r);

template <class State>
InvariantSeries make_series(const Trajectory<State>& traj, std::string name,
                            const std::function<double(const State&)>& f) {
  InvariantSeries s;
  s.name = std::move(name);
  s.times = traj.times;
  s.values.reserve(traj.states.size());
  for (const auto& st : traj.states) s.values.push_back(f(st));
  s.validate();
  return s;
}

/// Index pairs (i, j) with i > j enumerating the independent entries of an
/// antisymmetric d x d matrix, in the order (2,1), (3,1), (3,2), (4,1), ...
std::vector<std::pair<int, int>> antisym_index_pairs(int d);

/// The independent entries M_{ij}, i > j, in antisym_index_pairs order.
Vec antisym_components(const AntisymMat& m);

/// J0 = q <> p; for d = 3 its vee is q x p.
AntisymMat classical_angular_momentum(const Vec& q, const Vec& p);

/// q <> p - (hbar/2)[B^{-1}, A]; reduces to the classical value at hbar = 0.
AntisymMat semiclassical_angular_momentum(const ReducedState& w, double hbar);

/// Conserved quantity of a G-symmetric classical Hamiltonian, with enough
/// derivative information to contract with tangent data.
class MomentumMapModel {
 public:
  virtual ~MomentumMapModel() = default;
  virtual int components() const = 0;
  virtual Vec value(const Vec& q, const Vec& p) const = 0;
  /// components() x 2d matrix of derivatives with respect to z = (q, p).
  virtual Mat gradient(const Vec& q, const Vec& p) const = 0;
};

/// Angular momentum components (q <> p)_{ij}, i > j, in antisym_index_pairs
/// order.
class AngularMomentumMap : public MomentumMapModel {
 public:
  explicit AngularMomentumMap(int dim);
  int components() const override;
  Vec value(const Vec& q, const Vec& p) const override;
  Mat gradient(const Vec& q, const Vec& p) const override;

 private:
  int dim_;
};

/// Linear momentum J = p (translation symmetry).
class TranslationMomentumMap : public MomentumMapModel {
 public:
  explicit TranslationMomentumMap(int dim) : dim_(dim) {}
  int components() const override { return dim_; }
  Vec value(const Vec&, const Vec& p) const override { return p; }
  Mat gradient(const Vec& q, const Vec& p) const override;

 private:
  int dim_;
};

/// Full contraction DJ(z) Y (components x 2d); every column is conserved along
/// the (q, p, Y) flow when the classical Hamiltonian has the symmetry.
Mat hagedorn_noether(const Vec& q, const Vec& p, const SymplecticMatrix2d& y,
                     const MomentumMapModel& j);

/// d = 3 rotational invariant hat(q) P - hat(p) Q of the (q, p, Q, P) flow.
CMat hagedorn_so3_invariant(const Vec& q, const Vec& p, const CMat& Q, const CMat& P);

/// Momentum map of the global phase symmetry: -hbar ||chi||^2.
double s1_momentum_map(const FullState& y, const SimulationConfig& cfg);

/// Scalar observable on the reduced space.
using ReducedObservable = std::function<double(const ReducedState&)>;

/// Gradient of an observable in the (q, p, A, B^{-1}) chart, computed by
/// central differences with per-coordinate step h = scale (1 + |coordinate|).
struct ReducedGradient {
  Vec dq, dp;
  Mat dA, dB_inv;
};

ReducedGradient reduced_gradient(const ReducedObservable& f, const ReducedState& w,
                                 double fd_scale = 1e-6);

/// The reduced-space bracket
///   {F, G} = dF/dq dG/dp - dG/dq dF/dp
///            + (4/hbar)(dF/dB^{-1} dG/dA - dG/dB^{-1} dF/dA),
/// antisymmetric in (F, G) by construction. Throws for hbar = 0, where the
/// width term is undefined.
double poisson_bracket(const ReducedObservable& f, const ReducedObservable& g,
                       const ReducedState& w, double hbar, double fd_scale = 1e-6);

/// Expectation of the angular momentum operator in the packet, via analytic
/// Gaussian moments: for d = 3 the vector <x X (-i hbar grad)>, for d = 2 the
/// scalar <x1 p2 - x2 p1> (size-1 vector). Independent of the momentum-map
/// code path.
Vec expected_angular_momentum(const ReducedState& w, const SimulationConfig& cfg);

/// Momentum map of the tangent-lifted action: dJ(z) . dz.
Vec first_variation_noether(const Vec& q, const Vec& p, const Vec& dq, const Vec& dp,
                            const MomentumMapModel& j);

/// || J(R.w) - R J(w) R^T ||_max for the semiclassical angular momentum.
double equivariance_residual(const ReducedState& w, const Mat& r, double hbar);

/// | H(R.w) - H(w) | for the chosen Hamiltonian variant.
double invariance_residual(DynamicsVariant variant, const ReducedState& w, const Mat& r,
                           const PotentialModel& model, const SimulationConfig& cfg);

/// Per-record ||P Q^{-1} - (A + iB)||_max of two trajectories started from the
/// same initial data; the time grids must agree.
InvariantSeries lift_consistency_residual(const Trajectory<HagedornState>& lifted,
                                          const Trajectory<ReducedState>& reduced);

}  // namespace gwp
