#include "gwp/conservation.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/LU>

namespace gwp {

namespace {

Mat symmetrize(const Mat& m) { return 0.5 * (m + m.transpose()); }

ReducedState rebuild(const Vec& q, const Vec& p, const Mat& a, const Mat& b_inv) {
  Mat b = b_inv.inverse();
  return ReducedState(q, p, SiegelPoint(symmetrize(a), symmetrize(b)));
}

}  // namespace

double InvariantSeries::reference() const {
  if (values.empty()) throw Error(ErrorCode::config, "empty invariant series");
  return values.front();
}

void InvariantSeries::validate() const {
  if (times.size() != values.size())
    throw Error(ErrorCode::config, "invariant series times/values length mismatch");
  if (times.empty()) throw Error(ErrorCode::config, "empty invariant series");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] <= times[i - 1])
      throw Error(ErrorCode::config, "invariant series times must be strictly increasing");
}

DriftReport drift_report(const InvariantSeries& series) {
  series.validate();
  const double ref = series.reference();
  DriftReport r;
  double lo = series.values.front(), hi = series.values.front();
  for (double v : series.values) {
    r.max_abs_drift = std::max(r.max_abs_drift, std::abs(v - ref));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  r.peak_to_peak = hi - lo;
  r.max_rel_drift = ref == 0.0 ? r.max_abs_drift : r.max_abs_drift / std::abs(ref);
  return r;
}

std::string drift_report_json(const std::string& name, const DriftReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"name\":\"" << name << "\",\"max_abs_drift\":" << r.max_abs_drift
     << ",\"max_rel_drift\":" << r.max_rel_drift << ",\"peak_to_peak\":" << r.peak_to_peak << "}";
  return os.str();
}

std::vector<std::pair<int, int>> antisym_index_pairs(int d) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i < d; ++i)
    for (int j = 0; j < i; ++j) pairs.emplace_back(i, j);
  return pairs;
}

Vec antisym_components(const AntisymMat& m) {
  const auto pairs = antisym_index_pairs(m.dim());
  Vec v(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) v(k) = m.mat()(pairs[k].first, pairs[k].second);
  return v;
}

AntisymMat classical_angular_momentum(const Vec& q, const Vec& p) { return diamond(q, p); }

AntisymMat semiclassical_angular_momentum(const ReducedState& w, double hbar) {
  Mat j = diamond(w.q, w.p).mat();
  if (hbar != 0.0) {
    const Mat m = w.C.B_inverse() * w.A();
    j -= 0.5 * hbar * (m - m.transpose());
  }
  return AntisymMat(std::move(j));
}

AngularMomentumMap::AngularMomentumMap(int dim) : dim_(dim) {
  if (dim < 2) throw Error(ErrorCode::config, "angular momentum requires dimension >= 2");
}

int AngularMomentumMap::components() const { return dim_ * (dim_ - 1) / 2; }

Vec AngularMomentumMap::value(const Vec& q, const Vec& p) const {
  return antisym_components(diamond(q, p));
}

Mat AngularMomentumMap::gradient(const Vec& q, const Vec& p) const {
  // (q <> p)_{ij} = q_j p_i - q_i p_j
  const auto pairs = antisym_index_pairs(dim_);
  Mat g = Mat::Zero(pairs.size(), 2 * dim_);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    g(k, j) += p(i);   // d/dq_j
    g(k, i) -= p(j);   // d/dq_i
    g(k, dim_ + i) += q(j);  // d/dp_i
    g(k, dim_ + j) -= q(i);  // d/dp_j
  }
  return g;
}

Mat TranslationMomentumMap::gradient(const Vec&, const Vec&) const {
  Mat g = Mat::Zero(dim_, 2 * dim_);
  g.rightCols(dim_) = Mat::Identity(dim_, dim_);
  return g;
}

Mat hagedorn_noether(const Vec& q, const Vec& p, const SymplecticMatrix2d& y,
                     const MomentumMapModel& j) {
  const Mat grad = j.gradient(q, p);
  if (grad.cols() != y.mat().rows())
    throw Error(ErrorCode::config, "momentum map gradient does not match the lift dimension");
  return grad * y.mat();
}

CMat hagedorn_so3_invariant(const Vec& q, const Vec& p, const CMat& Q, const CMat& P) {
  if (q.size() != 3 || p.size() != 3 || Q.rows() != 3 || P.rows() != 3)
    throw Error(ErrorCode::config, "rotational invariant is defined for d = 3");
  const CMat hq = hat(Eigen::Vector3d(q)).mat().cast<Complex>();
  const CMat hp = hat(Eigen::Vector3d(p)).mat().cast<Complex>();
  return hq * P - hp * Q;
}

double s1_momentum_map(const FullState& y, const SimulationConfig& cfg) {
  return -cfg.hbar * chi_norm_squared(y, cfg);
}

ReducedGradient reduced_gradient(const ReducedObservable& f, const ReducedState& w,
                                 double fd_scale) {
  const int d = w.dim();
  ReducedGradient g;
  g.dq = Vec(d);
  g.dp = Vec(d);
  g.dA = Mat(d, d);
  g.dB_inv = Mat(d, d);
  const Mat b_inv = w.C.B_inverse();
  const Mat& a = w.A();

  for (int i = 0; i < d; ++i) {
    const double h = fd_scale * (1.0 + std::abs(w.q(i)));
    Vec qp = w.q, qm = w.q;
    qp(i) += h;
    qm(i) -= h;
    g.dq(i) = (f(ReducedState(qp, w.p, w.C)) - f(ReducedState(qm, w.p, w.C))) / (2.0 * h);
  }
  for (int i = 0; i < d; ++i) {
    const double h = fd_scale * (1.0 + std::abs(w.p(i)));
    Vec pp = w.p, pm = w.p;
    pp(i) += h;
    pm(i) -= h;
    g.dp(i) = (f(ReducedState(w.q, pp, w.C)) - f(ReducedState(w.q, pm, w.C))) / (2.0 * h);
  }
  // Entries of A and B^{-1} are treated as d^2 chart coordinates; perturbing a
  // symmetric point through the symmetric extension means moving the (j,k) and
  // (k,j) entries together by h/2 each.
  for (int j = 0; j < d; ++j)
    for (int k = j; k < d; ++k) {
      const double h = fd_scale * (1.0 + std::abs(a(j, k)));
      Mat delta = Mat::Zero(d, d);
      if (j == k)
        delta(j, j) = h;
      else {
        delta(j, k) = 0.5 * h;
        delta(k, j) = 0.5 * h;
      }
      const double fp = f(rebuild(w.q, w.p, a + delta, b_inv));
      const double fm = f(rebuild(w.q, w.p, a - delta, b_inv));
      g.dA(j, k) = (fp - fm) / (2.0 * h);
      g.dA(k, j) = g.dA(j, k);
    }
  for (int j = 0; j < d; ++j)
    for (int k = j; k < d; ++k) {
      const double h = fd_scale * (1.0 + std::abs(b_inv(j, k)));
      Mat delta = Mat::Zero(d, d);
      if (j == k)
        delta(j, j) = h;
      else {
        delta(j, k) = 0.5 * h;
        delta(k, j) = 0.5 * h;
      }
      const double fp = f(rebuild(w.q, w.p, a, b_inv + delta));
      const double fm = f(rebuild(w.q, w.p, a, b_inv - delta));
      g.dB_inv(j, k) = (fp - fm) / (2.0 * h);
      g.dB_inv(k, j) = g.dB_inv(j, k);
    }
  return g;
}

double poisson_bracket(const ReducedObservable& f, const ReducedObservable& g,
                       const ReducedState& w, double hbar, double fd_scale) {
  if (hbar == 0.0)
    throw Error(ErrorCode::config,
                "bracket undefined at hbar = 0; use the canonical part for classical "
                "observables");
  const ReducedGradient gf = reduced_gradient(f, w, fd_scale);
  const ReducedGradient gg = reduced_gradient(g, w, fd_scale);
  const double canonical = gf.dq.dot(gg.dp) - gg.dq.dot(gf.dp);
  const double width = (gf.dB_inv.array() * gg.dA.array()).sum() -
                       (gg.dB_inv.array() * gf.dA.array()).sum();
  return canonical + (4.0 / hbar) * width;
}

Vec expected_angular_momentum(const ReducedState& w, const SimulationConfig& cfg) {
  const int d = w.dim();
  // Second moments of the packet: mean q, covariance (hbar/2) B^{-1}; the
  // momentum operator contributes (A + iB)(x - q) + p under the gradient.
  const Mat sigma = 0.5 * cfg.hbar * w.C.B_inverse();
  const Mat sa = sigma * w.A();
  if (d == 2) {
    Vec out(1);
    out(0) = w.q(0) * w.p(1) - w.q(1) * w.p(0) + sa(0, 1) - sa(1, 0);
    return out;
  }
  if (d == 3) {
    Vec out = Vec::Zero(3);
    auto levi = [](int i, int j, int k) -> double {
      return 0.5 * (i - j) * (j - k) * (k - i);
    };
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          const double e = levi(i, j, k);
          if (e != 0.0) out(i) += e * (w.q(j) * w.p(k) + sa(j, k));
        }
    return out;
  }
  throw Error(ErrorCode::config, "angular momentum expectation supports d = 2 and d = 3 only");
}

Vec first_variation_noether(const Vec& q, const Vec& p, const Vec& dq, const Vec& dp,
                            const MomentumMapModel& j) {
  Vec dz(2 * q.size());
  dz << dq, dp;
  return j.gradient(q, p) * dz;
}

double equivariance_residual(const ReducedState& w, const Mat& r, double hbar) {
  const Mat lhs = semiclassical_angular_momentum(so_action_reduced(r, w), hbar).mat();
  const Mat rhs = r * semiclassical_angular_momentum(w, hbar).mat() * r.transpose();
  return max_abs(Mat(lhs - rhs));
}

double invariance_residual(DynamicsVariant variant, const ReducedState& w, const Mat& r,
                           const PotentialModel& model, const SimulationConfig& cfg) {
  return std::abs(reduced_hamiltonian(so_action_reduced(r, w), model, cfg, variant) -
                  reduced_hamiltonian(w, model, cfg, variant));
}

InvariantSeries lift_consistency_residual(const Trajectory<HagedornState>& lifted,
                                          const Trajectory<ReducedState>& reduced) {
  if (lifted.times.size() != reduced.times.size())
    throw Error(ErrorCode::config, "trajectory record counts differ");
  InvariantSeries s;
  s.name = "lift_consistency";
  s.times = lifted.times;
  s.values.reserve(lifted.times.size());
  for (std::size_t k = 0; k < lifted.times.size(); ++k) {
    if (std::abs(lifted.times[k] - reduced.times[k]) > 1e-12)
      throw Error(ErrorCode::config, "trajectory time grids differ");
    const HagedornState& h = lifted.states[k];
    Eigen::FullPivLU<CMat> lu(h.Q.transpose());
    if (!lu.isInvertible()) throw Error(ErrorCode::numerical, "singular Q along the lifted path");
    const CMat c = lu.solve(h.P.transpose()).transpose();
    s.values.push_back(max_abs(CMat(c - reduced.states[k].C.complex_matrix())));
  }
  s.validate();
  return s;
}

}  // namespace gwp
