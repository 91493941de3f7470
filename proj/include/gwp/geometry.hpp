#pragma once

#include <utility>

#include "gwp/types.hpp"

namespace gwp {

/// Real symmetric d x d matrix, validated at construction.
class SymMat {
 public:
  explicit SymMat(Mat m, double tol = Tolerances{}.symmetry);

  const Mat& mat() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  Mat m_;
};

/// Real antisymmetric d x d matrix (element of so(d), also used for so(d)* values).
class AntisymMat {
 public:
  explicit AntisymMat(Mat m, double tol = Tolerances{}.antisymmetry);

  const Mat& mat() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  Mat m_;
};

/// Point of the Siegel upper half space: C = A + iB with A, B symmetric and B
/// positive-definite. Positive-definiteness is checked through the symmetric
/// eigendecomposition; B with eig_min <= pd_ratio * eig_max is rejected as
/// numerically degenerate.
class SiegelPoint {
 public:
  SiegelPoint(SymMat a, SymMat b, double pd_ratio = Tolerances{}.pd_ratio);
  SiegelPoint(const Mat& a, const Mat& b, const Tolerances& tol = Tolerances{});

  const Mat& A() const { return a_.mat(); }
  const Mat& B() const { return b_.mat(); }
  int dim() const { return a_.dim(); }

  CMat complex_matrix() const;  // A + iB
  Mat B_inverse() const;        // symmetric inverse of B
  Mat B_sqrt() const;
  Mat B_inv_sqrt() const;

 private:
  SymMat a_, b_;
};

/// Real 2d x 2d symplectic matrix Y with block views labeled as the pair of
/// complex d x d matrices it encodes: Y = [Re Q, Im Q; Re P, Im P].
class SymplecticMatrix2d {
 public:
  explicit SymplecticMatrix2d(Mat y, double tol = Tolerances{}.symplectic);
  SymplecticMatrix2d(const CMat& q, const CMat& p, double tol = Tolerances{}.symplectic);

  const Mat& mat() const { return y_; }
  int dim() const { return static_cast<int>(y_.rows() / 2); }

  Mat re_q() const;
  Mat im_q() const;
  Mat re_p() const;
  Mat im_p() const;
  CMat Q() const;
  CMat P() const;

  double symplectic_residual() const;

  /// The standard symplectic form matrix [0, I; -I, 0] of size 2d.
  static Mat standard_form(int d);

 private:
  Mat y_;
};

Mat sym_sqrt(const Mat& s, double pd_ratio = Tolerances{}.pd_ratio);
Mat sym_inv_sqrt(const Mat& s, double pd_ratio = Tolerances{}.pd_ratio);

void require_rotation(const Mat& r, double tol = Tolerances{}.rotation);

/// Cross-product matrix of a 3-vector: hat(v) w = v x w.
AntisymMat hat(const Eigen::Vector3d& v);
Eigen::Vector3d vee(const AntisymMat& m);

/// (q <> p)_{ij} = q_j p_i - q_i p_j; equals p q^T - q p^T. For d = 3 this is
/// hat(q x p).
AntisymMat diamond(const Vec& q, const Vec& p);

/// Moebius action of the symplectic group on the Siegel upper half space:
/// with X = [A, B; C, D], Z maps to (C + D Z)(A + B Z)^{-1}.
SiegelPoint siegel_action(const SymplecticMatrix2d& x, const SiegelPoint& z);

/// Projection Sp(2d,R) -> Sigma_d, (Q, P) |-> P Q^{-1}; coincides with the
/// Moebius action applied to iI. Right multiplication by the embedded unitary
/// subgroup leaves the result unchanged.
SiegelPoint quotient_map(const SymplecticMatrix2d& y);

/// Canonical section of the projection: Z = A + iB maps to
/// Q = B^{-1/2}, P = (A + iB) B^{-1/2}, which satisfies both pair constraints
/// and projects back to Z.
std::pair<CMat, CMat> siegel_to_qp(const SiegelPoint& z);

/// Embeds a unitary d x d matrix U1 + i U2 as the symplectic [U1, U2; -U2, U1],
/// an element of the stabilizer of iI.
SymplecticMatrix2d embed_unitary(const CMat& u, double tol = Tolerances{}.symplectic);

/// Rotation acting on a Siegel point by congruence: A + iB -> R(A + iB)R^T.
SiegelPoint rotate(const Mat& r, const SiegelPoint& z, const Tolerances& tol = Tolerances{});

/// Rotation acting on Sp(2d,R) by conjugation with blockdiag(R, R); commutes
/// with quotient_map and the congruence action on Sigma_d.
SymplecticMatrix2d so_action_sp(const Mat& r, const SymplecticMatrix2d& y,
                                const Tolerances& tol = Tolerances{});

/// Residuals of the symplectic-pair constraints:
/// r1 = ||Q^T P - P^T Q||_max, r2 = ||Q* P - P* Q - 2i I||_max.
std::pair<double, double> constraint_residuals(const CMat& q, const CMat& p);

}  // namespace gwp
