#include "gwp/geometry.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace gwp {

namespace {

Mat symmetrize(const Mat& m) { return 0.5 * (m + m.transpose()); }

CMat solve_right(const CMat& num, const CMat& den, ErrorCode code, const char* what) {
  // num * den^{-1} via the transposed system.
  Eigen::FullPivLU<CMat> lu(den.transpose());
  if (!lu.isInvertible()) throw Error(code, std::string("singular matrix in ") + what);
  return lu.solve(num.transpose()).transpose();
}

}  // namespace

SymMat::SymMat(Mat m, double tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0)
    throw Error(ErrorCode::config, "symmetric matrix must be square and non-empty");
  const double res = max_abs(Mat(m_ - m_.transpose()));
  if (res > tol)
    throw Error(ErrorCode::invariant,
                "symmetry residual " + std::to_string(res) + " exceeds tolerance");
}

AntisymMat::AntisymMat(Mat m, double tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0)
    throw Error(ErrorCode::config, "antisymmetric matrix must be square and non-empty");
  const double res = max_abs(Mat(m_ + m_.transpose()));
  if (res > tol)
    throw Error(ErrorCode::invariant,
                "antisymmetry residual " + std::to_string(res) + " exceeds tolerance");
}

SiegelPoint::SiegelPoint(SymMat a, SymMat b, double pd_ratio)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.dim() != b_.dim())
    throw Error(ErrorCode::config, "real and imaginary parts must have equal dimension");
  sym_sqrt(b_.mat(), pd_ratio);  // rejects non-positive-definite B
}

SiegelPoint::SiegelPoint(const Mat& a, const Mat& b, const Tolerances& tol)
    : SiegelPoint(SymMat(a, tol.symmetry), SymMat(b, tol.symmetry), tol.pd_ratio) {}

CMat SiegelPoint::complex_matrix() const {
  return a_.mat().cast<Complex>() + Complex(0, 1) * b_.mat().cast<Complex>();
}

Mat SiegelPoint::B_inverse() const {
  Mat inv = b_.mat().inverse();
  return symmetrize(inv);
}

Mat SiegelPoint::B_sqrt() const { return sym_sqrt(b_.mat()); }
Mat SiegelPoint::B_inv_sqrt() const { return sym_inv_sqrt(b_.mat()); }

SymplecticMatrix2d::SymplecticMatrix2d(Mat y, double tol) : y_(std::move(y)) {
  if (y_.rows() != y_.cols() || y_.rows() == 0 || y_.rows() % 2 != 0)
    throw Error(ErrorCode::config, "symplectic matrix must be square of even dimension");
  const double res = symplectic_residual();
  if (res > tol)
    throw Error(ErrorCode::invariant,
                "symplectic residual " + std::to_string(res) + " exceeds tolerance");
}

SymplecticMatrix2d::SymplecticMatrix2d(const CMat& q, const CMat& p, double tol)
    : SymplecticMatrix2d(
          [&] {
            if (q.rows() != q.cols() || p.rows() != p.cols() || q.rows() != p.rows())
              throw Error(ErrorCode::config, "Q and P must be square of equal dimension");
            const auto d = q.rows();
            Mat y(2 * d, 2 * d);
            y.topLeftCorner(d, d) = q.real();
            y.topRightCorner(d, d) = q.imag();
            y.bottomLeftCorner(d, d) = p.real();
            y.bottomRightCorner(d, d) = p.imag();
            return y;
          }(),
          tol) {}

Mat SymplecticMatrix2d::re_q() const { return y_.topLeftCorner(dim(), dim()); }
Mat SymplecticMatrix2d::im_q() const { return y_.topRightCorner(dim(), dim()); }
Mat SymplecticMatrix2d::re_p() const { return y_.bottomLeftCorner(dim(), dim()); }
Mat SymplecticMatrix2d::im_p() const { return y_.bottomRightCorner(dim(), dim()); }

CMat SymplecticMatrix2d::Q() const {
  return re_q().cast<Complex>() + Complex(0, 1) * im_q().cast<Complex>();
}

CMat SymplecticMatrix2d::P() const {
  return re_p().cast<Complex>() + Complex(0, 1) * im_p().cast<Complex>();
}

double SymplecticMatrix2d::symplectic_residual() const {
  const Mat j = standard_form(dim());
  return max_abs(Mat(y_.transpose() * j * y_ - j));
}

Mat SymplecticMatrix2d::standard_form(int d) {
  Mat j = Mat::Zero(2 * d, 2 * d);
  j.topRightCorner(d, d) = Mat::Identity(d, d);
  j.bottomLeftCorner(d, d) = -Mat::Identity(d, d);
  return j;
}

Mat sym_sqrt(const Mat& s, double pd_ratio) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(symmetrize(s));
  if (eig.info() != Eigen::Success)
    throw Error(ErrorCode::numerical, "symmetric eigendecomposition failed");
  const Vec& w = eig.eigenvalues();
  const double wmax = w.maxCoeff();
  if (wmax <= 0.0 || w.minCoeff() <= pd_ratio * wmax)
    throw Error(ErrorCode::numerical, "matrix is not (numerically) positive-definite");
  return eig.eigenvectors() * w.cwiseSqrt().asDiagonal() * eig.eigenvectors().transpose();
}

Mat sym_inv_sqrt(const Mat& s, double pd_ratio) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(symmetrize(s));
  if (eig.info() != Eigen::Success)
    throw Error(ErrorCode::numerical, "symmetric eigendecomposition failed");
  const Vec& w = eig.eigenvalues();
  const double wmax = w.maxCoeff();
  if (wmax <= 0.0 || w.minCoeff() <= pd_ratio * wmax)
    throw Error(ErrorCode::numerical, "matrix is not (numerically) positive-definite");
  return eig.eigenvectors() * w.cwiseSqrt().cwiseInverse().asDiagonal() *
         eig.eigenvectors().transpose();
}

void require_rotation(const Mat& r, double tol) {
  if (r.rows() != r.cols() || r.rows() == 0)
    throw Error(ErrorCode::config, "rotation matrix must be square");
  const double ortho = max_abs(Mat(r.transpose() * r - Mat::Identity(r.rows(), r.cols())));
  if (ortho > tol || std::abs(r.determinant() - 1.0) > tol)
    throw Error(ErrorCode::invariant, "matrix is not a rotation within tolerance");
}

AntisymMat hat(const Eigen::Vector3d& v) {
  Mat m(3, 3);
  m << 0, -v(2), v(1),  //
      v(2), 0, -v(0),   //
      -v(1), v(0), 0;
  return AntisymMat(m);
}

Eigen::Vector3d vee(const AntisymMat& m) {
  if (m.dim() != 3) throw Error(ErrorCode::config, "vee is defined for 3 x 3 matrices only");
  return Eigen::Vector3d(m.mat()(2, 1), m.mat()(0, 2), m.mat()(1, 0));
}

AntisymMat diamond(const Vec& q, const Vec& p) {
  if (q.size() != p.size())
    throw Error(ErrorCode::config, "diamond requires vectors of equal dimension");
  return AntisymMat(p * q.transpose() - q * p.transpose());
}

SiegelPoint siegel_action(const SymplecticMatrix2d& x, const SiegelPoint& z) {
  const int d = z.dim();
  if (x.dim() != d) throw Error(ErrorCode::config, "dimension mismatch in Siegel action");
  const CMat zc = z.complex_matrix();
  const CMat a = x.re_q().cast<Complex>();
  const CMat b = x.im_q().cast<Complex>();
  const CMat c = x.re_p().cast<Complex>();
  const CMat dd = x.im_p().cast<Complex>();
  const CMat w = solve_right(c + dd * zc, a + b * zc, ErrorCode::numerical, "Siegel action");
  return SiegelPoint(symmetrize(w.real()), symmetrize(w.imag()));
}

SiegelPoint quotient_map(const SymplecticMatrix2d& y) {
  const CMat w = solve_right(y.P(), y.Q(), ErrorCode::invariant, "quotient map (singular Q)");
  return SiegelPoint(symmetrize(w.real()), symmetrize(w.imag()));
}

std::pair<CMat, CMat> siegel_to_qp(const SiegelPoint& z) {
  const Mat root = z.B_inv_sqrt();
  const CMat q = root.cast<Complex>();
  const CMat p = z.complex_matrix() * q;
  return {q, p};
}

SymplecticMatrix2d embed_unitary(const CMat& u, double tol) {
  const auto d = u.rows();
  if (u.cols() != d) throw Error(ErrorCode::config, "unitary embedding requires a square matrix");
  Mat y(2 * d, 2 * d);
  y.topLeftCorner(d, d) = u.real();
  y.topRightCorner(d, d) = u.imag();
  y.bottomLeftCorner(d, d) = -u.imag();
  y.bottomRightCorner(d, d) = u.real();
  return SymplecticMatrix2d(y, tol);
}

SiegelPoint rotate(const Mat& r, const SiegelPoint& z, const Tolerances& tol) {
  require_rotation(r, tol.rotation);
  return SiegelPoint(symmetrize(r * z.A() * r.transpose()), symmetrize(r * z.B() * r.transpose()),
                     tol);
}

SymplecticMatrix2d so_action_sp(const Mat& r, const SymplecticMatrix2d& y, const Tolerances& tol) {
  require_rotation(r, tol.rotation);
  const int d = y.dim();
  if (r.rows() != d) throw Error(ErrorCode::config, "dimension mismatch in rotation action");
  Mat rr = Mat::Zero(2 * d, 2 * d);
  rr.topLeftCorner(d, d) = r;
  rr.bottomRightCorner(d, d) = r;
  return SymplecticMatrix2d(rr * y.mat() * rr.transpose(), tol.symplectic);
}

std::pair<double, double> constraint_residuals(const CMat& q, const CMat& p) {
  if (q.rows() != q.cols() || p.rows() != p.cols() || q.rows() != p.rows())
    throw Error(ErrorCode::config, "constraint residuals require square Q, P of equal dimension");
  const auto d = q.rows();
  const CMat r1 = q.transpose() * p - p.transpose() * q;
  const CMat r2 = q.adjoint() * p - p.adjoint() * q -
                  Complex(0, 2) * CMat::Identity(d, d);
  return {max_abs(r1), max_abs(r2)};
}

}  // namespace gwp
