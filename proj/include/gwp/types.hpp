#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gwp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Failure category; values match the CLI exit codes and the C API status codes.
enum class ErrorCode : int {
  config = 1,     // bad configuration, usage, or input data
  numerical = 2,  // numerically invalid state (lost positive-definiteness, singular solve, ...)
  invariant = 3,  // a structural constraint or conserved quantity was violated
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Construction-time validation tolerances. Defaults are deliberate; every
/// constructor that validates takes one of these so callers can loosen them.
struct Tolerances {
  double symmetry = 1e-12;        // max |M_ij - M_ji| for symmetric matrices
  double antisymmetry = 1e-12;    // max |M_ij + M_ji|
  double symplectic = 1e-10;      // max-norm residual of Yt*J*Y - J
  double pd_ratio = 1e-12;        // reject eig_min <= pd_ratio * eig_max
  double rotation = 1e-10;        // max-norm residual of Rt*R - I and |det R - 1|
  double hagedorn = 1e-8;         // symplectic-pair residuals admitted for integrated states
};

inline double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace gwp
