#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "gwp/types.hpp"

namespace gwp {

/// Symmetric third-derivative tensor, stored as slices over the last index:
/// slice[k](i, j) = d^3 V / dx_i dx_j dx_k.
struct ThirdDerivative {
  std::vector<Mat> slice;

  /// g_k = sum_ij W_ij slice[k](i, j) for a symmetric weight W.
  Vec contract(const Mat& w) const;
};

/// First three Gaussian-averaged quantities of a potential.
struct GaussianAverages {
  double value = 0.0;
  Vec gradient;
  Mat hessian;
};

/// Potential energy surface with derivatives up to third order. The averages
/// are taken against the normalized Gaussian of mean q and covariance
/// (hbar/2) B^{-1}; models report whether they supply them in closed form.
class PotentialModel {
 public:
  virtual ~PotentialModel() = default;

  /// Configuration-space dimension; 0 means any.
  virtual int dim() const = 0;
  virtual double value(const Vec& x) const = 0;
  virtual Vec gradient(const Vec& x) const = 0;
  virtual Mat hessian(const Vec& x) const = 0;

  /// Default: central finite differences of the Hessian, step 1e-5 (1 + |x|).
  virtual ThirdDerivative third(const Vec& x) const;

  virtual bool has_analytic_averages() const { return false; }
  virtual GaussianAverages averages(const Vec& q, const Mat& b, double hbar) const;
};

struct PotentialDerivatives {
  double value;
  Vec gradient;
  Mat hessian;
  ThirdDerivative third;
};

PotentialDerivatives potential_derivatives(const PotentialModel& model, const Vec& x);

/// Dispatches to the model's closed-form averages; throws a config error for
/// models without them (use gauss_hermite_expectation as the fallback).
GaussianAverages gaussian_average(const PotentialModel& model, const Vec& q, const Mat& b,
                                  double hbar);

/// Gradient in q of tr(B^{-1} hess V(q)), i.e. the contraction of the third
/// derivative with B^{-1}.
Vec hessian_trace_gradient(const PotentialModel& model, const Vec& q, const Mat& b_inverse);

/// Tensor-product Gauss-Hermite quadrature of f against the Gaussian of mean q
/// and weight exp(-(x-q)^T B (x-q)/hbar), whitened by the symmetric square
/// root of B. Exact for per-axis polynomial degree <= 2*order - 1. Rejects
/// d > 4 together with order > 30 as a cost guard.
double gauss_hermite_expectation(const std::function<double(const Vec&)>& f, const Vec& q,
                                 const Mat& b, double hbar, int order);

/// V(x) = x^T K x / 2 with K symmetric positive-definite.
class HarmonicPotential : public PotentialModel {
 public:
  explicit HarmonicPotential(Mat k);

  int dim() const override { return static_cast<int>(k_.rows()); }
  double value(const Vec& x) const override;
  Vec gradient(const Vec& x) const override;
  Mat hessian(const Vec& x) const override;
  ThirdDerivative third(const Vec& x) const override;
  bool has_analytic_averages() const override { return true; }
  GaussianAverages averages(const Vec& q, const Mat& b, double hbar) const override;

  const Mat& stiffness() const { return k_; }

 private:
  Mat k_;
};

/// Rotation-invariant confining quartic V = r^2/2 + r^4/4 in any dimension.
class QuarticRadialPotential : public PotentialModel {
 public:
  int dim() const override { return 0; }
  double value(const Vec& x) const override;
  Vec gradient(const Vec& x) const override;
  Mat hessian(const Vec& x) const override;
  ThirdDerivative third(const Vec& x) const override;
  bool has_analytic_averages() const override { return true; }
  GaussianAverages averages(const Vec& q, const Mat& b, double hbar) const override;
};

/// Multivariate polynomial as a list of monomials c * prod x_i^{e_i}.
struct Monomial {
  double coeff = 0.0;
  std::vector<int> exponents;

  int degree() const;
};

class Polynomial {
 public:
  Polynomial(int dim, std::vector<Monomial> terms);

  int dim() const { return dim_; }
  int degree() const;
  double eval(const Vec& x) const;
  Polynomial derivative(int axis) const;

  /// Expectation against the Gaussian of mean q and covariance sigma
  /// (Isserlis pairing for the central moments).
  double expectation(const Vec& q, const Mat& sigma) const;

  const std::vector<Monomial>& terms() const { return terms_; }

 private:
  int dim_;
  std::vector<Monomial> terms_;
};

/// Polynomial potential of total degree at most 4; general coefficients, used
/// for the symmetry-breaking fixtures. Averages are exact moment formulas.
class PolynomialPotential : public PotentialModel {
 public:
  PolynomialPotential(int dim, std::vector<Monomial> terms);

  int dim() const override { return v_.dim(); }
  double value(const Vec& x) const override;
  Vec gradient(const Vec& x) const override;
  Mat hessian(const Vec& x) const override;
  ThirdDerivative third(const Vec& x) const override;
  bool has_analytic_averages() const override { return true; }
  GaussianAverages averages(const Vec& q, const Mat& b, double hbar) const override;

 private:
  Polynomial v_;
  std::vector<Polynomial> grad_;
  std::vector<std::vector<Polynomial>> hess_;
};

}  // namespace gwp
