#include "gwp/potentials.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "gwp/geometry.hpp"

namespace gwp {

namespace {

Mat symmetrize(const Mat& m) { return 0.5 * (m + m.transpose()); }

Mat covariance(const Mat& b, double hbar) {
  // Gaussian weight exp(-(x-q)^T B (x-q)/hbar) has covariance (hbar/2) B^{-1}.
  Mat inv = b.inverse();
  return 0.5 * hbar * symmetrize(inv);
}

/// E[e_{i1} ... e_{in}] for zero-mean Gaussian e with covariance sigma.
double isserlis(std::vector<int> idx, const Mat& sigma) {
  if (idx.empty()) return 1.0;
  if (idx.size() % 2 != 0) return 0.0;
  const int first = idx.front();
  double sum = 0.0;
  for (std::size_t j = 1; j < idx.size(); ++j) {
    std::vector<int> rest;
    rest.reserve(idx.size() - 2);
    for (std::size_t k = 1; k < idx.size(); ++k)
      if (k != j) rest.push_back(idx[k]);
    sum += sigma(first, idx[j]) * isserlis(std::move(rest), sigma);
  }
  return sum;
}

struct GaussHermiteRule {
  Vec nodes;
  Vec weights;
};

/// Golub-Welsch nodes/weights for the weight exp(-u^2) on the real line.
GaussHermiteRule gauss_hermite_rule(int order) {
  Mat jac = Mat::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double off = std::sqrt(0.5 * k);
    jac(k, k - 1) = off;
    jac(k - 1, k) = off;
  }
  Eigen::SelfAdjointEigenSolver<Mat> eig(jac);
  GaussHermiteRule rule;
  rule.nodes = eig.eigenvalues();
  rule.weights = Vec(order);
  const double total = std::sqrt(M_PI);
  for (int k = 0; k < order; ++k) {
    const double v0 = eig.eigenvectors()(0, k);
    rule.weights(k) = total * v0 * v0;
  }
  return rule;
}

}  // namespace

Vec ThirdDerivative::contract(const Mat& w) const {
  const int d = static_cast<int>(slice.size());
  Vec g(d);
  for (int k = 0; k < d; ++k) g(k) = (w.array() * slice[k].array()).sum();
  return g;
}

ThirdDerivative PotentialModel::third(const Vec& x) const {
  const int d = static_cast<int>(x.size());
  const double h = 1e-5 * (1.0 + x.norm());
  ThirdDerivative t;
  t.slice.assign(d, Mat::Zero(d, d));
  for (int k = 0; k < d; ++k) {
    Vec xp = x, xm = x;
    xp(k) += h;
    xm(k) -= h;
    t.slice[k] = (hessian(xp) - hessian(xm)) / (2.0 * h);
  }
  return t;
}

GaussianAverages PotentialModel::averages(const Vec&, const Mat&, double) const {
  throw Error(ErrorCode::config,
              "no closed-form Gaussian averages for this model; use the quadrature fallback");
}

PotentialDerivatives potential_derivatives(const PotentialModel& model, const Vec& x) {
  return {model.value(x), model.gradient(x), model.hessian(x), model.third(x)};
}

GaussianAverages gaussian_average(const PotentialModel& model, const Vec& q, const Mat& b,
                                  double hbar) {
  if (!model.has_analytic_averages())
    throw Error(ErrorCode::config, "model does not supply analytic Gaussian averages");
  return model.averages(q, b, hbar);
}

Vec hessian_trace_gradient(const PotentialModel& model, const Vec& q, const Mat& b_inverse) {
  return model.third(q).contract(b_inverse);
}

double gauss_hermite_expectation(const std::function<double(const Vec&)>& f, const Vec& q,
                                 const Mat& b, double hbar, int order) {
  if (order < 1) throw Error(ErrorCode::config, "quadrature order must be at least 1");
  const int d = static_cast<int>(q.size());
  if (d > 4 && order > 30)
    throw Error(ErrorCode::config, "tensor-product quadrature rejected: d > 4 with order > 30");
  const GaussHermiteRule rule = gauss_hermite_rule(order);
  const Mat scale = std::sqrt(hbar) * sym_inv_sqrt(b);

  // Tensor-product loop over the d-dimensional multi-index.
  std::vector<int> idx(d, 0);
  Vec u(d);
  double sum = 0.0;
  while (true) {
    double w = 1.0;
    for (int a = 0; a < d; ++a) {
      u(a) = rule.nodes(idx[a]);
      w *= rule.weights(idx[a]);
    }
    sum += w * f(q + scale * u);
    int a = 0;
    for (; a < d; ++a) {
      if (++idx[a] < order) break;
      idx[a] = 0;
    }
    if (a == d) break;
  }
  return sum / std::pow(M_PI, 0.5 * d);
}

HarmonicPotential::HarmonicPotential(Mat k) : k_(std::move(k)) {
  SymMat check(k_);  // symmetry
  sym_sqrt(k_);      // positive-definiteness
}

double HarmonicPotential::value(const Vec& x) const { return 0.5 * x.dot(k_ * x); }
Vec HarmonicPotential::gradient(const Vec& x) const { return k_ * x; }
Mat HarmonicPotential::hessian(const Vec&) const { return k_; }

ThirdDerivative HarmonicPotential::third(const Vec& x) const {
  ThirdDerivative t;
  t.slice.assign(x.size(), Mat::Zero(x.size(), x.size()));
  return t;
}

GaussianAverages HarmonicPotential::averages(const Vec& q, const Mat& b, double hbar) const {
  const Mat sigma = covariance(b, hbar);
  GaussianAverages out;
  out.value = value(q) + 0.5 * (k_ * sigma).trace();
  out.gradient = k_ * q;
  out.hessian = k_;
  return out;
}

double QuarticRadialPotential::value(const Vec& x) const {
  const double r2 = x.squaredNorm();
  return 0.5 * r2 + 0.25 * r2 * r2;
}

Vec QuarticRadialPotential::gradient(const Vec& x) const { return (1.0 + x.squaredNorm()) * x; }

Mat QuarticRadialPotential::hessian(const Vec& x) const {
  const int d = static_cast<int>(x.size());
  return (1.0 + x.squaredNorm()) * Mat::Identity(d, d) + 2.0 * x * x.transpose();
}

ThirdDerivative QuarticRadialPotential::third(const Vec& x) const {
  const int d = static_cast<int>(x.size());
  ThirdDerivative t;
  t.slice.assign(d, Mat::Zero(d, d));
  for (int k = 0; k < d; ++k) {
    Mat& s = t.slice[k];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double v = 0.0;
        if (i == j) v += 2.0 * x(k);
        if (i == k) v += 2.0 * x(j);
        if (j == k) v += 2.0 * x(i);
        s(i, j) = v;
      }
  }
  return t;
}

GaussianAverages QuarticRadialPotential::averages(const Vec& q, const Mat& b, double hbar) const {
  const int d = static_cast<int>(q.size());
  const Mat sigma = covariance(b, hbar);
  const double t1 = q.squaredNorm() + sigma.trace();
  const double tr_s2 = (sigma * sigma).trace();
  const double qsq = q.dot(sigma * q);

  GaussianAverages out;
  out.value = 0.5 * t1 + 0.25 * (t1 * t1 + 2.0 * tr_s2 + 4.0 * qsq);
  out.gradient = (1.0 + t1) * q + 2.0 * sigma * q;
  out.hessian = (1.0 + t1) * Mat::Identity(d, d) + 2.0 * (sigma + q * q.transpose());
  return out;
}

int Monomial::degree() const {
  int total = 0;
  for (int e : exponents) total += e;
  return total;
}

Polynomial::Polynomial(int dim, std::vector<Monomial> terms) : dim_(dim), terms_(std::move(terms)) {
  if (dim_ <= 0) throw Error(ErrorCode::config, "polynomial dimension must be positive");
  for (const auto& t : terms_) {
    if (static_cast<int>(t.exponents.size()) != dim_)
      throw Error(ErrorCode::config, "monomial exponent list does not match dimension");
    for (int e : t.exponents)
      if (e < 0) throw Error(ErrorCode::config, "monomial exponents must be nonnegative");
  }
}

int Polynomial::degree() const {
  int deg = 0;
  for (const auto& t : terms_) deg = std::max(deg, t.degree());
  return deg;
}

double Polynomial::eval(const Vec& x) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff;
    for (int i = 0; i < dim_; ++i)
      for (int e = 0; e < t.exponents[i]; ++e) v *= x(i);
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::derivative(int axis) const {
  std::vector<Monomial> out;
  for (const auto& t : terms_) {
    if (t.exponents[axis] == 0) continue;
    Monomial m = t;
    m.coeff *= m.exponents[axis];
    m.exponents[axis] -= 1;
    out.push_back(std::move(m));
  }
  return Polynomial(dim_, std::move(out));
}

double Polynomial::expectation(const Vec& q, const Mat& sigma) const {
  double total = 0.0;
  for (const auto& t : terms_) {
    // Expand prod (q_i + e_i)^{a_i} over subsets of factors taken from the
    // fluctuation e; each pattern contributes a central moment via Isserlis.
    std::vector<int> axes;
    for (int i = 0; i < dim_; ++i)
      for (int rep = 0; rep < t.exponents[i]; ++rep) axes.push_back(i);
    const std::size_t n = axes.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
      double coeff = t.coeff;
      std::vector<int> central;
      for (std::size_t b = 0; b < n; ++b) {
        if (mask & (std::size_t(1) << b))
          central.push_back(axes[b]);
        else
          coeff *= q(axes[b]);
      }
      if (central.size() % 2 != 0) continue;
      total += coeff * isserlis(std::move(central), sigma);
    }
  }
  return total;
}

PolynomialPotential::PolynomialPotential(int dim, std::vector<Monomial> terms)
    : v_(dim, std::move(terms)) {
  if (v_.degree() > 4)
    throw Error(ErrorCode::config, "polynomial potential supports total degree at most 4");
  grad_.reserve(dim);
  for (int i = 0; i < dim; ++i) grad_.push_back(v_.derivative(i));
  hess_.resize(dim);
  for (int i = 0; i < dim; ++i) {
    hess_[i].reserve(dim);
    for (int j = 0; j < dim; ++j) hess_[i].push_back(grad_[i].derivative(j));
  }
}

double PolynomialPotential::value(const Vec& x) const { return v_.eval(x); }

Vec PolynomialPotential::gradient(const Vec& x) const {
  Vec g(dim());
  for (int i = 0; i < dim(); ++i) g(i) = grad_[i].eval(x);
  return g;
}

Mat PolynomialPotential::hessian(const Vec& x) const {
  Mat h(dim(), dim());
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) h(i, j) = hess_[i][j].eval(x);
  return symmetrize(h);
}

ThirdDerivative PolynomialPotential::third(const Vec& x) const {
  ThirdDerivative t;
  t.slice.assign(dim(), Mat::Zero(dim(), dim()));
  for (int k = 0; k < dim(); ++k)
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j) t.slice[k](i, j) = hess_[i][j].derivative(k).eval(x);
  return t;
}

GaussianAverages PolynomialPotential::averages(const Vec& q, const Mat& b, double hbar) const {
  const Mat sigma = covariance(b, hbar);
  GaussianAverages out;
  out.value = v_.expectation(q, sigma);
  out.gradient = Vec(dim());
  for (int i = 0; i < dim(); ++i) out.gradient(i) = grad_[i].expectation(q, sigma);
  Mat h(dim(), dim());
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) h(i, j) = hess_[i][j].expectation(q, sigma);
  out.hessian = symmetrize(h);
  return out;
}

}  // namespace gwp
