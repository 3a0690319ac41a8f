#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace p1n {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Truncated Taylor data of a scalar function at a point.
/// Jet1 carries value and gradient, Jet2 adds the Hessian, Jet3 adds the
/// fully symmetric third-derivative tensor stored as one matrix per
/// differentiation direction: third[k](i,j) = d^3 f / dq_k dq_i dq_j.
struct Jet1 {
  Complex value{};
  Vec grad;
  int dim() const { return static_cast<int>(grad.size()); }
};

struct Jet2 {
  Complex value{};
  Vec grad;
  Mat hess;
  int dim() const { return static_cast<int>(grad.size()); }
};

struct Jet3 {
  Complex value{};
  Vec grad;
  Mat hess;
  std::vector<Mat> third;
  int dim() const { return static_cast<int>(grad.size()); }
};

Jet1 jet_const1(int dim, Complex c);
Jet2 jet_const2(int dim, Complex c);
Jet3 jet_const3(int dim, Complex c);

/// Coordinate seeds at a point: seeds[k] has value q[k], unit gradient in
/// slot k, zero higher derivatives. Complex coordinates are allowed (used by
/// the analytic-continuation substitution).
std::vector<Jet1> jet_seeds1(const Vec& q);
std::vector<Jet2> jet_seeds2(const Vec& q);
std::vector<Jet3> jet_seeds3(const Vec& q);

Jet1 jet_add(const Jet1& a, const Jet1& b);
Jet2 jet_add(const Jet2& a, const Jet2& b);
Jet3 jet_add(const Jet3& a, const Jet3& b);
Complex jet_add(const Complex& a, const Complex& b);

Jet1 jet_scale(Complex c, const Jet1& a);
Jet2 jet_scale(Complex c, const Jet2& a);
Jet3 jet_scale(Complex c, const Jet3& a);
Complex jet_scale(Complex c, const Complex& a);

Jet1 jet_mul(const Jet1& a, const Jet1& b);
Jet2 jet_mul(const Jet2& a, const Jet2& b);
Jet3 jet_mul(const Jet3& a, const Jet3& b);
Complex jet_mul(const Complex& a, const Complex& b);

/// Principal branch; requires Re(value) > 0, else std::domain_error naming
/// the offending value.
Jet1 jet_sqrt(const Jet1& a);
Jet2 jet_sqrt(const Jet2& a);
Jet3 jet_sqrt(const Jet3& a);
Complex jet_sqrt(const Complex& a);

/// Square root continued through the negative axis: principal for
/// Re(value) > 0, -i*sqrt(-z) for Re(value) < 0 (so the result squares back
/// to the argument on both half-planes), error on Re(value) == 0.
Jet1 jet_sqrt_lower(const Jet1& a);
Jet2 jet_sqrt_lower(const Jet2& a);
Jet3 jet_sqrt_lower(const Jet3& a);
Complex jet_sqrt_lower(const Complex& a);

Jet1 jet_recip(const Jet1& a);
Jet2 jet_recip(const Jet2& a);
Jet3 jet_recip(const Jet3& a);
Complex jet_recip(const Complex& a);

Jet1 jet_exp(const Jet1& a);
Jet2 jet_exp(const Jet2& a);
Jet3 jet_exp(const Jet3& a);
Complex jet_exp(const Complex& a);

/// Drop the highest stored order.
Jet2 jet_truncate(const Jet3& a);
Jet1 jet_truncate(const Jet2& a);
Complex jet_truncate(const Jet1& a);

/// Exact jet of the partial derivative d/dq_k, one order lower.
Jet2 jet_derivative(const Jet3& a, int k);
Jet1 jet_derivative(const Jet2& a, int k);
Complex jet_derivative(const Jet1& a, int k);

/// Constant of the same jet order and dimension as the prototype.
inline Complex jet_const_like(const Complex&, Complex c) { return c; }
inline Jet1 jet_const_like(const Jet1& proto, Complex c) { return jet_const1(proto.dim(), c); }
inline Jet2 jet_const_like(const Jet2& proto, Complex c) { return jet_const2(proto.dim(), c); }
inline Jet3 jet_const_like(const Jet3& proto, Complex c) { return jet_const3(proto.dim(), c); }

}  // namespace p1n
