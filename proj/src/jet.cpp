#include <p1n/jet.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace p1n {

namespace {

void require_same_dim(int a, int b) {
  if (a != b) {
    std::ostringstream os;
    os << "jet dimension mismatch: " << a << " vs " << b;
    throw std::invalid_argument(os.str());
  }
}

[[noreturn]] void throw_branch(const char* op, Complex v) {
  std::ostringstream os;
  os << op << ": branch violation at value (" << v.real() << "," << v.imag() << ")";
  throw std::domain_error(os.str());
}

/// Composition with a scalar function u given its derivatives at a.value.
Jet1 compose(const Jet1& a, Complex u0, Complex u1) {
  Jet1 r;
  r.value = u0;
  r.grad = u1 * a.grad;
  return r;
}

Jet2 compose(const Jet2& a, Complex u0, Complex u1, Complex u2) {
  Jet2 r;
  r.value = u0;
  r.grad = u1 * a.grad;
  Mat gg = a.grad * a.grad.transpose();
  r.hess = u1 * a.hess + u2 * gg;
  return r;
}

Jet3 compose(const Jet3& a, Complex u0, Complex u1, Complex u2, Complex u3) {
  Jet3 r;
  r.value = u0;
  r.grad = u1 * a.grad;
  Mat gg = a.grad * a.grad.transpose();
  r.hess = u1 * a.hess + u2 * gg;
  int d = a.dim();
  r.third.resize(d);
  for (int k = 0; k < d; ++k) {
    r.third[k] = u1 * a.third[k] +
                 u2 * (a.hess.col(k) * a.grad.transpose() +
                       a.grad * a.hess.col(k).transpose() + a.grad(k) * a.hess) +
                 (u3 * a.grad(k)) * gg;
  }
  return r;
}

}  // namespace

Jet1 jet_const1(int dim, Complex c) { return {c, Vec::Zero(dim)}; }
Jet2 jet_const2(int dim, Complex c) { return {c, Vec::Zero(dim), Mat::Zero(dim, dim)}; }
Jet3 jet_const3(int dim, Complex c) {
  Jet3 j{c, Vec::Zero(dim), Mat::Zero(dim, dim), {}};
  j.third.assign(dim, Mat::Zero(dim, dim));
  return j;
}

std::vector<Jet1> jet_seeds1(const Vec& q) {
  int d = static_cast<int>(q.size());
  std::vector<Jet1> s(d);
  for (int k = 0; k < d; ++k) {
    s[k] = jet_const1(d, q[k]);
    s[k].grad(k) = Complex(1.0, 0.0);
  }
  return s;
}

std::vector<Jet2> jet_seeds2(const Vec& q) {
  int d = static_cast<int>(q.size());
  std::vector<Jet2> s(d);
  for (int k = 0; k < d; ++k) {
    s[k] = jet_const2(d, q[k]);
    s[k].grad(k) = Complex(1.0, 0.0);
  }
  return s;
}

std::vector<Jet3> jet_seeds3(const Vec& q) {
  int d = static_cast<int>(q.size());
  std::vector<Jet3> s(d);
  for (int k = 0; k < d; ++k) {
    s[k] = jet_const3(d, q[k]);
    s[k].grad(k) = Complex(1.0, 0.0);
  }
  return s;
}

Complex jet_add(const Complex& a, const Complex& b) { return a + b; }

Jet1 jet_add(const Jet1& a, const Jet1& b) {
  require_same_dim(a.dim(), b.dim());
  return {a.value + b.value, a.grad + b.grad};
}

Jet2 jet_add(const Jet2& a, const Jet2& b) {
  require_same_dim(a.dim(), b.dim());
  return {a.value + b.value, a.grad + b.grad, a.hess + b.hess};
}

Jet3 jet_add(const Jet3& a, const Jet3& b) {
  require_same_dim(a.dim(), b.dim());
  Jet3 r{a.value + b.value, a.grad + b.grad, a.hess + b.hess, {}};
  int d = a.dim();
  r.third.resize(d);
  for (int k = 0; k < d; ++k) r.third[k] = a.third[k] + b.third[k];
  return r;
}

Complex jet_scale(Complex c, const Complex& a) { return c * a; }

Jet1 jet_scale(Complex c, const Jet1& a) { return {c * a.value, c * a.grad}; }

Jet2 jet_scale(Complex c, const Jet2& a) { return {c * a.value, c * a.grad, c * a.hess}; }

Jet3 jet_scale(Complex c, const Jet3& a) {
  Jet3 r{c * a.value, c * a.grad, c * a.hess, {}};
  int d = a.dim();
  r.third.resize(d);
  for (int k = 0; k < d; ++k) r.third[k] = c * a.third[k];
  return r;
}

Complex jet_mul(const Complex& a, const Complex& b) { return a * b; }

Jet1 jet_mul(const Jet1& a, const Jet1& b) {
  require_same_dim(a.dim(), b.dim());
  return {a.value * b.value, a.value * b.grad + b.value * a.grad};
}

Jet2 jet_mul(const Jet2& a, const Jet2& b) {
  require_same_dim(a.dim(), b.dim());
  Jet2 r;
  r.value = a.value * b.value;
  r.grad = a.value * b.grad + b.value * a.grad;
  r.hess = a.value * b.hess + b.value * a.hess + a.grad * b.grad.transpose() +
           b.grad * a.grad.transpose();
  return r;
}

Jet3 jet_mul(const Jet3& a, const Jet3& b) {
  require_same_dim(a.dim(), b.dim());
  Jet3 r;
  r.value = a.value * b.value;
  r.grad = a.value * b.grad + b.value * a.grad;
  r.hess = a.value * b.hess + b.value * a.hess + a.grad * b.grad.transpose() +
           b.grad * a.grad.transpose();
  int d = a.dim();
  r.third.resize(d);
  for (int k = 0; k < d; ++k) {
    r.third[k] = b.value * a.third[k] + a.value * b.third[k] + b.grad(k) * a.hess +
                 a.grad(k) * b.hess + a.hess.col(k) * b.grad.transpose() +
                 b.grad * a.hess.col(k).transpose() + a.grad * b.hess.col(k).transpose() +
                 b.hess.col(k) * a.grad.transpose();
  }
  return r;
}

Complex jet_sqrt(const Complex& a) {
  if (!(a.real() > 0.0)) throw_branch("jet_sqrt", a);
  return std::sqrt(a);
}

Jet1 jet_sqrt(const Jet1& a) {
  if (!(a.value.real() > 0.0)) throw_branch("jet_sqrt", a.value);
  Complex s = std::sqrt(a.value);
  return compose(a, s, 0.5 / s);
}

Jet2 jet_sqrt(const Jet2& a) {
  if (!(a.value.real() > 0.0)) throw_branch("jet_sqrt", a.value);
  Complex s = std::sqrt(a.value);
  return compose(a, s, 0.5 / s, -0.25 / (s * a.value));
}

Jet3 jet_sqrt(const Jet3& a) {
  if (!(a.value.real() > 0.0)) throw_branch("jet_sqrt", a.value);
  Complex s = std::sqrt(a.value);
  return compose(a, s, 0.5 / s, -0.25 / (s * a.value),
                 0.375 / (s * a.value * a.value));
}

Complex jet_sqrt_lower(const Complex& a) {
  if (a.real() > 0.0) return jet_sqrt(a);
  if (a.real() < 0.0) return Complex(0.0, -1.0) * jet_sqrt(-a);
  throw_branch("jet_sqrt_lower", a);
}

Jet1 jet_sqrt_lower(const Jet1& a) {
  if (a.value.real() > 0.0) return jet_sqrt(a);
  if (a.value.real() < 0.0) return jet_scale(Complex(0.0, -1.0), jet_sqrt(jet_scale(Complex(-1.0, 0.0), a)));
  throw_branch("jet_sqrt_lower", a.value);
}

Jet2 jet_sqrt_lower(const Jet2& a) {
  if (a.value.real() > 0.0) return jet_sqrt(a);
  if (a.value.real() < 0.0) return jet_scale(Complex(0.0, -1.0), jet_sqrt(jet_scale(Complex(-1.0, 0.0), a)));
  throw_branch("jet_sqrt_lower", a.value);
}

Jet3 jet_sqrt_lower(const Jet3& a) {
  if (a.value.real() > 0.0) return jet_sqrt(a);
  if (a.value.real() < 0.0) return jet_scale(Complex(0.0, -1.0), jet_sqrt(jet_scale(Complex(-1.0, 0.0), a)));
  throw_branch("jet_sqrt_lower", a.value);
}

Complex jet_recip(const Complex& a) {
  if (a == Complex(0.0, 0.0)) throw_branch("jet_recip", a);
  return 1.0 / a;
}

Jet1 jet_recip(const Jet1& a) {
  if (a.value == Complex(0.0, 0.0)) throw_branch("jet_recip", a.value);
  Complex v = 1.0 / a.value;
  return compose(a, v, -v * v);
}

Jet2 jet_recip(const Jet2& a) {
  if (a.value == Complex(0.0, 0.0)) throw_branch("jet_recip", a.value);
  Complex v = 1.0 / a.value;
  return compose(a, v, -v * v, 2.0 * v * v * v);
}

Jet3 jet_recip(const Jet3& a) {
  if (a.value == Complex(0.0, 0.0)) throw_branch("jet_recip", a.value);
  Complex v = 1.0 / a.value;
  return compose(a, v, -v * v, 2.0 * v * v * v, -6.0 * v * v * v * v);
}

Complex jet_exp(const Complex& a) { return std::exp(a); }

Jet1 jet_exp(const Jet1& a) {
  Complex e = std::exp(a.value);
  return compose(a, e, e);
}

Jet2 jet_exp(const Jet2& a) {
  Complex e = std::exp(a.value);
  return compose(a, e, e, e);
}

Jet3 jet_exp(const Jet3& a) {
  Complex e = std::exp(a.value);
  return compose(a, e, e, e, e);
}

Jet2 jet_truncate(const Jet3& a) { return {a.value, a.grad, a.hess}; }
Jet1 jet_truncate(const Jet2& a) { return {a.value, a.grad}; }
Complex jet_truncate(const Jet1& a) { return a.value; }

Jet2 jet_derivative(const Jet3& a, int k) {
  Jet2 r;
  r.value = a.grad(k);
  r.grad = a.hess.col(k);
  r.hess = a.third[k];
  return r;
}

Jet1 jet_derivative(const Jet2& a, int k) {
  Jet1 r;
  r.value = a.grad(k);
  r.grad = a.hess.col(k);
  return r;
}

Complex jet_derivative(const Jet1& a, int k) { return a.grad(k); }

}  // namespace p1n
