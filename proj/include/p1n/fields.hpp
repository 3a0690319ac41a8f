#pragma once

#include <p1n/jet.hpp>
#include <p1n/rng.hpp>

#include <functional>
#include <vector>

namespace p1n {

/// A smooth scalar function of `dim` variables, evaluable at truncation
/// orders 0..3 from a single generic callable. Evaluation takes seed jets
/// rather than points so that substituted (complex, relabeled) coordinates
/// can be fed through unchanged.
struct ScalarField {
  int dim = 0;
  std::function<Complex(const std::vector<Complex>&)> f0_;
  std::function<Jet1(const std::vector<Jet1>&)> f1_;
  std::function<Jet2(const std::vector<Jet2>&)> f2_;
  std::function<Jet3(const std::vector<Jet3>&)> f3_;

  template <class F>
  static ScalarField make(int dim, F f) {
    ScalarField s;
    s.dim = dim;
    s.f0_ = [f](const std::vector<Complex>& sd) { return f(sd); };
    s.f1_ = [f](const std::vector<Jet1>& sd) { return f(sd); };
    s.f2_ = [f](const std::vector<Jet2>& sd) { return f(sd); };
    s.f3_ = [f](const std::vector<Jet3>& sd) { return f(sd); };
    return s;
  }

  Complex value(const std::vector<Complex>& seeds) const { return f0_(seeds); }
  Jet1 eval1(const std::vector<Jet1>& seeds) const { return f1_(seeds); }
  Jet2 eval2(const std::vector<Jet2>& seeds) const { return f2_(seeds); }
  Jet3 eval3(const std::vector<Jet3>& seeds) const { return f3_(seeds); }

  Complex value_at(const Vec& q) const;
  Jet1 eval1_at(const Vec& q) const;
  Jet2 eval2_at(const Vec& q) const;
  Jet3 eval3_at(const Vec& q) const;
};

ScalarField constant_field(int dim, Complex c);
ScalarField coordinate_field(int dim, int k);

/// Overload set mapping a seed order to the matching evaluation, so that
/// order-generic callables can wrap existing fields.
inline Complex field_eval(const ScalarField& s, const std::vector<Complex>& seeds) {
  return s.value(seeds);
}
inline Jet1 field_eval(const ScalarField& s, const std::vector<Jet1>& seeds) {
  return s.eval1(seeds);
}
inline Jet2 field_eval(const ScalarField& s, const std::vector<Jet2>& seeds) {
  return s.eval2(seeds);
}
inline Jet3 field_eval(const ScalarField& s, const std::vector<Jet3>& seeds) {
  return s.eval3(seeds);
}

/// Vector-valued smooth function: one ScalarField per little-group component.
struct SmoothField {
  int dim = 0;
  int mdim = 0;
  std::vector<ScalarField> comps;

  std::vector<Complex> values(const std::vector<Complex>& seeds) const;
  std::vector<Jet1> eval1(const std::vector<Jet1>& seeds) const;
  std::vector<Jet2> eval2(const std::vector<Jet2>& seeds) const;
  std::vector<Jet3> eval3(const std::vector<Jet3>& seeds) const;

  std::vector<Complex> values_at(const Vec& q) const;
  std::vector<Jet1> eval1_at(const Vec& q) const;
  std::vector<Jet2> eval2_at(const Vec& q) const;
  std::vector<Jet3> eval3_at(const Vec& q) const;
};

/// Gaussian test-field battery: per component
///   w_c * (1 + sum_k beta_k q_k) * exp(-alpha * sum_k (q_k - c_k)^2)
/// with shared alpha, c, beta and independent component weights. Smooth,
/// rapidly decaying, mixes components; jets are exact at every order.
SmoothField make_test_field(Rng& rng, int dim, int mdim);

std::vector<Complex> seed_values(const Vec& q);

}  // namespace p1n
