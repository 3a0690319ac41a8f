#include <p1n/fields.hpp>

namespace p1n {

std::vector<Complex> seed_values(const Vec& q) {
  std::vector<Complex> v(q.size());
  for (int i = 0; i < q.size(); ++i) v[i] = q[i];
  return v;
}

Complex ScalarField::value_at(const Vec& q) const { return f0_(seed_values(q)); }
Jet1 ScalarField::eval1_at(const Vec& q) const { return f1_(jet_seeds1(q)); }
Jet2 ScalarField::eval2_at(const Vec& q) const { return f2_(jet_seeds2(q)); }
Jet3 ScalarField::eval3_at(const Vec& q) const { return f3_(jet_seeds3(q)); }

ScalarField constant_field(int dim, Complex c) {
  return ScalarField::make(dim, [c](const auto& sd) {
    return jet_const_like(sd[0], c);
  });
}

ScalarField coordinate_field(int dim, int k) {
  return ScalarField::make(dim, [k](const auto& sd) { return sd[k]; });
}

std::vector<Complex> SmoothField::values(const std::vector<Complex>& seeds) const {
  std::vector<Complex> out(mdim);
  for (int c = 0; c < mdim; ++c) out[c] = comps[c].f0_(seeds);
  return out;
}

std::vector<Jet1> SmoothField::eval1(const std::vector<Jet1>& seeds) const {
  std::vector<Jet1> out(mdim);
  for (int c = 0; c < mdim; ++c) out[c] = comps[c].f1_(seeds);
  return out;
}

std::vector<Jet2> SmoothField::eval2(const std::vector<Jet2>& seeds) const {
  std::vector<Jet2> out(mdim);
  for (int c = 0; c < mdim; ++c) out[c] = comps[c].f2_(seeds);
  return out;
}

std::vector<Jet3> SmoothField::eval3(const std::vector<Jet3>& seeds) const {
  std::vector<Jet3> out(mdim);
  for (int c = 0; c < mdim; ++c) out[c] = comps[c].f3_(seeds);
  return out;
}

std::vector<Complex> SmoothField::values_at(const Vec& q) const { return values(seed_values(q)); }
std::vector<Jet1> SmoothField::eval1_at(const Vec& q) const { return eval1(jet_seeds1(q)); }
std::vector<Jet2> SmoothField::eval2_at(const Vec& q) const { return eval2(jet_seeds2(q)); }
std::vector<Jet3> SmoothField::eval3_at(const Vec& q) const { return eval3(jet_seeds3(q)); }

SmoothField make_test_field(Rng& rng, int dim, int mdim) {
  double alpha = rng.uniform(0.3, 0.8);
  std::vector<Complex> center(dim), beta(dim);
  for (int k = 0; k < dim; ++k) {
    center[k] = Complex(rng.uniform(-0.5, 0.5), 0.0);
    beta[k] = Complex(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3));
  }
  SmoothField f;
  f.dim = dim;
  f.mdim = mdim;
  f.comps.reserve(mdim);
  for (int c = 0; c < mdim; ++c) {
    Complex w(rng.uniform(0.4, 1.0) * (rng.uniform01() < 0.5 ? -1.0 : 1.0),
              rng.uniform(-1.0, 1.0));
    f.comps.push_back(ScalarField::make(dim, [=](const auto& sd) {
      auto quad = jet_const_like(sd[0], Complex(0.0, 0.0));
      for (int k = 0; k < dim; ++k) {
        auto d = jet_add(sd[k], jet_const_like(sd[k], -center[k]));
        quad = jet_add(quad, jet_mul(d, d));
      }
      auto poly = jet_const_like(sd[0], Complex(1.0, 0.0));
      for (int k = 0; k < dim; ++k) poly = jet_add(poly, jet_scale(beta[k], sd[k]));
      auto gauss = jet_exp(jet_scale(Complex(-alpha, 0.0), quad));
      return jet_scale(w, jet_mul(poly, gauss));
    }));
  }
  return f;
}

}  // namespace p1n
