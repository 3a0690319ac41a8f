#include <p1n/generator_sets.hpp>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace p1n {

namespace {

const Complex kI(0.0, 1.0);

void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void require_compact_rep(const LittleGroupRep& rep, int n, const char* who) {
  if (rep.lorentz || rep.n != n)
    fail(std::string(who) + ": expected a compact rep with labels 1.." + std::to_string(n));
}

void require_lorentz_rep(const LittleGroupRep& rep, int n, const char* who) {
  if (!rep.lorentz || rep.n != n)
    fail(std::string(who) + ": expected a Lorentz rep with labels 0.." + std::to_string(n - 1));
}

template <class T>
T squares(const std::vector<T>& sd, int lo, int hi) {
  T r = jet_mul(sd[static_cast<std::size_t>(lo)], sd[static_cast<std::size_t>(lo)]);
  for (int k = lo + 1; k <= hi; ++k)
    r = jet_add(r, jet_mul(sd[static_cast<std::size_t>(k)], sd[static_cast<std::size_t>(k)]));
  return r;
}

/// p_0^2 - p_1^2 - ... - p_n^2 on 1+n covariant seeds.
template <class T>
T minkowski_square(const std::vector<T>& sd, int n) {
  return jet_add(jet_mul(sd[0], sd[0]), jet_scale(-1.0, squares(sd, 1, n)));
}

/// p_slot / (sqrt(p^2 + sum_k p_k^2) + sqrt(p^2)); both roots continue into
/// the lower half plane so the same field stays valid under the substitution
/// that rotates p^2 negative.
ScalarField ratio_d1(int n, int slot) {
  return ScalarField::make(n + 1, [n, slot](const auto& sd) {
    auto p2 = minkowski_square(sd, n);
    auto rad = jet_add(p2, squares(sd, 1, n));
    auto den = jet_add(jet_sqrt_lower(rad), jet_sqrt_lower(p2));
    return jet_mul(sd[static_cast<std::size_t>(slot)], jet_recip(den));
  });
}

/// p_slot / (sqrt(p_n^2) + sqrt(-p^2)).
ScalarField ratio_d3(int n, int slot) {
  return ScalarField::make(n + 1, [n, slot](const auto& sd) {
    auto p2 = minkowski_square(sd, n);
    auto den = jet_add(jet_sqrt_lower(jet_mul(sd[static_cast<std::size_t>(n)],
                                              sd[static_cast<std::size_t>(n)])),
                       jet_sqrt_lower(jet_scale(-1.0, p2)));
    return jet_mul(sd[static_cast<std::size_t>(slot)], jet_recip(den));
  });
}

/// eps * sqrt(q^2 + sign*mass^2) on n reduced seeds (sign +1: massive,
/// sign -1: tachyonic branch).
ScalarField qm_energy(int n, double mass, int eps, double sign) {
  const Complex shift(sign * mass * mass, 0.0);
  return ScalarField::make(n, [n, eps, shift](const auto& sd) {
    auto w = jet_add(squares(sd, 0, n - 1), jet_const_like(sd[0], shift));
    return jet_scale(static_cast<double>(eps), jet_sqrt(w));
  });
}

/// -(i/2) d(p_0)/dq_slot = -(i/2) eps q_slot / sqrt(q^2 + sign*mass^2);
/// the symmetrization term of -(x_k p_0 + p_0 x_k)/2 beyond -i p_0 d_k.
ScalarField qm_half_gradient(int n, double mass, int eps, double sign, int slot) {
  const Complex shift(sign * mass * mass, 0.0);
  const Complex pref = Complex(0.0, -0.5) * static_cast<double>(eps);
  return ScalarField::make(n, [n, shift, pref, slot](const auto& sd) {
    auto w = jet_add(squares(sd, 0, n - 1), jet_const_like(sd[0], shift));
    return jet_scale(pref, jet_mul(sd[static_cast<std::size_t>(slot)], jet_recip(jet_sqrt(w))));
  });
}

/// q_slot / (p_0 + mass) with p_0 = eps sqrt(q^2 + mass^2).
ScalarField qm_spin_ratio_class1(int n, double mass, int eps, int slot) {
  const Complex shift(mass * mass, 0.0);
  const Complex m(mass, 0.0);
  return ScalarField::make(n, [n, eps, shift, m, slot](const auto& sd) {
    auto w = jet_add(squares(sd, 0, n - 1), jet_const_like(sd[0], shift));
    auto den = jet_add(jet_scale(static_cast<double>(eps), jet_sqrt(w)), jet_const_like(sd[0], m));
    return jet_mul(sd[static_cast<std::size_t>(slot)], jet_recip(den));
  });
}

/// q_slot / (q_n + eta).
ScalarField qm_spin_ratio_class3(int n, double eta, int slot) {
  const Complex m(eta, 0.0);
  return ScalarField::make(n, [n, m, slot](const auto& sd) {
    auto den = jet_add(sd[static_cast<std::size_t>(n - 1)], jet_const_like(sd[0], m));
    return jet_mul(sd[static_cast<std::size_t>(slot)], jet_recip(den));
  });
}

/// p_0 / (q_n + eta) with p_0 = eps sqrt(q^2 - eta^2).
ScalarField qm_energy_ratio_class3(int n, double eta, int eps) {
  const Complex shift(-eta * eta, 0.0);
  const Complex m(eta, 0.0);
  return ScalarField::make(n, [n, eps, shift, m](const auto& sd) {
    auto w = jet_add(squares(sd, 0, n - 1), jet_const_like(sd[0], shift));
    auto den = jet_add(sd[static_cast<std::size_t>(n - 1)], jet_const_like(sd[0], m));
    return jet_mul(jet_scale(static_cast<double>(eps), jet_sqrt(w)), jet_recip(den));
  });
}

Mat ident(int mdim) { return Mat::Identity(mdim, mdim); }

DiffOperator mult_coordinate(int dim, int mdim, int slot) {
  DiffOperator op = zero_operator(dim, mdim);
  op.mult.add(ident(mdim), coordinate_field(dim, slot));
  return op;
}

DiffOperator mult_field(int dim, int mdim, ScalarField s) {
  DiffOperator op = zero_operator(dim, mdim);
  op.mult.add(ident(mdim), std::move(s));
  return op;
}

/// Substituted coefficient field: evaluate `inner` at the rotated seeds
/// (p_0, p_a, p_n) = (-i q_n, q_a, i q_0).
ScalarField tilde_scalar(const ScalarField& inner, int n) {
  return ScalarField::make(n + 1, [inner, n](const auto& sd) {
    using T = std::decay_t<decltype(sd[0])>;
    std::vector<T> mapped(sd.size(), sd[0]);
    mapped[0] = jet_scale(Complex(0.0, -1.0), sd[static_cast<std::size_t>(n)]);
    for (int a = 1; a < n; ++a) mapped[static_cast<std::size_t>(a)] = sd[static_cast<std::size_t>(a)];
    mapped[static_cast<std::size_t>(n)] = jet_scale(Complex(0.0, 1.0), sd[0]);
    return field_eval(inner, mapped);
  });
}

MatrixField tilde_matrix_field(const MatrixField& mf, int n, Complex scale) {
  MatrixField out = zero_matrix_field(mf.dim, mf.mdim);
  for (const auto& term : mf.terms) out.add(scale * term.coeff, tilde_scalar(term.s, n));
  return out;
}

/// Wrapped operator: coefficients substituted, derivative slots relabeled
/// with the chain factors d/dp_0 = i d/dq_n, d/dp_n = -i d/dq_0.
DiffOperator tilde_operator(const DiffOperator& g, int n, Complex scale) {
  DiffOperator out = zero_operator(g.dim, g.mdim);
  out.mult = tilde_matrix_field(g.mult, n, scale);
  out.deriv[static_cast<std::size_t>(n)] = tilde_matrix_field(g.deriv[0], n, scale * kI);
  for (int a = 1; a < n; ++a)
    out.deriv[static_cast<std::size_t>(a)] =
        tilde_matrix_field(g.deriv[static_cast<std::size_t>(a)], n, scale);
  out.deriv[0] = tilde_matrix_field(g.deriv[static_cast<std::size_t>(n)], n, -scale * kI);
  return out;
}

}  // namespace

std::string picture_name(Picture p) {
  switch (p) {
    case Picture::covariant: return "covariant";
    case Picture::heisenberg: return "heisenberg";
    case Picture::schrodinger: return "schrodinger";
  }
  return "?";
}

int GeneratorSet::plane_index(int mu, int nu) const {
  if (!(0 <= mu && mu < nu && nu <= n)) {
    std::ostringstream os;
    os << "plane_index: bad plane (" << mu << "," << nu << ") for n=" << n;
    throw std::out_of_range(os.str());
  }
  const int m = n + 1;
  return mu * (2 * m - mu - 1) / 2 + (nu - mu - 1);
}

const DiffOperator& GeneratorSet::J_at(int mu, int nu) const {
  return J[static_cast<std::size_t>(plane_index(mu, nu))];
}

const DiffOperator& GeneratorSet::operator_at(int flat) const {
  if (flat < 0 || flat >= operator_count())
    throw std::out_of_range("operator_at: index " + std::to_string(flat));
  return flat <= n ? P[static_cast<std::size_t>(flat)]
                   : J[static_cast<std::size_t>(flat - n - 1)];
}

bool GeneratorSet::in_domain(const Vec& q) const {
  if (static_cast<int>(q.size()) != vdim) return false;
  auto re = [&q](int i) { return q[i].real(); };
  if (picture == Picture::covariant) {
    double p2 = re(0) * re(0);
    for (int k = 1; k <= n; ++k) p2 -= re(k) * re(k);
    if (cls == 1) return p2 > 0.0 && re(0) > 0.0;
    return p2 < 0.0 && re(n) > 0.0;
  }
  double r2 = 0.0;
  for (int k = 0; k < vdim; ++k) r2 += re(k) * re(k);
  if (cls == 1) return eps > 0 ? true : r2 > 0.0;
  if (cls == 2) return r2 > 0.0;
  return r2 > mass * mass && std::abs(re(n - 1) + mass) > 0.0;
}

void GeneratorSet::require_domain(const Vec& q) const {
  if (!in_domain(q)) {
    std::ostringstream os;
    os << "point outside class " << cls << " " << picture_name(picture) << " domain: (";
    for (int i = 0; i < q.size(); ++i) os << (i ? "," : "") << q[i];
    os << ")";
    throw std::domain_error(os.str());
  }
}

GeneratorSet build_covariant_class1(int n, const LittleGroupRep& rep) {
  if (n < 2) fail("build_covariant_class1: need n >= 2");
  require_compact_rep(rep, n, "build_covariant_class1");
  const int dim = n + 1;
  const int mdim = rep.dim;

  GeneratorSet gs;
  gs.n = n;
  gs.cls = 1;
  gs.picture = Picture::covariant;
  gs.mass = std::numeric_limits<double>::quiet_NaN();
  gs.eps = 0;
  gs.x0 = 0.0;
  gs.rep = rep;
  gs.vdim = dim;

  for (int mu = 0; mu <= n; ++mu) gs.P.push_back(mult_coordinate(dim, mdim, mu));

  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu + 1; nu <= n; ++nu) {
      DiffOperator op = zero_operator(dim, mdim);
      if (mu == 0) {
        const int k = nu;
        op.deriv[0].add(-kI * ident(mdim), coordinate_field(dim, k));
        op.deriv[static_cast<std::size_t>(k)].add(-kI * ident(mdim), coordinate_field(dim, 0));
        for (int l = 1; l <= n; ++l) {
          if (l == k) continue;
          op.mult.add(-rep.S_signed(k, l), ratio_d1(n, l));
        }
      } else {
        const int k = mu, l = nu;
        op.deriv[static_cast<std::size_t>(k)].add(kI * ident(mdim), coordinate_field(dim, l));
        op.deriv[static_cast<std::size_t>(l)].add(-kI * ident(mdim), coordinate_field(dim, k));
        op.mult.add(rep.S_at(k, l), constant_field(dim, Complex(1.0, 0.0)));
      }
      gs.J.push_back(std::move(op));
    }
  }
  return gs;
}

GeneratorSet build_covariant_class3(int n, const LittleGroupRep& rep_lorentz) {
  if (n < 2) fail("build_covariant_class3: need n >= 2");
  require_lorentz_rep(rep_lorentz, n, "build_covariant_class3");
  const int dim = n + 1;
  const int mdim = rep_lorentz.dim;

  GeneratorSet gs;
  gs.n = n;
  gs.cls = 3;
  gs.picture = Picture::covariant;
  gs.mass = std::numeric_limits<double>::quiet_NaN();
  gs.eps = 0;
  gs.x0 = 0.0;
  gs.rep = rep_lorentz;
  gs.vdim = dim;

  for (int mu = 0; mu <= n; ++mu) gs.P.push_back(mult_coordinate(dim, mdim, mu));

  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu + 1; nu <= n; ++nu) {
      DiffOperator op = zero_operator(dim, mdim);
      if (mu == 0 && nu < n) {
        const int a = nu;
        op.deriv[0].add(-kI * ident(mdim), coordinate_field(dim, a));
        op.deriv[static_cast<std::size_t>(a)].add(-kI * ident(mdim), coordinate_field(dim, 0));
        op.mult.add(rep_lorentz.S_at(0, a), constant_field(dim, Complex(1.0, 0.0)));
      } else if (mu == 0 && nu == n) {
        op.deriv[0].add(-kI * ident(mdim), coordinate_field(dim, n));
        op.deriv[static_cast<std::size_t>(n)].add(-kI * ident(mdim), coordinate_field(dim, 0));
        for (int a = 1; a < n; ++a) op.mult.add(-rep_lorentz.S_at(0, a), ratio_d3(n, a));
      } else if (nu < n) {
        const int a = mu, b = nu;
        op.deriv[static_cast<std::size_t>(a)].add(kI * ident(mdim), coordinate_field(dim, b));
        op.deriv[static_cast<std::size_t>(b)].add(-kI * ident(mdim), coordinate_field(dim, a));
        op.mult.add(rep_lorentz.S_at(a, b), constant_field(dim, Complex(1.0, 0.0)));
      } else {
        const int a = mu;
        op.deriv[static_cast<std::size_t>(a)].add(kI * ident(mdim), coordinate_field(dim, n));
        op.deriv[static_cast<std::size_t>(n)].add(-kI * ident(mdim), coordinate_field(dim, a));
        for (int b = 1; b < n; ++b) {
          if (b == a) continue;
          op.mult.add(-rep_lorentz.S_signed(a, b), ratio_d3(n, b));
        }
        op.mult.add(rep_lorentz.S_signed(a, 0), ratio_d3(n, 0));
      }
      gs.J.push_back(std::move(op));
    }
  }
  return gs;
}

GeneratorSet tilde_transform(const GeneratorSet& gs) {
  if (gs.cls != 1 || gs.picture != Picture::covariant)
    fail("tilde_transform: input must be a covariant class 1 set");
  const int n = gs.n;

  GeneratorSet out;
  out.n = n;
  out.cls = 3;
  out.picture = Picture::covariant;
  out.mass = std::numeric_limits<double>::quiet_NaN();
  out.eps = 0;
  out.x0 = 0.0;
  out.rep = tilde_continue(gs.rep);
  out.vdim = n + 1;

  out.P.push_back(tilde_operator(gs.P[static_cast<std::size_t>(n)], n, -kI));
  for (int a = 1; a < n; ++a)
    out.P.push_back(tilde_operator(gs.P[static_cast<std::size_t>(a)], n, Complex(1.0, 0.0)));
  out.P.push_back(tilde_operator(gs.P[0], n, kI));

  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu + 1; nu <= n; ++nu) {
      if (mu == 0 && nu < n) {
        out.J.push_back(tilde_operator(gs.J_at(nu, n), n, kI));
      } else if (mu == 0 && nu == n) {
        out.J.push_back(tilde_operator(gs.J_at(0, n), n, Complex(-1.0, 0.0)));
      } else if (nu < n) {
        out.J.push_back(tilde_operator(gs.J_at(mu, nu), n, Complex(1.0, 0.0)));
      } else {
        out.J.push_back(tilde_operator(gs.J_at(0, mu), n, -kI));
      }
    }
  }
  return out;
}

namespace {

GeneratorSet build_reduced(int cls, int n, const LittleGroupRep& rep, double mass, int eps,
                           Picture picture, double x0) {
  if (n < 2) fail("reduced builder: need n >= 2");
  if (eps != 1 && eps != -1) fail("reduced builder: eps must be +1 or -1");
  if (cls == 1) {
    if (!(mass > 0.0)) fail("reduced builder: class 1 needs mass > 0");
    require_compact_rep(rep, n, "reduced class 1 builder");
  } else if (cls == 2) {
    if (mass != 0.0) fail("reduced builder: class 2 has mass 0");
    require_compact_rep(rep, n, "reduced class 2 builder");
  } else if (cls == 3) {
    if (!(mass > 0.0)) fail("reduced builder: class 3 needs mass > 0");
    require_lorentz_rep(rep, n, "reduced class 3 builder");
  } else {
    fail("reduced builder: cls must be 1, 2 or 3");
  }

  const int dim = n;
  const int mdim = rep.dim;
  const double sign = (cls == 3) ? -1.0 : 1.0;
  const bool with_x0 = picture == Picture::schrodinger && x0 != 0.0;

  GeneratorSet gs;
  gs.n = n;
  gs.cls = cls;
  gs.picture = picture;
  gs.mass = mass;
  gs.eps = eps;
  gs.x0 = picture == Picture::schrodinger ? x0 : 0.0;
  gs.rep = rep;
  gs.vdim = dim;

  gs.P.push_back(mult_field(dim, mdim, qm_energy(n, mass, eps, sign)));
  for (int k = 1; k <= n; ++k) gs.P.push_back(mult_coordinate(dim, mdim, k - 1));

  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu + 1; nu <= n; ++nu) {
      DiffOperator op = zero_operator(dim, mdim);
      if (mu == 0) {
        const int k = nu;
        op.deriv[static_cast<std::size_t>(k - 1)].add(-kI * ident(mdim),
                                                      qm_energy(n, mass, eps, sign));
        op.mult.add(ident(mdim), qm_half_gradient(n, mass, eps, sign, k - 1));
        if (with_x0) op.mult.add(x0 * ident(mdim), coordinate_field(dim, k - 1));
        if (cls == 3) {
          if (k < n) {
            op.mult.add(rep.S_at(0, k), constant_field(dim, Complex(1.0, 0.0)));
          } else {
            for (int a = 1; a < n; ++a)
              op.mult.add(-rep.S_at(0, a), qm_spin_ratio_class3(n, mass, a - 1));
          }
        } else {
          for (int l = 1; l <= n; ++l) {
            if (l == k) continue;
            op.mult.add(-rep.S_signed(k, l), qm_spin_ratio_class1(n, mass, eps, l - 1));
          }
        }
      } else if (cls == 3 && nu == n) {
        const int a = mu;
        op.deriv[static_cast<std::size_t>(a - 1)].add(kI * ident(mdim),
                                                      coordinate_field(dim, n - 1));
        op.deriv[static_cast<std::size_t>(n - 1)].add(-kI * ident(mdim),
                                                      coordinate_field(dim, a - 1));
        for (int b = 1; b < n; ++b) {
          if (b == a) continue;
          op.mult.add(-rep.S_signed(a, b), qm_spin_ratio_class3(n, mass, b - 1));
        }
        op.mult.add(rep.S_signed(a, 0), qm_energy_ratio_class3(n, mass, eps));
      } else {
        const int k = mu, l = nu;
        op.deriv[static_cast<std::size_t>(k - 1)].add(kI * ident(mdim),
                                                      coordinate_field(dim, l - 1));
        op.deriv[static_cast<std::size_t>(l - 1)].add(-kI * ident(mdim),
                                                      coordinate_field(dim, k - 1));
        op.mult.add(rep.S_at(k, l), constant_field(dim, Complex(1.0, 0.0)));
      }
      gs.J.push_back(std::move(op));
    }
  }
  return gs;
}

}  // namespace

GeneratorSet build_qm_heisenberg(int cls, int n, const LittleGroupRep& rep, double mass,
                                 int eps) {
  if (cls != 1 && cls != 3) fail("build_qm_heisenberg: cls must be 1 or 3");
  return build_reduced(cls, n, rep, mass, eps, Picture::heisenberg, 0.0);
}

GeneratorSet build_qm_schrodinger(int cls, int n, const LittleGroupRep& rep, double mass,
                                  int eps, double x0) {
  if (cls != 1 && cls != 3) fail("build_qm_schrodinger: cls must be 1 or 3");
  return build_reduced(cls, n, rep, mass, eps, Picture::schrodinger, x0);
}

GeneratorSet build_class2_limit(int n, const LittleGroupRep& rep, int eps) {
  return build_reduced(2, n, rep, 0.0, eps, Picture::schrodinger, 0.0);
}

Vec sample_domain_point(const GeneratorSet& gs, Rng& rng) {
  const int n = gs.n;
  if (gs.picture == Picture::covariant) {
    Vec q(n + 1);
    if (gs.cls == 1) {
      double s2 = 0.0;
      for (int k = 1; k <= n; ++k) {
        double v = rng.uniform(-1.5, 1.5);
        q[k] = v;
        s2 += v * v;
      }
      q[0] = std::sqrt(s2 + rng.uniform(0.2, 4.0));
    } else {
      double s2 = 0.0;
      double p0 = rng.uniform(-1.0, 1.0);
      q[0] = p0;
      for (int a = 1; a < n; ++a) {
        double v = rng.uniform(-1.0, 1.0);
        q[a] = v;
        s2 += v * v;
      }
      double lo = std::sqrt(std::max(0.0, p0 * p0 - s2)) + 0.2;
      q[n] = rng.uniform(lo, lo + 2.0);
    }
    gs.require_domain(q);
    return q;
  }

  Vec q(n);
  if (gs.cls != 3) {
    for (;;) {
      for (int k = 0; k < n; ++k) q[k] = rng.uniform(-2.0, 2.0);
      if (q.norm() >= 0.3) break;
    }
  } else {
    const double eta = gs.mass;
    for (;;) {
      Vec dir(n);
      for (int k = 0; k < n; ++k) dir[k] = rng.gaussian();
      double nrm = dir.norm();
      if (nrm < 1e-12) continue;
      q = dir * (rng.uniform(1.15 * eta, 2.5 * eta) / nrm);
      if (std::abs(q[n - 1] + eta) > 0.15 * eta) break;
    }
  }
  gs.require_domain(q);
  return q;
}

std::vector<Vec> sample_domain_points(const GeneratorSet& gs, int count, Rng& rng) {
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) pts.push_back(sample_domain_point(gs, rng));
  return pts;
}

}  // namespace p1n
