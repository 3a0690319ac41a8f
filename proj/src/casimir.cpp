#include <p1n/casimir.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <type_traits>

#include <p1n/verify.hpp>

namespace p1n {

namespace {

bool has_deriv(const DiffOperator& op) {
  for (const auto& mf : op.deriv)
    if (!mf.empty()) return true;
  return false;
}

template <class OutT, class InT>
std::vector<OutT> truncate_all(const std::vector<InT>& v) {
  std::vector<OutT> out;
  out.reserve(v.size());
  for (const auto& j : v) out.push_back(jet_truncate(j));
  return out;
}

struct ChainSeeds {
  std::vector<Complex> s0;
  std::vector<Jet1> s1;
  std::vector<Jet2> s2;
  std::vector<Jet3> s3;
};

ChainSeeds chain_seeds(const Vec& q) {
  return {seed_values(q), jet_seeds1(q), jet_seeds2(q), jet_seeds3(q)};
}

/// One weighted product applied right-to-left; every derivative-bearing
/// factor lowers the working order by one. Returns order `target` (0 or 1).
template <class ResultT>
std::vector<ResultT> product_apply(const GeneratorSet& gs, const OpProduct& term,
                                   std::vector<Jet3> c3, std::vector<Jet2> c2,
                                   std::vector<Jet1> c1, std::vector<Complex> c0, int ord,
                                   int target, const ChainSeeds& sd) {
  for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it) {
    const DiffOperator& op = gs.operator_at(*it);
    if (has_deriv(op)) {
      switch (ord) {
        case 3: c2 = apply_jet2(op, c3, sd.s2); break;
        case 2: c1 = apply_jet1(op, c2, sd.s1); break;
        case 1: c0 = apply_value(op, c1, sd.s0); break;
        default: throw std::logic_error("casimir product: jet order exhausted");
      }
      --ord;
    } else {
      switch (ord) {
        case 3: c3 = apply_mult(op, c3, sd.s3); break;
        case 2: c2 = apply_mult(op, c2, sd.s2); break;
        case 1: c1 = apply_mult(op, c1, sd.s1); break;
        default: c0 = apply_mult(op, c0, sd.s0); break;
      }
    }
  }
  while (ord > target) {
    switch (ord) {
      case 3: c2 = truncate_all<Jet2>(c3); break;
      case 2: c1 = truncate_all<Jet1>(c2); break;
      default: c0 = truncate_all<Complex>(c1); break;
    }
    --ord;
  }
  if (ord < target) throw std::logic_error("casimir product: field jets too shallow");
  std::vector<ResultT> out;
  if constexpr (std::is_same_v<ResultT, Jet1>) out = std::move(c1);
  else out = std::move(c0);
  for (auto& c : out) c = jet_scale(term.weight, c);
  return out;
}

double sign_of(int a, int b) { return a < b ? 1.0 : -1.0; }

}  // namespace

CasimirW casimir_W(const GeneratorSet& gs) {
  CasimirW w;
  w.dim = gs.vdim;
  w.mdim = gs.rep.dim;
  const int n = gs.n;
  auto p_idx = [](int mu) { return mu; };
  auto j_idx = [&gs, n](int a, int b) {
    return a < b ? n + 1 + gs.plane_index(a, b) : n + 1 + gs.plane_index(b, a);
  };

  // (1/2)(P^a P_a)(J^bc J_bc): the 1/2 cancels against summing each plane
  // once instead of twice.
  for (int lam = 0; lam <= n; ++lam) {
    for (int nu = 0; nu < n; ++nu) {
      for (int sg = nu + 1; sg <= n; ++sg) {
        Complex weight = gs.metric(lam) * gs.metric(nu) * gs.metric(sg);
        w.terms.push_back({weight, {p_idx(lam), p_idx(lam), j_idx(nu, sg), j_idx(nu, sg)}});
      }
    }
  }
  // -P_a P_b J^ac J^b_c over all label triples with c distinct from a and b.
  for (int mu = 0; mu <= n; ++mu) {
    for (int nu = 0; nu <= n; ++nu) {
      for (int sg = 0; sg <= n; ++sg) {
        if (sg == mu || sg == nu) continue;
        Complex weight = -gs.metric(mu) * gs.metric(nu) * gs.metric(sg) * sign_of(mu, sg) *
                         sign_of(nu, sg);
        w.terms.push_back({weight, {p_idx(mu), p_idx(nu), j_idx(mu, sg), j_idx(nu, sg)}});
      }
    }
  }
  return w;
}

std::vector<Jet1> casimir_apply_jet1(const GeneratorSet& gs, const CasimirW& w,
                                     const std::vector<Jet3>& f, const Vec& q) {
  auto sd = chain_seeds(q);
  std::vector<Jet1> out(static_cast<std::size_t>(w.mdim), jet_const1(w.dim, Complex(0.0, 0.0)));
  for (const auto& term : w.terms) {
    auto part = product_apply<Jet1>(gs, term, f, {}, {}, {}, 3, 1, sd);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = jet_add(out[i], part[i]);
  }
  return out;
}

std::vector<Complex> casimir_apply_value(const GeneratorSet& gs, const CasimirW& w,
                                         const std::vector<Jet2>& f, const Vec& q) {
  auto sd = chain_seeds(q);
  std::vector<Complex> out(static_cast<std::size_t>(w.mdim), Complex(0.0, 0.0));
  for (const auto& term : w.terms) {
    auto part = product_apply<Complex>(gs, term, {}, f, {}, {}, 2, 0, sd);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += part[i];
  }
  return out;
}

Report verify_casimir(const GeneratorSet& gs, const CasimirW& w,
                      const std::vector<Vec>& points, double tol) {
  const auto names = generator_names(gs);
  const auto fields = test_field_battery(gs.vdim, gs.rep.dim, 3, 0xCA51u);

  Report rep;
  rep.module = "operator_algebra";
  rep.check = "invariant commutators (" + picture_name(gs.picture) + ", class " +
              std::to_string(gs.cls) + ")";

  struct Cached {
    ChainSeeds sd;
    std::vector<std::vector<Jet3>> f3;
    std::vector<std::vector<Jet1>> wf;
  };
  std::vector<Cached> cache;
  for (const auto& q : points) {
    gs.require_domain(q);
    Cached c;
    c.sd = chain_seeds(q);
    for (const auto& f : fields) {
      c.f3.push_back(f.eval3_at(q));
      c.wf.push_back(casimir_apply_jet1(gs, w, c.f3.back(), q));
    }
    cache.push_back(std::move(c));
  }

  for (int g = 0; g < gs.operator_count(); ++g) {
    const DiffOperator& op = gs.operator_at(g);
    double worst = 0.0;
    std::string where;
    for (std::size_t j = 0; j < points.size(); ++j) {
      const auto& c = cache[j];
      for (std::size_t k = 0; k < fields.size(); ++k) {
        auto gf = apply_jet2(op, c.f3[k], c.sd.s2);
        auto wgf = casimir_apply_value(gs, w, gf, points[j]);
        auto gwf = apply_value(op, c.wf[k], c.sd.s0);
        for (int i = 0; i < gs.rep.dim; ++i) {
          double r = std::abs(wgf[static_cast<std::size_t>(i)] - gwf[static_cast<std::size_t>(i)]);
          if (r > worst) {
            worst = r;
            std::ostringstream os;
            os << "point " << j << ", field " << k;
            where = os.str();
          }
        }
      }
    }
    rep.add("[W," + names[static_cast<std::size_t>(g)] + "]", worst, tol, where);
  }
  return rep;
}

DiffOperator casimir_P2(const GeneratorSet& gs) {
  DiffOperator op = zero_operator(gs.vdim, gs.rep.dim);
  for (int mu = 0; mu <= gs.n; ++mu) {
    const DiffOperator& p = gs.P[static_cast<std::size_t>(mu)];
    if (has_deriv(p)) throw std::logic_error("casimir_P2: P is not a multiplication operator");
    for (const auto& ta : p.mult.terms) {
      for (const auto& tb : p.mult.terms) {
        ScalarField sa = ta.s, sb = tb.s;
        ScalarField prod = ScalarField::make(gs.vdim, [sa, sb](const auto& sd) {
          return jet_mul(field_eval(sa, sd), field_eval(sb, sd));
        });
        op.mult.add(gs.metric(mu) * ta.coeff * tb.coeff, std::move(prod));
      }
    }
  }
  return op;
}

Report verify_momentum_square(const GeneratorSet& gs, const std::vector<Vec>& points,
                              double tol) {
  DiffOperator p2 = casimir_P2(gs);

  Report rep;
  rep.module = "operator_algebra";
  rep.check = "momentum square identity (class " + std::to_string(gs.cls) + ")";

  for (std::size_t j = 0; j < points.size(); ++j) {
    const Vec& q = points[j];
    gs.require_domain(q);
    Mat v = p2.mult.value(seed_values(q));
    double expected;
    if (gs.picture == Picture::covariant) {
      expected = q[0].real() * q[0].real();
      for (int k = 1; k <= gs.n; ++k) expected -= q[k].real() * q[k].real();
    } else if (gs.cls == 1) {
      expected = gs.mass * gs.mass;
    } else if (gs.cls == 2) {
      expected = 0.0;
    } else {
      expected = -gs.mass * gs.mass;
    }
    Mat want = expected * Mat::Identity(gs.rep.dim, gs.rep.dim);
    rep.add("point " + std::to_string(j), (v - want).cwiseAbs().maxCoeff(), tol);
  }
  return rep;
}

int MatrixGeneratorFamily::plane_index(int mu, int nu) const {
  if (!(0 <= mu && mu < nu && nu <= n))
    throw std::out_of_range("MatrixGeneratorFamily::plane_index: bad plane");
  const int m = n + 1;
  return mu * (2 * m - mu - 1) / 2 + (nu - mu - 1);
}

Mat MatrixGeneratorFamily::J_signed(int mu, int nu) const {
  if (mu == nu) return Mat::Zero(mdim, mdim);
  if (mu < nu) return J[static_cast<std::size_t>(plane_index(mu, nu))];
  return -J[static_cast<std::size_t>(plane_index(nu, mu))];
}

Report check_B_covariance(const std::vector<Mat>& B, const MatrixGeneratorFamily& family,
                          double tol) {
  const int n = family.n;
  if (static_cast<int>(B.size()) != n + 1)
    throw std::invalid_argument("check_B_covariance: need n+1 matrices");
  if (static_cast<int>(family.J.size()) != n * (n + 1) / 2)
    throw std::invalid_argument("check_B_covariance: family plane count mismatch");
  for (const auto& b : B)
    if (b.rows() != family.mdim || b.cols() != family.mdim)
      throw std::invalid_argument("check_B_covariance: matrix shape mismatch");

  Report rep;
  rep.module = "operator_algebra";
  rep.check = "translation-like covariance of supplied matrices";

  for (int mu = 0; mu <= n; ++mu) {
    for (int rho = 0; rho < n; ++rho) {
      for (int sg = rho + 1; sg <= n; ++sg) {
        const Mat& jrs = family.J[static_cast<std::size_t>(family.plane_index(rho, sg))];
        Mat lhs = B[static_cast<std::size_t>(mu)] * jrs - jrs * B[static_cast<std::size_t>(mu)];
        Mat rhs = Mat::Zero(family.mdim, family.mdim);
        if (mu == rho) rhs += B[static_cast<std::size_t>(sg)];
        if (mu == sg) rhs -= B[static_cast<std::size_t>(rho)];
        std::string name = "[B" + std::to_string(mu) + ",J" + std::to_string(rho) +
                           std::to_string(sg) + "]";
        rep.add(name, (lhs - rhs).cwiseAbs().maxCoeff(), tol);
      }
    }
  }
  return rep;
}

}  // namespace p1n
