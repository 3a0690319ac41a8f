#include <p1n/verify.hpp>

#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace p1n {

namespace {

const Complex kI(0.0, 1.0);

struct OpTag {
  bool is_p = false;
  int mu = 0, nu = 0;  ///< P_mu, or plane (mu,nu)
};

std::vector<OpTag> op_tags(const GeneratorSet& gs) {
  std::vector<OpTag> tags;
  for (int mu = 0; mu <= gs.n; ++mu) tags.push_back({true, mu, 0});
  for (int mu = 0; mu < gs.n; ++mu)
    for (int nu = mu + 1; nu <= gs.n; ++nu) tags.push_back({false, mu, nu});
  return tags;
}

struct RhsTerm {
  Complex weight;
  int op = 0;  ///< index into the flattened P,J list
};

/// Signed plane contribution: J_ab = -J_ba, J_aa = 0.
void add_plane(const GeneratorSet& gs, std::vector<RhsTerm>& out, Complex w, int a, int b) {
  if (a == b) return;
  if (a < b)
    out.push_back({w, gs.n + 1 + gs.plane_index(a, b)});
  else
    out.push_back({-w, gs.n + 1 + gs.plane_index(b, a)});
}

/// Structure constants of the commutator [A,B] as weights on the flattened
/// generator list.  Metric g_00 = +1, g_kk = -1, off-diagonal zero.
std::vector<RhsTerm> commutator_rhs(const GeneratorSet& gs, const OpTag& A, const OpTag& B) {
  std::vector<RhsTerm> out;
  if (A.is_p && B.is_p) return out;
  if (A.is_p != B.is_p) {
    const OpTag& p = A.is_p ? A : B;
    const OpTag& j = A.is_p ? B : A;
    const Complex sgn = A.is_p ? Complex(1.0, 0.0) : Complex(-1.0, 0.0);
    // [P_mu, J_nu sigma] = i (g_mu_nu P_sigma - g_mu_sigma P_nu)
    if (p.mu == j.mu) out.push_back({sgn * kI * gs.metric(p.mu), j.nu});
    if (p.mu == j.nu) out.push_back({-sgn * kI * gs.metric(p.mu), j.mu});
    return out;
  }
  // [J_mu_nu, J_rho_sigma] = i (g_mu_sigma J_nu_rho + g_nu_rho J_mu_sigma
  //                             - g_mu_rho J_nu_sigma - g_nu_sigma J_mu_rho)
  const int mu = A.mu, nu = A.nu, rho = B.mu, sigma = B.nu;
  if (mu == sigma) add_plane(gs, out, kI * gs.metric(mu), nu, rho);
  if (nu == rho) add_plane(gs, out, kI * gs.metric(nu), mu, sigma);
  if (mu == rho) add_plane(gs, out, -kI * gs.metric(mu), nu, sigma);
  if (nu == sigma) add_plane(gs, out, -kI * gs.metric(nu), mu, rho);
  return out;
}

/// First application of each generator to each (point, field) combination,
/// kept as order-1 jets so a second application can follow.
struct EvalCache {
  std::vector<Complex> seeds0;
  std::vector<Jet1> seeds1;
  std::vector<std::vector<std::vector<Jet1>>> first;  ///< [op][point*fields+field][comp]
};

void run_parallel(int jobs, int threads, const std::function<void(int)>& work) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 1 || jobs <= 1) {
    for (int i = 0; i < jobs; ++i) work(i);
    return;
  }
  std::atomic<int> next(0);
  auto runner = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= jobs) return;
      work(i);
    }
  };
  std::vector<std::thread> pool;
  const int count = std::min(threads, jobs);
  pool.reserve(static_cast<std::size_t>(count));
  for (int t = 0; t < count; ++t) pool.emplace_back(runner);
  for (auto& th : pool) th.join();
}

std::string point_label(int point, int field) {
  std::ostringstream os;
  os << "point " << point << ", field " << field;
  return os.str();
}

}  // namespace

std::vector<std::string> generator_names(const GeneratorSet& gs) {
  std::vector<std::string> names;
  for (int mu = 0; mu <= gs.n; ++mu) names.push_back("P" + std::to_string(mu));
  for (int mu = 0; mu < gs.n; ++mu)
    for (int nu = mu + 1; nu <= gs.n; ++nu)
      names.push_back("J" + std::to_string(mu) + std::to_string(nu));
  return names;
}

std::vector<SmoothField> test_field_battery(int vdim, int mdim, int count,
                                            std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SmoothField> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(make_test_field(rng, vdim, mdim));
  return out;
}

Report verify_algebra(const GeneratorSet& gs, const std::vector<Vec>& points,
                      const std::vector<SmoothField>& fields, double tol, int threads) {
  const auto tags = op_tags(gs);
  const auto names = generator_names(gs);
  const int nops = static_cast<int>(tags.size());
  const int npts = static_cast<int>(points.size());
  const int nflds = static_cast<int>(fields.size());
  if (npts == 0 || nflds == 0)
    throw std::invalid_argument("verify_algebra: need at least one point and one field");
  for (const auto& q : points) gs.require_domain(q);

  std::vector<EvalCache> caches(static_cast<std::size_t>(npts));
  run_parallel(npts, threads, [&](int j) {
    auto& c = caches[static_cast<std::size_t>(j)];
    c.seeds0 = seed_values(points[static_cast<std::size_t>(j)]);
    c.seeds1 = jet_seeds1(points[static_cast<std::size_t>(j)]);
    c.first.assign(static_cast<std::size_t>(nops), {});
    std::vector<std::vector<Jet2>> f2(static_cast<std::size_t>(nflds));
    for (int k = 0; k < nflds; ++k)
      f2[static_cast<std::size_t>(k)] =
          fields[static_cast<std::size_t>(k)].eval2_at(points[static_cast<std::size_t>(j)]);
    const auto all = [&](int g) {
      const DiffOperator& op =
          g <= gs.n ? gs.P[static_cast<std::size_t>(g)]
                    : gs.J[static_cast<std::size_t>(g - gs.n - 1)];
      auto& slot = c.first[static_cast<std::size_t>(g)];
      slot.resize(static_cast<std::size_t>(nflds));
      for (int k = 0; k < nflds; ++k)
        slot[static_cast<std::size_t>(k)] =
            apply_jet1(op, f2[static_cast<std::size_t>(k)], c.seeds1);
    };
    for (int g = 0; g < nops; ++g) all(g);
  });

  struct Pair {
    int a, b;
  };
  std::vector<Pair> pairs;
  for (int a = 0; a < nops; ++a)
    for (int b = a + 1; b < nops; ++b) pairs.push_back({a, b});

  std::vector<CheckItem> items(pairs.size());
  run_parallel(static_cast<int>(pairs.size()), threads, [&](int idx) {
    const auto [a, b] = pairs[static_cast<std::size_t>(idx)];
    const DiffOperator& oa =
        a <= gs.n ? gs.P[static_cast<std::size_t>(a)] : gs.J[static_cast<std::size_t>(a - gs.n - 1)];
    const DiffOperator& ob =
        b <= gs.n ? gs.P[static_cast<std::size_t>(b)] : gs.J[static_cast<std::size_t>(b - gs.n - 1)];
    const auto rhs = commutator_rhs(gs, tags[static_cast<std::size_t>(a)],
                                    tags[static_cast<std::size_t>(b)]);
    double worst = 0.0;
    std::string where;
    for (int j = 0; j < npts; ++j) {
      const auto& c = caches[static_cast<std::size_t>(j)];
      for (int k = 0; k < nflds; ++k) {
        const auto& fb = c.first[static_cast<std::size_t>(b)][static_cast<std::size_t>(k)];
        const auto& fa = c.first[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)];
        auto ab = apply_value(oa, fb, c.seeds0);
        auto ba = apply_value(ob, fa, c.seeds0);
        for (int i = 0; i < gs.rep.dim; ++i) {
          Complex lhs = ab[static_cast<std::size_t>(i)] - ba[static_cast<std::size_t>(i)];
          Complex want(0.0, 0.0);
          for (const auto& term : rhs)
            want += term.weight *
                    jet_truncate(c.first[static_cast<std::size_t>(term.op)]
                                        [static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]);
          double r = std::abs(lhs - want);
          if (r > worst) {
            worst = r;
            where = point_label(j, k);
          }
        }
      }
    }
    auto& item = items[static_cast<std::size_t>(idx)];
    item.name = "[" + names[static_cast<std::size_t>(a)] + "," +
                names[static_cast<std::size_t>(b)] + "]";
    item.residual = worst;
    item.tol = tol;
    item.pass = worst <= tol;
    item.detail = where;
  });

  Report rep;
  rep.module = "operator_algebra";
  rep.check = "commutation relations (" + picture_name(gs.picture) + ", class " +
              std::to_string(gs.cls) + ")";
  rep.items = std::move(items);
  return rep;
}

Report verify_invariance_condition(const GeneratorSet& gs, const std::vector<Vec>& points,
                                   const std::vector<SmoothField>& fields, double tol) {
  if (gs.picture != Picture::schrodinger)
    throw std::invalid_argument(
        "verify_invariance_condition: generator set must be in the schrodinger picture");
  const auto names = generator_names(gs);
  const int nops = static_cast<int>(names.size());

  Report rep;
  rep.module = "operator_algebra";
  rep.check = "invariance condition at x0 = " + std::to_string(gs.x0);

  for (int g = 0; g < nops; ++g) {
    const DiffOperator& q_op =
        g <= gs.n ? gs.P[static_cast<std::size_t>(g)] : gs.J[static_cast<std::size_t>(g - gs.n - 1)];
    // dQ/dx0 is P_k when Q = J_0k (x0 enters only through the x0 p_k term).
    const DiffOperator* dq = nullptr;
    if (g > gs.n) {
      int plane = g - gs.n - 1;
      for (int k = 1; k <= gs.n; ++k)
        if (plane == gs.plane_index(0, k)) dq = &gs.P[static_cast<std::size_t>(k)];
    }
    double worst = 0.0;
    std::string where;
    for (std::size_t j = 0; j < points.size(); ++j) {
      const Vec& pt = points[j];
      gs.require_domain(pt);
      auto seeds0 = seed_values(pt);
      auto seeds1 = jet_seeds1(pt);
      for (std::size_t k = 0; k < fields.size(); ++k) {
        auto f2 = fields[k].eval2_at(pt);
        auto qf = apply_jet1(q_op, f2, seeds1);
        auto p0f = apply_jet1(gs.P[0], f2, seeds1);
        auto lhs1 = apply_value(gs.P[0], qf, seeds0);
        auto lhs2 = apply_value(q_op, p0f, seeds0);
        std::vector<Complex> want(static_cast<std::size_t>(gs.rep.dim), Complex(0.0, 0.0));
        if (dq) {
          auto df = apply_jet1(*dq, f2, seeds1);
          for (int i = 0; i < gs.rep.dim; ++i)
            want[static_cast<std::size_t>(i)] = kI * jet_truncate(df[static_cast<std::size_t>(i)]);
        }
        for (int i = 0; i < gs.rep.dim; ++i) {
          double r = std::abs(lhs1[static_cast<std::size_t>(i)] - lhs2[static_cast<std::size_t>(i)] -
                              want[static_cast<std::size_t>(i)]);
          if (r > worst) {
            worst = r;
            where = point_label(static_cast<int>(j), static_cast<int>(k));
          }
        }
      }
    }
    rep.add("[P0," + names[static_cast<std::size_t>(g)] + "]", worst, tol, where);
  }
  return rep;
}

Report compare_generator_coefficients(const GeneratorSet& a, const GeneratorSet& b,
                                      const std::vector<Vec>& points, double tol) {
  if (a.n != b.n || a.vdim != b.vdim || a.rep.dim != b.rep.dim)
    throw std::invalid_argument("compare_generator_coefficients: incompatible sets");
  const auto names = generator_names(a);
  const int nops = static_cast<int>(names.size());

  Report rep;
  rep.module = "operator_algebra";
  rep.check = "coefficient comparison";

  for (int g = 0; g < nops; ++g) {
    const DiffOperator& ga =
        g <= a.n ? a.P[static_cast<std::size_t>(g)] : a.J[static_cast<std::size_t>(g - a.n - 1)];
    const DiffOperator& gb =
        g <= b.n ? b.P[static_cast<std::size_t>(g)] : b.J[static_cast<std::size_t>(g - b.n - 1)];
    for (int slot = -1; slot < a.vdim; ++slot) {
      const MatrixField& ma = slot < 0 ? ga.mult : ga.deriv[static_cast<std::size_t>(slot)];
      const MatrixField& mb = slot < 0 ? gb.mult : gb.deriv[static_cast<std::size_t>(slot)];
      double worst = 0.0;
      std::string where;
      for (std::size_t j = 0; j < points.size(); ++j) {
        auto seeds = seed_values(points[j]);
        Mat va = ma.empty() ? Mat::Zero(a.rep.dim, a.rep.dim) : ma.value(seeds);
        Mat vb = mb.empty() ? Mat::Zero(b.rep.dim, b.rep.dim) : mb.value(seeds);
        double r = (va - vb).cwiseAbs().maxCoeff();
        if (r > worst) {
          worst = r;
          where = "point " + std::to_string(j);
        }
      }
      std::string slot_name = slot < 0 ? "mult" : ("d/dq" + std::to_string(slot));
      rep.add(names[static_cast<std::size_t>(g)] + " " + slot_name, worst, tol, where);
    }
  }
  return rep;
}

}  // namespace p1n
