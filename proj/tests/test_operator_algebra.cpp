#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include <p1n/diff_operator.hpp>
#include <p1n/generator_sets.hpp>
#include <p1n/verify.hpp>

using namespace p1n;

namespace {

const Complex kI(0.0, 1.0);

Vec real_point(std::initializer_list<double> xs) {
  Vec q(static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (double x : xs) q[i++] = x;
  return q;
}

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

LittleGroupRep lorentz_vector(int n) { return tilde_continue(vector_rep(n)); }

}  // namespace

TEST_CASE("canonical pairs: [x_k, p_l] = i delta_kl, [p_k, p_l] = 0, [A, A] = 0") {
  const int dim = 3, mdim = 2;
  Rng rng(901);
  SmoothField f = make_test_field(rng, dim, mdim);
  Vec q = real_point({0.4, -1.1, 0.7});
  auto fv = f.values_at(q);

  for (int k = 0; k < dim; ++k) {
    DiffOperator xk = zero_operator(dim, mdim);
    xk.deriv[static_cast<std::size_t>(k)].add(kI * Mat::Identity(mdim, mdim),
                                              constant_field(dim, Complex(1.0, 0.0)));
    for (int l = 0; l < dim; ++l) {
      DiffOperator pl = zero_operator(dim, mdim);
      pl.mult.add(Mat::Identity(mdim, mdim), coordinate_field(dim, l));
      auto c = commutator_apply(xk, pl, f, q);
      for (int i = 0; i < mdim; ++i) {
        Complex want = (k == l) ? kI * fv[static_cast<std::size_t>(i)] : Complex(0.0, 0.0);
        CHECK(std::abs(c[static_cast<std::size_t>(i)] - want) < 1e-14);
      }

      DiffOperator pk = zero_operator(dim, mdim);
      pk.mult.add(Mat::Identity(mdim, mdim), coordinate_field(dim, k));
      auto cc = commutator_apply(pk, pl, f, q);
      CHECK(max_abs(cc) < 1e-15);
    }
    auto self = commutator_apply(xk, xk, f, q);
    CHECK(max_abs(self) == 0.0);
  }
}

TEST_CASE("boost multiplication part matches the symmetrized product expansion") {
  // -(x_k p_0 + p_0 x_k)/2 = -i p_0 d_k - (i/2) (d_k p_0) with x_k = i d_k.
  const int n = 3;
  const double kappa = 1.3;
  auto gs = build_qm_heisenberg(1, n, trivial_rep(n), kappa, 1);
  Rng rng(77);
  SmoothField f = make_test_field(rng, n, 1);
  for (int rep_pt = 0; rep_pt < 6; ++rep_pt) {
    Vec q = sample_domain_point(gs, rng);
    auto j1 = f.eval1_at(q);
    double r2 = 0.0;
    for (int k = 0; k < n; ++k) r2 += q[k].real() * q[k].real();
    double p0 = std::sqrt(r2 + kappa * kappa);
    for (int k = 1; k <= n; ++k) {
      auto got = apply_value(gs.J_at(0, k), f.eval1_at(q), seed_values(q));
      Complex expect = -kI * p0 * j1[0].grad(k - 1) -
                       Complex(0.0, 0.5) * (q[k - 1].real() / p0) * j1[0].value;
      CHECK(std::abs(got[0] - expect) < 1e-13);
    }
  }
}

TEST_CASE("momentum commutes into rotations: [P_1, J_12] = -i P_2") {
  auto gs = build_covariant_class1(3, vector_rep(3));
  Rng rng(1201);
  SmoothField f = make_test_field(rng, gs.vdim, gs.rep.dim);
  for (int pt = 0; pt < 10; ++pt) {
    Vec q = sample_domain_point(gs, rng);
    auto c = commutator_apply(gs.P[1], gs.J_at(1, 2), f, q);
    auto fv = f.values_at(q);
    for (int i = 0; i < gs.rep.dim; ++i)
      CHECK(std::abs(c[static_cast<std::size_t>(i)] - (-kI) * q[2] * fv[static_cast<std::size_t>(i)]) <
            1e-13);
  }
}

TEST_CASE("closure: covariant class 1") {
  Rng rng(3100);
  SUBCASE("n = 2 trivial rep is exact to roundoff") {
    auto gs = build_covariant_class1(2, trivial_rep(2));
    auto pts = sample_domain_points(gs, 6, rng);
    auto fields = test_field_battery(gs.vdim, gs.rep.dim, 2, 41);
    auto rep = verify_algebra(gs, pts, fields, 1e-12);
    CHECK(rep.passed());
    CHECK(rep.items.size() == 15);  // C(6,2) pairs of the 6 generators
  }
  SUBCASE("n = 3 vector rep") {
    auto gs = build_covariant_class1(3, vector_rep(3));
    auto pts = sample_domain_points(gs, 8, rng);
    auto fields = test_field_battery(gs.vdim, gs.rep.dim, 2, 42);
    auto rep = verify_algebra(gs, pts, fields, 1e-9);
    INFO(rep.max_residual());
    CHECK(rep.passed());
  }
  SUBCASE("n = 4 product rep (1/2, 1/2)") {
    auto gs = build_covariant_class1(4, o4_irrep(0.5, 0.5).rep);
    auto pts = sample_domain_points(gs, 6, rng);
    auto fields = test_field_battery(gs.vdim, gs.rep.dim, 2, 43);
    auto rep = verify_algebra(gs, pts, fields, 1e-9, 4);
    INFO(rep.max_residual());
    CHECK(rep.passed());
  }
}

TEST_CASE("closure: covariant class 3") {
  Rng rng(3200);
  auto gs = build_covariant_class3(3, lorentz_vector(3));
  auto pts = sample_domain_points(gs, 8, rng);
  auto fields = test_field_battery(gs.vdim, gs.rep.dim, 2, 44);
  auto rep = verify_algebra(gs, pts, fields, 1e-9);
  INFO(rep.max_residual());
  CHECK(rep.passed());
}

TEST_CASE("closure: reduced sets") {
  Rng rng(3300);
  SUBCASE("class 1 heisenberg, n = 3, spin 1/2, lower branch") {
    auto gs = build_qm_heisenberg(1, 3, so3_spin(0.5), 0.8, -1);
    auto pts = sample_domain_points(gs, 8, rng);
    auto fields = test_field_battery(gs.vdim, gs.rep.dim, 2, 45);
    auto rep = verify_algebra(gs, pts, fields, 1e-9);
    INFO(rep.max_residual());
    CHECK(rep.passed());
  }
  SUBCASE("class 1 schrodinger with x0 = 0.7, n = 2, vector rep") {
    auto gs = build_qm_schrodinger(1, 2, vector_rep(2), 1.4, 1, 0.7);
    auto pts = sample_domain_points(gs, 8, rng);
    auto fields = test_field_battery(gs.vdim, gs.rep.dim, 2, 46);
    auto rep = verify_algebra(gs, pts, fields, 1e-9);
    INFO(rep.max_residual());
    CHECK(rep.passed());
  }
  SUBCASE("class 3 heisenberg, n = 4, continued (1/2, 0)") {
    auto gs = build_qm_heisenberg(3, 4, tilde_continue(o4_irrep(0.5, 0.0).rep), 0.9, 1);
    auto pts = sample_domain_points(gs, 8, rng);
    auto fields = test_field_battery(gs.vdim, gs.rep.dim, 2, 47);
    auto rep = verify_algebra(gs, pts, fields, 1e-9);
    INFO(rep.max_residual());
    CHECK(rep.passed());
  }
  SUBCASE("class 2 limit, n = 3, vector rep") {
    auto gs = build_class2_limit(3, vector_rep(3), 1);
    auto pts = sample_domain_points(gs, 8, rng);
    auto fields = test_field_battery(gs.vdim, gs.rep.dim, 2, 48);
    auto rep = verify_algebra(gs, pts, fields, 1e-9);
    INFO(rep.max_residual());
    CHECK(rep.passed());
  }
}

TEST_CASE("verification is deterministic across thread counts") {
  Rng rng(3400);
  auto gs = build_covariant_class1(3, vector_rep(3));
  auto pts = sample_domain_points(gs, 5, rng);
  auto fields = test_field_battery(gs.vdim, gs.rep.dim, 2, 49);
  auto r1 = verify_algebra(gs, pts, fields, 1e-9, 1);
  auto r4 = verify_algebra(gs, pts, fields, 1e-9, 4);
  CHECK(report_json(r1).dump() == report_json(r4).dump());
}

TEST_CASE("a dropped spin term is detected") {
  Rng rng(3500);
  auto gs = build_covariant_class1(3, vector_rep(3));
  gs.J[static_cast<std::size_t>(gs.plane_index(0, 1))].mult.terms.clear();
  auto pts = sample_domain_points(gs, 5, rng);
  auto fields = test_field_battery(gs.vdim, gs.rep.dim, 2, 50);
  auto rep = verify_algebra(gs, pts, fields, 1e-9);
  CHECK(!rep.passed());
  CHECK(rep.max_residual() > 1e-3);
  bool boost_pair_failed = false;
  for (const auto& item : rep.items)
    if (item.name == "[J01,J02]" && !item.pass) boost_pair_failed = true;
  CHECK(boost_pair_failed);
}

TEST_CASE("substituted set matches the directly built class 3 set") {
  Rng rng(3600);
  for (int n : {3, 4}) {
    auto base = build_covariant_class1(n, vector_rep(n));
    auto mapped = tilde_transform(base);
    auto direct = build_covariant_class3(n, tilde_continue(vector_rep(n)));
    CHECK(mapped.cls == 3);
    CHECK(mapped.rep.lorentz);
    auto pts = sample_domain_points(direct, 6, rng);
    auto rep = compare_generator_coefficients(mapped, direct, pts, 1e-12);
    INFO(rep.max_residual());
    CHECK(rep.passed());

    auto fields = test_field_battery(mapped.vdim, mapped.rep.dim, 2, 51);
    auto closure = verify_algebra(mapped, pts, fields, 1e-9);
    INFO(closure.max_residual());
    CHECK(closure.passed());
  }
  CHECK_THROWS_AS(tilde_transform(build_covariant_class3(3, lorentz_vector(3))),
                  std::invalid_argument);
}

TEST_CASE("momentum square flips sign under the substitution") {
  Rng rng(3700);
  const int n = 3;
  auto base = build_covariant_class1(n, trivial_rep(n));
  auto mapped = tilde_transform(base);

  for (int pt = 0; pt < 8; ++pt) {
    Vec q = sample_domain_point(mapped, rng);
    auto seeds = seed_values(q);

    // Substituted set: P~^2 < 0 everywhere on its domain.
    Complex p2t(0.0, 0.0);
    for (int mu = 0; mu <= n; ++mu) {
      Complex v = mapped.P[static_cast<std::size_t>(mu)].mult.value(seeds)(0, 0);
      p2t += mapped.metric(mu) * v * v;
    }
    CHECK(p2t.real() < 0.0);
    CHECK(std::abs(p2t.imag()) < 1e-14);

    // The parent invariant evaluated at the rotated seeds equals P~^2.
    std::vector<Complex> rotated(seeds.size());
    rotated[0] = -kI * seeds[static_cast<std::size_t>(n)];
    for (int a = 1; a < n; ++a) rotated[static_cast<std::size_t>(a)] = seeds[static_cast<std::size_t>(a)];
    rotated[static_cast<std::size_t>(n)] = kI * seeds[0];
    Complex p2(0.0, 0.0);
    for (int mu = 0; mu <= n; ++mu) {
      Complex v = base.P[static_cast<std::size_t>(mu)].mult.value(rotated)(0, 0);
      p2 += base.metric(mu) * v * v;
    }
    CHECK(std::abs(p2 - p2t) < 1e-12);
  }

  // Reduced pair with equal mass parameters: the invariants are the
  // constants +kappa^2 and -kappa^2.
  const double kappa = 1.1;
  auto qm1 = build_qm_heisenberg(1, n, trivial_rep(n), kappa, 1);
  auto qm3 = build_qm_heisenberg(3, n, tilde_continue(trivial_rep(n)), kappa, 1);
  for (int pt = 0; pt < 5; ++pt) {
    for (const auto* gsp : {&qm1, &qm3}) {
      Vec q = sample_domain_point(*gsp, rng);
      auto seeds = seed_values(q);
      Complex p2(0.0, 0.0);
      for (int mu = 0; mu <= n; ++mu) {
        Complex v = gsp->P[static_cast<std::size_t>(mu)].mult.value(seeds)(0, 0);
        p2 += gsp->metric(mu) * v * v;
      }
      double want = gsp->cls == 1 ? kappa * kappa : -kappa * kappa;
      CHECK(std::abs(p2 - want) < 1e-12);
    }
  }
}

TEST_CASE("schrodinger picture at x0 = 0 coincides with heisenberg exactly") {
  Rng rng(3800);
  auto h = build_qm_heisenberg(1, 3, so3_spin(1.0), 1.2, 1);
  auto s = build_qm_schrodinger(1, 3, so3_spin(1.0), 1.2, 1, 0.0);
  auto pts = sample_domain_points(h, 5, rng);
  auto rep = compare_generator_coefficients(s, h, pts, 0.0);
  CHECK(rep.passed());
  CHECK(rep.max_residual() == 0.0);
}

TEST_CASE("time-shifted generators satisfy the invariance condition") {
  Rng rng(3900);
  for (double x0 : {0.0, 0.7, -2.3}) {
    auto gs = build_qm_schrodinger(1, 3, vector_rep(3), 1.1, 1, x0);
    auto pts = sample_domain_points(gs, 6, rng);
    auto fields = test_field_battery(gs.vdim, gs.rep.dim, 2, 52);
    auto rep = verify_invariance_condition(gs, pts, fields, 1e-10);
    INFO(rep.max_residual());
    CHECK(rep.passed());
  }
  auto gs3 = build_qm_schrodinger(3, 3, lorentz_vector(3), 0.9, 1, 0.7);
  auto pts = sample_domain_points(gs3, 6, rng);
  auto fields = test_field_battery(gs3.vdim, gs3.rep.dim, 2, 53);
  auto rep = verify_invariance_condition(gs3, pts, fields, 1e-10);
  INFO(rep.max_residual());
  CHECK(rep.passed());

  auto h = build_qm_heisenberg(1, 3, vector_rep(3), 1.1, 1);
  CHECK_THROWS_AS(verify_invariance_condition(h, pts, fields, 1e-10), std::invalid_argument);
}

TEST_CASE("domain guards") {
  auto cov1 = build_covariant_class1(3, trivial_rep(3));
  CHECK(cov1.in_domain(real_point({2.0, 0.3, -0.2, 0.5})));
  CHECK(!cov1.in_domain(real_point({0.5, 2.0, 0.0, 0.0})));
  CHECK(!cov1.in_domain(real_point({-2.0, 0.3, -0.2, 0.5})));
  CHECK_THROWS_AS(cov1.require_domain(real_point({0.5, 2.0, 0.0, 0.0})), std::domain_error);

  auto cov3 = build_covariant_class3(3, tilde_continue(trivial_rep(3)));
  CHECK(cov3.in_domain(real_point({0.2, 0.1, -0.4, 1.5})));
  CHECK(!cov3.in_domain(real_point({2.0, 0.1, -0.4, 1.5})));
  CHECK(!cov3.in_domain(real_point({0.2, 0.1, -0.4, -1.5})));

  auto qm3 = build_qm_heisenberg(3, 3, tilde_continue(trivial_rep(3)), 1.0, 1);
  CHECK(qm3.in_domain(real_point({1.2, 0.4, 0.5})));
  CHECK(!qm3.in_domain(real_point({0.1, 0.1, 0.1})));
  CHECK(!qm3.in_domain(real_point({1.2, 0.4, -1.0})));

  auto cls2 = build_class2_limit(3, trivial_rep(3), 1);
  CHECK(!cls2.in_domain(real_point({0.0, 0.0, 0.0})));
  Rng rng(4000);
  SmoothField f = make_test_field(rng, 3, 1);
  auto f2 = f.eval2_at(real_point({0.0, 0.0, 0.0}));
  CHECK_THROWS_AS(apply_jet1(cls2.P[0], f2, jet_seeds1(real_point({0.0, 0.0, 0.0}))),
                  std::domain_error);

  for (auto* gsp : {&cov1, &cov3, &qm3, &cls2}) {
    for (int i = 0; i < 50; ++i) CHECK(gsp->in_domain(sample_domain_point(*gsp, rng)));
  }

  Vec bad = real_point({0.5, 2.0, 0.0, 0.0});
  auto fields = test_field_battery(cov1.vdim, 1, 1, 54);
  CHECK_THROWS_AS(verify_algebra(cov1, {bad}, fields, 1e-9), std::domain_error);
}

TEST_CASE("builder argument validation") {
  CHECK_THROWS_AS(build_covariant_class1(1, trivial_rep(1)), std::invalid_argument);
  CHECK_THROWS_AS(build_covariant_class1(3, tilde_continue(trivial_rep(3))),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_covariant_class3(3, vector_rep(3)), std::invalid_argument);
  CHECK_THROWS_AS(build_qm_heisenberg(2, 3, vector_rep(3), 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_qm_heisenberg(1, 3, vector_rep(3), -1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_qm_heisenberg(1, 3, vector_rep(3), 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_qm_heisenberg(1, 3, vector_rep(4), 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_qm_schrodinger(3, 3, vector_rep(3), 1.0, 1, 0.0),
                  std::invalid_argument);
}

TEST_CASE("plane bookkeeping") {
  auto gs = build_covariant_class1(4, trivial_rep(4));
  CHECK(gs.P.size() == 5);
  CHECK(gs.J.size() == 10);
  int idx = 0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu + 1; nu <= 4; ++nu) CHECK(gs.plane_index(mu, nu) == idx++);
  CHECK(&gs.J_at(2, 4) == &gs.J[static_cast<std::size_t>(gs.plane_index(2, 4))]);
  CHECK_THROWS_AS(gs.plane_index(1, 1), std::out_of_range);
  CHECK_THROWS_AS(gs.plane_index(3, 5), std::out_of_range);
  CHECK(gs.metric(0) == 1.0);
  CHECK(gs.metric(3) == -1.0);

  auto names = generator_names(gs);
  CHECK(names.size() == 15);
  CHECK(names[0] == "P0");
  CHECK(names[5] == "J01");
  CHECK(names[14] == "J34");
}
