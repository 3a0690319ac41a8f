// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Tolerances are pinned here and are not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <p1n/casimir.hpp>
#include <p1n/generator_sets.hpp>
#include <p1n/grid.hpp>
#include <p1n/mass_spectrum.hpp>
#include <p1n/report.hpp>
#include <p1n/rng.hpp>
#include <p1n/snapshot.hpp>
#include <p1n/spin_reps.hpp>
#include <p1n/verify.hpp>

namespace {

using namespace p1n;
namespace fs = std::filesystem;

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Outcome {
  bool pass = false;
  double residual = 0.0;
  double limit = 0.0;
  std::string detail;
};

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::string> sweep_reps(int n) {
  std::vector<std::string> reps = {"trivial", "vector"};
  if (n == 3) reps.push_back("spin:1/2");
  if (n == 4) {
    reps.push_back("o4:0,1/2");
    reps.push_back("o4:1/2,1/2");
  }
  return reps;
}

/// Criteria 1 and 2: every commutator of every set in the sweep, 20 seeded
/// in-domain points x 3 test fields per configuration.
Outcome closure_sweep(int cls) {
  Outcome out;
  out.limit = 1e-9;
  out.pass = true;
  std::uint64_t seed = cls == 1 ? 101 : 301;
  int configs = 0;
  for (int n : {2, 3, 4}) {
    for (const std::string& name : sweep_reps(n)) {
      LittleGroupRep rep = make_rep(name, n);
      if (cls == 3) rep = tilde_continue(rep);
      std::vector<GeneratorSet> sets;
      sets.push_back(cls == 1 ? build_covariant_class1(n, rep)
                              : build_covariant_class3(n, rep));
      sets.push_back(build_qm_heisenberg(cls, n, rep, 1.0, 1));
      sets.push_back(build_qm_schrodinger(cls, n, rep, 1.0, 1, 0.3));
      for (const GeneratorSet& gs : sets) {
        Rng rng(seed++);
        const auto points = sample_domain_points(gs, 20, rng);
        const auto fields = test_field_battery(gs.vdim, gs.rep.dim, 3, seed);
        const Report r = verify_algebra(gs, points, fields, out.limit, 0);
        out.residual = std::max(out.residual, r.max_residual());
        out.pass = out.pass && r.passed();
        ++configs;
      }
    }
  }
  out.detail = std::to_string(configs) + " configurations";
  return out;
}

/// Criterion 3: the analytic continuation of the class I covariant set must
/// equal the directly built class III set, and its momentum square must keep
/// the pointwise Minkowski value, which is negative on the class III domain.
Outcome tilde_consistency() {
  Outcome out;
  out.limit = 1e-12;
  out.pass = true;
  std::uint64_t seed = 401;
  for (auto [n, name] : {std::pair<int, const char*>{2, "vector"},
                         {3, "spin:1/2"},
                         {4, "o4:1/2,1/2"}}) {
    const LittleGroupRep rep = make_rep(name, n);
    const GeneratorSet mapped = tilde_transform(build_covariant_class1(n, rep));
    const GeneratorSet direct = build_covariant_class3(n, tilde_continue(rep));
    Rng rng(seed++);
    const auto points = sample_domain_points(direct, 20, rng);
    const Report match = compare_generator_coefficients(mapped, direct, points, out.limit);
    const Report square = verify_momentum_square(mapped, points, out.limit);
    out.residual = std::max({out.residual, match.max_residual(), square.max_residual()});
    out.pass = out.pass && match.passed() && square.passed();
    for (const Vec& p : points) {
      double minkowski = std::norm(p(0));
      for (int k = 1; k <= n; ++k) minkowski -= std::norm(p(k));
      out.pass = out.pass && minkowski < 0.0;
    }
  }
  out.detail = "coefficients and sign of the momentum square";
  return out;
}

/// Criterion 4: [P_0, J_0k] = i P_k and [P_0, Q] = 0 for the x0-independent
/// generators, at three distinct x0 values.
Outcome invariance_condition() {
  Outcome out;
  out.limit = 1e-10;
  out.pass = true;
  std::uint64_t seed = 501;
  for (double x0 : {0.0, 0.7, -1.3}) {
    std::vector<GeneratorSet> sets;
    sets.push_back(build_qm_schrodinger(1, 4, make_rep("o4:0,1/2", 4), 1.0, 1, x0));
    sets.push_back(build_qm_schrodinger(3, 3, tilde_continue(make_rep("spin:1/2", 3)),
                                        0.8, 1, x0));
    for (const GeneratorSet& gs : sets) {
      Rng rng(seed++);
      const auto points = sample_domain_points(gs, 10, rng);
      const auto fields = test_field_battery(gs.vdim, gs.rep.dim, 3, seed);
      const Report r = verify_invariance_condition(gs, points, fields, out.limit);
      out.residual = std::max(out.residual, r.max_residual());
      out.pass = out.pass && r.passed();
    }
  }
  out.detail = "x0 in {0, 0.7, -1.3}";
  return out;
}

/// Criterion 5: commutation relations and casimir identities of the O(4)
/// splits for all label pairs with 2s + 2t <= 3, plus detection of a single
/// mutated matrix entry.
Outcome spin_isospin_battery() {
  Outcome out;
  out.limit = 1e-12;
  out.pass = true;
  int pairs = 0;
  bool detected = true;
  for (int s2 = 0; s2 <= 3; ++s2) {
    for (int t2 = 0; s2 + t2 <= 3; ++t2) {
      const O4Rep rep = o4_irrep(0.5 * s2, 0.5 * t2);
      const Report rel = check_little_group_relations(rep.rep, out.limit);
      const Report split = check_spin_isospin(rep.split, out.limit);
      out.residual = std::max({out.residual, rel.max_residual(), split.max_residual()});
      out.pass = out.pass && rel.passed() && split.passed();

      SpinIsospinSplit broken = rep.split;
      broken.S_vec[0](0, 0) += 1e-3;
      detected = detected && !check_spin_isospin(broken, out.limit).passed();
      LittleGroupRep bent = rep.rep;
      bent.S[0](0, 0) += 1e-3;
      detected = detected && !check_little_group_relations(bent, out.limit).passed();
      ++pairs;
    }
  }
  out.pass = out.pass && detected;
  out.detail = std::to_string(pairs) + " (s,t) pairs; mutations " +
               (detected ? "detected" : "MISSED");
  return out;
}

/// Criterion 6: P^2 acts by multiplication with the class constant
/// (kappa^2, 0, -eta^2) on reduced sets and with the coordinate Minkowski
/// square on covariant sets.
Outcome momentum_square_identity() {
  Outcome out;
  out.limit = 1e-12;
  out.pass = true;
  std::vector<GeneratorSet> sets;
  sets.push_back(build_qm_heisenberg(1, 4, make_rep("o4:0,1/2", 4), 1.3, 1));
  sets.push_back(build_class2_limit(3, make_rep("vector", 3), 1));
  sets.push_back(build_qm_schrodinger(3, 3, tilde_continue(make_rep("spin:1/2", 3)),
                                      0.8, 1, 0.4));
  sets.push_back(build_covariant_class1(3, make_rep("vector", 3)));
  sets.push_back(build_covariant_class3(4, tilde_continue(make_rep("o4:0,1/2", 4))));
  std::uint64_t seed = 601;
  for (const GeneratorSet& gs : sets) {
    Rng rng(seed++);
    const Report r = verify_momentum_square(gs, sample_domain_points(gs, 20, rng), out.limit);
    out.residual = std::max(out.residual, r.max_residual());
    out.pass = out.pass && r.passed();
  }
  out.detail = "kappa^2 / 0 / -eta^2 / coordinate square";
  return out;
}

double max_component_diff(const GridWaveFunction& a, const GridWaveFunction& b) {
  double m = 0.0;
  for (std::size_t c = 0; c < a.data.size(); ++c)
    for (std::size_t i = 0; i < a.data[c].size(); ++i)
      m = std::max(m, std::abs(a.data[c][i] - b.data[c][i]));
  return m;
}

/// Criterion 7: exact unitarity and the one-parameter group property of the
/// propagator, and second-order decay of the centered time-step residual.
Outcome propagation_properties() {
  Outcome out;
  out.limit = 1e-13;
  const MomentumGrid g = make_grid({-6.0, -6.0, -6.0}, {6.0, 6.0, 6.0}, {16, 16, 16});
  const GridWaveFunction f =
      make_gaussian_packet(g, make_rep("spin:1", 3), 1, 1.2, 1, {0.8, -0.3, 0.5},
                           {0.7, 0.7, 0.7}, {Complex(1.0, 0.0), Complex(0.0, 1.0),
                                             Complex(-0.5, 0.0)});
  double worst = 0.0;
  for (double t : {0.1, 1.0, 10.0})
    worst = std::max(worst, std::abs(state_norm(propagate(f, t)) - state_norm(f)));
  worst = std::max(worst,
                   max_component_diff(propagate(propagate(f, 0.7), 0.6), propagate(f, 1.3)));
  out.residual = worst;

  const double r0 = evolution_equation_residual(f, 0.02);
  const double r1 = evolution_equation_residual(f, 0.01);
  const double r2 = evolution_equation_residual(f, 0.005);
  const double o1 = std::log2(r0 / r1);
  const double o2 = std::log2(r1 / r2);
  out.pass = worst <= out.limit && o1 >= 1.9 && o2 >= 1.9;
  char buf[96];
  std::snprintf(buf, sizeof buf, "time-step orders %.3f, %.3f (need >= 1.9)", o1, o2);
  out.detail = buf;
  return out;
}

/// Criterion 8: the drift rate of <x_k> against the direct group-velocity
/// moment sum eps q_k / omega, n = 4, kappa = 1.
Outcome packet_drift() {
  Outcome out;
  out.limit = 1e-6;
  // The packet must be contained in momentum and position at once: edge
  // amplitudes below ~1e-6 keep the discrete drift within 1e-6 of the moment.
  const MomentumGrid g =
      make_grid({-6.0, -6.0, -6.0, -6.0}, {6.0, 6.0, 6.0, 6.0}, {32, 32, 32, 32});
  const LittleGroupRep rep = make_rep("o4:0,1/2", 4);
  const GridWaveFunction f = make_gaussian_packet(
      g, rep, 1, 1.0, 1, {0.6, 0.0, -0.4, 0.3}, {0.7, 0.7, 0.7, 0.7},
      {Complex(1.0, 0.0), Complex(0.5, 0.5)});

  const double t = 0.3, dt = 0.05;
  const GridWaveFunction fm = propagate(f, t - dt);
  const GridWaveFunction f0 = propagate(f, t);
  const GridWaveFunction fp = propagate(f, t + dt);

  // Independent velocity moment: direct sum over grid points.
  std::vector<double> vel(4, 0.0);
  double norm2 = 0.0;
  std::vector<int> idx(4, 0);
  for (std::size_t flat = 0; flat < g.total(); ++flat) {
    double w2 = 1.0, q[4];
    for (int a = 0; a < 4; ++a) {
      q[a] = g.p(a, idx[static_cast<std::size_t>(a)]);
      w2 += q[a] * q[a];
    }
    double amp2 = 0.0;
    for (const auto& comp : f0.data) amp2 += std::norm(comp[flat]);
    norm2 += amp2;
    for (int a = 0; a < 4; ++a) vel[static_cast<std::size_t>(a)] += amp2 * q[a] / std::sqrt(w2);
    for (int a = 3; a >= 0; --a) {
      auto ua = static_cast<std::size_t>(a);
      if (++idx[ua] < g.axes[ua].count) break;
      idx[ua] = 0;
    }
  }
  for (double& v : vel) v /= norm2;

  for (int k = 0; k < 4; ++k) {
    const double xm = expectation(position_operator(4, rep.dim, k), fm).real();
    const double xp = expectation(position_operator(4, rep.dim, k), fp).real();
    const double slope = (xp - xm) / (2.0 * dt);
    out.residual = std::max(out.residual, std::abs(slope - vel[static_cast<std::size_t>(k)]));
  }
  out.pass = out.residual <= out.limit;
  out.detail = "central difference at t = 0.3, dt = 0.05, all four axes";
  return out;
}

/// State with a prescribed amplitude per q_4 mode and a Gaussian transverse
/// factor; used to build spectra with known mass content.
GridWaveFunction separable_state(const MomentumGrid& g, double spatial_width,
                                 const std::vector<Complex>& h) {
  GridWaveFunction f;
  f.grid = g;
  f.space = Space::momentum;
  f.rep = trivial_rep(4);
  f.cls = 1;
  f.mass = 1.0;
  f.eps = 1;
  f.data.assign(1, std::vector<Complex>(g.total()));
  std::vector<int> idx(4, 0);
  for (std::size_t flat = 0; flat < g.total(); ++flat) {
    double r2 = 0.0;
    for (int a = 0; a < 3; ++a) {
      const double q = g.p(a, idx[static_cast<std::size_t>(a)]);
      r2 += q * q;
    }
    f.data[0][flat] = std::exp(-r2 / (4.0 * spatial_width * spatial_width)) *
                      h[static_cast<std::size_t>(idx[3])];
    for (int a = 3; a >= 0; --a) {
      auto ua = static_cast<std::size_t>(a);
      if (++idx[ua] < g.axes[ua].count) break;
      idx[ua] = 0;
    }
  }
  const double nrm = state_norm(f);
  for (auto& v : f.data[0]) v /= nrm;
  return f;
}

std::vector<double> commensurate_m2(const MomentumGrid& g, double kappa, int count) {
  const double dp = g.axes[3].step;
  std::vector<double> m2(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j)
    m2[static_cast<std::size_t>(j)] = kappa * kappa + (j * dp) * (j * dp);
  return m2;
}

/// Criterion 9: density shape against a fine-trapezoid Fourier oracle, the
/// two mass-square means against each other, and the stable fixture.
Outcome mass_observables() {
  Outcome out;
  out.pass = true;

  // Gaussian x_4 profile exp(-x^2/2): density proportional to
  // exp(-(m^2 - kappa^2)), compared in shape to 1e-6 relative.
  const MomentumGrid g = make_grid({-4.0, -4.0, -4.0, -8.0}, {4.0, 4.0, 4.0, 8.0},
                                   {8, 8, 8, 64});
  const double kappa = 1.0;
  const GridWaveFunction f = make_gaussian_packet(
      g, trivial_rep(4), 1, kappa, 1, {0.0, 0.0, 0.0, 0.0},
      {1.0, 1.0, 1.0, 1.0 / std::sqrt(2.0)}, {Complex(1.0, 0.0)});
  const GridWaveFunction pos = fourier_to_position(f);

  std::vector<double> m2(25);
  for (std::size_t j = 0; j < m2.size(); ++j)
    m2[j] = kappa * kappa + 0.25 * static_cast<double>(j);
  const MassDistribution d = mass_spectrum(pos, kappa, m2);

  const int fine = 4001;
  const double lo = -20.0, hi = 20.0;
  const double step = (hi - lo) / (fine - 1);
  double shape_err = 0.0;
  std::vector<double> oracle(m2.size());
  for (std::size_t j = 0; j < m2.size(); ++j) {
    const double p4 = std::sqrt(m2[j] - kappa * kappa);
    Complex acc(0.0, 0.0);
    for (int i = 0; i < fine; ++i) {
      const double x = lo + i * step;
      const double w = (i == 0 || i == fine - 1) ? 0.5 : 1.0;
      acc += w * std::exp(-x * x / 2.0) * std::exp(Complex(0.0, -p4 * x));
    }
    oracle[j] = std::norm(acc * step / std::sqrt(kTwoPi));
  }
  for (std::size_t j = 0; j < m2.size(); ++j) {
    const double got = d.rho_total[j] / d.rho_total[0];
    const double want = oracle[j] / oracle[0];
    shape_err = std::max(shape_err, std::abs(got - want) / want);
  }
  out.pass = out.pass && shape_err <= 1e-6;

  // Density-weighted mean against the direct second-moment mean on a grid
  // whose samples line up with the q_4 modes.
  const MassDistribution dc = mass_spectrum(pos, kappa, commensurate_m2(g, kappa, 33));
  const double mean_diff = std::abs(dc.rho_mean_m2 - dc.mean_m2);
  out.pass = out.pass && mean_diff <= 1e-4;

  // x_4-independent state: one exact peak at kappa^2, mean lifetime 1/kappa.
  const MomentumGrid gs = make_grid({-4.0, -4.0, -4.0, -4.0}, {4.0, 4.0, 4.0, 4.0},
                                    {8, 8, 8, 32});
  std::vector<Complex> h(32, Complex(0.0, 0.0));
  h[16] = Complex(1.0, 0.0);
  const GridWaveFunction stable = separable_state(gs, 0.8, h);
  const MassDistribution ds =
      mass_spectrum(fourier_to_position(stable), kappa, commensurate_m2(gs, kappa, 17));
  const double peak_err =
      ds.peaks.size() == 1
          ? std::max(std::abs(ds.peaks[0].m2 - kappa * kappa),
                     std::abs(ds.mean_lifetime - 1.0 / kappa))
          : 1.0;
  out.pass = out.pass && peak_err <= 1e-12;

  out.residual = std::max({shape_err, mean_diff, peak_err});
  out.limit = 1e-4;
  char buf[128];
  std::snprintf(buf, sizeof buf, "shape %.1e (limit 1e-06); means %.1e (1e-04); peak %.1e (1e-12)",
                shape_err, mean_diff, peak_err);
  out.detail = buf;
  return out;
}

std::string slurp(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return "<missing>";
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

/// Criterion 10: equal seeds give byte-identical verification reports.
Outcome determinism() {
  Outcome out;
  out.limit = 0.0;
  const fs::path base = fs::temp_directory_path() / "p1n_acceptance";
  fs::remove_all(base);
  fs::create_directories(base);
  const std::string args =
      " --seed 9 verify --n 3 --class I --picture heisenberg --rep spin:1 --kappa 1.2";
  bool ok = true;
  for (const char* tag : {"a", "b"}) {
    const std::string cmd = std::string(P1N_CLI_PATH) + " --out-dir " +
                            (base / tag).string() + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    ok = ok && status != -1 && WEXITSTATUS(status) == 0;
  }
  const std::string a = slurp(base / "a" / "verify_report.json");
  const std::string b = slurp(base / "b" / "verify_report.json");
  out.pass = ok && !a.empty() && a != "<missing>" && a == b;
  out.residual = out.pass ? 0.0 : 1.0;
  out.detail = "two cli verify runs, seed 9";
  fs::remove_all(base);
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
    double wall_limit_s;
  };
  const Criterion criteria[] = {
      {"class I commutator closure over n, reps, pictures", [] { return closure_sweep(1); },
       60.0},
      {"class III commutator closure, continued reps", [] { return closure_sweep(3); }, 60.0},
      {"tilde map equals the direct class III build", tilde_consistency, 0.0},
      {"time-translation invariance in the schrodinger picture", invariance_condition, 0.0},
      {"spin/isospin relations, casimirs, mutation detection", spin_isospin_battery, 0.0},
      {"momentum-square multiplication identity per class", momentum_square_identity, 0.0},
      {"unitary propagation, group property, step order", propagation_properties, 0.0},
      {"packet drift matches the group-velocity moment", packet_drift, 0.0},
      {"mass density shape, mean consistency, stable peak", mass_observables, 0.0},
      {"byte-identical verification reports for equal seeds", determinism, 0.0},
  };

  bool all = true;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double dt = elapsed_s(t0);
    if (c.wall_limit_s > 0.0 && dt >= c.wall_limit_s) {
      out.pass = false;
      out.detail += " [over time budget]";
    }
    all = all && out.pass;
    std::printf("[%2d/10] %s  %-55s residual %.2e  limit %.0e  (%.1f s)%s%s\n", index,
                out.pass ? "PASS" : "FAIL", c.name, out.residual, out.limit, dt,
                out.detail.empty() ? "" : "  ", out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %s\n", all ? "all criteria passed" : "FAILURES PRESENT");
  return all ? 0 : 1;
}
