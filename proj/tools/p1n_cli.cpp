#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <p1n/casimir.hpp>
#include <p1n/fields.hpp>
#include <p1n/generator_sets.hpp>
#include <p1n/grid.hpp>
#include <p1n/mass_spectrum.hpp>
#include <p1n/report.hpp>
#include <p1n/rng.hpp>
#include <p1n/snapshot.hpp>
#include <p1n/spin_reps.hpp>
#include <p1n/verify.hpp>

namespace {

using nlohmann::json;
using namespace p1n;

struct GlobalOpts {
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int threads = 1;
  std::string out_dir = ".";
  std::string config_path;
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("--config: cannot open " + path);
  json j;
  try {
    is >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("--config: " + std::string(e.what()));
  }
  if (!j.is_object()) throw std::invalid_argument("--config: top-level object required");
  return j;
}

/// Flags override the config file: only unset options take file values.
template <typename T>
void merge_option(const json& cfg, const char* key, const CLI::Option* opt, T& var) {
  if (opt->count() > 0 || !cfg.contains(key)) return;
  try {
    var = cfg.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("--config: bad value for key '") + key + "'");
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << content;
  if (!os) throw std::runtime_error("write failed for " + path);
}

/// Accepts the bare pair form "S,T" for the four-dimensional double-valued
/// labels in addition to the canonical grammar.
LittleGroupRep rep_from_flag(const std::string& text, int n) {
  std::string name = text;
  if (name.find(':') == std::string::npos && name.find(',') != std::string::npos)
    name = "o4:" + name;
  try {
    return make_rep(name, n);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("--rep: ") + e.what());
  }
}

int parse_class_label(const std::string& text) {
  if (text == "I" || text == "1") return 1;
  if (text == "II" || text == "2") return 2;
  if (text == "III" || text == "3") return 3;
  throw std::invalid_argument("--class: expected I, II, or III, got '" + text + "'");
}

Picture parse_picture(const std::string& text) {
  if (text == "covariant") return Picture::covariant;
  if (text == "heisenberg") return Picture::heisenberg;
  if (text == "schrodinger") return Picture::schrodinger;
  throw std::invalid_argument("--picture: expected covariant, heisenberg, or schrodinger");
}

std::vector<Complex> parse_weights(const std::string& text, int dim) {
  std::vector<Complex> w;
  if (text.empty()) {
    w.assign(static_cast<std::size_t>(dim), Complex(1.0, 0.0));
    return w;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? comma : comma - start);
    try {
      std::size_t colon = item.find(':');
      if (colon == std::string::npos)
        w.emplace_back(std::stod(item), 0.0);
      else
        w.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
    } catch (const std::exception&) {
      throw std::invalid_argument("--weights: cannot parse component '" + item + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (static_cast<int>(w.size()) != dim)
    throw std::invalid_argument("--weights: expected " + std::to_string(dim) + " components");
  return w;
}

/// Multiplication operator eps q_k / omega(q) used for drift observables.
DiffOperator velocity_operator(int dim, int mdim, int k, int cls, double mass, int eps) {
  const Complex m2(cls == 3 ? -mass * mass : mass * mass, 0.0);
  ScalarField field = ScalarField::make(dim, [k, m2, eps](const auto& sd) {
    auto r2 = jet_mul(sd[0], sd[0]);
    for (std::size_t a = 1; a < sd.size(); ++a) r2 = jet_add(r2, jet_mul(sd[a], sd[a]));
    auto w = jet_sqrt(jet_add(r2, jet_const_like(sd[0], m2)));
    return jet_scale(Complex(eps, 0.0), jet_mul(sd[static_cast<std::size_t>(k)], jet_recip(w)));
  });
  DiffOperator op = zero_operator(dim, mdim);
  op.mult.add(Mat::Identity(mdim, mdim), field);
  return op;
}

struct VerifyOpts {
  int n = 4;
  std::string cls = "I";
  std::string picture = "heisenberg";
  std::string rep = "trivial";
  double kappa = 1.0;
  double eta = 1.0;
  int eps = 1;
  double x0 = 0.0;
  int points = 20;
};

GeneratorSet build_configured_set(const VerifyOpts& o) {
  const int cls = parse_class_label(o.cls);
  const Picture pic = parse_picture(o.picture);
  LittleGroupRep rep = rep_from_flag(o.rep, o.n);
  if (cls == 3) rep = tilde_continue(rep);

  if (pic == Picture::covariant) {
    if (cls == 1) return build_covariant_class1(o.n, rep);
    if (cls == 3) return build_covariant_class3(o.n, rep);
    throw std::invalid_argument("--class: class II has no covariant realization here");
  }
  if (cls == 2) return build_class2_limit(o.n, rep, o.eps);
  const double mass = cls == 3 ? o.eta : o.kappa;
  if (pic == Picture::schrodinger) return build_qm_schrodinger(cls, o.n, rep, mass, o.eps, o.x0);
  return build_qm_heisenberg(cls, o.n, rep, mass, o.eps);
}

int run_verify(const GlobalOpts& g, const VerifyOpts& o) {
  GeneratorSet gs = build_configured_set(o);
  Rng rng(g.seed);
  const std::vector<Vec> points = sample_domain_points(gs, o.points, rng);
  const std::vector<SmoothField> fields =
      test_field_battery(gs.vdim, gs.rep.dim, 3, g.seed);

  std::vector<Report> reports;
  reports.push_back(verify_algebra(gs, points, fields, g.tol, g.threads));
  reports.push_back(verify_momentum_square(gs, points, g.tol));
  // Order-3 commutator chains compound roundoff past the pairwise checks.
  reports.push_back(verify_casimir(gs, casimir_W(gs), points, std::max(g.tol, 1e-8)));
  reports.push_back(check_little_group_relations(gs.rep, 1e-12));
  if (gs.picture == Picture::schrodinger)
    reports.push_back(verify_invariance_condition(gs, points, fields, g.tol));

  bool pass = true;
  json out;
  out["seed"] = g.seed;
  out["tol"] = g.tol;
  out["config"] = {{"n", o.n},      {"class", o.cls}, {"picture", o.picture},
                   {"rep", o.rep},  {"kappa", o.kappa}, {"eta", o.eta},
                   {"eps", o.eps},  {"x0", o.x0},     {"points", o.points}};
  out["reports"] = json::array();
  for (const Report& r : reports) {
    pass = pass && r.passed();
    out["reports"].push_back(report_json(r));
  }
  out["pass"] = pass;

  const std::string text = out.dump(2) + "\n";
  std::cout << text;
  std::filesystem::create_directories(g.out_dir);
  write_text(g.out_dir + "/verify_report.json", text);
  return pass ? 0 : 1;
}

struct EvolveOpts {
  std::string input;
  std::vector<double> grid_min, grid_max;
  std::vector<int> grid_count;
  std::vector<double> center, width;
  std::string weights;
  std::string rep = "trivial";
  std::string cls = "I";
  double mass = 1.0;
  int eps = 1;
  std::vector<double> times;
};

GridWaveFunction initial_state(const EvolveOpts& o) {
  if (!o.input.empty()) {
    GridWaveFunction f = load_snapshot(o.input);
    if (f.space != Space::momentum)
      throw std::invalid_argument("--input: evolve expects a momentum-space snapshot");
    return f;
  }
  if (o.grid_min.empty())
    throw std::invalid_argument("--grid-min: either --input or an explicit grid is required");
  MomentumGrid grid = make_grid(o.grid_min, o.grid_max, o.grid_count);
  const int cls = parse_class_label(o.cls);
  LittleGroupRep rep = rep_from_flag(o.rep, grid.dim());
  if (cls == 3) rep = tilde_continue(rep);
  std::vector<double> center = o.center, width = o.width;
  if (center.empty()) center.assign(static_cast<std::size_t>(grid.dim()), 0.0);
  if (width.empty()) width.assign(static_cast<std::size_t>(grid.dim()), 1.0);
  return make_gaussian_packet(grid, rep, cls, cls == 2 ? 0.0 : o.mass, o.eps, center, width,
                              parse_weights(o.weights, rep.dim));
}

int run_evolve(const GlobalOpts& g, const EvolveOpts& o) {
  GridWaveFunction f = initial_state(o);
  std::vector<double> times = o.times;
  if (times.empty()) times.push_back(0.0);

  std::filesystem::create_directories(g.out_dir);
  const int dim = f.grid.dim();
  const int mdim = f.mdim();

  std::vector<DiffOperator> observables;
  std::vector<std::string> names;
  for (int k = 0; k < dim; ++k) {
    observables.push_back(position_operator(dim, mdim, k));
    names.push_back("x" + std::to_string(k + 1));
    DiffOperator pk = zero_operator(dim, mdim);
    pk.mult.add(Mat::Identity(mdim, mdim), coordinate_field(dim, k));
    observables.push_back(pk);
    names.push_back("p" + std::to_string(k + 1));
    observables.push_back(velocity_operator(dim, mdim, k, f.cls, f.mass, f.eps));
    names.push_back("v" + std::to_string(k + 1));
  }

  std::vector<std::string> series(observables.size() + 1, "t,re,im\n");
  for (std::size_t i = 0; i < times.size(); ++i) {
    GridWaveFunction ft = propagate(f, times[i]);
    char name[64];
    std::snprintf(name, sizeof name, "/state_%03zu.bin", i);
    save_snapshot(g.out_dir + name, ft);

    series[0] += format_double(times[i]) + "," + format_double(state_norm(ft)) + ",0\n";
    for (std::size_t q = 0; q < observables.size(); ++q) {
      const Complex v = expectation(observables[q], ft);
      series[q + 1] += format_double(times[i]) + "," + format_double(v.real()) + "," +
                       format_double(v.imag()) + "\n";
    }
  }
  write_text(g.out_dir + "/obs_norm.csv", series[0]);
  for (std::size_t q = 0; q < observables.size(); ++q)
    write_text(g.out_dir + "/obs_" + names[q] + ".csv", series[q + 1]);
  return 0;
}

struct SpectrumOpts {
  std::string input;
  double kappa = -1.0;  ///< negative: take the snapshot mass
  double m2_min = -1.0;
  double m2_max = -1.0;
  int m2_count = 65;
  bool symmetric = false;
};

int run_spectrum(const GlobalOpts& g, const SpectrumOpts& o) {
  if (o.input.empty()) throw std::invalid_argument("--input: a snapshot path is required");
  GridWaveFunction f = load_snapshot(o.input);
  if (f.space == Space::momentum) f = fourier_to_position(f);

  const double kappa = o.kappa >= 0.0 ? o.kappa : f.mass;
  const double lo = o.m2_min >= 0.0 ? o.m2_min : kappa * kappa;
  const double hi = o.m2_max >= 0.0 ? o.m2_max : kappa * kappa + 16.0;
  if (o.m2_count < 2) throw std::invalid_argument("--m2-count: at least two samples required");
  if (hi <= lo) throw std::invalid_argument("--m2-max: must exceed the lower end");
  std::vector<double> m2(static_cast<std::size_t>(o.m2_count));
  for (int j = 0; j < o.m2_count; ++j)
    m2[static_cast<std::size_t>(j)] = lo + (hi - lo) * j / (o.m2_count - 1);

  MassDistribution d = mass_spectrum(f, kappa, m2, o.symmetric);

  std::string csv = "m2,s3,t3,rho\n";
  for (std::size_t j = 0; j < d.m2.size(); ++j)
    for (std::size_t c = 0; c < d.rho.size(); ++c)
      csv += format_double(d.m2[j]) + "," + format_double(d.s3[c]) + "," +
             format_double(d.t3[c]) + "," + format_double(d.rho[c][j]) + "\n";

  json summary;
  summary["kappa"] = kappa;
  summary["symmetric_branch"] = d.symmetric_branch;
  summary["quadrature_norm"] = d.quadrature_norm;
  summary["component_norm"] = d.component_norm;
  summary["mean_m2"] = d.mean_m2;
  summary["rho_mean_m2"] = d.rho_mean_m2;
  summary["mean_lifetime"] = d.mean_lifetime;
  summary["peaks"] = json::array();
  for (const MassPeak& p : d.peaks)
    summary["peaks"].push_back(
        {{"m2", p.m2}, {"half_width_m2", p.half_width_m2}, {"lifetime", p.lifetime}});

  std::filesystem::create_directories(g.out_dir);
  write_text(g.out_dir + "/spectrum.csv", csv);
  write_text(g.out_dir + "/spectrum_summary.json", summary.dump(2) + "\n");
  std::cout << summary.dump(2) << "\n";
  return 0;
}

struct ExportRepOpts {
  int n = 4;
  std::string rep = "trivial";
  bool lorentz = false;
};

int run_export_rep(const ExportRepOpts& o) {
  LittleGroupRep rep = rep_from_flag(o.rep, o.n);
  if (o.lorentz) rep = tilde_continue(rep);
  std::cout << rep_to_json(rep).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit realizations of the inhomogeneous de Sitter algebra P(1,n): "
               "verification, wave-packet evolution, and mass-spectrum extraction"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "random seed for points and test fields")->capture_default_str();
  app.add_option("--tol", g.tol, "residual tolerance for verification")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (<= 0: hardware)")->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "directory for output artifacts")->capture_default_str();
  app.add_option("--config", g.config_path, "JSON config file; explicit flags override it");

  VerifyOpts vo;
  CLI::App* verify = app.add_subcommand(
      "verify", "check commutators, momentum-square and Casimir identities");
  verify->fallthrough();
  auto* vn = verify->add_option("--n", vo.n, "spatial dimension")->capture_default_str();
  auto* vc = verify->add_option("--class", vo.cls, "realization class: I, II, III")
                 ->capture_default_str();
  auto* vp = verify->add_option("--picture", vo.picture, "covariant | heisenberg | schrodinger")
                 ->capture_default_str();
  auto* vr = verify->add_option("--rep", vo.rep, "trivial | vector | spin:J | o4:S,T | S,T")
                 ->capture_default_str();
  auto* vk = verify->add_option("--kappa", vo.kappa, "mass parameter, class I")
                 ->capture_default_str();
  auto* ve = verify->add_option("--eta", vo.eta, "mass parameter, class III")
                 ->capture_default_str();
  auto* vs = verify->add_option("--eps", vo.eps, "energy branch, +1 or -1")->capture_default_str();
  auto* vx = verify->add_option("--x0", vo.x0, "schrodinger-picture time")->capture_default_str();
  auto* vpts = verify->add_option("--points", vo.points, "domain sample count")
                   ->capture_default_str();

  EvolveOpts eo;
  CLI::App* evolve = app.add_subcommand(
      "evolve", "propagate a packet and record snapshots and observables");
  evolve->fallthrough();
  auto* ei = evolve->add_option("--input", eo.input, "momentum-space snapshot to start from");
  auto* egmin = evolve->add_option("--grid-min", eo.grid_min, "per-axis momentum lower bounds");
  auto* egmax = evolve->add_option("--grid-max", eo.grid_max, "per-axis momentum upper bounds");
  auto* egcnt = evolve->add_option("--grid-count", eo.grid_count,
                                   "per-axis sample counts (powers of two)");
  auto* ectr = evolve->add_option("--center", eo.center, "packet center per axis");
  auto* ewid = evolve->add_option("--width", eo.width, "packet momentum width per axis");
  auto* ewts = evolve->add_option("--weights", eo.weights,
                                  "component weights, e.g. 1,0.5 or 1:0,0:1");
  auto* erep = evolve->add_option("--rep", eo.rep, "little-group representation")
                   ->capture_default_str();
  auto* ecls = evolve->add_option("--class", eo.cls, "realization class: I, II, III")
                   ->capture_default_str();
  auto* emass = evolve->add_option("--mass", eo.mass, "kappa (class I) or eta (class III)")
                    ->capture_default_str();
  auto* eeps = evolve->add_option("--eps", eo.eps, "energy branch, +1 or -1")
                   ->capture_default_str();
  auto* etimes = evolve->add_option("--times", eo.times, "snapshot times");

  SpectrumOpts so;
  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "extract the squared-mass distribution from a snapshot");
  spectrum->fallthrough();
  auto* si = spectrum->add_option("--input", so.input, "snapshot path");
  auto* sk = spectrum->add_option("--kappa", so.kappa, "rest mass (default: snapshot mass)");
  auto* smin = spectrum->add_option("--m2-min", so.m2_min, "lowest m^2 sample");
  auto* smax = spectrum->add_option("--m2-max", so.m2_max, "highest m^2 sample");
  auto* scnt = spectrum->add_option("--m2-count", so.m2_count, "sample count")
                   ->capture_default_str();
  auto* ssym = spectrum->add_flag("--symmetric", so.symmetric,
                                  "average the two Fourier phase signs");

  ExportRepOpts xo;
  CLI::App* export_rep = app.add_subcommand(
      "export-rep", "dump little-group generator matrices as JSON");
  export_rep->fallthrough();
  auto* xn = export_rep->add_option("--n", xo.n, "spatial dimension")->capture_default_str();
  auto* xr = export_rep->add_option("--rep", xo.rep, "little-group representation")
                 ->capture_default_str();
  auto* xl = export_rep->add_flag("--lorentz", xo.lorentz, "continue to the O(1,n-1) form");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const json cfg = load_config(g.config_path);
    if (verify->parsed()) {
      merge_option(cfg, "n", vn, vo.n);
      merge_option(cfg, "class", vc, vo.cls);
      merge_option(cfg, "picture", vp, vo.picture);
      merge_option(cfg, "rep", vr, vo.rep);
      merge_option(cfg, "kappa", vk, vo.kappa);
      merge_option(cfg, "eta", ve, vo.eta);
      merge_option(cfg, "eps", vs, vo.eps);
      merge_option(cfg, "x0", vx, vo.x0);
      merge_option(cfg, "points", vpts, vo.points);
      return run_verify(g, vo);
    }
    if (evolve->parsed()) {
      merge_option(cfg, "input", ei, eo.input);
      merge_option(cfg, "grid-min", egmin, eo.grid_min);
      merge_option(cfg, "grid-max", egmax, eo.grid_max);
      merge_option(cfg, "grid-count", egcnt, eo.grid_count);
      merge_option(cfg, "center", ectr, eo.center);
      merge_option(cfg, "width", ewid, eo.width);
      merge_option(cfg, "weights", ewts, eo.weights);
      merge_option(cfg, "rep", erep, eo.rep);
      merge_option(cfg, "class", ecls, eo.cls);
      merge_option(cfg, "mass", emass, eo.mass);
      merge_option(cfg, "eps", eeps, eo.eps);
      merge_option(cfg, "times", etimes, eo.times);
      return run_evolve(g, eo);
    }
    if (spectrum->parsed()) {
      merge_option(cfg, "input", si, so.input);
      merge_option(cfg, "kappa", sk, so.kappa);
      merge_option(cfg, "m2-min", smin, so.m2_min);
      merge_option(cfg, "m2-max", smax, so.m2_max);
      merge_option(cfg, "m2-count", scnt, so.m2_count);
      merge_option(cfg, "symmetric", ssym, so.symmetric);
      return run_spectrum(g, so);
    }
    if (export_rep->parsed()) {
      merge_option(cfg, "n", xn, xo.n);
      merge_option(cfg, "rep", xr, xo.rep);
      merge_option(cfg, "lorentz", xl, xo.lorentz);
      return run_export_rep(xo);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
