#include <p1n/grid.hpp>

#include <fftw3.h>

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include <p1n/verify.hpp>

namespace p1n {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kMaskAmplitude = 1e-12;

bool power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }

/// Row-major odometer over grid indices; q holds the momentum coordinates.
struct PointWalker {
  const MomentumGrid* grid;
  std::vector<int> idx;
  std::vector<double> q;

  explicit PointWalker(const MomentumGrid& g)
      : grid(&g), idx(static_cast<std::size_t>(g.dim()), 0), q(static_cast<std::size_t>(g.dim())) {
    for (int a = 0; a < g.dim(); ++a) q[static_cast<std::size_t>(a)] = g.p(a, 0);
  }

  double radius_sq() const {
    double r2 = 0.0;
    for (double v : q) r2 += v * v;
    return r2;
  }

  void advance() {
    for (int a = grid->dim() - 1; a >= 0; --a) {
      auto ua = static_cast<std::size_t>(a);
      if (++idx[ua] < grid->axes[ua].count) {
        q[ua] = grid->p(a, idx[ua]);
        return;
      }
      idx[ua] = 0;
      q[ua] = grid->p(a, 0);
    }
  }
};

/// One-axis unitary DFT of a flat row-major array, in place.
/// to_position: f_hat(x_m) = (dp/sqrt(2pi)) sum_j f(p_j) exp(+i p_j x_m);
/// inverse with exp(-i p_j x_m) and weight dx/sqrt(2pi).
void axis_transform(std::vector<Complex>& a, const MomentumGrid& g, int axis, bool to_position) {
  const auto& ax = g.axes[static_cast<std::size_t>(axis)];
  const int n = ax.count;
  const std::size_t s = g.stride(axis);
  const std::size_t block = s * static_cast<std::size_t>(n);
  if (a.size() % block != 0) throw std::invalid_argument("array size does not match grid");
  const std::size_t outer = a.size() / block;

  const double scale = (to_position ? ax.step : g.dx(axis)) / std::sqrt(kTwoPi);
  std::vector<Complex> pre(static_cast<std::size_t>(n)), post(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    // p_j x_m = p_min x_m + 2 pi j m / n - pi j, so the off-grid phases split
    // into an exact (-1)^j comb and a p_min ramp.
    const double comb = (j % 2 == 0) ? 1.0 : -1.0;
    const Complex ramp = std::exp(Complex(0.0, ax.min * g.x(axis, j)));
    if (to_position) {
      pre[static_cast<std::size_t>(j)] = comb;
      post[static_cast<std::size_t>(j)] = scale * ramp;
    } else {
      pre[static_cast<std::size_t>(j)] = std::conj(ramp);
      post[static_cast<std::size_t>(j)] = scale * comb;
    }
  }

  int len = n;
  fftw_plan plan = fftw_plan_many_dft(
      1, &len, static_cast<int>(s), reinterpret_cast<fftw_complex*>(a.data()), nullptr,
      static_cast<int>(s), 1, reinterpret_cast<fftw_complex*>(a.data()), nullptr,
      static_cast<int>(s), 1, to_position ? FFTW_BACKWARD : FFTW_FORWARD,
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  for (std::size_t b = 0; b < outer; ++b) {
    Complex* blk = a.data() + b * block;
    for (int j = 0; j < n; ++j) {
      Complex* row = blk + static_cast<std::size_t>(j) * s;
      const Complex ph = pre[static_cast<std::size_t>(j)];
      for (std::size_t i = 0; i < s; ++i) row[i] *= ph;
    }
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(blk),
                     reinterpret_cast<fftw_complex*>(blk));
    for (int j = 0; j < n; ++j) {
      Complex* row = blk + static_cast<std::size_t>(j) * s;
      const Complex ph = post[static_cast<std::size_t>(j)];
      for (std::size_t i = 0; i < s; ++i) row[i] *= ph;
    }
  }
  fftw_destroy_plan(plan);
}

double point_amplitude(const GridWaveFunction& f, std::size_t flat) {
  double amp = 0.0;
  for (const auto& comp : f.data) amp = std::max(amp, std::abs(comp[flat]));
  return amp;
}

void require_momentum_space(const GridWaveFunction& f, const char* what) {
  if (f.space != Space::momentum)
    throw std::invalid_argument(std::string(what) + " requires a momentum-space state");
}

/// Pointwise eps * omega(q) * f; masked tachyonic points contribute zero.
GridWaveFunction apply_dispersion(const GridWaveFunction& f) {
  require_momentum_space(f, "apply_dispersion");
  GridWaveFunction out = f;
  PointWalker w(f.grid);
  const std::size_t total = f.grid.total();
  for (std::size_t flat = 0; flat < total; ++flat, w.advance()) {
    const double r2 = w.radius_sq();
    if (tachyonic_point(f.cls, f.mass, r2)) {
      if (point_amplitude(f, flat) > kMaskAmplitude)
        throw std::domain_error("state carries amplitude on tachyonic points");
      for (auto& comp : out.data) comp[flat] = Complex(0.0, 0.0);
      continue;
    }
    const double scale = f.eps * dispersion(f.cls, f.mass, r2);
    for (auto& comp : out.data) comp[flat] *= scale;
  }
  return out;
}

}  // namespace

std::size_t MomentumGrid::total() const {
  std::size_t t = 1;
  for (const auto& ax : axes) t *= static_cast<std::size_t>(ax.count);
  return t;
}

std::size_t MomentumGrid::stride(int axis) const {
  std::size_t s = 1;
  for (std::size_t a = axes.size(); a-- > static_cast<std::size_t>(axis) + 1;)
    s *= static_cast<std::size_t>(axes[a].count);
  return s;
}

double MomentumGrid::dx(int axis) const {
  const auto& ax = axes[static_cast<std::size_t>(axis)];
  return kTwoPi / (ax.count * ax.step);
}

double MomentumGrid::cell_momentum() const {
  double v = 1.0;
  for (const auto& ax : axes) v *= ax.step;
  return v;
}

double MomentumGrid::cell_position() const {
  double v = 1.0;
  for (int a = 0; a < dim(); ++a) v *= dx(a);
  return v;
}

bool MomentumGrid::operator==(const MomentumGrid& o) const {
  if (axes.size() != o.axes.size()) return false;
  for (std::size_t a = 0; a < axes.size(); ++a) {
    if (axes[a].min != o.axes[a].min || axes[a].step != o.axes[a].step ||
        axes[a].count != o.axes[a].count)
      return false;
  }
  return true;
}

MomentumGrid make_grid(const std::vector<double>& min, const std::vector<double>& max,
                       const std::vector<int>& count) {
  if (min.size() != max.size() || min.size() != count.size() || min.empty())
    throw std::invalid_argument("make_grid: axis lists must be nonempty and equal length");
  MomentumGrid g;
  g.axes.resize(min.size());
  for (std::size_t a = 0; a < min.size(); ++a) {
    if (!power_of_two(count[a])) throw std::invalid_argument("make_grid: counts must be powers of two");
    if (!(max[a] > min[a])) throw std::invalid_argument("make_grid: max must exceed min");
    g.axes[a].min = min[a];
    g.axes[a].count = count[a];
    g.axes[a].step = (max[a] - min[a]) / count[a];
  }
  return g;
}

GridWaveFunction make_gaussian_packet(const MomentumGrid& grid, const LittleGroupRep& rep,
                                      int cls, double mass, int eps,
                                      const std::vector<double>& center,
                                      const std::vector<double>& width,
                                      const std::vector<Complex>& weights) {
  const int dim = grid.dim();
  if (static_cast<int>(center.size()) != dim || static_cast<int>(width.size()) != dim)
    throw std::invalid_argument("make_gaussian_packet: center/width must match grid dimension");
  if (static_cast<int>(weights.size()) != rep.dim)
    throw std::invalid_argument("make_gaussian_packet: one weight per component required");

  std::vector<std::vector<double>> prof(static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a) {
    auto ua = static_cast<std::size_t>(a);
    prof[ua].resize(static_cast<std::size_t>(grid.axes[ua].count));
    for (int j = 0; j < grid.axes[ua].count; ++j) {
      const double d = grid.p(a, j) - center[ua];
      prof[ua][static_cast<std::size_t>(j)] = std::exp(-d * d / (4.0 * width[ua] * width[ua]));
    }
  }

  GridWaveFunction f;
  f.grid = grid;
  f.space = Space::momentum;
  f.rep = rep;
  f.cls = cls;
  f.mass = mass;
  f.eps = eps;
  f.data.assign(static_cast<std::size_t>(rep.dim),
                std::vector<Complex>(grid.total(), Complex(0.0, 0.0)));

  PointWalker w(grid);
  const std::size_t total = grid.total();
  for (std::size_t flat = 0; flat < total; ++flat, w.advance()) {
    double g = 1.0;
    for (int a = 0; a < dim; ++a)
      g *= prof[static_cast<std::size_t>(a)][static_cast<std::size_t>(w.idx[static_cast<std::size_t>(a)])];
    for (int c = 0; c < rep.dim; ++c)
      f.data[static_cast<std::size_t>(c)][flat] = weights[static_cast<std::size_t>(c)] * g;
  }

  const double nrm = state_norm(f);
  if (nrm == 0.0) throw std::invalid_argument("make_gaussian_packet: zero-norm packet");
  for (auto& comp : f.data)
    for (auto& v : comp) v /= nrm;
  return f;
}

Complex inner_product(const GridWaveFunction& f, const GridWaveFunction& g) {
  if (!(f.grid == g.grid) || f.space != g.space || f.data.size() != g.data.size())
    throw std::invalid_argument("inner_product: states live on different grids");
  const double cell = f.space == Space::momentum ? f.grid.cell_momentum() : f.grid.cell_position();
  Complex acc(0.0, 0.0);
  for (std::size_t c = 0; c < f.data.size(); ++c) {
    const auto& fc = f.data[c];
    const auto& gc = g.data[c];
    for (std::size_t i = 0; i < fc.size(); ++i) acc += std::conj(fc[i]) * gc[i];
  }
  return acc * cell;
}

double state_norm(const GridWaveFunction& f) {
  return std::sqrt(std::real(inner_product(f, f)));
}

void axis_to_position(std::vector<Complex>& a, const MomentumGrid& g, int axis) {
  axis_transform(a, g, axis, true);
}

void axis_to_momentum(std::vector<Complex>& a, const MomentumGrid& g, int axis) {
  axis_transform(a, g, axis, false);
}

GridWaveFunction fourier_to_position(const GridWaveFunction& f) {
  require_momentum_space(f, "fourier_to_position");
  GridWaveFunction out = f;
  out.space = Space::position;
  for (auto& comp : out.data)
    for (int a = 0; a < f.grid.dim(); ++a) axis_transform(comp, f.grid, a, true);
  return out;
}

GridWaveFunction fourier_to_momentum(const GridWaveFunction& f) {
  if (f.space != Space::position)
    throw std::invalid_argument("fourier_to_momentum requires a position-space state");
  GridWaveFunction out = f;
  out.space = Space::momentum;
  for (auto& comp : out.data)
    for (int a = 0; a < f.grid.dim(); ++a) axis_transform(comp, f.grid, a, false);
  return out;
}

double dispersion(int cls, double mass, double r2) {
  if (cls == 3) {
    const double w2 = r2 - mass * mass;
    if (w2 < 0.0) throw std::domain_error("dispersion: tachyonic point");
    return std::sqrt(w2);
  }
  return std::sqrt(r2 + mass * mass);
}

bool tachyonic_point(int cls, double mass, double r2) {
  return cls == 3 && r2 <= mass * mass;
}

GridWaveFunction propagate(const GridWaveFunction& f, double t) {
  require_momentum_space(f, "propagate");
  GridWaveFunction out = f;
  PointWalker w(f.grid);
  const std::size_t total = f.grid.total();
  for (std::size_t flat = 0; flat < total; ++flat, w.advance()) {
    const double r2 = w.radius_sq();
    if (tachyonic_point(f.cls, f.mass, r2)) {
      if (point_amplitude(f, flat) > kMaskAmplitude)
        throw std::domain_error("propagate: state carries amplitude on tachyonic points");
      continue;
    }
    const Complex phase = std::exp(Complex(0.0, -f.eps * dispersion(f.cls, f.mass, r2) * t));
    for (auto& comp : out.data) comp[flat] *= phase;
  }
  return out;
}

GridWaveFunction apply_on_grid(const DiffOperator& op, const GridWaveFunction& f) {
  require_momentum_space(f, "apply_on_grid");
  const int dim = f.grid.dim();
  const int mdim = f.mdim();
  if (op.dim != dim || op.mdim != mdim)
    throw std::invalid_argument("apply_on_grid: operator shape does not match state");

  // Spectral derivative d/dq_a: multiply by -i x in position space.
  std::vector<std::vector<std::vector<Complex>>> dfa(static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a) {
    if (op.deriv[static_cast<std::size_t>(a)].empty()) continue;
    auto& slot = dfa[static_cast<std::size_t>(a)];
    slot = f.data;
    for (auto& comp : slot) {
      axis_transform(comp, f.grid, a, true);
      const std::size_t s = f.grid.stride(a);
      const int count = f.grid.axes[static_cast<std::size_t>(a)].count;
      const std::size_t block = s * static_cast<std::size_t>(count);
      for (std::size_t b = 0; b < comp.size() / block; ++b)
        for (int m = 0; m < count; ++m) {
          const Complex ph(0.0, -f.grid.x(a, m));
          Complex* row = comp.data() + b * block + static_cast<std::size_t>(m) * s;
          for (std::size_t i = 0; i < s; ++i) row[i] *= ph;
        }
      axis_transform(comp, f.grid, a, false);
    }
  }

  GridWaveFunction out = f;
  for (auto& comp : out.data) comp.assign(comp.size(), Complex(0.0, 0.0));

  std::vector<Complex> seeds(static_cast<std::size_t>(dim));
  Vec fv(mdim), acc(mdim);
  PointWalker w(f.grid);
  const std::size_t total = f.grid.total();
  for (std::size_t flat = 0; flat < total; ++flat, w.advance()) {
    for (int a = 0; a < dim; ++a)
      seeds[static_cast<std::size_t>(a)] = Complex(w.q[static_cast<std::size_t>(a)], 0.0);
    try {
      acc.setZero();
      if (!op.mult.empty()) {
        for (int c = 0; c < mdim; ++c) fv(c) = f.data[static_cast<std::size_t>(c)][flat];
        acc += op.mult.value(seeds) * fv;
      }
      for (int a = 0; a < dim; ++a) {
        const auto& mf = op.deriv[static_cast<std::size_t>(a)];
        if (mf.empty()) continue;
        for (int c = 0; c < mdim; ++c) fv(c) = dfa[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)][flat];
        acc += mf.value(seeds) * fv;
      }
      for (int c = 0; c < mdim; ++c) out.data[static_cast<std::size_t>(c)][flat] = acc(c);
    } catch (const std::domain_error&) {
      if (point_amplitude(f, flat) > kMaskAmplitude) throw;
      for (int c = 0; c < mdim; ++c) out.data[static_cast<std::size_t>(c)][flat] = Complex(0.0, 0.0);
    }
  }
  return out;
}

Complex expectation(const DiffOperator& op, const GridWaveFunction& f) {
  const GridWaveFunction* state = &f;
  GridWaveFunction tmp;
  if (f.space == Space::position) {
    tmp = fourier_to_momentum(f);
    state = &tmp;
  }
  const Complex nrm2 = inner_product(*state, *state);
  if (std::abs(nrm2) == 0.0) throw std::invalid_argument("expectation: zero-norm state");
  return inner_product(*state, apply_on_grid(op, *state)) / nrm2;
}

DiffOperator position_operator(int dim, int mdim, int axis) {
  if (axis < 0 || axis >= dim) throw std::invalid_argument("position_operator: bad axis");
  DiffOperator op = zero_operator(dim, mdim);
  Mat ident = Mat::Identity(mdim, mdim);
  op.deriv[static_cast<std::size_t>(axis)].add(Complex(0.0, 1.0) * ident, constant_field(dim, Complex(1.0, 0.0)));
  return op;
}

Report heisenberg_consistency(const DiffOperator& q_op, const GridWaveFunction& f, double t,
                              double dt) {
  if (dt <= 0.0) throw std::invalid_argument("heisenberg_consistency: dt must be positive");
  require_momentum_space(f, "heisenberg_consistency");

  const GridWaveFunction ft = propagate(f, t);
  const Complex plus = expectation(q_op, propagate(f, t + dt));
  const Complex minus = expectation(q_op, propagate(f, t - dt));
  const Complex slope = (plus - minus) / (2.0 * dt);

  const GridWaveFunction qf = apply_on_grid(q_op, ft);
  const GridWaveFunction pf = apply_dispersion(ft);
  const Complex nrm2 = inner_product(ft, ft);
  const Complex comm =
      Complex(0.0, 1.0) * (inner_product(ft, apply_dispersion(qf)) - inner_product(ft, apply_on_grid(q_op, pf))) /
      nrm2;

  Report rep;
  rep.module = "evolution";
  rep.check = "heisenberg_consistency";
  const double tol = std::max(1e-6, 50.0 * dt * dt);
  rep.add("d<Q>/dt vs <i[P0,Q]>", std::abs(slope - comm), tol);
  return rep;
}

Report check_hermiticity(const GeneratorSet& gs, const GridWaveFunction& f,
                         const GridWaveFunction& g, double tol) {
  if (gs.picture == Picture::covariant)
    throw std::invalid_argument("check_hermiticity: reduced realization required");
  if (gs.vdim != f.grid.dim() || gs.rep.dim != f.mdim())
    throw std::invalid_argument("check_hermiticity: generator set does not match state");
  require_momentum_space(f, "check_hermiticity");
  require_momentum_space(g, "check_hermiticity");

  const double scale = state_norm(f) * state_norm(g);
  const auto names = generator_names(gs);
  Report rep;
  rep.module = "evolution";
  rep.check = "hermiticity";
  for (int i = 0; i < gs.operator_count(); ++i) {
    const DiffOperator& op = gs.operator_at(i);
    const Complex lhs = inner_product(apply_on_grid(op, f), g);
    const Complex rhs = inner_product(f, apply_on_grid(op, g));
    rep.add(names[static_cast<std::size_t>(i)], std::abs(lhs - rhs) / scale, tol);
  }
  return rep;
}

double evolution_equation_residual(const GridWaveFunction& f, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("evolution_equation_residual: dt must be positive");
  require_momentum_space(f, "evolution_equation_residual");
  const GridWaveFunction plus = propagate(f, dt);
  const GridWaveFunction minus = propagate(f, -dt);
  const GridWaveFunction rhs = apply_dispersion(f);

  double acc = 0.0;
  for (std::size_t c = 0; c < f.data.size(); ++c)
    for (std::size_t i = 0; i < f.data[c].size(); ++i) {
      const Complex lhs =
          Complex(0.0, 1.0) * (plus.data[c][i] - minus.data[c][i]) / (2.0 * dt);
      acc += std::norm(lhs - rhs.data[c][i]);
    }
  return std::sqrt(acc * f.grid.cell_momentum()) / state_norm(f);
}

}  // namespace p1n
