#include <p1n/mass_spectrum.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace p1n {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Trapezoid weights over the p_4 images of the m^2 samples.
std::vector<double> p4_weights(const std::vector<double>& p4) {
  const std::size_t n = p4.size();
  std::vector<double> w(n, 0.0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double h = (p4[j + 1] - p4[j]) / 2.0;
    w[j] += h;
    w[j + 1] += h;
  }
  return w;
}

/// <q_4^2> over the momentum samples of a dimension-4 state.
double axis4_second_moment(const GridWaveFunction& f) {
  const GridWaveFunction* state = &f;
  GridWaveFunction tmp;
  if (f.space == Space::position) {
    tmp = fourier_to_momentum(f);
    state = &tmp;
  }
  const MomentumGrid& g = state->grid;
  const int count = g.axes[3].count;
  double num = 0.0, den = 0.0;
  for (const auto& comp : state->data) {
    for (std::size_t b = 0; b < comp.size() / static_cast<std::size_t>(count); ++b)
      for (int m = 0; m < count; ++m) {
        const double q4 = g.p(3, m);
        const double w = std::norm(comp[b * static_cast<std::size_t>(count) +
                                        static_cast<std::size_t>(m)]);
        num += q4 * q4 * w;
        den += w;
      }
  }
  if (den == 0.0) throw std::invalid_argument("mean_mass_sq: zero-norm state");
  return num / den;
}

}  // namespace

void component_weight_labels(const LittleGroupRep& rep, std::vector<double>& s3,
                             std::vector<double>& t3) {
  s3.assign(static_cast<std::size_t>(rep.dim), 0.0);
  t3.assign(static_cast<std::size_t>(rep.dim), 0.0);
  if (rep.kind == "spin") {
    for (int c = 0; c < rep.dim; ++c) s3[static_cast<std::size_t>(c)] = rep.s - c;
  } else if (rep.kind == "o4") {
    const int dt = static_cast<int>(std::lround(2.0 * rep.t)) + 1;
    for (int c = 0; c < rep.dim; ++c) {
      s3[static_cast<std::size_t>(c)] = rep.s - c / dt;
      t3[static_cast<std::size_t>(c)] = rep.t - c % dt;
    }
  }
}

std::vector<MassPeak> find_mass_peaks(const std::vector<double>& m2,
                                      const std::vector<double>& rho) {
  std::vector<MassPeak> peaks;
  const std::size_t n = rho.size();
  if (n < 2) return peaks;
  double top = 0.0;
  for (double v : rho) top = std::max(top, v);
  if (top <= 0.0) return peaks;

  for (std::size_t i = 0; i < n; ++i) {
    const bool left_ok = i == 0 || rho[i] > rho[i - 1];
    const bool right_ok = i + 1 == n || rho[i] >= rho[i + 1];
    if (!left_ok || !right_ok || rho[i] <= 0.01 * top) continue;

    const double half = rho[i] / 2.0;
    double right = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = i + 1; k < n; ++k) {
      if (rho[k] <= half) {
        right = m2[k - 1] + (m2[k] - m2[k - 1]) * (rho[k - 1] - half) / (rho[k - 1] - rho[k]);
        break;
      }
      if (rho[k] > rho[k - 1]) break;  // entered the next rise without crossing
    }
    double left = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = i; k-- > 0;) {
      if (rho[k] <= half) {
        left = m2[k + 1] - (m2[k + 1] - m2[k]) * (rho[k + 1] - half) / (rho[k + 1] - rho[k]);
        break;
      }
      if (rho[k] > rho[k + 1]) break;
    }

    MassPeak p;
    p.m2 = m2[i];
    if (std::isnan(left) && std::isnan(right))
      p.half_width_m2 = 0.0;
    else if (std::isnan(left))
      p.half_width_m2 = right - m2[i];
    else if (std::isnan(right))
      p.half_width_m2 = m2[i] - left;
    else
      p.half_width_m2 = (right - left) / 2.0;
    p.lifetime = p.half_width_m2 > 0.0 ? std::sqrt(p.m2) / p.half_width_m2
                                       : std::numeric_limits<double>::infinity();
    peaks.push_back(p);
  }
  return peaks;
}

MassDistribution mass_spectrum(const GridWaveFunction& f, double kappa,
                               const std::vector<double>& m2_samples, bool symmetric_branch) {
  if (f.space != Space::position)
    throw std::invalid_argument("mass_spectrum: position-space state required");
  if (f.grid.dim() != 4)
    throw std::invalid_argument("mass_spectrum: dimension 4 required");
  if (m2_samples.size() < 2)
    throw std::invalid_argument("mass_spectrum: at least two samples required");
  const double k2 = kappa * kappa;
  for (std::size_t j = 0; j < m2_samples.size(); ++j) {
    if (m2_samples[j] < k2)
      throw std::invalid_argument("mass_spectrum: samples must satisfy m2 >= kappa^2");
    if (j > 0 && m2_samples[j] <= m2_samples[j - 1])
      throw std::invalid_argument("mass_spectrum: samples must be ascending");
  }

  const MomentumGrid& g = f.grid;
  const int nx4 = g.axes[3].count;
  const std::size_t outer = g.total() / static_cast<std::size_t>(nx4);
  const double dx4 = g.dx(3);
  const double cell3 = g.cell_position() / dx4;
  const double scale = dx4 / std::sqrt(kTwoPi);
  const int mdim = f.mdim();

  MassDistribution out;
  out.m2 = m2_samples;
  out.symmetric_branch = symmetric_branch;
  out.rho.assign(static_cast<std::size_t>(mdim), std::vector<double>(m2_samples.size(), 0.0));
  out.rho_total.assign(m2_samples.size(), 0.0);
  component_weight_labels(f.rep, out.s3, out.t3);

  std::vector<Complex> phase(static_cast<std::size_t>(nx4));
  std::vector<Complex> phase_conj(static_cast<std::size_t>(nx4));
  for (std::size_t j = 0; j < m2_samples.size(); ++j) {
    const double p4 = std::sqrt(m2_samples[j] - k2);
    for (int m = 0; m < nx4; ++m) {
      phase[static_cast<std::size_t>(m)] = std::exp(Complex(0.0, -p4 * g.x(3, m)));
      if (symmetric_branch)
        phase_conj[static_cast<std::size_t>(m)] = std::conj(phase[static_cast<std::size_t>(m)]);
    }
    for (int c = 0; c < mdim; ++c) {
      const auto& comp = f.data[static_cast<std::size_t>(c)];
      double acc = 0.0;
      for (std::size_t b = 0; b < outer; ++b) {
        const Complex* row = comp.data() + b * static_cast<std::size_t>(nx4);
        Complex fwd(0.0, 0.0), bwd(0.0, 0.0);
        for (int m = 0; m < nx4; ++m) {
          fwd += row[m] * phase[static_cast<std::size_t>(m)];
          if (symmetric_branch) bwd += row[m] * phase_conj[static_cast<std::size_t>(m)];
        }
        double cell_val = std::norm(fwd * scale);
        if (symmetric_branch) cell_val = (cell_val + std::norm(bwd * scale)) / 2.0;
        acc += cell_val;
      }
      out.rho[static_cast<std::size_t>(c)][j] = acc * cell3;
      out.rho_total[j] += acc * cell3;
    }
  }

  std::vector<double> p4(m2_samples.size());
  for (std::size_t j = 0; j < m2_samples.size(); ++j) p4[j] = std::sqrt(m2_samples[j] - k2);
  const std::vector<double> w = p4_weights(p4);
  out.component_norm.assign(static_cast<std::size_t>(mdim), 0.0);
  double weighted_m2 = 0.0, weighted = 0.0;
  for (std::size_t j = 0; j < m2_samples.size(); ++j) {
    for (int c = 0; c < mdim; ++c)
      out.component_norm[static_cast<std::size_t>(c)] +=
          2.0 * w[j] * out.rho[static_cast<std::size_t>(c)][j];
    weighted_m2 += w[j] * out.rho_total[j] * m2_samples[j];
    weighted += w[j] * out.rho_total[j];
  }
  for (double v : out.component_norm) out.quadrature_norm += v;
  out.rho_mean_m2 = weighted > 0.0 ? weighted_m2 / weighted : 0.0;

  out.mean_m2 = k2 + axis4_second_moment(f);
  out.mean_lifetime = lifetime_from_mean(out.mean_m2);
  out.peaks = find_mass_peaks(out.m2, out.rho_total);
  return out;
}

double mean_mass_sq(const GridWaveFunction& f) {
  if (f.grid.dim() != 4) throw std::invalid_argument("mean_mass_sq: dimension 4 required");
  return f.mass * f.mass + axis4_second_moment(f);
}

double lifetime_from_mean(double mean_m2) {
  if (mean_m2 <= 0.0) throw std::invalid_argument("lifetime_from_mean: mean m^2 must be positive");
  return 1.0 / std::sqrt(mean_m2);
}

}  // namespace p1n
