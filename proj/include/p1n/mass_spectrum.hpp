#pragma once

#include <vector>

#include <p1n/grid.hpp>

namespace p1n {

/// Local maximum of the component-summed density. half_width_m2 is the half
/// width at half maximum in the m^2 variable; the width-based lifetime
/// estimate converts it to an inverse mass width, sqrt(m2) / half_width_m2.
struct MassPeak {
  double m2 = 0.0;
  double half_width_m2 = 0.0;
  double lifetime = 0.0;
};

/// Sampled squared-mass density of a position-space state.
///
/// rho[c][j] integrates |x_4-Fourier amplitude at p_4 = sqrt(m2[j] - kappa^2)|^2
/// over the spatial axes for component c. Quadrature sums use the flat p_4
/// measure (trapezoid in p_4, doubled for the two signs of p_4), which is the
/// measure under which the density integrates back to the state norm.
struct MassDistribution {
  std::vector<double> m2;                ///< ascending samples, all >= kappa^2
  std::vector<std::vector<double>> rho;  ///< [component][sample]
  std::vector<double> rho_total;         ///< component sum per sample
  std::vector<double> s3, t3;            ///< weight labels per component
  std::vector<MassPeak> peaks;           ///< detected on rho_total
  std::vector<double> component_norm;    ///< quadrature of rho[c], flat p_4 measure
  double quadrature_norm = 0.0;          ///< sum of component_norm
  double mean_m2 = 0.0;                  ///< kappa^2 + <q_4^2> of the state
  double rho_mean_m2 = 0.0;              ///< density-weighted mean of m2
  double mean_lifetime = 0.0;            ///< 1 / sqrt(mean_m2)
  bool symmetric_branch = false;
};

/// Extracts the density from a position-space state over (x_1..x_3, x_4),
/// sampling only p_4 >= 0 by default; symmetric_branch averages the two
/// Fourier phases exp(-+i p_4 x_4). Requires dimension 4, at least two
/// ascending samples, and m2 >= kappa^2 throughout.
MassDistribution mass_spectrum(const GridWaveFunction& f, double kappa,
                               const std::vector<double>& m2_samples,
                               bool symmetric_branch = false);

/// kappa^2 + <q_4^2> with kappa taken from the state; accepts either space.
double mean_mass_sq(const GridWaveFunction& f);

/// Mean lifetime 1 / sqrt(mean m^2).
double lifetime_from_mean(double mean_m2);

/// Weight labels (s_3, t_3) per component: weight values for the spin and
/// isospin kinds (weight-ordered bases), zero for trivial and vector kinds.
void component_weight_labels(const LittleGroupRep& rep, std::vector<double>& s3,
                             std::vector<double>& t3);

/// Local maxima of rho above 1% of its global maximum, including boundary
/// samples, with interpolated half widths.
std::vector<MassPeak> find_mass_peaks(const std::vector<double>& m2,
                                      const std::vector<double>& rho);

}  // namespace p1n
