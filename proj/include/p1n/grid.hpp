#pragma once

#include <vector>

#include <p1n/diff_operator.hpp>
#include <p1n/generator_sets.hpp>
#include <p1n/report.hpp>
#include <p1n/spin_reps.hpp>

namespace p1n {

enum class Space { momentum, position };

/// Uniform momentum-space box, row-major storage with axis 0 outermost.
/// The conjugate position grid is fixed by the transform convention:
/// dx = 2*pi/(count*step), x_m = (m - count/2)*dx.
struct MomentumGrid {
  struct Axis {
    double min = 0.0;
    double step = 0.0;
    int count = 0;
  };
  std::vector<Axis> axes;

  int dim() const { return static_cast<int>(axes.size()); }
  std::size_t total() const;
  std::size_t stride(int axis) const;
  double p(int axis, int j) const {
    return axes[static_cast<std::size_t>(axis)].min +
           j * axes[static_cast<std::size_t>(axis)].step;
  }
  double dx(int axis) const;
  double x(int axis, int m) const {
    return (m - axes[static_cast<std::size_t>(axis)].count / 2) * dx(axis);
  }
  double cell_momentum() const;
  double cell_position() const;
  bool operator==(const MomentumGrid& o) const;
};

/// Box [min, max) per axis with power-of-two sample counts.
MomentumGrid make_grid(const std::vector<double>& min, const std::vector<double>& max,
                       const std::vector<int>& count);

/// State sampled on the grid: one complex array per little-group component.
struct GridWaveFunction {
  MomentumGrid grid;
  Space space = Space::momentum;
  LittleGroupRep rep;
  int cls = 1;       ///< 1, 2, or 3 (selects the dispersion branch)
  double mass = 0.0; ///< kappa (class 1/2) or eta (class 3)
  int eps = 1;
  std::vector<std::vector<Complex>> data;  ///< [component][flat index]

  int mdim() const { return static_cast<int>(data.size()); }
};

/// Separable Gaussian packet exp(-sum (q_k - c_k)^2 / (4 w_k^2)) with the
/// given component weights, normalized to unit norm.
GridWaveFunction make_gaussian_packet(const MomentumGrid& grid, const LittleGroupRep& rep,
                                      int cls, double mass, int eps,
                                      const std::vector<double>& center,
                                      const std::vector<double>& width,
                                      const std::vector<Complex>& weights);

/// Midpoint-rule inner product sum conj(f) g dV in the current space.
Complex inner_product(const GridWaveFunction& f, const GridWaveFunction& g);
double state_norm(const GridWaveFunction& f);

/// Unitary transforms; round trips are identity to roundoff.
GridWaveFunction fourier_to_position(const GridWaveFunction& f);
GridWaveFunction fourier_to_momentum(const GridWaveFunction& f);

/// Single-axis transform of a raw component array (used for mixed
/// representations).
void axis_to_position(std::vector<Complex>& a, const MomentumGrid& g, int axis);
void axis_to_momentum(std::vector<Complex>& a, const MomentumGrid& g, int axis);

/// sqrt(|q|^2 + mass^2) (class 1/2) or sqrt(|q|^2 - mass^2) (class 3).
/// r2 is |q|^2; class 3 callers must exclude the tachyonic ball.
double dispersion(int cls, double mass, double r2);
bool tachyonic_point(int cls, double mass, double r2);

/// Pointwise phase multiplication exp(-i eps omega(q) t). Class 3 states may
/// not carry amplitude above 1e-12 on tachyonic points (throws
/// std::domain_error); masked points are left unchanged.
GridWaveFunction propagate(const GridWaveFunction& f, double t);

/// Momentum-space application: multiplication parts pointwise, derivative
/// parts by spectral differentiation. Coefficient singularities at grid
/// points are tolerated only where the state amplitude is <= 1e-12.
GridWaveFunction apply_on_grid(const DiffOperator& op, const GridWaveFunction& f);

/// <f, Q f> / <f, f>.
Complex expectation(const DiffOperator& op, const GridWaveFunction& f);

/// x_axis = i d/dq_axis as an operator on momentum-space states.
DiffOperator position_operator(int dim, int mdim, int axis);

/// Centered finite-difference slope of <Q>(t) against the commutator
/// expectation <i [P_0, Q]>; tolerance max(1e-6, 50 dt^2).
Report heisenberg_consistency(const DiffOperator& q_op, const GridWaveFunction& f, double t,
                              double dt);

/// |<Qf, g> - <f, Qg>| / (|f| |g|) for every generator of the set.
Report check_hermiticity(const GeneratorSet& gs, const GridWaveFunction& f,
                         const GridWaveFunction& g, double tol);

/// ||i (psi(+dt) - psi(-dt)) / (2 dt) - P_0 psi|| / ||psi||; decays as dt^2.
double evolution_equation_residual(const GridWaveFunction& f, double dt);

}  // namespace p1n
