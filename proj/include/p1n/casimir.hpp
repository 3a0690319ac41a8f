#pragma once

#include <vector>

#include <p1n/generator_sets.hpp>
#include <p1n/report.hpp>

namespace p1n {

/// Weighted product of generators, identified by flattened index
/// (0..n are P_0..P_n, the rest the packed J planes); the leftmost factor
/// is applied last.
struct OpProduct {
  Complex weight;
  std::vector<int> factors;
};

/// Second-order invariant stored as a sum of generator products.  Applying
/// it consumes one jet order per derivative-bearing factor, so commutators
/// with first-order generators need order-3 field jets.
struct CasimirW {
  int dim = 0;
  int mdim = 0;
  std::vector<OpProduct> terms;
};

/// W = (1/2)(P^a P_a)(J^bc J_bc) - P_a P_b J^ac J^b_c with indices raised by
/// the diagonal metric and every P factor kept to the left.  On the rest
/// fiber p = (c, 0, ..., 0) it reduces to c^2 sum_{k<l} S_kl^2.
CasimirW casimir_W(const GeneratorSet& gs);

/// Apply to order-3 field jets, returning order-1 jets (so one more
/// generator can act on the result).
std::vector<Jet1> casimir_apply_jet1(const GeneratorSet& gs, const CasimirW& w,
                                     const std::vector<Jet3>& f, const Vec& q);

/// Apply to order-2 field jets, returning component values.
std::vector<Complex> casimir_apply_value(const GeneratorSet& gs, const CasimirW& w,
                                         const std::vector<Jet2>& f, const Vec& q);

/// [W, G] residuals for every generator G of the set, evaluated on a fixed
/// internal battery of Gaussian test fields at the given points.
Report verify_casimir(const GeneratorSet& gs, const CasimirW& w,
                      const std::vector<Vec>& points, double tol);

/// g^aa P_a P_a as a multiplication operator.  Throws std::logic_error if
/// any P of the set carries derivative terms.
DiffOperator casimir_P2(const GeneratorSet& gs);

/// Pointwise identity for P^2: kappa^2 (class 1), 0 (class 2), -eta^2
/// (class 3) for reduced sets, and the coordinate Minkowski square for
/// covariant sets.
Report verify_momentum_square(const GeneratorSet& gs, const std::vector<Vec>& points,
                              double tol);

/// Finite-dimensional plane family for covariance checks of externally
/// supplied matrices.
struct MatrixGeneratorFamily {
  int n = 0;
  int mdim = 0;
  std::vector<Mat> J;  ///< packed planes (mu,nu), 0 <= mu < nu <= n

  int plane_index(int mu, int nu) const;
  Mat J_signed(int mu, int nu) const;
};

/// [B_mu, J_rho_sigma] = delta_mu_rho B_sigma - delta_mu_sigma B_rho,
/// one item per (mu, rho < sigma) triple.  B must hold n+1 matrices of the
/// family's shape.
Report check_B_covariance(const std::vector<Mat>& B, const MatrixGeneratorFamily& family,
                          double tol);

}  // namespace p1n
