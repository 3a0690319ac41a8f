#pragma once

#include <string>
#include <vector>

#include <p1n/diff_operator.hpp>
#include <p1n/rng.hpp>
#include <p1n/spin_reps.hpp>

namespace p1n {

enum class Picture { covariant, heisenberg, schrodinger };

std::string picture_name(Picture p);

/// A realization of the algebra: translation operators P_0..P_n and the
/// antisymmetric table J_{mu nu} over planes 0 <= mu < nu <= n, together with
/// the construction parameters.  Covariant sets act on functions of the
/// 1+n momentum variables p_0..p_n; reduced (heisenberg/schrodinger) sets act
/// on functions of p_1..p_n with p_0 realized as a multiplication operator.
struct GeneratorSet {
  int n = 0;
  int cls = 1;  ///< 1, 2 (massless limit), or 3
  Picture picture = Picture::covariant;
  double mass = 0.0;  ///< kappa (class 1) or eta (class 3); NaN for covariant sets
  int eps = 0;        ///< energy branch +-1; 0 for covariant sets
  double x0 = 0.0;    ///< schrodinger-picture time parameter
  LittleGroupRep rep;
  int vdim = 0;  ///< variable count: n+1 covariant, n reduced
  std::vector<DiffOperator> P;
  std::vector<DiffOperator> J;  ///< packed planes (mu,nu), 0 <= mu < nu <= n

  int plane_index(int mu, int nu) const;
  const DiffOperator& J_at(int mu, int nu) const;
  /// Flattened generator list: indices 0..n are P_0..P_n, then the packed
  /// J planes in plane_index order.
  int operator_count() const { return static_cast<int>(P.size() + J.size()); }
  const DiffOperator& operator_at(int flat) const;
  /// Ambient metric: g_00 = +1, g_kk = -1.
  double metric(int mu) const { return mu == 0 ? 1.0 : -1.0; }

  /// Whether a point lies in the declared domain of all coefficient fields.
  bool in_domain(const Vec& q) const;
  /// Throws std::domain_error if the point is outside the declared domain.
  void require_domain(const Vec& q) const;
};

/// Covariant realization over p_0..p_n with domain p^2 > 0, p_0 > 0; the
/// boost spin term carries the denominator sqrt(p^2 + p_k^2) + sqrt(p^2),
/// kept in its unreduced form.
GeneratorSet build_covariant_class1(int n, const LittleGroupRep& rep);

/// Covariant realization with domain p^2 < 0, p_n > 0, for an O(1,n-1) rep;
/// the (a,n) spin term carries the denominator sqrt(p_n^2) + sqrt(-p^2).
GeneratorSet build_covariant_class3(int n, const LittleGroupRep& rep_lorentz);

/// Analytic continuation of a covariant class 1 set: coefficient fields are
/// evaluated at the rotated seeds (p_0, p_a, p_n) -> (-i q_n, q_a, i q_0)
/// with square roots continued into the lower half plane, and the generators
/// are relabeled so the result is a covariant class 3 set.
GeneratorSet tilde_transform(const GeneratorSet& gs);

/// Reduced realization over p_1..p_n with p_0 = eps sqrt(p_k^2 + kappa^2)
/// (cls = 1) or eps sqrt(p_k^2 - eta^2) (cls = 3); the boost uses the
/// symmetrized product -(x_k p_0 + p_0 x_k)/2.
GeneratorSet build_qm_heisenberg(int cls, int n, const LittleGroupRep& rep, double mass,
                                 int eps);

/// As build_qm_heisenberg plus the explicit time term x0 p_k in the boosts;
/// only the J_0k operators depend on x0.
GeneratorSet build_qm_schrodinger(int cls, int n, const LittleGroupRep& rep, double mass,
                                  int eps, double x0);

/// Massless limit: the kappa -> 0 case of the reduced class 1 set, with
/// P_0 = eps |p| and domain p != 0.
GeneratorSet build_class2_limit(int n, const LittleGroupRep& rep, int eps);

/// Random point in the declared domain of the set, with margins away from
/// the singular sets of the coefficient fields.
Vec sample_domain_point(const GeneratorSet& gs, Rng& rng);
std::vector<Vec> sample_domain_points(const GeneratorSet& gs, int count, Rng& rng);

}  // namespace p1n
