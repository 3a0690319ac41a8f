#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include <p1n/jet.hpp>

namespace p1n {

struct Report;

/// Finite-dimensional matrix generators of a little group.
///
/// Compact form: generators S_kl of O(n) over planes (k,l), 1 <= k < l <= n.
/// Lorentz form: generators of O(1,n-1) over labels 0..n-1, metric
/// g_00 = +1, g_aa = -1.  Only the strictly upper triangle of planes is
/// stored; S_signed supplies S_lk = -S_kl.
struct LittleGroupRep {
  int n = 0;             ///< spatial dimension of the ambient algebra
  bool lorentz = false;  ///< false: compact O(n); true: O(1,n-1)
  std::string kind;      ///< "trivial" | "vector" | "spin" | "o4"
  double s = 0.0;
  double t = 0.0;
  int dim = 1;         ///< representation dimension
  std::vector<Mat> S;  ///< packed planes over labels label_lo()..label_hi()

  int label_lo() const { return lorentz ? 0 : 1; }
  int label_hi() const { return lorentz ? n - 1 : n; }
  int label_count() const { return label_hi() - label_lo() + 1; }
  int plane_count() const { return label_count() * (label_count() - 1) / 2; }

  /// Diagonal metric on little-group labels: +1 for the time label of the
  /// Lorentz form, -1 for every spatial label.
  double metric(int i) const { return (lorentz && i == 0) ? 1.0 : -1.0; }

  /// Packed index of plane (i,j); requires label_lo() <= i < j <= label_hi().
  int plane_index(int i, int j) const;

  /// Stored generator for plane (i,j), i < j.
  const Mat& S_at(int i, int j) const;

  /// Generator for any ordered label pair: S_ji = -S_ij, S_ii = 0.
  Mat S_signed(int i, int j) const;
};

/// Spin and isospin vectors extracted from an O(4) representation:
/// S_a = (S_bc + S_4a)/2, T_a = (S_bc - S_4a)/2 for cyclic (a,b,c).
struct SpinIsospinSplit {
  std::vector<Mat> S_vec;  ///< S_1, S_2, S_3
  std::vector<Mat> T_vec;  ///< T_1, T_2, T_3
  double casimir_s = 0.0;  ///< s(s+1)
  double casimir_t = 0.0;  ///< t(t+1)
};

struct O4Rep {
  LittleGroupRep rep;
  SpinIsospinSplit split;
};

/// One-dimensional rep with every generator zero.
LittleGroupRep trivial_rep(int n);

/// Defining rep of O(n): (S_kl)_ij = -i(delta_ki delta_lj - delta_li delta_kj).
LittleGroupRep vector_rep(int n);

/// Spin-s rep of O(3) in the weight basis with S_12 = diag(s, s-1, ..., -s);
/// planes carry the spin vector as (S_23, S_31, S_12) = (S_1, S_2, S_3).
LittleGroupRep so3_spin(double s);

/// Product rep of O(4) with labels (s,t): S_bc = S_a + T_a and
/// S_4a = S_a - T_a, where S_a acts on the left factor and T_a on the right.
O4Rep o4_irrep(double s, double t);

/// Reconstruct the spin/isospin vectors of a compact n = 4 rep from its
/// stored planes.  Exact (bitwise) for reps built by o4_irrep.
SpinIsospinSplit split_from_o4(const LittleGroupRep& rep);

/// Analytic continuation of a compact O(n) rep to O(1,n-1): spatial planes
/// are kept, and the stored boost plane is S~_0a = i S_an (so S~_a0 = -i S_an).
/// The result is generally non-Hermitian.
LittleGroupRep tilde_continue(const LittleGroupRep& rep);

/// Verify the little-group commutation relations
/// [S_ij, S_kl] = i(g_il S_jk + g_jk S_il - g_ik S_jl - g_jl S_ik)
/// for every unordered pair of stored planes; one report item per pair.
Report check_little_group_relations(const LittleGroupRep& rep, double tol);

/// Verify the spin/isospin relations: cyclic [S_a,S_b] = iS_c and
/// [T_a,T_b] = iT_c, [S_a,T_b] = 0, the Casimir identities
/// S.S = casimir_s 1 and T.T = casimir_t 1, and [S_a,S.S] = [T_a,T.T] = 0.
Report check_spin_isospin(const SpinIsospinSplit& split, double tol);

/// Build a compact rep from a CLI-style string: "trivial" | "vector" |
/// "spin:J" (n = 3 only) | "o4:S,T" (n = 4 only), J given as "1/2"-style
/// fractions or decimals.  Throws std::invalid_argument on bad input.
LittleGroupRep make_rep(const std::string& name, int n);

/// Parse a non-negative half-integer of the form "3/2", "1.5" or "2".
double parse_half_integer(const std::string& text);

/// JSON form with row-major matrices of [re, im] pairs.
nlohmann::json rep_to_json(const LittleGroupRep& rep);

}  // namespace p1n
