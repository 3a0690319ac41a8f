#pragma once

#include <vector>

#include <p1n/fields.hpp>
#include <p1n/jet.hpp>

namespace p1n {

/// Matrix-valued coefficient function stored as a sum of constant matrices
/// times scalar fields.  Evaluation distributes each scalar jet over the
/// constant matrix action, so vector application costs one field evaluation
/// per term instead of one per matrix entry.
struct MatrixField {
  int dim = 0;
  int mdim = 1;
  struct Term {
    Mat coeff;
    ScalarField s;
  };
  std::vector<Term> terms;

  bool empty() const { return terms.empty(); }
  void add(Mat coeff, ScalarField s);
  Mat value(const std::vector<Complex>& seeds) const;
};

MatrixField zero_matrix_field(int dim, int mdim);

/// First-order matrix differential operator
///   (G f)(q) = m(q) f(q) + sum_k c^k(q) (df/dq_k)(q).
/// Applying G lowers the jet order of the field by one; coefficients are
/// evaluated at the result order, so a commutator of two operators needs
/// order-2 field data and never order 3.
struct DiffOperator {
  int dim = 0;
  int mdim = 1;
  MatrixField mult;
  std::vector<MatrixField> deriv;  ///< one slot per variable; empty slots contribute nothing
};

DiffOperator zero_operator(int dim, int mdim);
DiffOperator op_scale(Complex c, const DiffOperator& a);
DiffOperator op_add(const DiffOperator& a, const DiffOperator& b);

/// Apply to a field given as component jets one order above the result;
/// `seeds` are the coordinate jets at the result order.
std::vector<Complex> apply_value(const DiffOperator& op, const std::vector<Jet1>& f,
                                 const std::vector<Complex>& seeds);
std::vector<Jet1> apply_jet1(const DiffOperator& op, const std::vector<Jet2>& f,
                             const std::vector<Jet1>& seeds);
std::vector<Jet2> apply_jet2(const DiffOperator& op, const std::vector<Jet3>& f,
                             const std::vector<Jet2>& seeds);

/// Apply a purely multiplicative operator without lowering the jet order.
/// Throws std::logic_error if the operator has derivative terms.
std::vector<Complex> apply_mult(const DiffOperator& op, const std::vector<Complex>& f,
                                const std::vector<Complex>& seeds);
std::vector<Jet1> apply_mult(const DiffOperator& op, const std::vector<Jet1>& f,
                             const std::vector<Jet1>& seeds);
std::vector<Jet2> apply_mult(const DiffOperator& op, const std::vector<Jet2>& f,
                             const std::vector<Jet2>& seeds);
std::vector<Jet3> apply_mult(const DiffOperator& op, const std::vector<Jet3>& f,
                             const std::vector<Jet3>& seeds);

/// ([A,B] f)(q) = A(Bf)(q) - B(Af)(q), exact to roundoff given exact jets.
std::vector<Complex> commutator_apply(const DiffOperator& A, const DiffOperator& B,
                                      const SmoothField& f, const Vec& q);

}  // namespace p1n
