#include <p1n/diff_operator.hpp>

#include <sstream>
#include <stdexcept>

namespace p1n {

namespace {

void require_dims(int a, int b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch " << a << " vs " << b;
    throw std::invalid_argument(os.str());
  }
}

/// out_i += sum_t s_t(seeds) * (coeff_t v)_i, with one field evaluation and
/// one jet product per (term, component).
template <class SeedT, class ResultT>
void accumulate(const MatrixField& mf, const std::vector<SeedT>& seeds,
                const std::vector<ResultT>& v, std::vector<ResultT>& out) {
  for (const auto& term : mf.terms) {
    auto st = field_eval(term.s, seeds);
    for (int j = 0; j < mf.mdim; ++j) {
      auto prod = jet_mul(st, v[static_cast<std::size_t>(j)]);
      for (int i = 0; i < mf.mdim; ++i) {
        Complex c = term.coeff(i, j);
        if (c == Complex(0.0, 0.0)) continue;
        out[static_cast<std::size_t>(i)] =
            jet_add(out[static_cast<std::size_t>(i)], jet_scale(c, prod));
      }
    }
  }
}

template <class SeedT, class FieldT, class ResultT>
std::vector<ResultT> apply_impl(const DiffOperator& op, const std::vector<FieldT>& f,
                                const std::vector<SeedT>& seeds) {
  require_dims(static_cast<int>(f.size()), op.mdim, "apply: field components");
  require_dims(static_cast<int>(seeds.size()), op.dim, "apply: seeds");
  std::vector<ResultT> out(static_cast<std::size_t>(op.mdim),
                           jet_const_like(jet_truncate(f[0]), Complex(0.0, 0.0)));

  std::vector<ResultT> fr(static_cast<std::size_t>(op.mdim));
  for (int i = 0; i < op.mdim; ++i) fr[static_cast<std::size_t>(i)] = jet_truncate(f[static_cast<std::size_t>(i)]);
  accumulate(op.mult, seeds, fr, out);

  for (int k = 0; k < op.dim; ++k) {
    if (op.deriv[static_cast<std::size_t>(k)].empty()) continue;
    std::vector<ResultT> dk(static_cast<std::size_t>(op.mdim));
    for (int i = 0; i < op.mdim; ++i)
      dk[static_cast<std::size_t>(i)] = jet_derivative(f[static_cast<std::size_t>(i)], k);
    accumulate(op.deriv[static_cast<std::size_t>(k)], seeds, dk, out);
  }
  return out;
}

template <class JetT>
std::vector<JetT> apply_mult_impl(const DiffOperator& op, const std::vector<JetT>& f,
                                  const std::vector<JetT>& seeds) {
  for (const auto& mf : op.deriv)
    if (!mf.empty()) throw std::logic_error("apply_mult: operator has derivative terms");
  require_dims(static_cast<int>(f.size()), op.mdim, "apply_mult: field components");
  std::vector<JetT> out(static_cast<std::size_t>(op.mdim),
                        jet_const_like(f[0], Complex(0.0, 0.0)));
  accumulate(op.mult, seeds, f, out);
  return out;
}

}  // namespace

void MatrixField::add(Mat coeff, ScalarField s) {
  terms.push_back({std::move(coeff), std::move(s)});
}

Mat MatrixField::value(const std::vector<Complex>& seeds) const {
  Mat out = Mat::Zero(mdim, mdim);
  for (const auto& term : terms) out += term.s.value(seeds) * term.coeff;
  return out;
}

MatrixField zero_matrix_field(int dim, int mdim) {
  MatrixField mf;
  mf.dim = dim;
  mf.mdim = mdim;
  return mf;
}

DiffOperator zero_operator(int dim, int mdim) {
  DiffOperator op;
  op.dim = dim;
  op.mdim = mdim;
  op.mult = zero_matrix_field(dim, mdim);
  op.deriv.assign(static_cast<std::size_t>(dim), zero_matrix_field(dim, mdim));
  return op;
}

DiffOperator op_scale(Complex c, const DiffOperator& a) {
  DiffOperator out = a;
  for (auto& term : out.mult.terms) term.coeff *= c;
  for (auto& mf : out.deriv)
    for (auto& term : mf.terms) term.coeff *= c;
  return out;
}

DiffOperator op_add(const DiffOperator& a, const DiffOperator& b) {
  require_dims(a.dim, b.dim, "op_add: variables");
  require_dims(a.mdim, b.mdim, "op_add: matrix dimension");
  DiffOperator out = a;
  for (const auto& term : b.mult.terms) out.mult.terms.push_back(term);
  for (std::size_t k = 0; k < out.deriv.size(); ++k)
    for (const auto& term : b.deriv[k].terms) out.deriv[k].terms.push_back(term);
  return out;
}

std::vector<Complex> apply_value(const DiffOperator& op, const std::vector<Jet1>& f,
                                 const std::vector<Complex>& seeds) {
  return apply_impl<Complex, Jet1, Complex>(op, f, seeds);
}

std::vector<Jet1> apply_jet1(const DiffOperator& op, const std::vector<Jet2>& f,
                             const std::vector<Jet1>& seeds) {
  return apply_impl<Jet1, Jet2, Jet1>(op, f, seeds);
}

std::vector<Jet2> apply_jet2(const DiffOperator& op, const std::vector<Jet3>& f,
                             const std::vector<Jet2>& seeds) {
  return apply_impl<Jet2, Jet3, Jet2>(op, f, seeds);
}

std::vector<Complex> apply_mult(const DiffOperator& op, const std::vector<Complex>& f,
                                const std::vector<Complex>& seeds) {
  return apply_mult_impl(op, f, seeds);
}

std::vector<Jet1> apply_mult(const DiffOperator& op, const std::vector<Jet1>& f,
                             const std::vector<Jet1>& seeds) {
  return apply_mult_impl(op, f, seeds);
}

std::vector<Jet2> apply_mult(const DiffOperator& op, const std::vector<Jet2>& f,
                             const std::vector<Jet2>& seeds) {
  return apply_mult_impl(op, f, seeds);
}

std::vector<Jet3> apply_mult(const DiffOperator& op, const std::vector<Jet3>& f,
                             const std::vector<Jet3>& seeds) {
  return apply_mult_impl(op, f, seeds);
}

std::vector<Complex> commutator_apply(const DiffOperator& A, const DiffOperator& B,
                                      const SmoothField& f, const Vec& q) {
  require_dims(A.dim, B.dim, "commutator: variables");
  require_dims(A.mdim, B.mdim, "commutator: matrix dimension");
  auto seeds1 = jet_seeds1(q);
  auto seeds0 = seed_values(q);
  auto f2 = f.eval2_at(q);
  auto bf = apply_jet1(B, f2, seeds1);
  auto af = apply_jet1(A, f2, seeds1);
  auto abf = apply_value(A, bf, seeds0);
  auto baf = apply_value(B, af, seeds0);
  std::vector<Complex> out(abf.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = abf[i] - baf[i];
  return out;
}

}  // namespace p1n
