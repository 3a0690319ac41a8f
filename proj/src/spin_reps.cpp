#include <p1n/spin_reps.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <p1n/report.hpp>

namespace p1n {

namespace {

void require_half_integer(const char* what, double v) {
  double tw = 2.0 * v;
  if (!(v >= 0.0) || std::abs(tw - static_cast<double>(std::llround(tw))) > 1e-9) {
    std::ostringstream os;
    os << what << " must be a non-negative half-integer, got " << v;
    throw std::invalid_argument(os.str());
  }
}

int weight_dim(double j) { return static_cast<int>(std::llround(2.0 * j)) + 1; }

/// Weight-basis angular momentum triple {J_1, J_2, J_3} for spin j,
/// with J_3 = diag(j, j-1, ..., -j).
std::vector<Mat> su2_triple(double j) {
  int d = weight_dim(j);
  Mat jp = Mat::Zero(d, d);
  Mat j3 = Mat::Zero(d, d);
  for (int k = 0; k < d; ++k) j3(k, k) = Complex(j - k, 0.0);
  for (int k = 1; k < d; ++k) {
    double m = j - k;
    jp(k - 1, k) = Complex(std::sqrt(j * (j + 1) - m * (m + 1)), 0.0);
  }
  Mat jm = jp.adjoint();
  Mat j1 = 0.5 * (jp + jm);
  Mat j2 = Complex(0.0, -0.5) * (jp - jm);
  return {j1, j2, j3};
}

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

std::string pair_name(int i, int j, int k, int l) {
  std::ostringstream os;
  os << "[S" << i << j << ",S" << k << l << "]";
  return os.str();
}

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

int LittleGroupRep::plane_index(int i, int j) const {
  int m = label_count();
  int a = i - label_lo();
  int b = j - label_lo();
  if (a < 0 || b >= m || a >= b) throw std::out_of_range("invalid little-group plane labels");
  return a * (2 * m - a - 1) / 2 + (b - a - 1);
}

const Mat& LittleGroupRep::S_at(int i, int j) const {
  return S[static_cast<std::size_t>(plane_index(i, j))];
}

Mat LittleGroupRep::S_signed(int i, int j) const {
  if (i == j) return Mat::Zero(dim, dim);
  if (i < j) return S_at(i, j);
  return -S_at(j, i);
}

LittleGroupRep trivial_rep(int n) {
  if (n < 1) throw std::invalid_argument("trivial_rep requires n >= 1");
  LittleGroupRep rep;
  rep.n = n;
  rep.kind = "trivial";
  rep.dim = 1;
  rep.S.assign(static_cast<std::size_t>(rep.plane_count()), Mat::Zero(1, 1));
  return rep;
}

LittleGroupRep vector_rep(int n) {
  if (n < 2) throw std::invalid_argument("vector_rep requires n >= 2");
  LittleGroupRep rep;
  rep.n = n;
  rep.kind = "vector";
  rep.dim = n;
  rep.S.assign(static_cast<std::size_t>(rep.plane_count()), Mat::Zero(n, n));
  for (int k = 1; k <= n; ++k) {
    for (int l = k + 1; l <= n; ++l) {
      Mat& m = rep.S[static_cast<std::size_t>(rep.plane_index(k, l))];
      m(k - 1, l - 1) = Complex(0.0, -1.0);
      m(l - 1, k - 1) = Complex(0.0, 1.0);
    }
  }
  return rep;
}

LittleGroupRep so3_spin(double s) {
  require_half_integer("s", s);
  auto j = su2_triple(s);
  LittleGroupRep rep;
  rep.n = 3;
  rep.kind = "spin";
  rep.s = s;
  rep.dim = weight_dim(s);
  rep.S.resize(3);
  rep.S[static_cast<std::size_t>(rep.plane_index(1, 2))] = j[2];
  rep.S[static_cast<std::size_t>(rep.plane_index(1, 3))] = -j[1];
  rep.S[static_cast<std::size_t>(rep.plane_index(2, 3))] = j[0];
  return rep;
}

O4Rep o4_irrep(double s, double t) {
  require_half_integer("s", s);
  require_half_integer("t", t);
  auto js = su2_triple(s);
  auto jt = su2_triple(t);
  int ds = weight_dim(s);
  int dt = weight_dim(t);
  Mat is = Mat::Identity(ds, ds);
  Mat it = Mat::Identity(dt, dt);

  SpinIsospinSplit split;
  split.S_vec.resize(3);
  split.T_vec.resize(3);
  for (int a = 0; a < 3; ++a) {
    split.S_vec[a] = kron(js[a], it);
    split.T_vec[a] = kron(is, jt[a]);
  }
  split.casimir_s = s * (s + 1.0);
  split.casimir_t = t * (t + 1.0);
  const auto& A = split.S_vec;
  const auto& B = split.T_vec;

  LittleGroupRep rep;
  rep.n = 4;
  rep.kind = "o4";
  rep.s = s;
  rep.t = t;
  rep.dim = ds * dt;
  rep.S.resize(6);
  rep.S[static_cast<std::size_t>(rep.plane_index(1, 2))] = A[2] + B[2];
  rep.S[static_cast<std::size_t>(rep.plane_index(1, 3))] = -(A[1] + B[1]);
  rep.S[static_cast<std::size_t>(rep.plane_index(1, 4))] = B[0] - A[0];
  rep.S[static_cast<std::size_t>(rep.plane_index(2, 3))] = A[0] + B[0];
  rep.S[static_cast<std::size_t>(rep.plane_index(2, 4))] = B[1] - A[1];
  rep.S[static_cast<std::size_t>(rep.plane_index(3, 4))] = B[2] - A[2];
  return {std::move(rep), std::move(split)};
}

SpinIsospinSplit split_from_o4(const LittleGroupRep& rep) {
  if (rep.lorentz || rep.n != 4)
    throw std::invalid_argument("split_from_o4 requires a compact n = 4 rep");
  SpinIsospinSplit split;
  split.S_vec.resize(3);
  split.T_vec.resize(3);
  const int cyc[3][2] = {{2, 3}, {3, 1}, {1, 2}};
  for (int a = 1; a <= 3; ++a) {
    Mat sbc = rep.S_signed(cyc[a - 1][0], cyc[a - 1][1]);
    Mat s4a = rep.S_signed(4, a);
    split.S_vec[a - 1] = 0.5 * (sbc + s4a);
    split.T_vec[a - 1] = 0.5 * (sbc - s4a);
  }
  split.casimir_s = rep.s * (rep.s + 1.0);
  split.casimir_t = rep.t * (rep.t + 1.0);
  return split;
}

LittleGroupRep tilde_continue(const LittleGroupRep& rep) {
  if (rep.lorentz) throw std::invalid_argument("tilde_continue requires a compact rep");
  if (rep.n < 2) throw std::invalid_argument("tilde_continue requires n >= 2");
  LittleGroupRep out;
  out.n = rep.n;
  out.lorentz = true;
  out.kind = rep.kind;
  out.s = rep.s;
  out.t = rep.t;
  out.dim = rep.dim;
  out.S.resize(static_cast<std::size_t>(out.plane_count()));
  for (int a = 1; a <= rep.n - 1; ++a) {
    out.S[static_cast<std::size_t>(out.plane_index(0, a))] = Complex(0.0, 1.0) * rep.S_at(a, rep.n);
    for (int b = a + 1; b <= rep.n - 1; ++b)
      out.S[static_cast<std::size_t>(out.plane_index(a, b))] = rep.S_at(a, b);
  }
  return out;
}

Report check_little_group_relations(const LittleGroupRep& rep, double tol) {
  Report report;
  report.module = "spin_reps";
  report.check = "little_group_relations";
  int lo = rep.label_lo();
  int hi = rep.label_hi();
  for (int i = lo; i <= hi; ++i) {
    for (int j = i + 1; j <= hi; ++j) {
      for (int k = lo; k <= hi; ++k) {
        for (int l = k + 1; l <= hi; ++l) {
          if (rep.plane_index(k, l) < rep.plane_index(i, j)) continue;
          Mat lhs = rep.S_at(i, j) * rep.S_at(k, l) - rep.S_at(k, l) * rep.S_at(i, j);
          Mat rhs = Mat::Zero(rep.dim, rep.dim);
          if (i == l) rhs += rep.metric(i) * rep.S_signed(j, k);
          if (j == k) rhs += rep.metric(j) * rep.S_signed(i, l);
          if (i == k) rhs -= rep.metric(i) * rep.S_signed(j, l);
          if (j == l) rhs -= rep.metric(j) * rep.S_signed(i, k);
          rhs = Complex(0.0, 1.0) * rhs;
          report.add(pair_name(i, j, k, l), max_abs(lhs - rhs), tol);
        }
      }
    }
  }
  return report;
}

Report check_spin_isospin(const SpinIsospinSplit& split, double tol) {
  Report report;
  report.module = "spin_reps";
  report.check = "spin_isospin";
  const auto& S = split.S_vec;
  const auto& T = split.T_vec;
  int d = static_cast<int>(S[0].rows());
  Mat id = Mat::Identity(d, d);
  const Complex iu(0.0, 1.0);
  auto comm = [](const Mat& a, const Mat& b) { return Mat(a * b - b * a); };
  auto name3 = [](const char* fam, int a, int b, int c) {
    std::ostringstream os;
    os << "[" << fam << a + 1 << "," << fam << b + 1 << "]-i*" << fam << c + 1;
    return os.str();
  };
  const int cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (const auto& abc : cyc) {
    report.add(name3("S", abc[0], abc[1], abc[2]),
               max_abs(comm(S[abc[0]], S[abc[1]]) - iu * S[abc[2]]), tol);
    report.add(name3("T", abc[0], abc[1], abc[2]),
               max_abs(comm(T[abc[0]], T[abc[1]]) - iu * T[abc[2]]), tol);
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      std::ostringstream os;
      os << "[S" << a + 1 << ",T" << b + 1 << "]";
      report.add(os.str(), max_abs(comm(S[a], T[b])), tol);
    }
  }
  Mat s2 = S[0] * S[0] + S[1] * S[1] + S[2] * S[2];
  Mat t2 = T[0] * T[0] + T[1] * T[1] + T[2] * T[2];
  report.add("S.S-s(s+1)*1", max_abs(s2 - split.casimir_s * id), tol);
  report.add("T.T-t(t+1)*1", max_abs(t2 - split.casimir_t * id), tol);
  for (int a = 0; a < 3; ++a) {
    std::ostringstream os1, os2;
    os1 << "[S" << a + 1 << ",S.S]";
    os2 << "[T" << a + 1 << ",T.T]";
    report.add(os1.str(), max_abs(comm(S[a], s2)), tol);
    report.add(os2.str(), max_abs(comm(T[a], t2)), tol);
  }
  return report;
}

double parse_half_integer(const std::string& text) {
  double v = 0.0;
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t p1 = 0;
      std::size_t p2 = 0;
      double num = std::stod(text.substr(0, slash), &p1);
      double den = std::stod(text.substr(slash + 1), &p2);
      if (p1 != slash || p2 != text.size() - slash - 1 || den == 0.0)
        throw std::invalid_argument(text);
      v = num / den;
    } else {
      std::size_t pos = 0;
      v = std::stod(text, &pos);
      if (pos != text.size()) throw std::invalid_argument(text);
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse half-integer label '" + text + "'");
  }
  require_half_integer("label", v);
  return v;
}

LittleGroupRep make_rep(const std::string& name, int n) {
  if (name == "trivial") return trivial_rep(n);
  if (name == "vector") return vector_rep(n);
  auto colon = name.find(':');
  if (colon != std::string::npos) {
    std::string head = name.substr(0, colon);
    std::string tail = name.substr(colon + 1);
    if (head == "spin") {
      if (n != 3) throw std::invalid_argument("spin:J reps require n = 3");
      return so3_spin(parse_half_integer(tail));
    }
    if (head == "o4") {
      if (n != 4) throw std::invalid_argument("o4:S,T reps require n = 4");
      auto comma = tail.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("o4 rep needs two labels: o4:S,T");
      return o4_irrep(parse_half_integer(tail.substr(0, comma)),
                      parse_half_integer(tail.substr(comma + 1)))
          .rep;
    }
  }
  throw std::invalid_argument("unknown rep '" + name +
                              "' (expected trivial | vector | spin:J | o4:S,T)");
}

nlohmann::json rep_to_json(const LittleGroupRep& rep) {
  nlohmann::json planes = nlohmann::json::array();
  int lo = rep.label_lo();
  int hi = rep.label_hi();
  for (int i = lo; i <= hi; ++i) {
    for (int j = i + 1; j <= hi; ++j) {
      const Mat& m = rep.S_at(i, j);
      nlohmann::json rows = nlohmann::json::array();
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
          row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
      }
      planes.push_back({{"plane", {i, j}}, {"matrix", std::move(rows)}});
    }
  }
  return {{"n", rep.n},
          {"signature", rep.lorentz ? "lorentz" : "compact"},
          {"kind", rep.kind},
          {"s", rep.s},
          {"t", rep.t},
          {"dim", rep.dim},
          {"planes", std::move(planes)}};
}

}  // namespace p1n
