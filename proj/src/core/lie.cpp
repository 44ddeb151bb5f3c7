#include "lie.hpp"

#include <algorithm>

namespace eqym {

Mat Signature::diag() const {
  Mat d = Mat::Zero(n(), n());
  for (int i = 0; i < n(); ++i) d(i, i) = eps(i);
  return d;
}

int levi_civita(std::span<const int> idx) {
  int sign = 1;
  for (size_t a = 0; a < idx.size(); ++a)
    for (size_t b = a + 1; b < idx.size(); ++b) {
      if (idx[a] == idx[b]) return 0;
      if (idx[a] > idx[b]) sign = -sign;
    }
  return sign;
}

Mat unit(int n, int i) {
  Mat e = Mat::Zero(n, 1);
  e(i, 0) = 1;
  return e;
}

Mat e_anti(int n, int i, int j) {
  Mat m = Mat::Zero(n, n);
  m(i, j) += 1;
  m(j, i) -= 1;
  return m;
}

Mat e_sym(int n, int i, int j) {
  Mat m = Mat::Zero(n, n);
  m(i, j) += 1;
  m(j, i) += 1;
  return m;
}

Mat e_diag(int n, int i, int j) {
  Mat m = Mat::Zero(n, n);
  m(i, j) = 1;
  return m;
}

Mat e_bar(int k, int l) {
  Mat m = Mat::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = levi_civita({k, i, j, l});
  return m;
}

Mat f_gen(const Signature& s, int i, int j) { return e_anti(s.n(), i, j) * s.diag(); }

Mat f_bar_gen(const Signature& s, int k, int l) { return s.diag() * e_bar(k, l); }

BasisKind parse_basis_kind(const std::string& s) {
  if (s == "so" || s == "so(n)") return BasisKind::so;
  if (s == "sopq" || s == "so(p,q)") return BasisKind::so_pq;
  if (s == "so4-dual") return BasisKind::so4_dual;
  if (s == "sopq4-dual") return BasisKind::sopq4_dual;
  if (s == "su" || s == "su(n)-split") return BasisKind::su_split;
  if (s == "spin" || s == "spin(p,q)") return BasisKind::spin_pq;
  throw ValidationError("unknown basis kind: " + s);
}

std::string to_string(BasisKind k) {
  switch (k) {
    case BasisKind::so: return "so(n)";
    case BasisKind::so_pq: return "so(p,q)";
    case BasisKind::so4_dual: return "so4-dual";
    case BasisKind::sopq4_dual: return "sopq4-dual";
    case BasisKind::su_split: return "su(n)-split";
    case BasisKind::spin_pq: return "spin(p,q)";
  }
  return "?";
}

int OrderedBasis::index_of(int i, int j, int flag) const {
  for (int k = 0; k < size(); ++k)
    if (labels[k].i == i && labels[k].j == j && labels[k].flag == flag) return k;
  return -1;
}

namespace {

Vec realify(const CMat& m) {
  const Eigen::Index s = m.size();
  Vec v(2 * s);
  for (Eigen::Index k = 0; k < s; ++k) {
    v(k) = m.data()[k].real();
    v(s + k) = m.data()[k].imag();
  }
  return v;
}

}  // namespace

Vec OrderedBasis::coordinates(const CMat& m, double* residual) const {
  if (pinv_.size() == 0) {
    Mat a(2 * dim() * dim(), size());
    for (int k = 0; k < size(); ++k) a.col(k) = realify(elements[k]);
    pinv_ = a.completeOrthogonalDecomposition().pseudoInverse();
  }
  require(m.rows() == dim() && m.cols() == dim(), "coordinates: shape mismatch");
  Vec c = pinv_ * realify(m);
  if (residual) *residual = max_abs(combine(c) - m);
  return c;
}

CMat OrderedBasis::combine(const Vec& c) const {
  CMat m = CMat::Zero(dim(), dim());
  for (int k = 0; k < size(); ++k) m += c(k) * elements[k];
  return m;
}

OrderedBasis build_basis(BasisKind kind, int n, int p, int q) {
  require(n >= 2, "build_basis: n must be at least 2");
  OrderedBasis b;
  b.kind = kind;
  if (p < 0 && q < 0) {
    p = n;
    q = 0;
  } else if (p < 0) {
    p = n - q;
  } else if (q < 0) {
    q = n - p;
  }
  require(p >= 0 && q >= 0 && p + q == n, "build_basis: need p, q >= 0 with p + q = n");
  b.sig = Signature(p, q);
  auto add = [&](const Mat& m, int i, int j, int flag) {
    b.elements.push_back(m.cast<cplx>());
    b.labels.push_back({i, j, flag});
  };
  switch (kind) {
    case BasisKind::so:
      require(q == 0, "so(n) basis is Euclidean; use so(p,q)");
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) add(e_anti(n, i, j), i, j, 0);
      break;
    case BasisKind::so_pq:
      // rotations (same signature block) first, then boosts
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (b.sig.eps(i) == b.sig.eps(j)) add(e_anti(n, i, j), i, j, 0);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (b.sig.eps(i) != b.sig.eps(j)) add(e_sym(n, i, j), i, j, 1);
      break;
    case BasisKind::so4_dual:
      require(n == 4 && q == 0, "so4-dual requires n = 4 (Euclidean)");
      for (int k = 0; k < 4; ++k)
        for (int l = k + 1; l < 4; ++l) add(e_bar(k, l), k, l, 1);
      break;
    case BasisKind::sopq4_dual:
      require(n == 4, "sopq4-dual requires n = 4");
      for (int k = 0; k < 4; ++k)
        for (int l = k + 1; l < 4; ++l) add(f_bar_gen(b.sig, k, l), k, l, 1);
      break;
    case BasisKind::su_split: {
      require(q == 0, "su(n) split basis is Euclidean");
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) add(e_anti(n, i, j), i, j, 0);
      const cplx I(0, 1);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          b.elements.push_back(I * e_sym(n, i, j).cast<cplx>());
          b.labels.push_back({i, j, 1});
        }
      for (int k = 0; k + 1 < n; ++k) {
        b.elements.push_back(I * (e_diag(n, k, k) - e_diag(n, k + 1, k + 1)).cast<cplx>());
        b.labels.push_back({k, k + 1, 2});
      }
      break;
    }
    case BasisKind::spin_pq:
      // images of e_i x e_j under the differential of the double cover
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) add(2.0 * f_gen(b.sig, i, j), i, j, 0);
      break;
  }
  return b;
}

CMat commutator(const CMat& a, const CMat& b) {
  require(a.rows() == a.cols() && a.rows() == b.rows() && b.rows() == b.cols(),
          "commutator: shape mismatch");
  return a * b - b * a;
}

Mat commutator(const Mat& a, const Mat& b) {
  require(a.rows() == a.cols() && a.rows() == b.rows() && b.rows() == b.cols(),
          "commutator: shape mismatch");
  return a * b - b * a;
}

double jacobi_residual(const CMat& a, const CMat& b, const CMat& c) {
  CMat s = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
           commutator(c, commutator(a, b));
  return s.norm();
}

cplx trace_pairing(const CMat& a, const CMat& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols() && a.rows() == a.cols(),
          "trace_pairing: shape mismatch");
  return (a * b).trace();
}

SuSplit su_split(const CMat& m) {
  require(m.rows() == m.cols(), "su_split: matrix must be square");
  const double tol = 1e-12 * std::max(1.0, max_abs(m));
  require(max_abs(m + m.adjoint()) <= tol, "su_split: matrix is not anti-Hermitian");
  require(std::abs(m.trace()) <= tol, "su_split: matrix is not traceless");
  return {m.real(), m.imag()};
}

CMat su_join(const SuSplit& s) {
  return s.antisym.cast<cplx>() + cplx(0, 1) * s.sym.cast<cplx>();
}

double structure_residual(const OrderedBasis& b) {
  double worst = 0;
  for (int a = 0; a < b.size(); ++a)
    for (int c = a + 1; c < b.size(); ++c) {
      double res = 0;
      b.coordinates(commutator(b.elements[a], b.elements[c]), &res);
      worst = std::max(worst, res);
    }
  return worst;
}

double so_pq_relation(const CMat& m, const Signature& s) {
  Mat I = s.diag();
  return max_abs(m.transpose() * I.cast<cplx>() + I.cast<cplx>() * m);
}

}  // namespace eqym
