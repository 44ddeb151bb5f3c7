#include "group.hpp"

#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

namespace eqym {

Mat GroupElement::inverse() const {
  Mat I = sig.diag();
  return I * m.transpose() * I;
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  require(sig == o.sig, "group product: signature mismatch");
  return {m * o.m, sig, ElementKind::general};
}

GroupElement identity_element(const Signature& s) {
  return {Mat::Identity(s.n(), s.n()), s, ElementKind::general};
}

GroupElement standard_element(ElementKind kind, int i, int j, double param, const Signature& s) {
  const int n = s.n();
  require(0 <= i && i < j && j < n, "standard_element: need 0 <= i < j < n");
  GroupElement g = identity_element(s);
  g.kind = kind;
  if (kind == ElementKind::rotation) {
    require(s.eps(i) == s.eps(j), "rotation needs both indices in one signature block");
    g.m(i, i) = std::cos(param);
    g.m(i, j) = -std::sin(param);
    g.m(j, i) = std::sin(param);
    g.m(j, j) = std::cos(param);
  } else if (kind == ElementKind::boost) {
    require(s.eps(i) != s.eps(j), "boost needs indices in different signature blocks");
    g.m(i, i) = std::cosh(param);
    g.m(i, j) = std::sinh(param);
    g.m(j, i) = std::sinh(param);
    g.m(j, j) = std::cosh(param);
  } else {
    throw ValidationError("standard_element: kind must be rotation or boost");
  }
  return g;
}

double group_defect(const GroupElement& g) {
  Mat I = g.sig.diag();
  double a = max_abs(Mat(g.m.transpose() * I * g.m - I));
  return std::max(a, std::abs(g.m.determinant() - 1.0));
}

CMat adjoint(const GroupElement& g, const CMat& m) {
  return g.m.cast<cplx>() * m * g.inverse().cast<cplx>();
}

FMat<double> adjoint(const GroupElement& g, const FMat<double>& m) {
  FMat<double> gm = from_eigen(g.m), gi = from_eigen(g.inverse());
  return matmul(matmul(gm, m), gi);
}

Mat adjoint_op(const GroupElement& g, const OrderedBasis& b) {
  require(g.sig.n() == b.dim(), "adjoint_op: dimension mismatch");
  Mat a(b.size(), b.size());
  for (int k = 0; k < b.size(); ++k) a.col(k) = b.coordinates(adjoint(g, b.elements[k]));
  return a;
}

Mat rho_op(const GroupElement& g, const OrderedBasis& b) {
  Mat I = g.sig.diag();
  Mat twist = I * g.m * I;
  Mat ad = adjoint_op(g, b);
  return Eigen::kroneckerProduct(twist, ad).eval();
}

TensorVector rho_apply(const GroupElement& g, const TensorVector& c) {
  const int n = g.sig.n();
  require(static_cast<int>(c.size()) == n, "rho_apply: need one component per vector index");
  Mat gi = g.inverse();
  TensorVector out;
  std::vector<FMat<double>> ad;
  for (const auto& cv : c) ad.push_back(adjoint(g, cv));
  for (int mu = 0; mu < n; ++mu) {
    FMat<double> s(c[0].n, false);
    for (int nu = 0; nu < n; ++nu) s.axpy(gi(nu, mu), ad[nu]);
    out.push_back(s);
  }
  return out;
}

Vec tensor_coordinates(const TensorVector& c, const OrderedBasis& b) {
  const int d = b.size();
  Vec v(static_cast<Eigen::Index>(c.size()) * d);
  for (size_t mu = 0; mu < c.size(); ++mu) v.segment(mu * d, d) = b.coordinates(to_eigen(c[mu]));
  return v;
}

TensorVector tensor_from_coordinates(const Vec& v, const OrderedBasis& b) {
  const int d = b.size();
  TensorVector c;
  for (Eigen::Index mu = 0; mu * d < v.size(); ++mu) c.push_back(from_eigen(b.combine(v.segment(mu * d, d))));
  return c;
}

namespace {

// Column sign fixes: det +1, then positive determinant of the time-like block.
void orient(Mat& g, const Signature& s) {
  const int n = s.n();
  if (g.determinant() < 0) g.col(n - 1) *= -1;
  if (s.p >= 2 && s.q >= 1 && g.topLeftCorner(s.p, s.p).determinant() < 0) {
    g.col(1) *= -1;
    g.col(n - 1) *= -1;
  }
}

bool closed_form_frame(const Vec& x, const Signature& s, Mat& g) {
  const int n = s.n();
  const double scale = x.squaredNorm();
  // S[j] = x_0^2 + sum_{k >= j} eps(k) x_k^2 for j >= 1; S[n] = x_0^2
  std::vector<double> S(n + 1, x(0) * x(0));
  for (int j = n - 1; j >= 1; --j) S[j] = S[j + 1] + s.eps(j) * x(j) * x(j);
  for (int j = 1; j <= n; ++j)
    if (S[j] <= 1e-8 * scale) return false;
  const double nx = std::sqrt(S[1]);
  g = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) g(i, 0) = x(i) / nx;
  // columns scaled by -eps(j) so that the diagonal is positive and x = r e_0 gives the identity
  for (int j = 1; j < n; ++j) {
    const double den = std::sqrt(S[j] * S[j + 1]), sg = -s.eps(j);
    g(0, j) = sg * x(0) * x(j) / den;
    for (int i = j + 1; i < n; ++i) g(i, j) = sg * x(i) * x(j) / den;
    g(j, j) = std::sqrt(S[j + 1] / S[j]);
  }
  return true;
}

bool gram_schmidt_frame(const Vec& x, const Signature& s, const Mat& seeds, Mat& g) {
  const int n = s.n();
  Mat I = s.diag();
  auto ip = [&](const Vec& a, const Vec& b) { return a.dot(I * b); };
  g = Mat::Zero(n, n);
  g.col(0) = x / std::sqrt(ip(x, x));
  // each column takes the unused seed of its signature block that projects best
  std::vector<bool> used(n, false);
  for (int c = 1; c < n; ++c) {
    Vec best;
    double score = 1e-6;
    int pick = -1;
    for (int k = 0; k < n; ++k) {
      if (used[k] || s.eps(k) != s.eps(c)) continue;
      Vec v = seeds.col(k);
      for (int m = 0; m < c; ++m) v -= ip(v, g.col(m)) / ip(g.col(m), g.col(m)) * g.col(m);
      const double sc = s.eps(c) * ip(v, v);
      if (sc > score) {
        score = sc;
        best = v;
        pick = k;
      }
    }
    if (pick < 0) return false;
    used[pick] = true;
    g.col(c) = best / std::sqrt(score);
  }
  return true;
}

}  // namespace

GroupElement frame_matrix(const Vec& x, const Signature& s, bool* used_closed_form) {
  const int n = s.n();
  require(x.size() == n, "frame_matrix: dimension mismatch");
  Mat I = s.diag();
  const double norm2 = x.dot(I * x);
  require(x.squaredNorm() > 0, "frame_matrix: x must be nonzero");
  require(norm2 > 1e-14 * x.squaredNorm(), "frame_matrix: x is not time-like");
  if (s.p == 1) require(x(0) > 0, "frame_matrix: x must be future pointing");
  GroupElement out{Mat(), s, ElementKind::frame};
  bool closed = closed_form_frame(x, s, out.m);
  if (!closed) {
    // rotate the seed basis within each block until Gram-Schmidt is well conditioned
    Mat seeds = Mat::Identity(n, n);
    bool ok = gram_schmidt_frame(x, s, seeds, out.m);
    const double golden = 0.5 * (1 + std::sqrt(5.0));
    for (int attempt = 1; !ok && attempt < 64; ++attempt) {
      Mat r = Mat::Identity(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (s.eps(i) == s.eps(j))
            r = r * standard_element(ElementKind::rotation, i, j, attempt * golden * (i + 2 * j), s).m;
      seeds = r;
      ok = gram_schmidt_frame(x, s, seeds, out.m);
    }
    if (!ok) throw NumericalError("frame_matrix: Gram-Schmidt failed for every seed rotation");
  }
  orient(out.m, s);
  if (used_closed_form) *used_closed_form = closed;
  return out;
}

CMat spin_lambda_d(const Vec& c, const Signature& s) {
  const int n = s.n();
  require(c.size() == n * (n - 1) / 2, "spin_lambda_d: coefficient length must be n(n-1)/2");
  Mat m = Mat::Zero(n, n);
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m += 2.0 * c(k++) * f_gen(s, i, j);
  return m.cast<cplx>();
}

Vec spin_lambda_inv(const CMat& m, const Signature& s) {
  const int n = s.n();
  require(m.rows() == n && m.cols() == n, "spin_lambda_inv: shape mismatch");
  require(so_pq_relation(m, s) <= 1e-10 * std::max(1.0, max_abs(m)) && max_abs(Mat(m.imag())) == 0,
          "spin_lambda_inv: matrix is not in so(p,q)");
  Mat im = s.diag() * m.real();
  Vec c(n * (n - 1) / 2);
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c(k++) = 0.5 * s.eps(i) * s.eps(j) * im(i, j);
  return c;
}

Vec spin_lambda_inv_printed(const CMat& m, const Signature& s) {
  const int n = s.n();
  Mat r = m.real();
  Mat I = s.diag();
  Vec c(n * (n - 1) / 2);
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec mk = r.col(i);
      c(k++) = 0.5 * mk.dot(I.col(j)) * s.eps(i) * s.eps(j);
    }
  return c;
}

Mat spin_adjoint(const GroupElement& g) {
  const int n = g.sig.n(), d = n * (n - 1) / 2;
  Mat a(d, d);
  for (int k = 0; k < d; ++k) {
    Vec e = Vec::Zero(d);
    e(k) = 1;
    a.col(k) = spin_lambda_inv(adjoint(g, spin_lambda_d(e, g.sig)), g.sig);
  }
  return a;
}

double killing_residual(const Vec& xi, const Mat& jac, const Mat& metric, const Mat& metric_along_xi) {
  const auto n = xi.size();
  require(jac.rows() == n && jac.cols() == n && metric.rows() == n && metric.cols() == n &&
              metric_along_xi.rows() == n && metric_along_xi.cols() == n,
          "killing_residual: shape mismatch");
  return (jac.transpose() * metric + metric * jac + metric_along_xi).norm();
}

}  // namespace eqym
