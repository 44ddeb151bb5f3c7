#include "equivariance.hpp"

#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

namespace eqym {

OrderedBasis rep_algebra(const Signature& s, RepKind rep) {
  const int n = s.n();
  if (rep == RepKind::vector_traceless) {
    require(s.q == 0, "traceless symmetric part is only defined for the Euclidean case");
    OrderedBasis b;
    b.kind = BasisKind::su_split;
    b.sig = s;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        b.elements.push_back(e_sym(n, i, j).cast<cplx>());
        b.labels.push_back({i, j, 1});
      }
    for (int k = 0; k + 1 < n; ++k) {
      b.elements.push_back((e_diag(n, k, k) - e_diag(n, k + 1, k + 1)).cast<cplx>());
      b.labels.push_back({k, k + 1, 2});
    }
    return b;
  }
  return build_basis(BasisKind::so_pq, n, s.p, s.q);
}

std::vector<GroupElement> stabilizer_generators(const Signature& s, Stabilizer st) {
  std::vector<GroupElement> gens;
  if (st == Stabilizer::identity) {
    gens.push_back(identity_element(s));
    return gens;
  }
  const double params[2] = {1.0, std::sqrt(2.0)};
  for (int i = 1; i < s.n(); ++i)
    for (int j = i + 1; j < s.n(); ++j)
      for (double t : params)
        gens.push_back(standard_element(s.eps(i) == s.eps(j) ? ElementKind::rotation : ElementKind::boost,
                                        i, j, t, s));
  return gens;
}

GroupElement random_stabilizer_element(const Signature& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-M_PI, M_PI), rapidity(-1.0, 1.0);
  GroupElement g = identity_element(s);
  for (int i = 1; i < s.n(); ++i)
    for (int j = i + 1; j < s.n(); ++j) {
      bool rot = s.eps(i) == s.eps(j);
      g = g * standard_element(rot ? ElementKind::rotation : ElementKind::boost, i, j,
                               rot ? angle(rng) : rapidity(rng), s);
    }
  return g;
}

GroupElement random_group_element(const Signature& s, std::mt19937_64& rng, double max_rapidity) {
  std::uniform_real_distribution<double> angle(-M_PI, M_PI), rapidity(-max_rapidity, max_rapidity);
  GroupElement g = identity_element(s);
  for (int i = 0; i < s.n(); ++i)
    for (int j = i + 1; j < s.n(); ++j) {
      bool rot = s.eps(i) == s.eps(j);
      g = g * standard_element(rot ? ElementKind::rotation : ElementKind::boost, i, j,
                               rot ? angle(rng) : rapidity(rng), s);
    }
  return g;
}

Mat rep_matrix(const GroupElement& g, const OrderedBasis& algebra, RepKind rep) {
  Mat ad = adjoint_op(g, algebra);
  if (rep == RepKind::adjoint_only) return ad;
  Mat I = g.sig.diag();
  return Eigen::kroneckerProduct(Mat(I * g.m * I), ad).eval();
}

FixedSpaceReport fixed_space(const Signature& s, RepKind rep, Stabilizer st, double tol, double min_gap) {
  require(s.n() >= 2, "fixed_space: n must be at least 2");
  FixedSpaceReport r;
  r.sig = s;
  r.rep = rep;
  OrderedBasis alg = rep_algebra(s, rep);
  auto gens = stabilizer_generators(s, st);
  const int dim = rep == RepKind::adjoint_only ? alg.size() : s.n() * alg.size();
  r.ambient = dim;
  Mat stack(dim * static_cast<int>(gens.size()), dim);
  std::vector<Mat> blocks;
  for (size_t k = 0; k < gens.size(); ++k) {
    Mat b = rep_matrix(gens[k], alg, rep) - Mat::Identity(dim, dim);
    stack.middleRows(k * dim, dim) = b;
    blocks.push_back(b);
    std::string label = gens[k].kind == ElementKind::rotation ? "rotation" :
                        gens[k].kind == ElementKind::boost ? "boost" : "identity";
    r.generators_used.push_back(label);
  }
  if (gens.empty()) {
    // trivial stabilizer: every tensor is fixed
    r.dimension = dim;
    r.gap_ratio = INFINITY;
    r.coords = Mat::Identity(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c)
      r.basis.push_back(rep == RepKind::adjoint_only ? TensorVector{from_eigen(alg.combine(r.coords.col(c)))}
                                                     : tensor_from_coordinates(r.coords.col(c), alg));
    return r;
  }
  Eigen::JacobiSVD<Mat> svd(stack, Eigen::ComputeFullV);
  Vec sv = svd.singularValues();  // descending
  for (Eigen::Index k = 0; k < sv.size(); ++k) r.singular_values.push_back(sv(k));
  double smax = sv.size() ? sv(0) : 0.0;
  if (smax < 1e-12) smax = 0;  // generators act as the identity up to rounding
  int rank = 0;
  if (smax > 0)
    while (rank < sv.size() && sv(rank) >= tol * smax) ++rank;
  r.dimension = dim - rank;
  if (smax == 0) {
    r.gap_ratio = INFINITY;
  } else {
    const double eps = std::numeric_limits<double>::epsilon();
    double below = rank < sv.size() ? std::max(sv(rank), eps * smax) : eps * smax;
    r.gap_ratio = sv(rank - 1) / below;
  }
  if (r.gap_ratio < min_gap)
    throw NumericalError("fixed_space: ambiguous rank gap " + std::to_string(r.gap_ratio));
  r.coords = svd.matrixV().rightCols(r.dimension);
  for (Eigen::Index c = 0; c < r.coords.cols(); ++c) {
    if (rep == RepKind::adjoint_only) {
      r.basis.push_back({from_eigen(alg.combine(r.coords.col(c)))});
    } else {
      r.basis.push_back(tensor_from_coordinates(r.coords.col(c), alg));
    }
    for (const auto& b : blocks) r.max_residual = std::max(r.max_residual, (b * r.coords.col(c)).norm());
  }
  return r;
}

std::optional<int> expected_dimension(const Signature& s) {
  const int p = s.p, q = s.q;
  if (q == 0) {
    if (p == 3) return 3;
    if (p == 4) return 2;
    if (p >= 5 && p <= 8) return 1;
    return std::nullopt;
  }
  if (p == 1 && q == 1) return 2;
  if (p == 1 && q == 2) return 3;
  if (p == 1 && q == 3) return 2;
  if (p == 2 && q == 2) return 2;
  if ((p == 2 && q == 3) || (p == 3 && q == 3) || (p == 1 && q == 4)) return 1;
  return std::nullopt;
}

namespace {

struct Term {
  double c;
  int vec;
  Mat m;
};

TensorVector assemble(int n, const std::vector<Term>& terms) {
  TensorVector v(n, FMat<double>(n, false));
  for (const auto& t : terms) v[t.vec].axpy(t.c, from_eigen(t.m));
  return v;
}

}  // namespace

std::vector<TensorVector> closed_form_basis(const Signature& s) {
  const int n = s.n(), p = s.p, q = s.q;
  auto A = [n](int i, int j) { return e_anti(n, i - 1, j - 1); };
  auto S = [n](int i, int j) { return e_sym(n, i - 1, j - 1); };
  std::vector<TensorVector> out;
  if (q == 0) {
    require(n >= 3, "closed_form_basis: no enumerated case below n = 3");
    if (n == 3) {
      out.push_back(assemble(n, {{1, 1, A(2, 1)}, {1, 2, A(3, 1)}}));
      out.push_back(assemble(n, {{1, 1, A(3, 1)}, {-1, 2, A(2, 1)}}));
      out.push_back(assemble(n, {{1, 0, A(2, 3)}}));
      return out;
    }
    std::vector<Term> x;
    for (int k = 1; k <= n; ++k)
      if (k != 1) x.push_back({1, k - 1, A(k, 1)});
    out.push_back(assemble(n, x));
    if (n == 4) out.push_back(assemble(n, {{1, 1, A(3, 4)}, {-1, 2, A(2, 4)}, {1, 3, A(2, 3)}}));
    return out;
  }
  require(p >= 1, "closed_form_basis: need at least one time-like direction");
  if (p == 1 && q == 1) {
    out.push_back(assemble(n, {{1, 0, S(1, 2)}}));
    out.push_back(assemble(n, {{1, 1, S(1, 2)}}));
  } else if (p == 1 && q == 2) {
    out.push_back(assemble(n, {{1, 1, S(2, 1)}, {1, 2, S(3, 1)}}));
    out.push_back(assemble(n, {{1, 1, S(3, 1)}, {-1, 2, S(2, 1)}}));
    out.push_back(assemble(n, {{1, 0, A(2, 3)}}));
  } else if (p == 1 && q == 3) {
    out.push_back(assemble(n, {{1, 1, S(2, 1)}, {1, 2, S(3, 1)}, {1, 3, S(4, 1)}}));
    out.push_back(assemble(n, {{1, 1, A(3, 4)}, {-1, 2, A(2, 4)}, {1, 3, A(2, 3)}}));
  } else if (p == 2 && q == 2) {
    out.push_back(assemble(n, {{1, 2, S(3, 1)}, {1, 3, S(4, 1)}, {1, 1, A(2, 1)}}));
    out.push_back(assemble(n, {{-1, 3, S(3, 2)}, {1, 1, A(3, 4)}, {1, 2, S(4, 2)}}));
  } else {
    std::vector<Term> x;
    for (int i = 2; i <= p; ++i) x.push_back({1, i - 1, A(i, 1)});
    for (int j = p + 1; j <= n; ++j) x.push_back({1, j - 1, S(j, 1)});
    out.push_back(assemble(n, x));
  }
  return out;
}

std::vector<TensorVector> closed_form_su_basis(int n) {
  require(n >= 4, "closed_form_su_basis: enumerated only for n >= 4");
  Mat id = Mat::Identity(n, n);
  std::vector<TensorVector> out;
  out.push_back(assemble(n, {{1, 0, Mat(e_diag(n, 0, 0) - id / n)}}));
  std::vector<Term> t;
  for (int i = 0; i < n; ++i) t.push_back({1, i, e_sym(n, i, 0)});
  t.push_back({-2.0 / n, 0, id});
  out.push_back(assemble(n, t));
  return out;
}

Mat coordinates_of(const std::vector<TensorVector>& vs, const OrderedBasis& algebra) {
  if (vs.empty()) return Mat(0, 0);
  Vec first = tensor_coordinates(vs[0], algebra);
  Mat m(first.size(), vs.size());
  m.col(0) = first;
  for (size_t k = 1; k < vs.size(); ++k) m.col(k) = tensor_coordinates(vs[k], algebra);
  return m;
}

std::vector<double> principal_sines(const Mat& a, const Mat& b) {
  auto orth = [](const Mat& m) {
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
    int rank = 0;
    const Vec& sv = svd.singularValues();
    while (rank < sv.size() && sv(rank) > 1e-12 * sv(0)) ++rank;
    return Mat(svd.matrixU().leftCols(rank));
  };
  Mat qa = orth(a), qb = orth(b);
  if (qa.cols() != qb.cols()) return std::vector<double>(std::max(qa.cols(), qb.cols()), 1.0);
  if (qa.cols() == 0) return {};
  Mat resid = qb - qa * (qa.transpose() * qb);
  Eigen::JacobiSVD<Mat> svd(resid);
  std::vector<double> out;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) out.push_back(svd.singularValues()(k));
  return out;
}

}  // namespace eqym
