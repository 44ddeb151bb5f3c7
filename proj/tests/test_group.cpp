#include <doctest.h>

#include <cmath>
#include <random>
#include <unsupported/Eigen/KroneckerProduct>

#include "equivariance.hpp"
#include "group.hpp"
#include "oracles.hpp"

using namespace eqym;

namespace {
double dist(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

std::vector<cplx> eigs(const Mat& m) {
  Eigen::EigenSolver<Mat> es(m);
  std::vector<cplx> v;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) v.push_back(es.eigenvalues()(i));
  return v;
}
}  // namespace

TEST_CASE("standard elements") {
  CHECK(dist(standard_element(ElementKind::rotation, 1, 2, 0.0, {3, 0}).m, Mat::Identity(3, 3)) == 0);
  const double h = 0.7;
  Mat k(2, 2);
  k << std::cosh(h), std::sinh(h), std::sinh(h), std::cosh(h);
  CHECK(dist(standard_element(ElementKind::boost, 0, 1, h, {1, 1}).m, k) < 1e-15);
  Mat r(2, 2);
  r << 0, -1, 1, 0;
  CHECK(dist(standard_element(ElementKind::rotation, 0, 1, M_PI / 2, {2, 0}).m, r) < 1e-15);
  CHECK_THROWS_AS(standard_element(ElementKind::rotation, 0, 1, 0.3, {1, 1}), ValidationError);
  CHECK_THROWS_AS(standard_element(ElementKind::boost, 1, 2, 0.3, {1, 2}), ValidationError);
  auto g = standard_element(ElementKind::boost, 0, 2, 0.4, {2, 1});
  CHECK(group_defect(g) < 1e-12);
}

TEST_CASE("adjoint operator") {
  auto so3 = build_basis(BasisKind::so, 3);
  CHECK(dist(adjoint_op(identity_element({3, 0}), so3), Mat::Identity(3, 3)) < 1e-15);
  const double th = 0.9;
  Mat ad = adjoint_op(standard_element(ElementKind::rotation, 1, 2, th, {3, 0}), so3);
  // fixes e^A_{23}, rotates the (e^A_{12}, e^A_{13}) plane by theta
  CHECK(std::abs(ad(2, 2) - 1) < 1e-15);
  CHECK(std::abs(ad(0, 2)) + std::abs(ad(1, 2)) + std::abs(ad(2, 0)) + std::abs(ad(2, 1)) < 1e-15);
  Mat blk = ad.topLeftCorner(2, 2);
  CHECK(dist(blk.transpose() * blk, Mat::Identity(2, 2)) < 1e-14);
  CHECK(std::abs(blk.determinant() - 1) < 1e-14);
  CHECK(std::abs(blk.trace() - 2 * std::cos(th)) < 1e-14);

  std::mt19937_64 rng(5);
  for (auto s : std::vector<Signature>{{4, 0}, {2, 2}, {1, 3}}) {
    auto b = build_basis(BasisKind::so_pq, s.n(), s.p, s.q);
    auto g1 = random_group_element(s, rng), g2 = random_group_element(s, rng);
    CHECK(dist(adjoint_op(g1 * g2, b), adjoint_op(g1, b) * adjoint_op(g2, b)) < 1e-10);
  }
}

TEST_CASE("rho operator") {
  auto so3 = build_basis(BasisKind::so, 3);
  CHECK(dist(rho_op(identity_element({3, 0}), so3), Mat::Identity(9, 9)) < 1e-15);

  const double th = 1.0;
  auto sp = eigs(rho_op(standard_element(ElementKind::rotation, 1, 2, th, {3, 0}), so3));
  const cplx e1 = std::polar(1.0, th), e2 = std::polar(1.0, 2 * th);
  std::vector<cplx> expect{1.0, 1.0, 1.0, e1, e1, std::conj(e1), std::conj(e1), e2, std::conj(e2)};
  CHECK(oracle::multiset_distance(sp, expect) < 1e-10);

  // spectrum = products lambda_mu lambda_i lambda_j (i<j) of the element's eigenvalues
  const double params[] = {1.0, std::sqrt(2.0), 0.618033988749895 * M_PI};
  for (auto s : std::vector<Signature>{{4, 0}, {1, 3}, {2, 2}}) {
    auto b = build_basis(BasisKind::so_pq, s.n(), s.p, s.q);
    for (int i = 0; i < s.n(); ++i)
      for (int j = i + 1; j < s.n(); ++j)
        for (double t : params) {
          auto kind = s.eps(i) == s.eps(j) ? ElementKind::rotation : ElementKind::boost;
          auto g = standard_element(kind, i, j, t, s);
          auto lam = eigs(g.m);
          std::vector<cplx> prod;
          for (int mu = 0; mu < s.n(); ++mu)
            for (int a = 0; a < s.n(); ++a)
              for (int c = a + 1; c < s.n(); ++c) prod.push_back(lam[mu] * lam[a] * lam[c]);
          CHECK(oracle::multiset_distance(eigs(rho_op(g, b)), prod) < 1e-8);
        }
  }

  std::mt19937_64 rng(6);
  std::normal_distribution<double> nd;
  for (auto s : std::vector<Signature>{{3, 0}, {5, 0}, {2, 2}, {1, 3}}) {
    auto b = build_basis(BasisKind::so_pq, s.n(), s.p, s.q);
    auto g1 = random_group_element(s, rng), g2 = random_group_element(s, rng);
    Mat r12 = rho_op(g1 * g2, b);
    CHECK(dist(r12, rho_op(g1, b) * rho_op(g2, b)) < 1e-10 * std::max(1.0, r12.cwiseAbs().maxCoeff()));
    // Kronecker path = componentwise definition
    Vec v(s.n() * b.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = nd(rng);
    TensorVector c = tensor_from_coordinates(v, b);
    Vec direct = tensor_coordinates(rho_apply(g1, c), b);
    CHECK((rho_op(g1, b) * v - direct).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, direct.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("frame matrix") {
  Vec x = Vec::Zero(4);
  x(0) = 2.5;
  CHECK(dist(frame_matrix(x, {4, 0}).m, Mat::Identity(4, 4)) < 1e-15);

  const double a = 0.8;
  Vec y(2);
  y << std::cosh(a), std::sinh(a);
  CHECK(dist(frame_matrix(y, {1, 1}).m, standard_element(ElementKind::boost, 0, 1, a, {1, 1}).m) < 1e-12);

  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  for (int k = 0; k < 50; ++k) {
    Vec v(5);
    for (int i = 0; i < 5; ++i) v(i) = nd(rng);
    auto g = frame_matrix(v, {5, 0});
    CHECK(dist(g.m.transpose() * g.m, Mat::Identity(5, 5)) < 1e-12);
    CHECK(std::abs(g.m.determinant() - 1) < 1e-12);
    CHECK((g.m.col(0) * v.norm() - v).cwiseAbs().maxCoeff() < 1e-12);
  }
  for (auto s : std::vector<Signature>{{1, 3}, {2, 2}, {2, 3}}) {
    for (int k = 0; k < 20; ++k) {
      Vec v = random_group_element(s, rng).m.col(0) * (0.5 + std::abs(nd(rng)));
      auto g = frame_matrix(v, s);
      CHECK(group_defect(g) < 1e-10);
      const double r = std::sqrt(v.dot(s.diag() * v));
      CHECK((g.m.col(0) * r - v).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
  Vec space = Vec::Zero(2);
  space(1) = 1;
  CHECK_THROWS_AS(frame_matrix(space, {1, 1}), ValidationError);
  CHECK_THROWS_AS(frame_matrix(Vec::Zero(3), {3, 0}), ValidationError);
}

TEST_CASE("spin double-cover differential") {
  Signature s{3, 0};
  Vec c = Vec::Zero(3);
  c(0) = 1;
  CHECK(dist(spin_lambda_d(c, s).real(), 2 * oracle::anti(3, 0, 1)) == 0);
  CHECK(spin_lambda_d(Vec::Zero(3), s).cwiseAbs().maxCoeff() == 0);

  std::mt19937_64 rng(8);
  std::normal_distribution<double> nd;
  for (int k = 0; k < 20; ++k) {
    Mat m = Mat::Zero(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) m += nd(rng) * oracle::anti(3, i, j);
    Vec co = spin_lambda_inv(m.cast<cplx>(), s);
    CHECK(dist(spin_lambda_d(co, s).real(), m) < 1e-13);
  }
  for (auto t : std::vector<Signature>{{3, 0}, {1, 2}, {2, 2}, {1, 3}}) {
    const int d = t.n() * (t.n() - 1) / 2;
    Vec co(d);
    for (int i = 0; i < d; ++i) co(i) = nd(rng);
    CMat m = spin_lambda_d(co, t);
    CHECK(so_pq_relation(m, t) < 1e-14);
    CHECK((spin_lambda_inv(m, t) - co).cwiseAbs().maxCoeff() < 1e-13);
    // the printed contraction is the negative of the inverse
    CHECK((spin_lambda_inv_printed(m, t) + co).cwiseAbs().maxCoeff() < 1e-13);
  }
  CHECK_THROWS_AS(spin_lambda_inv(oracle::sym(3, 0, 1).cast<cplx>(), s), ValidationError);
}

TEST_CASE("killing residual") {
  const int n = 4;
  Mat I = Mat::Identity(n, n), Z = Mat::Zero(n, n);
  Vec x(n);
  x << 0.3, -1.2, 0.7, 2.0;
  Mat A = oracle::anti(n, 0, 1);
  CHECK(killing_residual(A * x, A, I, Z) < 1e-15);
  CHECK(std::abs(killing_residual(x, I, I, Z) - 2 * std::sqrt(double(n))) < 1e-14);
  CHECK(killing_residual(Vec::Zero(n), Z, I, Z) == 0);
  CHECK_THROWS_AS(killing_residual(x, Mat::Zero(3, 3), I, Z), ValidationError);
}
