#include <doctest.h>

#include <random>

#include "geometry.hpp"
#include "oracles.hpp"
#include "suites.hpp"

using namespace eqym;

namespace {
double curv_diff(const Curv<double>& a, const Curv<double>& b) {
  double d = 0;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) d = std::max(d, max_abs(a[i][j] - b[i][j]));
  return d;
}
}  // namespace

TEST_CASE("finite-difference curvature of trivial fields") {
  FieldFn zero = [](const std::vector<double>&) { return TensorVector(3, FMat<double>(3, false)); };
  auto F = curvature_fd(zero, {0.1, 0.2, 0.3}, 1e-5);
  for (const auto& row : F)
    for (const auto& f : row) CHECK(max_abs(f) == 0);

  std::vector<Mat> Bc{oracle::anti(3, 0, 1), oracle::anti(3, 1, 2), 0.5 * oracle::anti(3, 0, 2)};
  FieldFn cst = [&](const std::vector<double>&) {
    TensorVector t;
    for (const auto& m : Bc) t.push_back(from_eigen(m));
    return t;
  };
  F = curvature_fd(cst, {0.1, 0.2, 0.3}, 1e-5);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      CHECK((to_eigen(F[a][b]).real() - (Bc[a] * Bc[b] - Bc[b] * Bc[a])).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("closed-form SO(n) curvature with constant profile") {
  const double c = 0.7;
  auto a = make_ansatz(AnsatzCase::son, {5, 0}, {constant_profile(c)});
  Vec x(5);
  x << 0.3, -0.5, 0.8, 0.1, -0.2;
  std::vector<double> y(x.data(), x.data() + 5);
  auto F = curvature_closed(a, y);
  const double r2 = x.squaredNorm();
  for (int al = 0; al < 5; ++al)
    for (int be = 0; be < 5; ++be) {
      Mat expect = c * c * (x(al) * oracle::X(x, be) - x(be) * oracle::X(x, al));
      if (al != be) expect += c * (2 - r2 * c) * oracle::anti(5, al, be);
      CHECK((to_eigen(F[al][be]).real() - expect).cwiseAbs().maxCoeff() < 1e-14);
    }
  auto z = make_ansatz(AnsatzCase::son, {5, 0}, {constant_profile(0)});
  CHECK(curv_diff(curvature_closed(z, y), curvature_closed(z, y)) == 0);
  for (const auto& row : curvature_closed(z, y))
    for (const auto& f : row) CHECK(max_abs(f) == 0);
}

TEST_CASE("finite differences converge to the closed form at second order") {
  std::mt19937_64 rng(21);
  auto a = random_ansatz(AnsatzCase::son, {5, 0}, rng);
  auto y = random_point(a, rng);
  auto F = curvature_closed(a, y);
  const double e1 = curv_diff(F, curvature_fd(ansatz_field(a), y, 1e-2));
  const double e2 = curv_diff(F, curvature_fd(ansatz_field(a), y, 5e-3));
  CHECK(e1 / e2 == doctest::Approx(4).epsilon(0.05));
}

TEST_CASE("SU(n) curvature with constant h1 = h2 and h3 = 0 has no time components") {
  auto a = make_ansatz(AnsatzCase::sun_h, {4, 0}, {constant_profile(0.4), constant_profile(0.4), constant_profile(0)});
  auto F = curvature_closed(a, {0.3, 0.5, -0.2, 0.7, 0.1});
  for (int i = 1; i < 5; ++i) CHECK(max_abs(F[0][i]) < 1e-15);
  auto Ff = curvature_fd(ansatz_field(a), {0.3, 0.5, -0.2, 0.7, 0.1}, 1e-5);
  CHECK(curv_diff(F, Ff) < 1e-9);
}

TEST_CASE("curvature suites for every case") {
  struct C {
    AnsatzCase k;
    Signature s;
  };
  for (C c : {C{AnsatzCase::so3, {3, 0}}, C{AnsatzCase::so4, {4, 0}}, C{AnsatzCase::son, {5, 0}},
              C{AnsatzCase::sopq3, {1, 2}}, C{AnsatzCase::sopq4, {1, 3}}, C{AnsatzCase::sopqn, {1, 4}},
              C{AnsatzCase::sun, {4, 0}}, C{AnsatzCase::sun_h, {5, 0}}, C{AnsatzCase::iso_son, {5, 0}}}) {
    CAPTURE(to_string(c.k));
    CHECK(curvature_suite(c.k, c.s, 10, 5).passed());
  }
}

TEST_CASE("hodge star") {
  auto m = constant_metric({4, 0});
  const std::vector<double> y{0.1, 0.2, 0.3, 0.4};
  auto idx2 = form_indices(4, 2);
  std::vector<double> w(idx2.size(), 0.0);
  for (size_t k = 0; k < idx2.size(); ++k)
    if (idx2[k] == std::vector<int>{0, 1}) w[k] = 1;
  auto s = hodge_star(w, 2, m, y);
  for (size_t k = 0; k < idx2.size(); ++k) CHECK(s[k] == (idx2[k] == std::vector<int>{2, 3} ? 1.0 : 0.0));

  auto vol = hodge_star({1.0}, 0, m, y);
  REQUIRE(vol.size() == 1);
  CHECK(vol[0] == doctest::Approx(m.sqrt_det(y)));

  std::mt19937_64 rng(22);
  std::normal_distribution<double> nd;
  for (double& v : w) v = nd(rng);
  auto ss = hodge_star(hodge_star(w, 2, m, y), 2, m, y);
  for (size_t k = 0; k < w.size(); ++k) CHECK(ss[k] == doctest::Approx(w[k]).epsilon(1e-14));

  CHECK(hodge_sign_suite(5, 23).passed());
}

TEST_CASE("Yang-Mills residual examples") {
  auto m5 = constant_metric({5, 0});
  auto zero = make_ansatz(AnsatzCase::son, {5, 0}, {constant_profile(0)});
  CHECK(max_abs(ym_residual(zero, m5, {0.2, 0.1, -0.3, 0.5, 0.4})) == 0);

  auto one = make_ansatz(AnsatzCase::son, {5, 0}, {constant_profile(1)});
  Vec x(5);
  x << 0.2, -0.4, 0.5, 0.7, 0.1;
  x /= x.norm();
  std::vector<double> y(x.data(), x.data() + 5);
  auto R = ym_residual(one, m5, y);
  for (int al = 0; al < 5; ++al) CHECK((to_eigen(R[al]).real() + 6 * oracle::X(x, al)).cwiseAbs().maxCoeff() < 1e-13);

  // Hodge path and direct path agree
  auto H = hodge_ym_residual(one, m5, y);
  for (int al = 0; al < 5; ++al) CHECK(max_abs(H[al] - R[al]) < 1e-12);
  struct C {
    AnsatzCase k;
    Signature s;
  };
  for (C c : {C{AnsatzCase::so3, {3, 0}}, C{AnsatzCase::so4, {4, 0}}, C{AnsatzCase::son, {5, 0}}, C{AnsatzCase::sopq4, {2, 2}},
              C{AnsatzCase::sopq4, {1, 3}}, C{AnsatzCase::sopqn, {2, 3}}, C{AnsatzCase::sun, {4, 0}}}) {
    CAPTURE(to_string(c.k));
    CHECK(hodge_suite(c.k, c.s, 5, 24).passed());
  }
}

TEST_CASE("finite-difference fallback is step-consistent at second order") {
  std::mt19937_64 rng(25);
  auto a = random_ansatz(AnsatzCase::so3, {3, 0}, rng);
  auto m = constant_metric({3, 0});
  auto y = random_point(a, rng);
  auto r1 = ym_residual(a, m, y, 2e-2), r2 = ym_residual(a, m, y, 1e-2), r3 = ym_residual(a, m, y, 5e-3);
  double d12 = 0, d23 = 0;
  for (size_t i = 0; i < r1.size(); ++i) {
    d12 = std::max(d12, max_abs(r1[i] - r2[i]));
    d23 = std::max(d23, max_abs(r2[i] - r3[i]));
  }
  CHECK(d12 / d23 == doctest::Approx(4).epsilon(0.1));
}

TEST_CASE("isotropic SO(n) residual has zero time component") {
  std::mt19937_64 rng(26);
  auto a = random_ansatz(AnsatzCase::iso_son, {5, 0}, rng);
  auto m = random_metric(a, rng, false);
  auto y = random_point(a, rng);
  auto R = ym_residual(a, m, y);
  double scale = 0;
  for (const auto& r : R) scale = std::max(scale, max_abs(r));
  CHECK(max_abs(R[0]) < 1e-12 * std::max(1.0, scale));
}

TEST_CASE("metric validation") {
  auto a = make_ansatz(AnsatzCase::son, {5, 0}, {constant_profile(1)});
  CHECK_THROWS_AS(ym_residual(a, constant_metric({4, 0}), {1, 0, 0, 0, 0}), ValidationError);
}
