#include <doctest.h>

#include <random>

#include "ansatz.hpp"
#include "equivariance.hpp"
#include "oracles.hpp"
#include "suites.hpp"

using namespace eqym;

namespace {
double tv_dist(const TensorVector& v, const std::vector<Mat>& expect) {
  double d = 0;
  for (size_t mu = 0; mu < v.size(); ++mu) d = std::max(d, (to_eigen(v[mu]) - expect[mu].cast<cplx>()).cwiseAbs().maxCoeff());
  return d;
}
}  // namespace

TEST_CASE("dimension table") {
  const std::pair<int, int> so[] = {{3, 3}, {4, 2}, {5, 1}, {6, 1}, {7, 1}, {8, 1}};
  for (auto [n, d] : so) {
    auto r = fixed_space({n, 0});
    CHECK(r.dimension == d);
    CHECK(r.gap_ratio >= 1e3);
    CHECK(r.max_residual < 1e-10);
  }
  struct Row {
    int p, q, d;
  };
  for (Row c : {Row{1, 1, 2}, Row{1, 2, 3}, Row{1, 3, 2}, Row{2, 2, 2}, Row{2, 3, 1}, Row{3, 3, 1}, Row{1, 4, 1}}) {
    auto r = fixed_space({c.p, c.q});
    CHECK(r.dimension == c.d);
    CHECK(r.gap_ratio >= 1e3);
    CHECK(expected_dimension({c.p, c.q}) == c.d);
  }
  auto r = fixed_space({4, 0}, RepKind::vector_adjoint, Stabilizer::identity);
  CHECK(r.dimension == 4 * 6);
}

TEST_CASE("fixed-space basis is orthonormal") {
  auto r = fixed_space({3, 0});
  CHECK((r.coords.transpose() * r.coords - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("closed-form bases: printed vectors") {
  auto b5 = closed_form_basis({5, 0});
  REQUIRE(b5.size() == 1);
  std::vector<Mat> e5(5, Mat::Zero(5, 5));
  for (int k = 1; k < 5; ++k) e5[k] = oracle::anti(5, k, 0);
  CHECK(tv_dist(b5[0], e5) == 0);

  auto b4 = closed_form_basis({4, 0});
  REQUIRE(b4.size() == 2);
  std::vector<Mat> e4(4, Mat::Zero(4, 4));
  e4[1] = oracle::anti(4, 2, 3);
  e4[2] = -oracle::anti(4, 1, 3);
  e4[3] = oracle::anti(4, 1, 2);
  CHECK(tv_dist(b4[1], e4) == 0);

  auto b12 = closed_form_basis({1, 2});
  REQUIRE(b12.size() == 3);
  std::vector<Mat> e12(3, Mat::Zero(3, 3));
  e12[0] = oracle::anti(3, 1, 2);
  bool found = false;
  for (const auto& v : b12) found = found || tv_dist(v, e12) == 0;
  CHECK(found);
}

TEST_CASE("closed-form bases span the numerical fixed spaces") {
  for (auto s : std::vector<Signature>{{3, 0}, {4, 0}, {5, 0}, {6, 0}, {7, 0}, {8, 0}, {1, 1}, {1, 2}, {1, 3}, {2, 2},
                                       {2, 3}, {3, 3}, {1, 4}}) {
    auto r = fixed_space(s);
    auto alg = rep_algebra(s, RepKind::vector_adjoint);
    Mat cf = coordinates_of(closed_form_basis(s), alg);
    REQUIRE(cf.cols() == r.coords.cols());
    for (double v : principal_sines(r.coords, cf)) CHECK(v < 1e-7);
    // fixed by random stabilizer elements, not just the generators
    std::mt19937_64 rng(11);
    for (int k = 0; k < 50; ++k) {
      Mat rho = rep_matrix(random_stabilizer_element(s, rng), alg, RepKind::vector_adjoint);
      CHECK(((rho - Mat::Identity(rho.rows(), rho.cols())) * cf).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("SU(n) traceless-symmetric fixed space is two-dimensional") {
  for (int n : {4, 5, 6}) {
    auto r = fixed_space({n, 0}, RepKind::vector_traceless);
    CHECK(r.dimension == 2);
    Mat cf = coordinates_of(closed_form_su_basis(n), rep_algebra({n, 0}, RepKind::vector_traceless));
    for (double v : principal_sines(r.coords, cf)) CHECK(v < 1e-7);
  }
}

TEST_CASE("pure-Ad fixed space") {
  for (int n = 4; n <= 8; ++n) CHECK(fixed_space({n, 0}, RepKind::adjoint_only).dimension == 0);
  // n = 3 has the invariant X(x) = hat(x): Ad(R) hat(x) = hat(R x) for every rotation
  CHECK(fixed_space({3, 0}, RepKind::adjoint_only).dimension == 1);
  auto hat = [](const Vec& x) {
    Mat m = Mat::Zero(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) m(i, j) += oracle::perm_sign({i, j, k}) * x(k);
    return m;
  };
  std::mt19937_64 rng(12);
  std::normal_distribution<double> nd;
  for (int k = 0; k < 10; ++k) {
    Mat R = random_group_element({3, 0}, rng).m;
    Vec x(3);
    x << nd(rng), nd(rng), nd(rng);
    CHECK((R * hat(x) * R.transpose() - hat(R * x)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("ansatz evaluation examples") {
  auto zero = make_ansatz(AnsatzCase::son, {5, 0}, {constant_profile(0)});
  std::vector<double> y{0.3, -0.4, 0.5, 0.1, 0.2};
  for (const auto& b : ansatz_eval<double>(zero, y)) CHECK(to_eigen(b).cwiseAbs().maxCoeff() == 0);

  auto one = make_ansatz(AnsatzCase::son, {5, 0}, {constant_profile(1)});
  auto B = ansatz_eval<double>(one, {1, 0, 0, 0, 0});
  CHECK(to_eigen(B[0]).cwiseAbs().maxCoeff() == 0);
  for (int mu = 1; mu < 5; ++mu) CHECK((to_eigen(B[mu]).real() - oracle::anti(5, 0, mu)).cwiseAbs().maxCoeff() == 0);

  auto so3 = make_ansatz(AnsatzCase::so3, {3, 0}, {constant_profile(1), constant_profile(0), constant_profile(0)});
  auto C = ansatz_eval<double>(so3, {0.4, -1.1, 0.6});
  for (int mu = 0; mu < 3; ++mu)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(to_eigen(C[mu])(i, j).real() == oracle::perm_sign({i, j, mu}));

  CHECK_THROWS_AS(make_ansatz(AnsatzCase::sun, {3, 0}, {constant_profile(0), constant_profile(0), constant_profile(0)}),
                  ValidationError);
}

TEST_CASE("equivariance residual") {
  std::mt19937_64 rng(13);
  auto a = random_ansatz(AnsatzCase::son, {5, 0}, rng);
  auto y = random_point(a, rng);
  CHECK(equivariance_residual(a, identity_element({5, 0}), y) < 1e-15);
  for (int k = 0; k < 20; ++k) {
    auto x = random_point(a, rng);
    CHECK(equivariance_residual(a, random_group_element({5, 0}, rng), x) < 1e-10);
  }
  a.corrupt = 0.1;
  CHECK(equivariance_residual(a, random_group_element({5, 0}, rng), y) > 1e-3);

  // isotropic SO(n): time component is identically zero
  auto iso = random_ansatz(AnsatzCase::iso_son, {5, 0}, rng);
  auto B = ansatz_eval<double>(iso, random_point(iso, rng));
  CHECK(to_eigen(B[0]).cwiseAbs().maxCoeff() == 0);
}

TEST_CASE("equivariance suites for every case") {
  struct C {
    AnsatzCase k;
    Signature s;
  };
  for (C c : {C{AnsatzCase::so3, {3, 0}}, C{AnsatzCase::so4, {4, 0}}, C{AnsatzCase::son, {6, 0}},
              C{AnsatzCase::sopq3, {1, 2}}, C{AnsatzCase::sopq3, {2, 1}}, C{AnsatzCase::sopq4, {2, 2}},
              C{AnsatzCase::sopqn, {2, 3}}, C{AnsatzCase::sun, {5, 0}}, C{AnsatzCase::sun_h, {4, 0}},
              C{AnsatzCase::iso_son, {5, 0}}}) {
    CAPTURE(to_string(c.k));
    CHECK(equivariance_suite(c.k, c.s, 20, 3).passed());
    CHECK(equivariance_suite(c.k, c.s, 10, 4, 0.1).passed());
  }
}
