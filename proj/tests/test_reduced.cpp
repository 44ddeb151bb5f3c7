#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "reduced.hpp"
#include "solvers.hpp"
#include "suites.hpp"

using namespace eqym;

TEST_CASE("SO(n) radial right-hand side") {
  CHECK(son_rhs(5, 1.0, 1.0, 0.0) == doctest::Approx(-6).epsilon(1e-15));
  CHECK(son_rhs(5, 0.7, 0.0, 0.0) == 0);
  CHECK_THROWS_AS(son_rhs(5, 0.0, 1.0, 0.0), ValidationError);
  // independent transcription of the ODE
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 20; ++k) {
    const int n = 5 + k % 4;
    const double r = 0.2 + std::abs(u(rng)), g = u(rng), gp = u(rng);
    const double expect = -((n + 1) * gp / r + (n - 2) * g * g * (3 - r * r * g));
    CHECK(son_rhs(n, r, g, gp) == doctest::Approx(expect).epsilon(1e-13));
  }
}

TEST_CASE("dimension-four system falls back to SO(4) with f = 0") {
  auto d = dim4_rhs(4, 1.0, 0.0, 0.0, 1.0, 0.0);
  CHECK(d[0] == 0);
  CHECK(d[1] == doctest::Approx(-4).epsilon(1e-15));
  CHECK(d[1] == doctest::Approx(son_rhs(4, 1.0, 1.0, 0.0)).epsilon(1e-15));
  for (int p : {0, 2, 4}) {
    auto z = dim4_rhs(p, 0.8, 0, 0, 0, 0);
    CHECK(z[0] == 0);
    CHECK(z[1] == 0);
  }
}

TEST_CASE("h+- transform commutes with the right-hand side") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int p : {0, 1, 2, 3, 4}) {
    CAPTURE(p);
    auto z = hpm_transform(p, 0, 0);
    CHECK(z[0] == 0);
    CHECK(z[1] == 0);
    for (int k = 0; k < 10; ++k) {
      const double f = u(rng), fp = u(rng), g = u(rng), gp = u(rng), r = 1.0;
      auto h = hpm_transform(p, f, g), hp = hpm_transform(p, fp, gp);
      auto fg = dim4_rhs(p, r, f, fp, g, gp);
      auto expect = hpm_transform(p, fg[0], fg[1]);
      auto got = hpm_rhs(p, r, h[0], hp[0], h[1], hp[1]);
      CHECK(std::abs(got[0] - expect[0]) < 1e-10);
      CHECK(std::abs(got[1] - expect[1]) < 1e-10);
      auto back = hpm_inverse(p, h[0], h[1]);
      CHECK(std::abs(back[0] - f) < 1e-14);
      CHECK(std::abs(back[1] - g) < 1e-14);
    }
  }
  // p = 1: the imaginary part stays zero when it starts at zero
  CHECK(hpm_rhs(1, 0.9, 0.4, -0.3, 0.0, 0.0)[1] == 0);
}

TEST_CASE("reduced equations equal the projected full residual") {
  struct C {
    AnsatzCase k;
    Signature s;
    bool flat;
  };
  for (C c : {C{AnsatzCase::son, {5, 0}, true}, C{AnsatzCase::son, {6, 0}, true}, C{AnsatzCase::so4, {4, 0}, true},
              C{AnsatzCase::sopq4, {1, 3}, true}, C{AnsatzCase::sopq4, {2, 2}, true},
              C{AnsatzCase::iso_son, {5, 0}, false}, C{AnsatzCase::sun_h, {4, 0}, false},
              C{AnsatzCase::sun_h, {5, 0}, true}}) {
    CAPTURE(to_string(c.k));
    auto rep = projection_suite(c.k, c.s, 10, 33, c.flat);
    CHECK(rep.passed());
    CHECK(rep.max_residual() < 1e-8);
  }
}

namespace {
// h1 + i h2 = e^{i theta} (a cos(b r + c t) + 1.3) e^{i d r}, smooth and nonvanishing
struct ComplexWave {
  double theta, a, b, c, d;
  Jet mod(double t, double r) const {
    const double s = std::sin(b * r + c * t), co = std::cos(b * r + c * t);
    return {a * co + 1.3, -a * c * s, -a * b * s, -a * c * c * co, -a * b * c * co, -a * b * b * co};
  }
  // Real and imaginary part of m e^{i(d r + theta)}
  Jet part(double t, double r, bool im) const {
    Jet m = mod(t, r);
    const double ph = d * r + theta, cs = im ? std::sin(ph) : std::cos(ph), sn = im ? -std::cos(ph) : std::sin(ph);
    // d/dr of cs is -d sn
    Jet j;
    j.v = m.v * cs;
    j.t = m.t * cs;
    j.r = m.r * cs - d * m.v * sn;
    j.tt = m.tt * cs;
    j.tr = m.tr * cs - d * m.t * sn;
    j.rr = m.rr * cs - 2 * d * m.r * sn - d * d * m.v * cs;
    return j;
  }
};
}  // namespace

TEST_CASE("complex wave form matches the real pair; O(2) invariance") {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  auto m = random_metric(make_ansatz(AnsatzCase::sun_h, {4, 0}, random_profiles(AnsatzCase::sun_h, rng)), rng, false);
  for (int k = 0; k < 10; ++k) {
    ComplexWave w{u(rng), u(rng), 1 + u(rng), u(rng), u(rng)};
    const double r = 0.7 + u(rng), t = u(rng);
    Jet a = w.part(t, r, false), b = w.part(t, r, true);
    Jet c{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
    for (int n : {4, 5}) {
      auto e = sun_equations(n, m, r, a, b, c);
      CHECK(std::abs(sun_complex_wave(n, m, r, a, b, c) - cplx(e.h1, e.h2)) < 1e-10 * (1 + std::abs(e.h1) + std::abs(e.h2)));
      // rotation by theta and the swap (h1, h2, h3) -> (h2, h1, -h3)
      const double th = std::sqrt(2.0), cs = std::cos(th), sn = std::sin(th);
      auto rot = [&](const Jet& x, const Jet& y, double s1, double s2) {
        return Jet{s1 * x.v + s2 * y.v, s1 * x.t + s2 * y.t, s1 * x.r + s2 * y.r,
                   s1 * x.tt + s2 * y.tt, s1 * x.tr + s2 * y.tr, s1 * x.rr + s2 * y.rr};
      };
      auto er = sun_equations(n, m, r, rot(a, b, cs, -sn), rot(a, b, sn, cs), c);
      CHECK(std::abs(er.time - e.time) < 1e-10 * (1 + std::abs(e.time)));
      CHECK(std::abs(er.h3 - e.h3) < 1e-10 * (1 + std::abs(e.h3)));
      CHECK(std::hypot(er.h1, er.h2) == doctest::Approx(std::hypot(e.h1, e.h2)).epsilon(1e-10));
      Jet nc{-c.v, -c.t, -c.r, -c.tt, -c.tr, -c.rr};
      auto es = sun_equations(n, m, r, b, a, nc);
      CHECK(std::abs(std::abs(es.time) - std::abs(e.time)) < 1e-10 * (1 + std::abs(e.time)));
      CHECK(std::abs(std::abs(es.h3) - std::abs(e.h3)) < 1e-10 * (1 + std::abs(e.h3)));
      CHECK(std::hypot(es.h1, es.h2) == doctest::Approx(std::hypot(e.h1, e.h2)).epsilon(1e-10));
    }
  }
}

TEST_CASE("exact constant and static solutions") {
  const std::vector<double> radii{0.3, 0.9, 1.7, 2.5, 4.0};
  auto m = flat_isotropic(5);
  auto zero = constant_profile(0);
  auto rep = constraint_residuals(5, zero, zero, constant_profile(0.8), m, radii, 0.0);
  for (const auto& [k, v] : rep.residuals) {
    CAPTURE(k);
    CHECK(v == 0);
  }
  CHECK(!rep.not_applicable.empty());  // |h| = 0 masks the phase-based residuals

  rep = constraint_residuals(5, constant_profile(1), zero, zero, m, radii, 0.0);
  for (const auto& [k, v] : rep.residuals) {
    CAPTURE(k);
    CHECK(v == 0);
  }
  CHECK(rep.not_applicable.empty());

  // phi = arctan r on the unit circle with h3 = -r phi'
  Profile h1 = [](double, double r) {
    const double s = 1 + r * r;
    return Jet{1 / std::sqrt(s), 0, -r * std::pow(s, -1.5), 0, 0, (2 * r * r - 1) * std::pow(s, -2.5)};
  };
  Profile h2 = [](double, double r) {
    const double s = 1 + r * r;
    return Jet{r / std::sqrt(s), 0, std::pow(s, -1.5), 0, 0, -3 * r * std::pow(s, -2.5)};
  };
  Profile h3 = [](double, double r) {
    const double s = 1 + r * r;
    return Jet{-r / s, 0, (r * r - 1) / (s * s), 0, 0, (6 * r - 2 * r * r * r) / (s * s * s)};
  };
  rep = constraint_residuals(5, h1, h2, h3, m, radii, 0.0);
  CHECK(rep.residuals["static"] < 1e-14);
  CHECK(rep.residuals["complexh3wave"] < 1e-13);
  CHECK(rep.residuals["timeq"] == 0);
}

TEST_CASE("energy") {
  auto m = flat_isotropic(5);
  CHECK(energy_of_profile(5, constant_profile(1), m, 0.1, 10, 0).E == 0);
  // |h| = 0: integrand (n-2)/(2 r^2) r^{n-3} = 3/2, closed form 1.5 * 9.9
  CHECK(energy_of_profile(5, constant_profile(0), m, 0.1, 10, 0).E == doctest::Approx(14.85).epsilon(1e-12));

  Profile bump = gauss_profile(0.4, 3.0, 0.6, 1.0);
  for (int n : {4, 5}) {
    auto mm = flat_isotropic(n);
    const double E = energy_of_profile(n, bump, mm, 0.1, 10, 0).E;
    CHECK(E > 0);
    CHECK(energy_of_profile(n, scale_profile(bump, 1.0), mm, 0.1, 10, 0).E == doctest::Approx(E).epsilon(1e-12));
    for (double lam : {0.5, 2.0}) {
      const double El = energy_of_profile(n, scale_profile(bump, lam), scale_metric(mm, lam), 0.1 * lam, 10 * lam, 0).E;
      CHECK(El == doctest::Approx(std::pow(lam, n - 4) * E).epsilon(1e-6));
    }
  }
  CHECK_THROWS_AS(scale_profile(bump, 0.0), ValidationError);
}

TEST_CASE("Frobenius start") {
  RadialSpec s;
  s.n = 5;
  auto z = series_start(s, {0.0}, 0.01);
  CHECK(z.state == std::vector<double>{0.0, 0.0});
  auto st = series_start(s, {1.0}, 0.01);
  CHECK(st.state[0] == doctest::Approx(1 - 9.0 / 14 * 1e-4).epsilon(1e-15));
  CHECK(st.state[1] == doctest::Approx(-9.0 / 7 * 0.01).epsilon(1e-14));
  // truncation error of the quadratic start is fourth order in r0
  auto err = [&](double r0) { return std::abs(series_start(s, {1.0}, r0, 2).state[0] - series_start(s, {1.0}, r0, 4).state[0]); };
  CHECK(err(0.02) / err(0.01) == doctest::Approx(16).epsilon(0.02));
}
