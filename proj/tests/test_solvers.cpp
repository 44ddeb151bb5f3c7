#include <doctest.h>

#include <cmath>
#include <random>

#include "solvers.hpp"
#include "suites.hpp"

using namespace eqym;

namespace {
// Fixed-step classical RK4 on the SO(n) system, written out independently.
double rk4_son(int n, double r0, double g, double gp, double r1, int steps) {
  auto f = [n](double r, double y0, double y1) {
    return std::array<double, 2>{y1, -((n + 1) * y1 / r + (n - 2) * y0 * y0 * (3 - r * r * y0))};
  };
  const double h = (r1 - r0) / steps;
  double r = r0;
  for (int i = 0; i < steps; ++i) {
    auto k1 = f(r, g, gp);
    auto k2 = f(r + h / 2, g + h / 2 * k1[0], gp + h / 2 * k1[1]);
    auto k3 = f(r + h / 2, g + h / 2 * k2[0], gp + h / 2 * k2[1]);
    auto k4 = f(r + h, g + h * k3[0], gp + h * k3[1]);
    g += h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
    gp += h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
    r += h;
  }
  return g;
}

std::vector<double> bump(const RadialGrid& g, double amp, double c, double w, double base) {
  std::vector<double> u(g.cells);
  for (int i = 0; i < g.cells; ++i) {
    const double z = (g.r(i) - c) / w;
    u[i] = base + amp * std::exp(-z * z);
  }
  return u;
}
}  // namespace

TEST_CASE("zero data stays zero") {
  RadialSpec s;
  s.n = 5;
  auto sol = integrate_radial(s, series_start(s, {0.0}, 0.01), 5, 1e-10, 1e-10);
  REQUIRE(sol.complete);
  for (double r = 0.01; r < 5; r += 0.37) CHECK(sol.jet(0, r).v == 0);
}

TEST_CASE("radial solver against an RK4 oracle and its own ODE") {
  RadialSpec s;
  s.n = 5;
  auto st = series_start(s, {1.0}, 0.01);
  auto sol = integrate_radial(s, st, 5, 1e-10, 1e-10);
  REQUIRE(sol.complete);
  for (double r1 : {1.0, 2.5, 5.0}) {
    const double ref = rk4_son(5, 0.01, st.state[0], st.state[1], r1, 200000);
    CHECK(std::abs(sol.jet(0, r1).v - ref) < 1e-8);
  }
  double worst = 0;
  for (double r = 0.02; r < 5; r += 0.0371) worst = std::max(worst, std::abs(son_lhs(5, r, sol.jet(0, r))));
  CHECK(worst < 1e-9);

  auto ref = reference_radial(s, st, {1.0, 3.0, 5.0});
  CHECK(std::abs(ref[2][0] - sol.jet(0, 5.0).v) < 1e-8);
}

TEST_CASE("SO(4) with f = 0 reproduces SO(n) at n = 4") {
  RadialSpec a;
  a.n = 4;
  RadialSpec b;
  b.kind = RadialSpec::Kind::dim4;
  b.p = 4;
  auto sa = integrate_radial(a, series_start(a, {1.0}, 0.01), 4, 1e-10, 1e-10);
  auto sb = integrate_radial(b, series_start(b, {0.0, 1.0}, 0.01), 4, 1e-10, 1e-10);
  REQUIRE(sa.complete);
  REQUIRE(sb.complete);
  for (double r = 0.05; r < 4; r += 0.2) {
    CHECK(sb.jet(0, r).v == 0);
    CHECK(std::abs(sa.jet(0, r).v - sb.jet(1, r).v) < 1e-10);
  }
}

TEST_CASE("solved profile satisfies the full Yang-Mills equations") {
  RadialSpec s;
  s.n = 5;
  auto sol = integrate_radial(s, series_start(s, {1.0}, 1e-3), 5, 1e-10, 1e-10);
  REQUIRE(sol.complete);
  auto a = make_ansatz(AnsatzCase::son, {5, 0}, {sol.profile(0)});
  auto m = constant_metric({5, 0});
  std::mt19937_64 rng(41);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ur(0.05, 4.9);
  for (int k = 0; k < 20; ++k) {
    std::vector<double> y(5);
    double nrm = 0;
    for (double& v : y) nrm += (v = nd(rng)) * v;
    const double scale = ur(rng) / std::sqrt(nrm);
    for (double& v : y) v *= scale;
    CHECK(max_abs(ym_residual(a, m, y)) < 1e-7);
  }
}

TEST_CASE("wave evolution") {
  WaveConfig cfg;
  cfg.n = 5;
  cfg.metric = flat_isotropic(5);
  cfg.grid = {0.1, 10, 512};
  cfg.T = 1;

  SUBCASE("vacuum is a fixed point with zero energy") {
    std::vector<double> one(cfg.grid.cells, 1.0), z(cfg.grid.cells, 0.0);
    auto run = evolve_wave(cfg, {one}, {z});
    for (double v : run.fields[0]) CHECK(v == 1.0);
    for (double e : run.energy) CHECK(e == 0);
  }
  SUBCASE("constant solution in full mode is static") {
    cfg.mode = WaveMode::full;
    std::vector<double> z(cfg.grid.cells, 0.0), h3(cfg.grid.cells, 0.7);
    auto run = evolve_wave(cfg, {z, z, h3}, {z, z, z});
    for (int i = 0; i < cfg.grid.cells; ++i) {
      CHECK(run.fields[0][i] == 0);
      CHECK(run.fields[1][i] == 0);
      CHECK(run.fields[2][i] == 0.7);
    }
  }
  SUBCASE("energy drift at N = 2048") {
    cfg.grid.cells = 2048;
    std::vector<double> z(cfg.grid.cells, 0.0);
    auto run = evolve_wave(cfg, {bump(cfg.grid, 0.3, 5, 1, 1)}, {z});
    CHECK(run.max_cfl <= 0.5 + 1e-12);
    CHECK(run.energy_drift() < 1e-5);
  }
  SUBCASE("second-order convergence") {
    std::vector<std::vector<double>> sols;
    for (int N : {256, 512, 1024}) {
      cfg.grid.cells = N;
      std::vector<double> z(N, 0.0);
      sols.push_back(evolve_wave(cfg, {bump(cfg.grid, 0.3, 5, 1, 1)}, {z}).fields[0]);
    }
    auto diff = [](const std::vector<double>& c, const std::vector<double>& f) {
      double m = 0;
      for (size_t i = 0; i < c.size(); ++i) m = std::max(m, std::abs(c[i] - 0.5 * (f[2 * i] + f[2 * i + 1])));
      return m;
    };
    CHECK(diff(sols[0], sols[1]) / diff(sols[1], sols[2]) == doctest::Approx(4).epsilon(0.125));
  }
  SUBCASE("outflow energy is non-increasing") {
    cfg.right = Boundary::outflow;
    cfg.grid = {0.1, 8, 2048};
    cfg.T = 6;
    std::vector<double> z(cfg.grid.cells, 0.0);
    auto run = evolve_wave(cfg, {bump(cfg.grid, 0.3, 5, 0.5, 1)}, {z});
    for (size_t k = 1; k < run.energy.size(); ++k) CHECK(run.energy[k] <= run.energy[k - 1] * (1 + 1e-6));
    CHECK(run.energy.back() < run.energy.front());
  }
  SUBCASE("bad CFL factor is rejected") {
    cfg.cfl = 1.5;
    std::vector<double> one(cfg.grid.cells, 1.0), z(cfg.grid.cells, 0.0);
    CHECK_THROWS_AS(evolve_wave(cfg, {one}, {z}), ValidationError);
  }
  SUBCASE("grid energy of |h| = 0") {
    std::vector<double> z(cfg.grid.cells, 0.0);
    CHECK(grid_energy(cfg, z, z) == doctest::Approx(14.85).epsilon(1e-10));
  }
}
