#include "solvers.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>

namespace eqym {

namespace odeint = boost::numeric::odeint;
using State = std::vector<double>;

namespace {
double parity(int p) { return p % 2 ? -1.0 : 1.0; }

void check_spec(const RadialSpec& s) {
  if (s.kind == RadialSpec::Kind::son) require(s.n >= 3, "radial SO(n) system needs n >= 3");
  else require(s.p >= 0 && s.p <= 4, "radial p+q=4 system needs 0 <= p <= 4");
}

struct RadialRhs {
  RadialSpec spec;
  void operator()(const State& y, State& dy, double r) const {
    if (spec.kind == RadialSpec::Kind::son) {
      dy[0] = y[1];
      dy[1] = son_rhs(spec.n, r, y[0], y[1]);
    } else {
      auto a = dim4_rhs(spec.p, r, y[0], y[1], y[2], y[3]);
      dy[0] = y[1];
      dy[1] = a[0];
      dy[2] = y[3];
      dy[3] = a[1];
    }
  }
};

bool finite_state(const State& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v) && std::abs(v) < 1e12; });
}
}  // namespace

SeriesStart series_start(const RadialSpec& s, const std::vector<double>& lead, double r0, int order) {
  check_spec(s);
  require(r0 > 0 && r0 <= 0.1, "series_start: r0 must be in (0, 0.1]");
  require(order == 2 || order == 4, "series_start: order must be 2 or 4");
  SeriesStart st;
  st.r0 = r0;
  const double r2 = r0 * r0;
  if (s.kind == RadialSpec::Kind::son) {
    require(lead.size() == 1, "series_start: SO(n) takes one leading coefficient b");
    const int n = s.n;
    const double b = lead[0], c = -3.0 * (n - 2) * b * b / (2.0 * (n + 2));
    double e = 0;
    if (order == 4) e = -(n - 2) * (6 * b * c - b * b * b) / (4.0 * n + 16);
    st.state = {b + c * r2 + e * r2 * r2, 2 * c * r0 + 4 * e * r2 * r0};
  } else {
    require(order == 2, "series_start: only order 2 for the p+q=4 system");
    require(lead.size() == 2, "series_start: p+q=4 takes (f(0), g(0))");
    const double a = lead[0], b = lead[1], sg = parity(s.p);
    const double c = -(b * b + sg * a * a) / 2, d = -a * b;
    st.state = {a + d * r2, 2 * d * r0, b + c * r2, 2 * c * r0};
  }
  return st;
}

RadialSolution integrate_radial(const RadialSpec& s, const SeriesStart& start, double r_end, double abs_tol,
                                double rel_tol) {
  check_spec(s);
  require(abs_tol > 0 && rel_tol >= 0, "integrate_radial: tolerances must be positive");
  require(r_end > start.r0, "integrate_radial: r_end must exceed r0");
  require(static_cast<int>(start.state.size()) == 2 * s.profiles(), "integrate_radial: state size mismatch");
  RadialSolution sol;
  sol.spec = s;
  sol.abs_tol = abs_tol;
  sol.rel_tol = rel_tol;
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(abs_tol, rel_tol);
  RadialRhs rhs{s};
  State y = start.state;
  double r = start.r0, dt = std::min(1e-3, 0.1 * start.r0);
  sol.r.push_back(r);
  sol.states.push_back(y);
  while (r < r_end) {
    if (r + dt > r_end) dt = r_end - r;
    if (stepper.try_step(rhs, y, r, dt) == odeint::success) {
      ++sol.steps;
      if (!finite_state(y)) {
        sol.failure = "blow-up after r = " + std::to_string(sol.r.back());
        return sol;
      }
      sol.r.push_back(r);
      sol.states.push_back(y);
    } else {
      ++sol.rejected;
      if (dt < 1e-14 * std::max(1.0, r)) {
        sol.failure = "step underflow at r = " + std::to_string(r);
        return sol;
      }
    }
  }
  sol.r.back() = r_end;
  sol.complete = true;
  return sol;
}

std::vector<std::vector<double>> reference_radial(const RadialSpec& s, const SeriesStart& start,
                                                  const std::vector<double>& radii, double tol) {
  check_spec(s);
  require(std::is_sorted(radii.begin(), radii.end()) && (radii.empty() || radii.front() >= start.r0),
          "reference_radial: radii must be sorted and start at r0 or later");
  std::vector<double> times{start.r0};
  times.insert(times.end(), radii.begin(), radii.end());
  std::vector<State> out;
  State y = start.state;
  odeint::integrate_times(odeint::make_controlled<odeint::runge_kutta_fehlberg78<State>>(tol, tol), RadialRhs{s}, y,
                          times.begin(), times.end(), 1e-4,
                          [&](const State& x, double) { out.push_back(x); });
  out.erase(out.begin());
  return out;
}

std::vector<double> RadialSolution::state_at(double x) const {
  require(!r.empty(), "radial solution is empty");
  require(x >= r.front() - 1e-14 && x <= r.back() + 1e-14, "radial solution evaluated outside its range");
  auto it = std::upper_bound(r.begin(), r.end(), x);
  size_t k = it == r.begin() ? 0 : static_cast<size_t>(it - r.begin()) - 1;
  State y = states[k];
  if (x == r[k]) return y;
  RadialRhs rhs{spec};
  odeint::integrate_adaptive(odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(abs_tol, rel_tol), rhs,
                             y, r[k], x, (x - r[k]) / 4);
  return y;
}

Jet RadialSolution::jet(int k, double x) const {
  require(k >= 0 && k < spec.profiles(), "radial solution: no such profile");
  State y = state_at(x), dy(y.size());
  RadialRhs{spec}(y, dy, x);
  return Jet{y[2 * k], 0, y[2 * k + 1], 0, 0, dy[2 * k + 1]};
}

Profile RadialSolution::profile(int k) const {
  auto self = std::make_shared<RadialSolution>(*this);
  return [self, k](double, double x) { return self->jet(k, x); };
}

WaveMode parse_wave_mode(const std::string& s) {
  if (s == "scalar" || s == "modulus") return WaveMode::modulus;
  if (s == "iso_son") return WaveMode::iso_son;
  if (s == "full") return WaveMode::full;
  throw ValidationError("unknown wave mode: " + s);
}

Boundary parse_boundary(const std::string& s) {
  if (s == "reflecting") return Boundary::reflecting;
  if (s == "outflow") return Boundary::outflow;
  throw ValidationError("unknown boundary policy: " + s);
}

std::string to_string(WaveMode m) {
  switch (m) {
    case WaveMode::modulus: return "scalar";
    case WaveMode::iso_son: return "iso_son";
    case WaveMode::full: return "full";
  }
  return "?";
}

std::string to_string(Boundary b) { return b == Boundary::reflecting ? "reflecting" : "outflow"; }

double WaveRun::energy_drift() const {
  if (energy.empty()) return 0;
  const double e0 = energy.front();
  double d = 0;
  for (double e : energy) d = std::max(d, std::abs(e - e0));
  return e0 != 0 ? d / std::abs(e0) : d;
}

namespace {
// Per-cell coefficients of a single-field mode: w (u_t) E_t ... = (wf u_r)_r + w src(u).
struct ScalarModel {
  WaveMode mode;
  int n;
  RadialGrid g;
  std::vector<double> r, w, wf, E, A;

  ScalarModel(const WaveConfig& cfg) : mode(cfg.mode), n(cfg.n), g(cfg.grid) {
    const MetricSpec& m = cfg.metric;
    auto weight = [&](double x) {
      const double base = std::exp(0.5 * (m.ft(0, x).v + (n - 4) * m.fr(0, x).v));
      return std::pow(x, mode == WaveMode::iso_son ? n + 1 : n - 3) * base;
    };
    for (int i = 0; i < g.cells; ++i) {
      r.push_back(g.r(i));
      w.push_back(weight(r.back()));
      E.push_back(m.wave_factor(r.back()));
      A.push_back(0.5 * (m.ft(0, r.back()).r + (n - 4) * m.fr(0, r.back()).r));
    }
    for (int i = 0; i <= g.cells; ++i) wf.push_back(g.face(i) > 0 ? weight(g.face(i)) : 0.0);
  }

  double src(int i, double u) const {
    const double x = r[i];
    if (mode == WaveMode::modulus) return (n - 2) / (x * x) * u * (1 - u * u);
    return (n - 2) * u * u * (3 - x * x * u) + 2 * A[i] * u / x;
  }
  double potential(int i, double u) const {
    const double x = r[i];
    if (mode == WaveMode::modulus) return w[i] * (n - 2) / (4 * x * x) * (u * u - 1) * (u * u - 1);
    return -w[i] * ((n - 2) * (u * u * u - x * x * u * u * u * u / 4) + A[i] * u * u / x);
  }
  void accel(const std::vector<double>& u, std::vector<double>& a) const {
    const int N = g.cells;
    const double h2 = g.dr() * g.dr();
    for (int i = 0; i < N; ++i) {
      const double left = i == 0 ? 0.0 : wf[i] * (u[i] - u[i - 1]);
      const double right = i == N - 1 ? 0.0 : wf[i + 1] * (u[i + 1] - u[i]);
      a[i] = ((right - left) / h2 + w[i] * src(i, u[i])) / (w[i] * E[i]);
    }
  }
  double energy(const std::vector<double>& u, const std::vector<double>& ut) const {
    const double dr = g.dr();
    double e = 0;
    for (int i = 0; i < g.cells; ++i) e += (w[i] * E[i] * ut[i] * ut[i] + 2 * potential(i, u[i])) * dr;
    for (int i = 0; i + 1 < g.cells; ++i) {
      const double d = (u[i + 1] - u[i]) / dr;
      e += wf[i + 1] * d * d * dr;
    }
    return e;
  }
};

void check_config(const WaveConfig& cfg, size_t fields, const std::vector<std::vector<double>>& init,
                  const std::vector<std::vector<double>>& init_t) {
  require(cfg.grid.cells >= 8, "evolve: need at least 8 cells");
  require(cfg.grid.r_min >= 0 && cfg.grid.r_max > cfg.grid.r_min, "evolve: need 0 <= r_min < r_max");
  require(cfg.cfl > 0 && cfg.cfl <= 0.9, "evolve: CFL factor must be in (0, 0.9]");
  require(cfg.T > 0, "evolve: T must be positive");
  require(cfg.metric.kind == MetricSpec::Kind::isotropic && cfg.metric.spatial == cfg.n,
          "evolve: needs the isotropic metric of dimension n");
  require(cfg.n >= (cfg.mode == WaveMode::iso_son ? 3 : 4), "evolve: dimension too small for this mode");
  require(init.size() == fields && init_t.size() == fields, "evolve: wrong number of initial fields");
  for (size_t k = 0; k < fields; ++k)
    require(static_cast<int>(init[k].size()) == cfg.grid.cells &&
                static_cast<int>(init_t[k].size()) == cfg.grid.cells,
            "evolve: initial data must have one value per cell");
}

double max_speed(const WaveConfig& cfg) {
  double c = 0;
  for (int i = 0; i < cfg.grid.cells; ++i) c = std::max(c, 1.0 / std::sqrt(cfg.metric.wave_factor(cfg.grid.r(i))));
  return c;
}

void require_finite(const std::vector<double>& u, int step) {
  for (double v : u)
    if (!std::isfinite(v)) throw NumericalError("non-finite value at step " + std::to_string(step));
}

// Jets of the three fields at cell i from centred differences with mirror ghosts.
Jet cell_jet(const std::vector<double>& u, int i, double dr) {
  const int N = static_cast<int>(u.size());
  const double um = i == 0 ? u[0] : u[i - 1], up = i == N - 1 ? u[N - 1] : u[i + 1];
  return Jet{u[i], 0, (up - um) / (2 * dr), 0, 0, (up - 2 * u[i] + um) / (dr * dr)};
}
}  // namespace

double grid_energy(const WaveConfig& cfg, const std::vector<double>& u, const std::vector<double>& ut) {
  require(cfg.mode != WaveMode::full, "grid_energy: single-field modes only");
  require(static_cast<int>(u.size()) == cfg.grid.cells && u.size() == ut.size(), "grid_energy: size mismatch");
  ScalarModel m(cfg);
  return m.energy(u, ut);
}

WaveRun evolve_wave(const WaveConfig& cfg, const std::vector<std::vector<double>>& initial,
                    const std::vector<std::vector<double>>& initial_t) {
  const size_t F = cfg.mode == WaveMode::full ? 3 : 1;
  check_config(cfg, F, initial, initial_t);
  WaveRun run;
  run.cfg = cfg;
  const int N = cfg.grid.cells;
  const double dr = cfg.grid.dr(), cmax = max_speed(cfg);
  run.steps = static_cast<int>(std::ceil(cfg.T * cmax / (cfg.cfl * dr) - 1e-9));
  run.dt = cfg.T / run.steps;
  run.max_cfl = run.dt * cmax / dr;
  const double dt = run.dt;
  if (cfg.mode != WaveMode::iso_son) {
    // linearised stiffness of the (n-2)/r^2 potential about |h| = 1
    for (int i = 0; i < N; ++i) {
      const double x = cfg.grid.r(i), c2 = 1.0 / cfg.metric.wave_factor(x);
      const double lam = dt * dt * (4 * c2 / (dr * dr) + 2.0 * (cfg.n - 2) * c2 / (x * x));
      if (lam >= 3.8)
        throw ValidationError("evolve: time step too large for the potential stiffness at r = " +
                              std::to_string(x) + "; raise r_min or lower the CFL factor");
    }
  }

  WaveConfig single = cfg;
  if (cfg.mode == WaveMode::full) single.mode = WaveMode::modulus;
  ScalarModel model(single);
  std::vector<double> rr(N), Ec(N);
  for (int i = 0; i < N; ++i) {
    rr[i] = cfg.grid.r(i);
    Ec[i] = cfg.metric.wave_factor(rr[i]);
  }

  auto accel = [&](const std::vector<std::vector<double>>& u, std::vector<std::vector<double>>& a) {
    if (cfg.mode != WaveMode::full) {
      model.accel(u[0], a[0]);
      return;
    }
    for (int i = 0; i < N; ++i) {
      auto h = sun_rhs(cfg.n, cfg.metric, rr[i], cell_jet(u[0], i, dr), cell_jet(u[1], i, dr), cell_jet(u[2], i, dr));
      for (int k = 0; k < 3; ++k) a[k][i] = h[k];
    }
  };
  auto outflow = [&](const std::vector<std::vector<double>>& cur, std::vector<std::vector<double>>& next) {
    if (cfg.right != Boundary::outflow) return;
    const double c = 1.0 / std::sqrt(Ec[N - 1]);
    for (size_t k = 0; k < F; ++k)
      next[k][N - 1] = cur[k][N - 1] - c * dt / dr * (cur[k][N - 1] - cur[k][N - 2]);
  };
  auto record = [&](double t, const std::vector<std::vector<double>>& u, const std::vector<std::vector<double>>& v) {
    if (cfg.mode != WaveMode::full) {
      run.energy.push_back(model.energy(u[0], v[0]));
      run.constraint.push_back(0.0);
    } else {
      std::vector<double> m(N), mt(N);
      double c = 0;
      for (int i = 0; i < N; ++i) {
        m[i] = std::hypot(u[0][i], u[1][i]);
        mt[i] = m[i] > 0 ? (u[0][i] * v[0][i] + u[1][i] * v[1][i]) / m[i] : 0.0;
        if (i == 0 || i == N - 1) continue;
        Jet a = cell_jet(u[0], i, dr), b = cell_jet(u[1], i, dr), h3 = cell_jet(u[2], i, dr);
        a.t = v[0][i];
        b.t = v[1][i];
        h3.t = v[2][i];
        h3.tr = (v[2][i + 1] - v[2][i - 1]) / (2 * dr);
        c = std::max(c, std::abs(sun_equations(cfg.n, cfg.metric, rr[i], a, b, h3).time));
      }
      run.energy.push_back(model.energy(m, mt));
      run.constraint.push_back(c);
    }
    run.times.push_back(t);
  };

  std::vector<std::vector<double>> prev = initial, cur = initial, next = initial, acc(F, std::vector<double>(N));
  // Taylor start: u^1 = u^0 + dt v^0 + dt^2/2 a(u^0)
  accel(cur, acc);
  for (size_t k = 0; k < F; ++k)
    for (int i = 0; i < N; ++i) next[k][i] = cur[k][i] + dt * initial_t[k][i] + 0.5 * dt * dt * acc[k][i];
  outflow(cur, next);
  std::vector<std::vector<double>> vel = initial_t;
  for (int step = 0; step <= run.steps; ++step) {
    if (step > 0) {
      accel(cur, acc);
      for (size_t k = 0; k < F; ++k) {
        for (int i = 0; i < N; ++i) next[k][i] = 2 * cur[k][i] - prev[k][i] + dt * dt * acc[k][i];
        require_finite(next[k], step);
      }
      outflow(cur, next);
      for (size_t k = 0; k < F; ++k)
        for (int i = 0; i < N; ++i) vel[k][i] = (next[k][i] - prev[k][i]) / (2 * dt);
    }
    const double t = step * dt;
    if (step % std::max(1, cfg.record_every) == 0 || step == run.steps) record(t, cur, vel);
    if (cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0) run.snapshots.push_back({t, cur});
    if (step == run.steps) break;
    prev.swap(cur);
    cur.swap(next);
  }
  run.fields = cur;
  run.fields_t = vel;
  return run;
}

}  // namespace eqym
