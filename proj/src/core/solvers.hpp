#pragma once

#include <string>
#include <vector>

#include "reduced.hpp"

namespace eqym {

// Radial equations: SO(n) in g, or p+q = 4 in (f, g) with sign (-1)^p.
struct RadialSpec {
  enum class Kind { son, dim4 } kind = Kind::son;
  int n = 5;
  int p = 4;
  int profiles() const { return kind == Kind::son ? 1 : 2; }
};

struct SeriesStart {
  double r0 = 0;
  std::vector<double> state;  // (g, g') or (f, f', g, g')
};

// Even Frobenius expansion at r0 from the values at the origin (b for SO(n); a = f(0), b = g(0) otherwise).
// order 2 keeps the r^2 term; order 4 adds the r^4 term (SO(n) only).
SeriesStart series_start(const RadialSpec& s, const std::vector<double>& lead, double r0, int order = 2);

struct RadialSolution {
  RadialSpec spec;
  std::vector<double> r;
  std::vector<std::vector<double>> states;
  int steps = 0, rejected = 0;
  double abs_tol = 0, rel_tol = 0;
  bool complete = false;
  std::string failure;

  // State at any r in range, by re-integrating from the nearest stored node.
  std::vector<double> state_at(double x) const;
  Jet jet(int profile, double x) const;  // profile 0 is f for dim4, g for son
  Profile profile(int k) const;
};

// Adaptive Dormand-Prince. A failure (step underflow or blow-up) is reported with the last valid r.
RadialSolution integrate_radial(const RadialSpec& s, const SeriesStart& start, double r_end, double abs_tol,
                                double rel_tol);

// Independent cross-check: Fehlberg 7(8) from the same start, states at increasing radii.
std::vector<std::vector<double>> reference_radial(const RadialSpec& s, const SeriesStart& start,
                                                  const std::vector<double>& radii, double tol = 1e-13);

// Uniform cell-centred radial grid: r_i = r_min + (i + 1/2) dr.
struct RadialGrid {
  double r_min = 0.1, r_max = 10;
  int cells = 2048;
  double dr() const { return (r_max - r_min) / cells; }
  double r(int i) const { return r_min + (i + 0.5) * dr(); }
  double face(int i) const { return r_min + i * dr(); }
};

enum class Boundary { reflecting, outflow };
enum class WaveMode { modulus, iso_son, full };

WaveMode parse_wave_mode(const std::string& s);
Boundary parse_boundary(const std::string& s);
std::string to_string(WaveMode m);
std::string to_string(Boundary b);

struct WaveConfig {
  WaveMode mode = WaveMode::modulus;
  int n = 5;
  RadialGrid grid;
  MetricSpec metric = flat_isotropic(5);
  double cfl = 0.5;
  double T = 1.0;
  Boundary right = Boundary::reflecting;
  int record_every = 1;
  int snapshot_every = 0;  // 0: no intermediate snapshots
};

struct WaveSnapshot {
  double t = 0;
  std::vector<std::vector<double>> fields;
};

struct WaveRun {
  WaveConfig cfg;
  double dt = 0;
  int steps = 0;
  std::vector<double> times, energy, constraint;
  std::vector<std::vector<double>> fields, fields_t;  // final state
  std::vector<WaveSnapshot> snapshots;
  double max_cfl = 0;
  double energy_drift() const;  // max |E(t) - E(0)| / E(0)
};

// Leapfrog in t, second-order central differences in r.
// modulus: one field |h|; iso_son: one field g; full: (h1, h2, h3).
WaveRun evolve_wave(const WaveConfig& cfg, const std::vector<std::vector<double>>& initial,
                    const std::vector<std::vector<double>>& initial_t);

// Discrete energy of a single-field state with the given time derivative (same normalisation
// as the continuous integral).
double grid_energy(const WaveConfig& cfg, const std::vector<double>& u, const std::vector<double>& ut);

}  // namespace eqym
