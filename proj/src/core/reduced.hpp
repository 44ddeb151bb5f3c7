#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace eqym {

// Radial systems on constant metrics. Each *_lhs is the displayed left-hand side,
// each *_rhs solves it for the second derivative.
double son_lhs(int n, double r, const Jet& g);
double son_rhs(int n, double r, double g, double gp);

// p+q = 4 with s = (-1)^p; Euclidean SO(4) is p = 4.
struct Dim4Lhs {
  double cf = 0, cg = 0;  // coefficients of Y and X
};
Dim4Lhs dim4_lhs(int p, double r, const Jet& f, const Jet& g);
std::array<double, 2> dim4_rhs(int p, double r, double f, double fp, double g, double gp);  // (f'', g'')

// h+- = g +- f for even p; (Re h, Im h) = (g, f) of the complex profile for odd p.
std::array<double, 2> hpm_transform(int p, double f, double g);
std::array<double, 2> hpm_inverse(int p, double h1, double h2);  // (f, g)
std::array<double, 2> hpm_rhs(int p, double r, double h1, double h1p, double h2, double h2p);

// Isotropic SO(n): g_rr - E g_tt + (n+1) g_r / r + (n-2) g^2 (3 - r^2 g) + A (g_r + 2 g / r)
double iso_son_lhs(int n, const MetricSpec& m, double r, const Jet& g);

// The SU(n) system in the dimensionless profiles.
struct SunEquations {
  double time = 0;  // constraint with the first time derivatives
  double h1 = 0, h2 = 0, h3 = 0;
};
SunEquations sun_equations(int n, const MetricSpec& m, double r, const Jet& h1, const Jet& h2, const Jet& h3);
// h_tt for (h1, h2, h3) given the spatial data.
std::array<double, 3> sun_rhs(int n, const MetricSpec& m, double r, const Jet& h1, const Jet& h2, const Jet& h3);
// Complex wave form for h = h1 + i h2.
cplx sun_complex_wave(int n, const MetricSpec& m, double r, const Jet& h1, const Jet& h2, const Jet& h3);

// Projection of the full Yang-Mills residual onto the generator fields,
// compared with what the reduced left-hand sides predict.
struct ProjectionCheck {
  std::vector<std::string> generators;
  std::vector<double> projected, predicted;
  double remainder = 0;  // part of the residual outside the generator span
  double scale = 0;
  double error = 0;  // max |projected - predicted| / scale, with the remainder folded in
};
ProjectionCheck projection_check(const GaugeAnsatz& a, const MetricSpec& m, const std::vector<double>& y);

// Residuals of the SU(n) equations and their rewritten forms at sample radii.
struct ConstraintReport {
  std::map<std::string, double> residuals;
  std::vector<std::string> not_applicable;
};
ConstraintReport constraint_residuals(int n, const Profile& h1, const Profile& h2, const Profile& h3,
                                      const MetricSpec& m, const std::vector<double>& radii, double t,
                                      double modulus_floor = 1e-8);

// Energy density weight r^{n-3} exp((ft + (n-4) fr)/2).
double energy_weight(int n, const MetricSpec& m, double r);

struct EnergyReport {
  double E = 0, t = 0;
  double r_min = 0, r_max = 0;
  std::vector<double> integrand;
};
// Adaptive quadrature of the conserved energy for an analytic |h| profile.
EnergyReport energy_of_profile(int n, const Profile& h, const MetricSpec& m, double r_min, double r_max, double t);

// S -> S(r/l, t/l), applied to a profile.
Profile scale_profile(const Profile& p, double lambda);
MetricSpec scale_metric(const MetricSpec& m, double lambda);

}  // namespace eqym
