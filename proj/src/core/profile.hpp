#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dual.hpp"

namespace eqym {

// Value and derivatives of a profile u(t, r) up to second order.
struct Jet {
  double v = 0, t = 0, r = 0, tt = 0, tr = 0, rr = 0;
};

using Profile = std::function<Jet(double t, double r)>;

Profile constant_profile(double c);
// a cos(b r + c t + d) + e
Profile wave_profile(double a, double b, double c, double d, double e);
// a exp(-((r - r0)/w)^2) + base
Profile gauss_profile(double a, double r0, double w, double base);
// Cubic B-spline through uniform samples (radial only).
Profile spline_profile(std::vector<double> values, double r0, double dr);
// Quintic Hermite through samples with first and second derivatives (radial only).
Profile hermite_profile(std::vector<double> r, std::vector<double> v, std::vector<double> d1,
                        std::vector<double> d2);

// A profile lifted to scalar type T at a point whose t and r carry derivative parts.
template <class T>
struct Lifted {
  T v, t, r;
};

template <class T>
Lifted<T> lift(const Profile& p, const T& t, const T& r) {
  Jet j = p(value_of(t), value_of(r));
  const double dt = deriv_of(t), dr = deriv_of(r);
  return {make_scalar<T>(j.v, j.t * dt + j.r * dr), make_scalar<T>(j.t, j.tt * dt + j.tr * dr),
          make_scalar<T>(j.r, j.tr * dt + j.rr * dr)};
}

}  // namespace eqym
