#pragma once

#include <cmath>

namespace eqym {

// Forward-mode value + one directional derivative.
struct Dual {
  double v = 0, d = 0;
  Dual() = default;
  Dual(double value) : v(value) {}
  Dual(double value, double deriv) : v(value), d(deriv) {}

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
  Dual& operator/=(const Dual& o) { d = (d * o.v - v * o.d) / (o.v * o.v); v /= o.v; return *this; }
};

inline Dual operator+(Dual a, const Dual& b) { return a += b; }
inline Dual operator-(Dual a, const Dual& b) { return a -= b; }
inline Dual operator*(Dual a, const Dual& b) { return a *= b; }
inline Dual operator/(Dual a, const Dual& b) { return a /= b; }
inline Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
inline Dual operator+(double a, const Dual& b) { return Dual(a) + b; }
inline Dual operator-(double a, const Dual& b) { return Dual(a) - b; }
inline Dual operator*(double a, const Dual& b) { return {a * b.v, a * b.d}; }
inline Dual operator/(double a, const Dual& b) { return Dual(a) / b; }

inline double sqrt(double a) { return std::sqrt(a); }
inline double exp(double a) { return std::exp(a); }
inline Dual sqrt(const Dual& a) {
  double s = std::sqrt(a.v);
  return {s, a.d / (2 * s)};
}
inline Dual exp(const Dual& a) {
  double e = std::exp(a.v);
  return {e, e * a.d};
}

inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.v; }
inline double deriv_of(double) { return 0.0; }
inline double deriv_of(const Dual& x) { return x.d; }

// Builds a scalar of type T from a value and its derivative along the active direction.
template <class T>
T make_scalar(double v, double d);
template <>
inline double make_scalar<double>(double v, double) { return v; }
template <>
inline Dual make_scalar<Dual>(double v, double d) { return {v, d}; }

}  // namespace eqym
