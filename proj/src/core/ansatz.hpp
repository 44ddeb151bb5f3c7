#pragma once

#include <string>
#include <vector>

#include "fmat.hpp"
#include "lie.hpp"
#include "profile.hpp"

namespace eqym {

enum class AnsatzCase { so3, so4, son, sopq3, sopq4, sopqn, sun, sun_h, iso_son };

AnsatzCase parse_ansatz_case(const std::string& s);
std::string to_string(AnsatzCase c);
std::vector<std::string> profile_names(AnsatzCase c);

struct GaugeAnsatz {
  AnsatzCase kind = AnsatzCase::son;
  Signature sig;  // spatial signature
  std::vector<Profile> prof;
  double corrupt = 0;  // adds corrupt * x_2 to the leading profile (negative control)

  int n() const { return sig.n(); }
  bool time_dependent() const { return kind == AnsatzCase::sun_h || kind == AnsatzCase::iso_son; }
  int coord_dim() const { return n() + (time_dependent() ? 1 : 0); }
  int offset() const { return time_dependent() ? 1 : 0; }
  bool complex_valued() const { return kind == AnsatzCase::sun || kind == AnsatzCase::sun_h; }
};

GaugeAnsatz make_ansatz(AnsatzCase kind, const Signature& sig, std::vector<Profile> prof);

template <class T>
using Field = std::vector<FMat<T>>;
template <class T>
using Curv = std::vector<std::vector<FMat<T>>>;

namespace detail {

template <class T>
struct Point {
  int n;
  Signature sig;
  T t;
  std::vector<T> x;
  T r2, r;
};

template <class T>
Point<T> point(const GaugeAnsatz& a, const std::vector<T>& y) {
  require(static_cast<int>(y.size()) == a.coord_dim(), "ansatz: coordinate dimension mismatch");
  Point<T> p{a.n(), a.sig, T(0.0), {}, T(0.0), T(0.0)};
  if (a.time_dependent()) p.t = y[0];
  p.x.assign(y.begin() + a.offset(), y.end());
  for (int i = 0; i < p.n; ++i) p.r2 += static_cast<double>(a.sig.eps(i)) * p.x[i] * p.x[i];
  require(value_of(p.r2) > 0, "ansatz: point must be time-like and nonzero");
  p.r = sqrt(p.r2);
  return p;
}

template <class T>
Lifted<T> profile(const GaugeAnsatz& a, const Point<T>& p, int k) {
  Lifted<T> l = lift(a.prof[k], p.t, p.r);
  if (k == 0 && a.corrupt != 0 && p.n > 1) l.v += a.corrupt * p.x[1];
  return l;
}

template <class T>
FMat<T> X(const Point<T>& p, int mu) {
  FMat<T> m(p.n, false);
  for (int i = 0; i < p.n; ++i) {
    m(i, mu) += static_cast<double>(p.sig.eps(mu)) * p.x[i];
    m(mu, i) -= static_cast<double>(p.sig.eps(i)) * p.x[i];
  }
  return m;
}

template <class T>
FMat<T> Y(const Point<T>& p, int mu) {
  FMat<T> m(4, false);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        int e = levi_civita({k, i, j, mu});
        if (e) m(i, j) += static_cast<double>(p.sig.eps(i) * e) * p.x[k];
      }
  return m;
}

template <class T>
FMat<T> constant(const Mat& m) {
  FMat<T> out(static_cast<int>(m.rows()), false);
  for (int i = 0; i < out.n; ++i)
    for (int j = 0; j < out.n; ++j) out(i, j) = T(m(i, j));
  return out;
}

// SU(n) generator fields F_i, G1, G2_i (Euclidean).
template <class T>
FMat<T> su_F(const Point<T>& p, int i) {
  FMat<T> m(p.n, false);
  T inv = 1.0 / p.r2;
  for (int a = 0; a < p.n; ++a) {
    m(a, i) += p.x[a] * inv;
    m(i, a) -= p.x[a] * inv;
  }
  return m;
}

template <class T>
FMat<T> su_G1(const Point<T>& p) {
  FMat<T> m(p.n, true);
  T inv = 1.0 / p.r2;
  for (int a = 0; a < p.n; ++a) {
    for (int b = 0; b < p.n; ++b) m.imag(a, b) = p.x[a] * p.x[b] * inv * inv;
    m.imag(a, a) -= inv / static_cast<double>(p.n);
  }
  return m;
}

template <class T>
FMat<T> su_G2(const Point<T>& p, int i) {
  FMat<T> m(p.n, true);
  T inv = 1.0 / p.r2;
  for (int a = 0; a < p.n; ++a) {
    m.imag(i, a) += p.x[a] * inv;
    m.imag(a, i) += p.x[a] * inv;
    m.imag(a, a) -= 2.0 * p.x[i] * inv / static_cast<double>(p.n);
  }
  return m;
}

}  // namespace detail

// B_mu at coordinates y (t first for time-dependent cases, with B_0 = 0).
template <class T>
Field<T> ansatz_eval(const GaugeAnsatz& a, const std::vector<T>& y) {
  using namespace detail;
  auto p = point(a, y);
  const int n = p.n;
  Field<T> B;
  if (a.time_dependent()) B.push_back(FMat<T>(n, a.complex_valued()));
  switch (a.kind) {
    case AnsatzCase::son:
    case AnsatzCase::sopqn:
    case AnsatzCase::iso_son: {
      auto g = profile(a, p, 0);
      for (int mu = 0; mu < n; ++mu) B.push_back(g.v * X(p, mu));
      break;
    }
    case AnsatzCase::so4:
    case AnsatzCase::sopq4: {
      auto f = profile(a, p, 0), g = profile(a, p, 1);
      for (int mu = 0; mu < n; ++mu) {
        FMat<T> m = g.v * X(p, mu);
        m.axpy(f.v, Y(p, mu));
        B.push_back(m);
      }
      break;
    }
    case AnsatzCase::so3:
    case AnsatzCase::sopq3: {
      auto f = profile(a, p, 0), g = profile(a, p, 1), h = profile(a, p, 2);
      const bool e = a.kind == AnsatzCase::so3;
      for (int mu = 0; mu < 3; ++mu) {
        FMat<T> m(3, false);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            T cross(0.0);
            for (int k = 0; k < 3; ++k) cross += static_cast<double>(levi_civita({i, j, k})) * p.x[k];
            T gx = (j == mu ? p.x[i] : T(0.0)) - (i == mu ? p.x[j] : T(0.0));
            if (e) {
              m(i, j) = static_cast<double>(levi_civita({i, j, mu})) * f.v + g.v * gx + h.v * p.x[mu] * cross;
            } else {
              const double em = p.sig.eps(mu), ei = p.sig.eps(i), ej = p.sig.eps(j);
              m(i, j) = em * ei * f.v * p.x[mu] * cross + ej * g.v * gx +
                        em * ej * static_cast<double>(levi_civita({mu, i, j})) * h.v;
            }
          }
        B.push_back(m);
      }
      break;
    }
    case AnsatzCase::sun: {
      auto g = profile(a, p, 0), g1 = profile(a, p, 1), g2 = profile(a, p, 2);
      for (int i = 0; i < n; ++i) {
        FMat<T> m = g.v * X(p, i);
        m.make_complex();
        for (int u = 0; u < n; ++u) {
          for (int v = 0; v < n; ++v) m.imag(u, v) += g1.v * p.x[i] * p.x[u] * p.x[v];
          m.imag(u, u) -= g1.v * p.x[i] * p.r2 / static_cast<double>(n);
          m.imag(i, u) += g2.v * p.x[u];
          m.imag(u, i) += g2.v * p.x[u];
          m.imag(u, u) -= 2.0 * g2.v * p.x[i] / static_cast<double>(n);
        }
        B.push_back(m);
      }
      break;
    }
    case AnsatzCase::sun_h: {
      auto h1 = profile(a, p, 0), h2 = profile(a, p, 1), h3 = profile(a, p, 2);
      FMat<T> G1 = su_G1(p);
      for (int i = 0; i < n; ++i) {
        FMat<T> m = (h1.v + 1.0) * su_F(p, i);
        m.axpy(h3.v * p.x[i] - 2.0 * h2.v * p.x[i], G1);
        m.axpy(h2.v, su_G2(p, i));
        B.push_back(m);
      }
      break;
    }
  }
  return B;
}

// Closed-form curvature F[alpha][beta]; not available for the three-dimensional cases.
template <class T>
Curv<T> curvature_formula(const GaugeAnsatz& a, const std::vector<T>& y) {
  using namespace detail;
  auto p = point(a, y);
  const int n = p.n, N = a.coord_dim(), o = a.offset();
  Curv<T> F(N, std::vector<FMat<T>>(N, FMat<T>(n, a.complex_valued())));
  auto put = [&](int al, int be, const FMat<T>& m) {
    F[al][be] = m;
    FMat<T> neg = m;
    neg *= T(-1.0);
    F[be][al] = neg;
  };
  auto ex = [&](int al, int be, const std::vector<FMat<T>>& Z) {
    // eps(al) x_al Z_be - eps(be) x_be Z_al
    FMat<T> m = (static_cast<double>(p.sig.eps(al)) * p.x[al]) * Z[be];
    m.axpy(-static_cast<double>(p.sig.eps(be)) * p.x[be], Z[al]);
    return m;
  };
  std::vector<FMat<T>> Xs;
  for (int mu = 0; mu < n; ++mu) Xs.push_back(X(p, mu));
  switch (a.kind) {
    case AnsatzCase::son:
    case AnsatzCase::sopqn:
    case AnsatzCase::iso_son: {
      auto g = profile(a, p, 0);
      T c1 = g.r / p.r + g.v * g.v, c2 = g.v * (2.0 - p.r2 * g.v);
      for (int al = 0; al < n; ++al)
        for (int be = al + 1; be < n; ++be) {
          FMat<T> m = c1 * ex(al, be, Xs);
          m.axpy(c2, constant<T>(f_gen(p.sig, al, be)));
          put(o + al, o + be, m);
        }
      if (a.time_dependent())
        for (int k = 0; k < n; ++k) put(0, 1 + k, g.t * Xs[k]);
      break;
    }
    case AnsatzCase::so4:
    case AnsatzCase::sopq4: {
      auto f = profile(a, p, 0), g = profile(a, p, 1);
      const double s = (p.sig.p % 2 == 0) ? 1.0 : -1.0;
      std::vector<FMat<T>> Ys;
      for (int mu = 0; mu < n; ++mu) Ys.push_back(Y(p, mu));
      T w = g.v * g.v + s * f.v * f.v;
      T c1 = g.r / p.r + w, c2 = 2.0 * g.v - p.r2 * w, c3 = f.r / p.r, c4 = 2.0 * f.v, c5 = 2.0 * f.v * g.v;
      for (int al = 0; al < n; ++al)
        for (int be = al + 1; be < n; ++be) {
          FMat<T> m = c1 * ex(al, be, Xs);
          m.axpy(c2, constant<T>(f_gen(p.sig, al, be)));
          m.axpy(c3, ex(al, be, Ys));
          m.axpy(c4, constant<T>(f_bar_gen(p.sig, al, be)));
          m.axpy(c5, bracket(Xs[al], Ys[be]));
          put(al, be, m);
        }
      break;
    }
    case AnsatzCase::sun:
    case AnsatzCase::sun_h: {
      T h1, h2, h3, h1r, h2r, h1t(0.0), h2t(0.0), h3t(0.0);
      if (a.kind == AnsatzCase::sun) {
        auto g = profile(a, p, 0), g1 = profile(a, p, 1), g2 = profile(a, p, 2);
        h1 = p.r2 * g.v - 1.0;
        h1r = 2.0 * p.r * g.v + p.r2 * g.r;
        h2 = p.r2 * g2.v;
        h2r = 2.0 * p.r * g2.v + p.r2 * g2.r;
        h3 = p.r2 * p.r2 * g1.v + 2.0 * p.r2 * g2.v;
      } else {
        auto a1 = profile(a, p, 0), a2 = profile(a, p, 1), a3 = profile(a, p, 2);
        h1 = a1.v, h2 = a2.v, h3 = a3.v, h1r = a1.r, h2r = a2.r;
        h1t = a1.t, h2t = a2.t, h3t = a3.t;
      }
      std::vector<FMat<T>> Fs, G2s;
      for (int i = 0; i < n; ++i) {
        Fs.push_back(su_F(p, i));
        G2s.push_back(su_G2(p, i));
      }
      FMat<T> G1 = su_G1(p);
      T inv = 1.0 / p.r2;
      T c1 = (p.r * h1r + h1 * h1 + h2 * h2 - 1.0 - h2 * h3) * inv;
      T c2 = (1.0 - h1 * h1 - h2 * h2) * inv;
      T c3 = (p.r * h2r + h1 * h3) * inv;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          FMat<T> m = c1 * (p.x[i] * Fs[j] - p.x[j] * Fs[i]);
          m.axpy(c2, constant<T>(e_anti(n, i, j)));
          m.axpy(c3, p.x[i] * G2s[j] - p.x[j] * G2s[i]);
          put(o + i, o + j, m);
        }
      if (a.time_dependent())
        for (int i = 0; i < n; ++i) {
          FMat<T> m = h1t * Fs[i];
          m.axpy(h3t * p.x[i] - 2.0 * h2t * p.x[i], G1);
          m.axpy(h2t, G2s[i]);
          put(0, 1 + i, m);
        }
      break;
    }
    case AnsatzCase::so3:
    case AnsatzCase::sopq3:
      throw ValidationError("curvature_closed: no closed form for the three-dimensional cases at this order");
  }
  return F;
}

Curv<double> curvature_closed(const GaugeAnsatz& a, const std::vector<double>& y);
// Curvature at y + eps * dir, carrying the directional derivative.
Curv<Dual> curvature_closed_dual(const GaugeAnsatz& a, const std::vector<double>& y,
                                 const std::vector<double>& dir);
bool has_second_order_curvature(AnsatzCase c);

struct GroupElement;
// max_mu |B_mu(L x) - sum_nu Ad(L)(B_nu(x)) [L^{-1}]_{nu mu}|, divided by max(1, max|B|).
double equivariance_residual(const GaugeAnsatz& a, const GroupElement& L, const std::vector<double>& y);

}  // namespace eqym
