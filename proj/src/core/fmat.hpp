#pragma once

#include <vector>

#include "common.hpp"
#include "dual.hpp"

namespace eqym {

// Small dense square matrix with optional imaginary part, generic over the scalar.
template <class T>
struct FMat {
  int n = 0;
  bool cx = false;
  std::vector<T> re, im;

  FMat() = default;
  FMat(int size, bool complex_valued) : n(size), cx(complex_valued), re(size * size, T(0.0)) {
    if (cx) im.assign(size * size, T(0.0));
  }

  T& operator()(int i, int j) { return re[i * n + j]; }
  const T& operator()(int i, int j) const { return re[i * n + j]; }
  T& imag(int i, int j) { return im[i * n + j]; }
  const T& imag(int i, int j) const { return im[i * n + j]; }

  void make_complex() {
    if (!cx) {
      cx = true;
      im.assign(n * n, T(0.0));
    }
  }

  FMat& operator+=(const FMat& o) {
    if (o.cx) make_complex();
    for (int k = 0; k < n * n; ++k) re[k] += o.re[k];
    if (o.cx)
      for (int k = 0; k < n * n; ++k) im[k] += o.im[k];
    return *this;
  }
  FMat& operator-=(const FMat& o) {
    if (o.cx) make_complex();
    for (int k = 0; k < n * n; ++k) re[k] -= o.re[k];
    if (o.cx)
      for (int k = 0; k < n * n; ++k) im[k] -= o.im[k];
    return *this;
  }
  FMat& operator*=(const T& s) {
    for (auto& v : re) v *= s;
    for (auto& v : im) v *= s;
    return *this;
  }
  // Adds s * o.
  void axpy(const T& s, const FMat& o) {
    if (o.cx) make_complex();
    for (int k = 0; k < n * n; ++k) re[k] += s * o.re[k];
    if (o.cx)
      for (int k = 0; k < n * n; ++k) im[k] += s * o.im[k];
  }
  // Adds i * s * o.
  void axpy_i(const T& s, const FMat& o) {
    make_complex();
    for (int k = 0; k < n * n; ++k) im[k] += s * o.re[k];
    if (o.cx)
      for (int k = 0; k < n * n; ++k) re[k] -= s * o.im[k];
  }
};

template <class T>
FMat<T> operator+(FMat<T> a, const FMat<T>& b) { return a += b; }
template <class T>
FMat<T> operator-(FMat<T> a, const FMat<T>& b) { return a -= b; }
template <class T>
FMat<T> operator*(const T& s, FMat<T> a) { return a *= s; }

template <class T>
FMat<T> matmul(const FMat<T>& a, const FMat<T>& b) {
  const int n = a.n;
  FMat<T> c(n, a.cx || b.cx);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const T ar = a.re[i * n + k];
      for (int j = 0; j < n; ++j) c.re[i * n + j] += ar * b.re[k * n + j];
      if (b.cx)
        for (int j = 0; j < n; ++j) c.im[i * n + j] += ar * b.im[k * n + j];
      if (a.cx) {
        const T ai = a.im[i * n + k];
        for (int j = 0; j < n; ++j) c.im[i * n + j] += ai * b.re[k * n + j];
        if (b.cx)
          for (int j = 0; j < n; ++j) c.re[i * n + j] -= ai * b.im[k * n + j];
      }
    }
  return c;
}

template <class T>
FMat<T> bracket(const FMat<T>& a, const FMat<T>& b) {
  return matmul(a, b) - matmul(b, a);
}

template <class T>
FMat<double> value_part(const FMat<T>& a) {
  FMat<double> out(a.n, a.cx);
  for (size_t k = 0; k < a.re.size(); ++k) out.re[k] = value_of(a.re[k]);
  for (size_t k = 0; k < a.im.size(); ++k) out.im[k] = value_of(a.im[k]);
  return out;
}

template <class T>
FMat<double> deriv_part(const FMat<T>& a) {
  FMat<double> out(a.n, a.cx);
  for (size_t k = 0; k < a.re.size(); ++k) out.re[k] = deriv_of(a.re[k]);
  for (size_t k = 0; k < a.im.size(); ++k) out.im[k] = deriv_of(a.im[k]);
  return out;
}

inline double max_abs(const FMat<double>& a) {
  double m = 0;
  for (double v : a.re) m = std::max(m, std::abs(v));
  for (double v : a.im) m = std::max(m, std::abs(v));
  return m;
}

inline CMat to_eigen(const FMat<double>& a) {
  CMat m(a.n, a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) m(i, j) = cplx(a(i, j), a.cx ? a.imag(i, j) : 0.0);
  return m;
}

inline FMat<double> from_eigen(const CMat& m) {
  const int n = static_cast<int>(m.rows());
  bool cx = m.imag().cwiseAbs().maxCoeff() > 0;
  FMat<double> a(n, cx);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      a(i, j) = m(i, j).real();
      if (cx) a.imag(i, j) = m(i, j).imag();
    }
  return a;
}

inline FMat<double> from_eigen(const Mat& m) {
  const int n = static_cast<int>(m.rows());
  FMat<double> a(n, false);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = m(i, j);
  return a;
}

// One algebra matrix per vector index: an element of R^n (x) g, or a connection at a point.
using TensorVector = std::vector<FMat<double>>;

}  // namespace eqym
