#pragma once

// Small independent helpers shared by the unit tests. Nothing here calls the library.

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <vector>

namespace oracle {

// Permutation sign by counting inversions, 0 on repeats.
inline int perm_sign(std::vector<int> v) {
  int s = 1;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j) {
      if (v[i] == v[j]) return 0;
      if (v[i] > v[j]) s = -s;
    }
  return s;
}

inline Eigen::MatrixXd anti(int n, int i, int j) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m(i, j) = 1;
  m(j, i) = -1;
  return m;
}

inline Eigen::MatrixXd sym(int n, int i, int j) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m(i, j) += 1;
  m(j, i) += 1;
  return m;
}

// X_b(x) with [X_b]_{ij} = delta_{jb} x_i - delta_{ib} x_j
inline Eigen::MatrixXd X(const Eigen::VectorXd& x, int b) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, b) += x(i);
    m(b, i) -= x(i);
  }
  return m;
}

// Greedy multiset match of complex values; returns the largest pairing distance.
inline double multiset_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b) {
  if (a.size() != b.size()) return 1e300;
  double worst = 0;
  for (const auto& z : a) {
    auto it = std::min_element(b.begin(), b.end(),
                               [&](const auto& u, const auto& v) { return std::abs(u - z) < std::abs(v - z); });
    worst = std::max(worst, std::abs(*it - z));
    b.erase(it);
  }
  return worst;
}

}  // namespace oracle
