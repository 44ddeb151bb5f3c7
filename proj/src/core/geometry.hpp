#pragma once

#include <functional>
#include <vector>

#include "ansatz.hpp"

namespace eqym {

// Diagonal metric. Constant: I_{p,q} on coordinates x (slot 0 time-like).
// Isotropic: diag(e^{ft(r)}, -e^{fr(r)} I_n) on coordinates (t, x).
struct MetricSpec {
  enum class Kind { constant, isotropic };
  Kind kind = Kind::constant;
  Signature sig;
  int spatial = 0;
  Profile ft, fr;

  int dim() const { return kind == Kind::constant ? sig.n() : spatial + 1; }
  std::vector<double> diag(const std::vector<double>& y) const;
  std::vector<double> inverse_diag(const std::vector<double>& y) const;
  double sqrt_det(const std::vector<double>& y) const;
  int det_sign() const;
  // d/dx^beta log(sqrt|g| g^{beta beta} g^{alpha alpha})
  double log_term(int alpha, int beta, const std::vector<double>& y) const;
  // e^{-ft+fr} at radius r (1 for constant metrics)
  double wave_factor(double r) const;
};

MetricSpec constant_metric(const Signature& s);
MetricSpec isotropic_metric(int n, Profile ft, Profile fr);
MetricSpec flat_isotropic(int n);

void check_compatible(const GaugeAnsatz& a, const MetricSpec& m);

using FieldFn = std::function<TensorVector(const std::vector<double>&)>;

FieldFn ansatz_field(const GaugeAnsatz& a);

// Central differences for the partials plus the exact commutator.
Curv<double> curvature_fd(const FieldFn& field, const std::vector<double>& y, double step);

// sum_beta g^{bb} ([B_b, F_ab] + d_b F_ab + F_ab d_b log(sqrt|g| g^{bb} g^{aa}))
// Exact forward-mode derivatives of the closed-form curvature where available,
// central differences of the curvature otherwise.
TensorVector ym_residual(const GaugeAnsatz& a, const MetricSpec& m, const std::vector<double>& y,
                         double fallback_step = 1e-4);
// Everything by nested central differences of the field.
TensorVector ym_residual_fd(const FieldFn& field, const MetricSpec& m, const std::vector<double>& y,
                            double step);

// k-forms over N coordinates are stored by increasing index tuples in lexicographic order.
std::vector<std::vector<int>> form_indices(int N, int k);
std::vector<double> hodge_star(const std::vector<double>& coeffs, int k, const MetricSpec& m,
                               const std::vector<double>& y);
// Sign s with ** = s Id on k-forms for a constant diagonal metric.
int hodge_sign(int N, int k, const MetricSpec& m);

// (-1)^{N+1} sign(det g) * d_B * F, for constant metrics; equals ym_residual.
// Shares the curvature derivatives (and their fallback) with ym_residual.
TensorVector hodge_ym_residual(const GaugeAnsatz& a, const MetricSpec& m, const std::vector<double>& y,
                               double fallback_step = 1e-4);

double max_abs(const TensorVector& v);

}  // namespace eqym
