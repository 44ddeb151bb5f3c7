#pragma once

#include "fmat.hpp"
#include "lie.hpp"

namespace eqym {

enum class ElementKind { rotation, boost, frame, general };

struct GroupElement {
  Mat m;
  Signature sig;
  ElementKind kind = ElementKind::general;

  Mat inverse() const;  // I g^T I
  GroupElement operator*(const GroupElement& o) const;
};

GroupElement identity_element(const Signature& s);
GroupElement standard_element(ElementKind kind, int i, int j, double param, const Signature& s);
// Max of |g^T I g - I| and |det g - 1|.
double group_defect(const GroupElement& g);

// Ad(g)(M) = g M I g^T I.
CMat adjoint(const GroupElement& g, const CMat& m);
FMat<double> adjoint(const GroupElement& g, const FMat<double>& m);
Mat adjoint_op(const GroupElement& g, const OrderedBasis& b);

// (I g I) (x) Ad(g), vector index major.
Mat rho_op(const GroupElement& g, const OrderedBasis& b);
TensorVector rho_apply(const GroupElement& g, const TensorVector& c);
Vec tensor_coordinates(const TensorVector& c, const OrderedBasis& b);
TensorVector tensor_from_coordinates(const Vec& v, const OrderedBasis& b);

// g with g * |x| e_1 = x; x must be time-like and future pointing.
GroupElement frame_matrix(const Vec& x, const Signature& s, bool* used_closed_form = nullptr);

// Spin algebra: coefficients over e_i x e_j (i<j), basis order of build_basis(so, ...).
CMat spin_lambda_d(const Vec& c, const Signature& s);
Vec spin_lambda_inv(const CMat& m, const Signature& s);
// The contraction 1/2 sum ((M e_k)^T I e_l) eps(k) eps(l), kept for comparison.
Vec spin_lambda_inv_printed(const CMat& m, const Signature& s);
// Matrix of lambda_d^{-1} o Ad(g) o lambda_d on spin coefficients.
Mat spin_adjoint(const GroupElement& g);

double killing_residual(const Vec& xi, const Mat& jac, const Mat& metric, const Mat& metric_along_xi);

}  // namespace eqym
