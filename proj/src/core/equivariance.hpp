#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "group.hpp"

namespace eqym {

// Which space the stabilizer acts on.
enum class RepKind {
  vector_adjoint,     // R^n (x) so(p,q)
  vector_traceless,   // R^n (x) traceless symmetric matrices (the i*S part of su(n))
  adjoint_only,       // so(n) alone, no vector index
};

enum class Stabilizer { standard, identity };

struct FixedSpaceReport {
  Signature sig;
  RepKind rep = RepKind::vector_adjoint;
  int dimension = 0;
  int ambient = 0;
  Mat coords;  // orthonormal columns in the coordinates of `algebra`
  std::vector<TensorVector> basis;
  double max_residual = 0;
  double gap_ratio = 0;
  std::vector<double> singular_values;
  std::vector<std::string> generators_used;
};

OrderedBasis rep_algebra(const Signature& s, RepKind rep);
std::vector<GroupElement> stabilizer_generators(const Signature& s, Stabilizer st);
GroupElement random_stabilizer_element(const Signature& s, std::mt19937_64& rng);
// Product of standard elements over every index pair (rapidities in [-max_rapidity, max_rapidity]).
GroupElement random_group_element(const Signature& s, std::mt19937_64& rng, double max_rapidity = 0.8);
Mat rep_matrix(const GroupElement& g, const OrderedBasis& algebra, RepKind rep);

// Throws NumericalError when the singular value gap at the cut is below `min_gap`.
FixedSpaceReport fixed_space(const Signature& s, RepKind rep = RepKind::vector_adjoint,
                             Stabilizer st = Stabilizer::standard, double tol = 1e-9,
                             double min_gap = 1e3);

std::optional<int> expected_dimension(const Signature& s);
std::vector<TensorVector> closed_form_basis(const Signature& s);
std::vector<TensorVector> closed_form_su_basis(int n);

// Sines of the principal angles between two column spans (1.0 entries when ranks differ).
std::vector<double> principal_sines(const Mat& a, const Mat& b);
Mat coordinates_of(const std::vector<TensorVector>& vs, const OrderedBasis& algebra);

}  // namespace eqym
