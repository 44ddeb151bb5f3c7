#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "common.hpp"

namespace eqym {

// Indices are 0-based throughout the library; slot 0 is the time-like direction.
struct Signature {
  int p = 0, q = 0;
  Signature() = default;
  Signature(int p_, int q_) : p(p_), q(q_) {}
  static Signature euclidean(int n) { return {n, 0}; }
  int n() const { return p + q; }
  int eps(int i) const { return i < p ? 1 : -1; }
  Mat diag() const;
  bool operator==(const Signature&) const = default;
};

int levi_civita(std::span<const int> idx);
inline int levi_civita(std::initializer_list<int> idx) {
  return levi_civita(std::span<const int>(idx.begin(), idx.size()));
}

Mat unit(int n, int i);      // column vector e_i
Mat e_anti(int n, int i, int j);  // e_i e_j^T - e_j e_i^T
Mat e_sym(int n, int i, int j);   // e_i e_j^T + e_j e_i^T
Mat e_diag(int n, int i, int j);  // e_i e_j^T
Mat e_bar(int k, int l);          // n = 4 dual element, [e_bar_{kl}]_{ij} = eps_{k i j l}
Mat f_gen(const Signature& s, int i, int j);     // e^A_{ij} I_{p,q}
Mat f_bar_gen(const Signature& s, int k, int l); // I_{p,q} e_bar_{kl}

enum class BasisKind { so, so_pq, so4_dual, sopq4_dual, su_split, spin_pq };

BasisKind parse_basis_kind(const std::string& s);
std::string to_string(BasisKind k);

struct BasisLabel {
  int i = 0, j = 0;
  int flag = 0;  // 0 antisymmetric/rotation, 1 symmetric/boost/dual, 2 diagonal
};

struct OrderedBasis {
  BasisKind kind = BasisKind::so;
  Signature sig;
  std::vector<CMat> elements;
  std::vector<BasisLabel> labels;

  int size() const { return static_cast<int>(elements.size()); }
  int dim() const { return sig.n(); }
  int index_of(int i, int j, int flag = 0) const;  // -1 if absent
  // Real coordinates of M in this basis and the reconstruction residual.
  Vec coordinates(const CMat& m, double* residual = nullptr) const;
  CMat combine(const Vec& c) const;

 private:
  mutable Mat pinv_;  // cached real pseudo-inverse of the vectorized elements
};

OrderedBasis build_basis(BasisKind kind, int n, int p = -1, int q = -1);

CMat commutator(const CMat& a, const CMat& b);
Mat commutator(const Mat& a, const Mat& b);
double jacobi_residual(const CMat& a, const CMat& b, const CMat& c);
cplx trace_pairing(const CMat& a, const CMat& b);

struct SuSplit {
  Mat antisym;
  Mat sym;
};
SuSplit su_split(const CMat& m);
CMat su_join(const SuSplit& s);

// Largest residual of re-expanding [E_a, E_b] in the basis itself.
double structure_residual(const OrderedBasis& b);

// Whether M satisfies M^T I + I M = 0 (real part; imaginary part must vanish).
double so_pq_relation(const CMat& m, const Signature& s);

}  // namespace eqym
