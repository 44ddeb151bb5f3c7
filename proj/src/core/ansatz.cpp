#include "ansatz.hpp"

#include <map>

#include "group.hpp"

namespace eqym {

namespace {
const std::map<std::string, AnsatzCase>& case_names() {
  static const std::map<std::string, AnsatzCase> m{
      {"so3", AnsatzCase::so3},     {"so4", AnsatzCase::so4},     {"son", AnsatzCase::son},
      {"sopq3", AnsatzCase::sopq3}, {"sopq4", AnsatzCase::sopq4}, {"sopqn", AnsatzCase::sopqn},
      {"sun", AnsatzCase::sun},     {"sun_h", AnsatzCase::sun_h}, {"iso_son", AnsatzCase::iso_son}};
  return m;
}
}  // namespace

AnsatzCase parse_ansatz_case(const std::string& s) {
  auto it = case_names().find(s);
  if (it == case_names().end()) throw ValidationError("unknown ansatz case: " + s);
  return it->second;
}

std::string to_string(AnsatzCase c) {
  for (const auto& [k, v] : case_names())
    if (v == c) return k;
  return "?";
}

std::vector<std::string> profile_names(AnsatzCase c) {
  switch (c) {
    case AnsatzCase::so3:
    case AnsatzCase::sopq3: return {"f", "g", "h"};
    case AnsatzCase::so4:
    case AnsatzCase::sopq4: return {"f", "g"};
    case AnsatzCase::sun: return {"g", "g1", "g2"};
    case AnsatzCase::sun_h: return {"h1", "h2", "h3"};
    default: return {"g"};
  }
}

GaugeAnsatz make_ansatz(AnsatzCase kind, const Signature& sig, std::vector<Profile> prof) {
  const int n = sig.n();
  require(sig.p >= 1 && sig.q >= 0, "ansatz: signature needs p >= 1");
  switch (kind) {
    case AnsatzCase::so3: require(sig == Signature(3, 0), "so3 ansatz needs Euclidean n=3"); break;
    case AnsatzCase::so4: require(sig == Signature(4, 0), "so4 ansatz needs Euclidean n=4"); break;
    case AnsatzCase::son:
    case AnsatzCase::iso_son: require(sig.q == 0 && n >= 3, "this ansatz needs Euclidean n >= 3"); break;
    case AnsatzCase::sopq3: require(n == 3, "sopq3 ansatz needs p+q=3"); break;
    case AnsatzCase::sopq4: require(n == 4, "sopq4 ansatz needs p+q=4"); break;
    case AnsatzCase::sopqn: require(n >= 3, "sopqn ansatz needs p+q >= 3"); break;
    case AnsatzCase::sun:
    case AnsatzCase::sun_h: require(sig.q == 0 && n >= 4, "SU(n) ansatz needs Euclidean n >= 4"); break;
  }
  require(prof.size() == profile_names(kind).size(), "ansatz: wrong number of profiles for " + to_string(kind));
  for (const auto& f : prof) require(static_cast<bool>(f), "ansatz: empty profile");
  GaugeAnsatz a;
  a.kind = kind;
  a.sig = sig;
  a.prof = std::move(prof);
  return a;
}

bool has_second_order_curvature(AnsatzCase c) { return c != AnsatzCase::so3 && c != AnsatzCase::sopq3; }

namespace {
// Curvature from exact first derivatives of B (forward mode), for cases without a closed-form formula.
Curv<double> curvature_from_field(const GaugeAnsatz& a, const std::vector<double>& y) {
  const int N = a.coord_dim();
  Field<double> B = ansatz_eval<double>(a, y);
  std::vector<Field<double>> dB(N);
  for (int al = 0; al < N; ++al) {
    std::vector<Dual> yd(y.begin(), y.end());
    yd[al].d = 1.0;
    Field<Dual> Bd = ansatz_eval<Dual>(a, yd);
    for (const auto& m : Bd) dB[al].push_back(deriv_part(m));
  }
  Curv<double> F(N, std::vector<FMat<double>>(N, FMat<double>(a.n(), a.complex_valued())));
  for (int al = 0; al < N; ++al)
    for (int be = 0; be < N; ++be)
      if (al != be) F[al][be] = dB[al][be] - dB[be][al] + bracket(B[al], B[be]);
  return F;
}
}  // namespace

Curv<double> curvature_closed(const GaugeAnsatz& a, const std::vector<double>& y) {
  if (!has_second_order_curvature(a.kind)) return curvature_from_field(a, y);
  return curvature_formula<double>(a, y);
}

Curv<Dual> curvature_closed_dual(const GaugeAnsatz& a, const std::vector<double>& y,
                                 const std::vector<double>& dir) {
  require(has_second_order_curvature(a.kind), "curvature_closed_dual: no closed form for this case");
  require(dir.size() == y.size(), "curvature_closed_dual: direction size mismatch");
  std::vector<Dual> yd;
  for (size_t k = 0; k < y.size(); ++k) yd.emplace_back(y[k], dir[k]);
  return curvature_formula<Dual>(a, yd);
}

double equivariance_residual(const GaugeAnsatz& a, const GroupElement& L, const std::vector<double>& y) {
  require(L.sig == a.sig, "equivariance_residual: group signature mismatch");
  const int n = a.n(), o = a.offset();
  Vec x(n);
  for (int i = 0; i < n; ++i) x(i) = y[o + i];
  Vec lx = L.m * x;
  std::vector<double> ly(y);
  for (int i = 0; i < n; ++i) ly[o + i] = lx(i);
  Field<double> B = ansatz_eval<double>(a, y), LB = ansatz_eval<double>(a, ly);
  Mat li = L.inverse();
  std::vector<FMat<double>> ad;
  double scale = 1.0, worst = 0;
  for (int nu = 0; nu < n; ++nu) {
    ad.push_back(adjoint(L, B[o + nu]));
    scale = std::max(scale, max_abs(B[o + nu]));
  }
  if (o) worst = max_abs(LB[0]);  // time component must stay zero
  for (int mu = 0; mu < n; ++mu) {
    FMat<double> d = LB[o + mu];
    for (int nu = 0; nu < n; ++nu) d.axpy(-li(nu, mu), ad[nu]);
    worst = std::max(worst, max_abs(d));
  }
  return worst / scale;
}

}  // namespace eqym
