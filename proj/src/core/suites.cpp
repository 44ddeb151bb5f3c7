#include "suites.hpp"

#include <cmath>

namespace eqym {

void SuiteReport::add(const std::string& name, double residual, double tol) {
  if (tol < 0) tol = tolerance;
  IdentityCheck* it = nullptr;
  for (auto& c : items)
    if (c.name == name) it = &c;
  if (!it) {
    items.push_back({name});
    it = &items.back();
  }
  ++it->checked;
  if (!std::isfinite(residual)) residual = INFINITY;
  const bool bad = negative_control ? !(residual > tol) : !(residual < tol);
  if (bad) ++it->failed;
  it->max_residual = std::max(it->max_residual, residual);
}

double SuiteReport::max_residual() const {
  double m = 0;
  for (const auto& c : items) m = std::max(m, c.max_residual);
  return m;
}

double SuiteReport::min_residual() const {
  double m = INFINITY;
  for (const auto& c : items) m = std::min(m, c.max_residual);
  return m;
}

long SuiteReport::checked() const {
  long k = 0;
  for (const auto& c : items) k += c.checked;
  return k;
}

long SuiteReport::failed() const {
  long k = 0;
  for (const auto& c : items) k += c.failed;
  return k;
}

bool SuiteReport::passed() const {
  if (items.empty()) return false;
  if (!negative_control) return failed() == 0;
  // a control is detected when some sample of each identity exceeds the tolerance
  for (const auto& c : items)
    if (!(c.max_residual > tolerance)) return false;
  return true;
}

namespace {
double d(int a, int b) { return a == b ? 1.0 : 0.0; }
Mat C(const Mat& a, const Mat& b) { return a * b - b * a; }
double rel(const Mat& diff, const Mat& ref) { return max_abs(diff) / std::max(1.0, max_abs(ref)); }
}  // namespace

SuiteReport so4_lemma_suite(double tol) {
  SuiteReport rep;
  rep.suite = "commutators";
  rep.label = "so(4) and dual generators";
  rep.tolerance = tol;
  const int n = 4;
  auto eA = [](int i, int j) { return e_anti(4, i, j); };
  for (int k = 0; k < n; ++k)
    for (int b = 0; b < n; ++b)
      for (int l = 0; l < n; ++l)
        for (int a = 0; a < n; ++a) {
          Mat rhs = d(k, a) * eA(b, l) + d(b, a) * eA(l, k) + d(l, b) * eA(k, a) + d(l, k) * eA(a, b);
          rep.add("[e_kb, e_la]", rel(C(eA(k, b), eA(l, a)) - rhs, rhs));
          rep.add("[ebar_kb, ebar_la]", rel(C(e_bar(k, b), e_bar(l, a)) - rhs, rhs));
          Mat mixed = Mat::Zero(n, n);
          for (int m = 0; m < n; ++m)
            mixed += levi_civita({l, b, m, a}) * eA(k, m) + levi_civita({l, m, k, a}) * eA(b, m);
          rep.add("[e_kb, ebar_la]", rel(C(eA(k, b), e_bar(l, a)) - mixed, mixed));
        }
  for (int k = 0; k < n; ++k)
    for (int b = 0; b < n; ++b)
      for (int l = 0; l < n; ++l) {
        Mat rhs = eA(l, k) + d(b, k) * eA(b, l) + d(b, l) * eA(k, b);
        rep.add("[e_kb, e_lb]", rel(C(eA(k, b), eA(l, b)) - rhs, rhs));
        rep.add("[ebar_kb, ebar_lb]", rel(C(e_bar(k, b), e_bar(l, b)) - rhs, rhs));
        Mat mixed = Mat::Zero(n, n);
        for (int m = 0; m < n; ++m) mixed += levi_civita({l, m, k, b}) * eA(b, m);
        rep.add("[e_kb, ebar_lb]", rel(C(eA(k, b), e_bar(l, b)) - mixed, mixed));
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          for (int m = 0; m < n; ++m)
            for (int a = 0; a < n; ++a) {
              double lhs = 0;
              for (int b = 0; b < n; ++b) lhs += levi_civita({i, j, k, b}) * levi_civita({l, m, a, b});
              double rhs = d(i, l) * (d(j, m) * d(k, a) - d(j, a) * d(k, m)) +
                           d(i, m) * (d(j, a) * d(k, l) - d(j, l) * d(k, a)) +
                           d(i, a) * (d(j, l) * d(k, m) - d(j, m) * d(k, l));
              rep.add("epsilon contraction", std::abs(lhs - rhs));
            }
  return rep;
}

SuiteReport sopq_lemma_suite(const Signature& s, int samples, std::uint64_t seed, double tol) {
  require(s.p >= 1 && s.n() >= 2, "sopq_lemma_suite: need p >= 1 and n >= 2");
  SuiteReport rep;
  rep.suite = "commutators";
  rep.label = "so(" + std::to_string(s.p) + "," + std::to_string(s.q) + ")";
  rep.tolerance = tol;
  const int n = s.n();
  auto f = [&](int i, int j) { return f_gen(s, i, j); };
  auto ep = [&](int i) { return static_cast<double>(s.eps(i)); };
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      for (int l = 0; l < n; ++l)
        for (int b = 0; b < n; ++b) {
          Mat rhs = ep(a) * (d(l, a) * f(k, b) + d(b, a) * f(l, k)) + ep(k) * (d(k, l) * f(b, a) + d(b, k) * f(a, l));
          rep.add("[f_ka, f_lb]", rel(C(f(k, a), f(l, b)) - rhs, rhs));
        }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.5, 1.5);
  for (int t = 0; t < samples; ++t) {
    GroupElement g = random_group_element(s, rng);
    Vec x = g.m.col(0) * radius(rng);
    const double r2 = x.dot(s.diag() * x);
    std::vector<Mat> X(n, Mat::Zero(n, n));
    for (int m = 0; m < n; ++m)
      for (int k = 0; k < n; ++k) X[m] += x(k) * f(k, m);
    Mat sum = Mat::Zero(n, n);
    for (int b = 0; b < n; ++b) sum += x(b) * X[b];
    rep.add("sum x_b X_b", max_abs(sum));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Mat rhs = ep(a) * x(a) * X[b] - r2 * f(a, b) - ep(b) * x(b) * X[a];
        rep.add("[X_a, X_b]", rel(C(X[a], X[b]) - rhs, rhs));
        Mat rhs2 = -ep(b) * ((1 - d(a, b)) * X[a] + x(b) * f(a, b));
        rep.add("[X_b, f_ab]", rel(C(X[b], f(a, b)) - rhs2, rhs2));
      }
  }
  return rep;
}

namespace {
template <class T>
detail::Point<T> su_point(const std::vector<T>& x) {
  const int n = static_cast<int>(x.size());
  detail::Point<T> p{n, Signature(n, 0), T(0.0), x, T(0.0), T(0.0)};
  for (const auto& v : x) p.r2 += v * v;
  p.r = sqrt(p.r2);
  return p;
}

// d/dx_j of a matrix field at x, exactly.
template <class Fn>
FMat<double> partial(const Fn& fn, const std::vector<double>& x, int j) {
  std::vector<Dual> xd(x.begin(), x.end());
  xd[j].d = 1.0;
  return deriv_part(fn(su_point(xd)));
}

double rel(const FMat<double>& diff, const FMat<double>& ref) { return max_abs(diff) / std::max(1.0, max_abs(ref)); }

FMat<double> cst(const Mat& m) { return from_eigen(m); }
FMat<double> icst(const Mat& m) {
  FMat<double> o(static_cast<int>(m.rows()), true);
  for (int i = 0; i < o.n; ++i)
    for (int j = 0; j < o.n; ++j) o.imag(i, j) = m(i, j);
  return o;
}
}  // namespace

SuiteReport su_lemma_suite(int n, int samples, std::uint64_t seed, double tol) {
  require(n >= 2, "su_lemma_suite: need n >= 2");
  using namespace detail;
  SuiteReport rep;
  rep.suite = "commutators";
  rep.label = "su(" + std::to_string(n) + ") generator fields";
  rep.tolerance = tol;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  const Mat Id = Mat::Identity(n, n);
  auto eA = [n](int i, int j) { return e_anti(n, i, j); };
  auto eS = [n](int i, int j) { return e_sym(n, i, j); };
  for (int s = 0; s < samples; ++s) {
    std::vector<double> x(n);
    for (auto& v : x) v = nd(rng);
    auto p = su_point(x);
    const double r2 = p.r2;
    std::vector<FMat<double>> F, G2;
    for (int i = 0; i < n; ++i) {
      F.push_back(su_F(p, i));
      G2.push_back(su_G2(p, i));
    }
    FMat<double> G1 = su_G1(p);
    Mat xxT(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) xxT(i, j) = x[i] * x[j];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto dF = partial([i](const auto& q) { return su_F(q, i); }, x, j);
        FMat<double> e = (-1.0 / r2) * cst(eA(i, j));
        e.axpy(-2 * x[j] / r2, F[i]);
        rep.add("d_j F_i", rel(dF - e, e));
        auto dG1 = partial([](const auto& q) { return su_G1(q); }, x, j);
        e = (1.0 / r2) * G2[j];
        e.axpy(-4 * x[j] / r2, G1);
        rep.add("d_j G1", rel(dG1 - e, e));
        auto dxG1 = partial([i](const auto& q) { return q.x[i] * su_G1(q); }, x, j);
        e = (x[i] / r2) * G2[j];
        e.axpy(d(i, j) - 4 * x[i] * x[j] / r2, G1);
        rep.add("d_j (x_i G1)", rel(dxG1 - e, e));
        auto dG2 = partial([i](const auto& q) { return su_G2(q, i); }, x, j);
        e = (-2 * x[j] / r2) * G2[i];
        e.axpy(1.0 / r2, icst(eS(i, j) - 2 * d(i, j) / n * Id));
        rep.add("d_j G2_i", rel(dG2 - e, e));
        e = (-1.0 / r2) * cst(eA(i, j));
        e.axpy(x[i] / r2, F[j]);
        e.axpy(-x[j] / r2, F[i]);
        rep.add("[F_i, F_j]", rel(bracket(F[i], F[j]) - e, e));
        e = (-1.0 / r2) * cst(eA(i, j));
        e.axpy(-x[i] / r2, F[j]);
        e.axpy(x[j] / r2, F[i]);
        rep.add("[G2_i, G2_j]", rel(bracket(G2[i], G2[j]) - e, e));
        e = icst(-eS(i, j) / r2 + 2 * d(i, j) / (r2 * r2) * xxT);
        e.axpy(x[i] / r2, G2[j]);
        e.axpy(-x[j] / r2, G2[i]);
        rep.add("[F_i, G2_j]", rel(bracket(F[i], G2[j]) - e, e));
      }
    FMat<double> sF(n, true), sG2(n, true), sdF(n, true), sdG2(n, true), sdxG1(n, true), sFG2(n, true),
        sFxG1(n, true), sG2xG1(n, true);
    for (int i = 0; i < n; ++i) {
      FMat<double> e = (2 * x[i] / r2) * G1;
      e.axpy(-1.0 / r2, G2[i]);
      rep.add("[F_i, G1]", rel(bracket(F[i], G1) - e, e));
      e = (1.0 / r2) * F[i];
      rep.add("[G2_i, G1]", rel(bracket(G2[i], G1) - e, e));
      sF.axpy(x[i], F[i]);
      sG2.axpy(x[i], G2[i]);
      sdF += partial([i](const auto& q) { return su_F(q, i); }, x, i);
      sdG2 += partial([i](const auto& q) { return su_G2(q, i); }, x, i);
      sdxG1 += partial([i](const auto& q) { return q.x[i] * su_G1(q); }, x, i);
      sFG2 += bracket(F[i], G2[i]);
      sFxG1 += bracket(F[i], x[i] * G1);
      sG2xG1 += bracket(G2[i], x[i] * G1);
    }
    rep.add("sum x_j F_j", max_abs(sF));
    FMat<double> e = (2 * r2) * G1;
    rep.add("sum x_j G2_j", rel(sG2 - e, e));
    rep.add("sum d_j F_j", max_abs(sdF));
    e = -4.0 * G1;
    rep.add("sum d_j G2_j", rel(sdG2 - e, e));
    e = double(n - 2) * G1;
    rep.add("sum d_j (x_j G1)", rel(sdxG1 - e, e));
    e = double(2 * n) * G1;
    rep.add("sum [F_j, G2_j]", rel(sFG2 - e, e));
    rep.add("sum [F_j, x_j G1]", max_abs(sFxG1));
    rep.add("sum [G2_j, x_j G1]", max_abs(sG2xG1));
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        for (int j = 0; j < n; ++j) {
          Mat aa = d(i, l) * eA(k, j) + d(i, j) * eA(l, k) - d(k, l) * eA(i, j) - d(k, j) * eA(l, i);
          rep.add("[e^A_ki, e^A_lj]", rel(C(eA(k, i), eA(l, j)) - aa, aa));
          // [i S, i S'] = -[S, S']
          Mat ss = -d(l, i) * eA(k, j) + d(j, i) * eA(l, k) - d(l, k) * eA(i, j) + d(k, j) * eA(l, i);
          rep.add("[i e^S_ki, i e^S_lj]", rel(Mat(-C(eS(k, i), eS(l, j))) - ss, ss));
          Mat as = d(i, l) * eS(k, j) + d(i, j) * eS(k, l) - d(k, l) * eS(i, j) - d(k, j) * eS(i, l);
          rep.add("[e^A_ki, i e^S_lj]", rel(C(eA(k, i), eS(l, j)) - as, as));
        }
  return rep;
}

SuiteReport structure_suite(int n, double tol) {
  SuiteReport rep;
  rep.suite = "commutators";
  rep.label = "structure constants, n=" + std::to_string(n);
  rep.tolerance = tol;
  for (int p = n; p >= 1; --p) {
    auto b = build_basis(p == n ? BasisKind::so : BasisKind::so_pq, n, p, n - p);
    rep.add("so_pq closure", structure_residual(b));
    rep.add("spin closure", structure_residual(build_basis(BasisKind::spin_pq, n, p, n - p)));
  }
  rep.add("su closure", structure_residual(build_basis(BasisKind::su_split, n)));
  if (n == 4) {
    rep.add("so4 dual closure", structure_residual(build_basis(BasisKind::so4_dual, 4)));
    for (int p = 1; p <= 3; ++p) rep.add("sopq4 dual closure", structure_residual(build_basis(BasisKind::sopq4_dual, 4, p, 4 - p)));
  }
  return rep;
}

std::vector<Profile> random_profiles(AnsatzCase c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> amp(0.2, 0.6), freq(0.4, 1.1), tf(0.3, 0.9), ph(0, 2 * M_PI), off(-0.4, 0.4);
  const bool timed = c == AnsatzCase::sun_h || c == AnsatzCase::iso_son;
  std::vector<Profile> out;
  for (size_t k = 0; k < profile_names(c).size(); ++k) {
    const double a = amp(rng), b = freq(rng), w = timed ? tf(rng) : 0.0, p = ph(rng), e = off(rng);
    out.push_back(wave_profile(a, b, w, p, e));
  }
  return out;
}

MetricSpec random_metric(const GaugeAnsatz& a, std::mt19937_64& rng, bool flat) {
  if (!a.time_dependent()) return constant_metric(a.sig);
  if (flat) return flat_isotropic(a.n());
  std::uniform_real_distribution<double> amp(0.05, 0.25), freq(0.3, 0.9), ph(0, 2 * M_PI);
  Profile ft = wave_profile(amp(rng), freq(rng), 0, ph(rng), 0);
  Profile fr = wave_profile(amp(rng), freq(rng), 0, ph(rng), 0);
  return isotropic_metric(a.n(), ft, fr);
}

std::vector<double> random_point(const GaugeAnsatz& a, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> radius(0.6, 1.4), time(0.1, 0.9);
  GroupElement g = random_group_element(a.sig, rng);
  Vec x = g.m.col(0) * radius(rng);
  std::vector<double> y;
  if (a.time_dependent()) y.push_back(time(rng));
  for (int i = 0; i < a.n(); ++i) y.push_back(x(i));
  return y;
}

GaugeAnsatz random_ansatz(AnsatzCase c, const Signature& s, std::mt19937_64& rng) {
  return make_ansatz(c, s, random_profiles(c, rng));
}

namespace {
std::string case_label(AnsatzCase c, const Signature& s) {
  return to_string(c) + " (" + std::to_string(s.p) + "," + std::to_string(s.q) + ")";
}
}  // namespace

SuiteReport equivariance_suite(AnsatzCase c, const Signature& s, int samples, std::uint64_t seed, double corrupt,
                               double tol, bool control) {
  std::mt19937_64 rng(seed);
  SuiteReport rep;
  rep.suite = "equivariance";
  rep.label = case_label(c, s) + (corrupt != 0 ? " corrupted" : "");
  rep.negative_control = control && corrupt != 0;
  rep.tolerance = rep.negative_control ? 1e-3 : tol;
  for (int k = 0; k < samples; ++k) {
    GaugeAnsatz a = random_ansatz(c, s, rng);
    a.corrupt = corrupt;
    auto y = random_point(a, rng);
    GroupElement L = random_group_element(s, rng);
    rep.add("B(Lx) = Ad(L) B(x) L^-1", equivariance_residual(a, L, y));
  }
  return rep;
}

SuiteReport curvature_suite(AnsatzCase c, const Signature& s, int samples, std::uint64_t seed, double step,
                            double tol) {
  std::mt19937_64 rng(seed);
  SuiteReport rep;
  rep.suite = "curvature";
  rep.label = case_label(c, s);
  rep.tolerance = tol;
  for (int k = 0; k < samples; ++k) {
    GaugeAnsatz a = random_ansatz(c, s, rng);
    auto y = random_point(a, rng);
    auto F = curvature_closed(a, y);
    auto Ff = curvature_fd(ansatz_field(a), y, step);
    double diff = 0, scale = 1;
    for (size_t i = 0; i < F.size(); ++i)
      for (size_t j = 0; j < F.size(); ++j) {
        diff = std::max(diff, max_abs(F[i][j] - Ff[i][j]));
        scale = std::max(scale, max_abs(F[i][j]));
      }
    rep.add("closed form vs central differences", diff / scale);
  }
  return rep;
}

SuiteReport projection_suite(AnsatzCase c, const Signature& s, int samples, std::uint64_t seed, bool flat,
                             double tol) {
  std::mt19937_64 rng(seed);
  SuiteReport rep;
  rep.suite = "projection";
  rep.label = case_label(c, s) + (flat ? " flat" : "");
  rep.tolerance = tol;
  for (int k = 0; k < samples; ++k) {
    GaugeAnsatz a = random_ansatz(c, s, rng);
    MetricSpec m = random_metric(a, rng, flat);
    auto y = random_point(a, rng);
    auto pc = projection_check(a, m, y);
    rep.add("projected residual vs reduced equations", pc.error);
    if (a.time_dependent()) {
      auto R = ym_residual(a, m, y);
      if (c == AnsatzCase::iso_son) rep.add("time component", max_abs(R[0]) / std::max(1.0, max_abs(R)));
    }
  }
  return rep;
}

SuiteReport hodge_suite(AnsatzCase c, const Signature& s, int samples, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  SuiteReport rep;
  rep.suite = "hodge";
  rep.label = case_label(c, s);
  rep.tolerance = tol;
  for (int k = 0; k < samples; ++k) {
    GaugeAnsatz a = random_ansatz(c, s, rng);
    MetricSpec m = constant_metric(s);
    auto y = random_point(a, rng);
    auto R = ym_residual(a, m, y), H = hodge_ym_residual(a, m, y);
    double diff = 0;
    for (size_t i = 0; i < R.size(); ++i) diff = std::max(diff, max_abs(R[i] - H[i]));
    rep.add("hodge path vs direct rewriting", diff / std::max(1.0, max_abs(R)));
  }
  return rep;
}

SuiteReport spin_lift_suite(AnsatzCase c, const Signature& s, int samples, std::uint64_t seed, double corrupt,
                            double max_inflation) {
  require(c != AnsatzCase::sun && c != AnsatzCase::sun_h, "spin lift applies to so(p,q)-valued ansatz cases");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  SuiteReport rep;
  rep.suite = "spin";
  rep.label = case_label(c, s) + (corrupt != 0 ? " corrupted" : "");
  rep.tolerance = max_inflation;
  const int n = s.n(), d = n * (n - 1) / 2;
  const double floor = 1e-14;
  for (int k = 0; k < samples; ++k) {
    Vec coef(d);
    for (int i = 0; i < d; ++i) coef(i) = nd(rng);
    Vec back = spin_lambda_inv(spin_lambda_d(coef, s), s);
    rep.add("lambda_d roundtrip", (back - coef).cwiseAbs().maxCoeff(), 1e-13);
    CMat m = spin_lambda_d(coef, s);
    Vec printed = spin_lambda_inv_printed(m, s);
    rep.add("printed contraction = -inverse", (printed + back).cwiseAbs().maxCoeff(), 1e-13);

    GaugeAnsatz a = random_ansatz(c, s, rng);
    a.corrupt = corrupt;
    auto y = random_point(a, rng);
    GroupElement L = random_group_element(s, rng);
    const int o = a.offset();
    std::vector<double> ly(y);
    Vec x(n);
    for (int i = 0; i < n; ++i) x(i) = y[o + i];
    Vec lx = L.m * x;
    for (int i = 0; i < n; ++i) ly[o + i] = lx(i);
    auto B = ansatz_eval<double>(a, y), LB = ansatz_eval<double>(a, ly);
    Mat sa = spin_adjoint(L), li = L.inverse();
    std::vector<Vec> C, LC;
    double scale = 1;
    for (int mu = 0; mu < n; ++mu) {
      C.push_back(spin_lambda_inv(to_eigen(B[o + mu]), s));
      LC.push_back(spin_lambda_inv(to_eigen(LB[o + mu]), s));
      scale = std::max(scale, C.back().cwiseAbs().maxCoeff());
    }
    double lifted = 0;
    for (int mu = 0; mu < n; ++mu) {
      Vec dv = LC[mu];
      for (int nu = 0; nu < n; ++nu) dv -= li(nu, mu) * (sa * C[nu]);
      lifted = std::max(lifted, dv.cwiseAbs().maxCoeff());
    }
    lifted /= scale;
    const double base = equivariance_residual(a, L, y);
    rep.add("lifted residual inflation", (lifted + floor) / (base + floor));
  }
  return rep;
}

SuiteReport hodge_sign_suite(int max_n, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  SuiteReport rep;
  rep.suite = "hodge";
  rep.label = "** sign law";
  rep.tolerance = tol;
  for (int N = 1; N <= max_n; ++N)
    for (int p = 0; p <= N; ++p) {
      MetricSpec m = constant_metric(Signature(p, N - p));
      std::vector<double> y(N, 0.0);
      for (int k = 0; k <= N; ++k) {
        std::vector<double> c(form_indices(N, k).size());
        for (auto& v : c) v = nd(rng);
        auto twice = hodge_star(hodge_star(c, k, m, y), N - k, m, y);
        const int s = hodge_sign(N, k, m);
        double diff = 0;
        for (size_t i = 0; i < c.size(); ++i) diff = std::max(diff, std::abs(twice[i] - s * c[i]));
        rep.add("** = (-1)^{k(N-k)} sign(det g)", diff);
      }
    }
  return rep;
}

}  // namespace eqym
