#include "geometry.hpp"

#include <cmath>

namespace eqym {

namespace {
double radius(const std::vector<double>& y, int from) {
  double s = 0;
  for (size_t i = from; i < y.size(); ++i) s += y[i] * y[i];
  return std::sqrt(s);
}
}  // namespace

std::vector<double> MetricSpec::diag(const std::vector<double>& y) const {
  std::vector<double> d(dim());
  if (kind == Kind::constant) {
    for (int i = 0; i < dim(); ++i) d[i] = sig.eps(i);
    return d;
  }
  const double r = radius(y, 1);
  d[0] = std::exp(ft(0, r).v);
  const double s = -std::exp(fr(0, r).v);
  for (int i = 1; i < dim(); ++i) d[i] = s;
  return d;
}

std::vector<double> MetricSpec::inverse_diag(const std::vector<double>& y) const {
  auto d = diag(y);
  for (auto& v : d) {
    require(v != 0 && std::isfinite(v), "metric is degenerate at this point");
    v = 1.0 / v;
  }
  return d;
}

double MetricSpec::sqrt_det(const std::vector<double>& y) const {
  double p = 1;
  for (double v : diag(y)) p *= std::abs(v);
  return std::sqrt(p);
}

int MetricSpec::det_sign() const {
  if (kind == Kind::isotropic) return spatial % 2 ? -1 : 1;
  return sig.q % 2 ? -1 : 1;
}

double MetricSpec::log_term(int alpha, int beta, const std::vector<double>& y) const {
  if (kind == Kind::constant || beta == 0) return 0.0;
  const double r = radius(y, 1);
  const double dft = ft(0, r).r, dfr = fr(0, r).r;
  // log sqrt|g| = (ft + n fr)/2, log |g^{mm}| = -f_m
  double d = 0.5 * (dft + spatial * dfr) - dfr - (alpha == 0 ? dft : dfr);
  return d * y[beta] / r;
}

double MetricSpec::wave_factor(double r) const {
  if (kind == Kind::constant) return 1.0;
  return std::exp(-ft(0, r).v + fr(0, r).v);
}

MetricSpec constant_metric(const Signature& s) {
  MetricSpec m;
  m.kind = MetricSpec::Kind::constant;
  m.sig = s;
  return m;
}

MetricSpec isotropic_metric(int n, Profile ft, Profile fr) {
  require(n >= 1, "isotropic metric needs n >= 1");
  MetricSpec m;
  m.kind = MetricSpec::Kind::isotropic;
  m.sig = Signature(1, n);
  m.spatial = n;
  m.ft = ft ? std::move(ft) : constant_profile(0);
  m.fr = fr ? std::move(fr) : constant_profile(0);
  return m;
}

MetricSpec flat_isotropic(int n) { return isotropic_metric(n, nullptr, nullptr); }

void check_compatible(const GaugeAnsatz& a, const MetricSpec& m) {
  if (a.time_dependent())
    require(m.kind == MetricSpec::Kind::isotropic && m.spatial == a.n(),
            "time-dependent ansatz needs an isotropic metric of the same spatial dimension");
  else
    require(m.kind == MetricSpec::Kind::constant && m.sig == a.sig,
            "static ansatz needs the constant metric of its own signature");
}

FieldFn ansatz_field(const GaugeAnsatz& a) {
  return [a](const std::vector<double>& y) { return ansatz_eval<double>(a, y); };
}

double max_abs(const TensorVector& v) {
  double m = 0;
  for (const auto& x : v) m = std::max(m, max_abs(x));
  return m;
}

Curv<double> curvature_fd(const FieldFn& field, const std::vector<double>& y, double step) {
  require(step > 0, "curvature_fd: step must be positive");
  const int N = static_cast<int>(y.size());
  TensorVector B = field(y);
  require(static_cast<int>(B.size()) == N, "curvature_fd: field must have one component per coordinate");
  std::vector<TensorVector> dB(N);
  for (int al = 0; al < N; ++al) {
    auto yp = y, ym = y;
    yp[al] += step;
    ym[al] -= step;
    TensorVector bp = field(yp), bm = field(ym);
    for (int mu = 0; mu < N; ++mu) {
      FMat<double> d = bp[mu] - bm[mu];
      d *= 1.0 / (2 * step);
      dB[al].push_back(d);
    }
  }
  const int n = B[0].n;
  bool cx = false;
  for (const auto& b : B) cx = cx || b.cx;
  Curv<double> F(N, std::vector<FMat<double>>(N, FMat<double>(n, cx)));
  for (int al = 0; al < N; ++al)
    for (int be = al + 1; be < N; ++be) {
      FMat<double> f = dB[al][be] - dB[be][al] + bracket(B[al], B[be]);
      F[al][be] = f;
      f *= -1.0;
      F[be][al] = f;
    }
  return F;
}

namespace {
TensorVector assemble_ym(const TensorVector& B, const Curv<double>& F, const std::vector<Curv<double>>& dF,
                         const MetricSpec& m, const std::vector<double>& y) {
  const int N = static_cast<int>(y.size());
  auto gi = m.inverse_diag(y);
  TensorVector R;
  for (int al = 0; al < N; ++al) {
    FMat<double> s(B[0].n, F[0][0].cx);
    for (int be = 0; be < N; ++be) {
      if (be == al) continue;
      FMat<double> t = bracket(B[be], F[al][be]) + dF[be][al][be];
      t.axpy(m.log_term(al, be, y), F[al][be]);
      s.axpy(gi[be], t);
    }
    R.push_back(s);
  }
  return R;
}
}  // namespace

namespace {
// dF[beta][i][j]: exact forward-mode derivatives where the closed form allows,
// central differences of the exact curvature otherwise.
std::vector<Curv<double>> curvature_derivatives(const GaugeAnsatz& a, const std::vector<double>& y, double step) {
  const int N = a.coord_dim();
  std::vector<Curv<double>> dF(N);
  for (int be = 0; be < N; ++be) {
    dF[be].assign(N, {});
    if (has_second_order_curvature(a.kind)) {
      std::vector<double> dir(N, 0.0);
      dir[be] = 1.0;
      Curv<Dual> Fd = curvature_closed_dual(a, y, dir);
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) dF[be][i].push_back(deriv_part(Fd[i][j]));
    } else {
      auto yp = y, ym = y;
      yp[be] += step;
      ym[be] -= step;
      Curv<double> Fp = curvature_closed(a, yp), Fm = curvature_closed(a, ym);
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          FMat<double> d = Fp[i][j] - Fm[i][j];
          d *= 1.0 / (2 * step);
          dF[be][i].push_back(d);
        }
    }
  }
  return dF;
}
}  // namespace

TensorVector ym_residual(const GaugeAnsatz& a, const MetricSpec& m, const std::vector<double>& y,
                         double fallback_step) {
  check_compatible(a, m);
  require(static_cast<int>(y.size()) == a.coord_dim(), "ym_residual: coordinate dimension mismatch");
  TensorVector B = ansatz_eval<double>(a, y);
  return assemble_ym(B, curvature_closed(a, y), curvature_derivatives(a, y, fallback_step), m, y);
}

TensorVector ym_residual_fd(const FieldFn& field, const MetricSpec& m, const std::vector<double>& y,
                            double step) {
  const int N = static_cast<int>(y.size());
  require(m.dim() == N, "ym_residual_fd: metric dimension mismatch");
  TensorVector B = field(y);
  Curv<double> F = curvature_fd(field, y, step);
  std::vector<Curv<double>> dF(N);
  for (int be = 0; be < N; ++be) {
    auto yp = y, ym = y;
    yp[be] += step;
    ym[be] -= step;
    Curv<double> Fp = curvature_fd(field, yp, step), Fm = curvature_fd(field, ym, step);
    dF[be].assign(N, {});
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        FMat<double> d = Fp[i][j] - Fm[i][j];
        d *= 1.0 / (2 * step);
        dF[be][i].push_back(d);
      }
  }
  return assemble_ym(B, F, dF, m, y);
}

std::vector<std::vector<int>> form_indices(int N, int k) {
  require(N >= 1 && k >= 0 && k <= N, "form_indices: need 0 <= k <= N");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < N; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

namespace {
// For each k-index I: the complementary index J and the factor sqrt|g| prod g^{ii} eps_{I J}.
struct StarMap {
  std::vector<int> target;
  std::vector<double> factor;
};

StarMap star_map(int N, int k, const std::vector<double>& gi, double sqrt_g) {
  auto src = form_indices(N, k), dst = form_indices(N, N - k);
  StarMap sm;
  for (const auto& I : src) {
    std::vector<int> J;
    for (int i = 0; i < N; ++i)
      if (std::find(I.begin(), I.end(), i) == I.end()) J.push_back(i);
    std::vector<int> all(I);
    all.insert(all.end(), J.begin(), J.end());
    double f = sqrt_g * levi_civita(std::span<const int>(all.data(), all.size()));
    for (int i : I) f *= gi[i];
    sm.target.push_back(static_cast<int>(std::find(dst.begin(), dst.end(), J) - dst.begin()));
    sm.factor.push_back(f);
  }
  return sm;
}

template <class C>
std::vector<C> apply_star(const std::vector<C>& coeffs, const StarMap& sm, const C& zero) {
  std::vector<C> out(coeffs.size(), zero);
  for (size_t a = 0; a < coeffs.size(); ++a) {
    C v = coeffs[a];
    v *= sm.factor[a];
    out[sm.target[a]] += v;
  }
  return out;
}

int position(const std::vector<std::vector<int>>& idx, const std::vector<int>& I) {
  return static_cast<int>(std::find(idx.begin(), idx.end(), I) - idx.begin());
}
}  // namespace

std::vector<double> hodge_star(const std::vector<double>& coeffs, int k, const MetricSpec& m,
                               const std::vector<double>& y) {
  const int N = m.dim();
  auto idx = form_indices(N, k);
  require(coeffs.size() == idx.size(), "hodge_star: coefficient count does not match the form degree");
  return apply_star(coeffs, star_map(N, k, m.inverse_diag(y), m.sqrt_det(y)), 0.0);
}

int hodge_sign(int N, int k, const MetricSpec& m) { return ((k * (N - k)) % 2 ? -1 : 1) * m.det_sign(); }

TensorVector hodge_ym_residual(const GaugeAnsatz& a, const MetricSpec& m, const std::vector<double>& y,
                               double fallback_step) {
  require(m.kind == MetricSpec::Kind::constant, "hodge path is implemented for constant metrics only");
  check_compatible(a, m);
  require(static_cast<int>(y.size()) == a.coord_dim(), "hodge path: coordinate dimension mismatch");
  const int N = a.coord_dim(), n = a.n();
  require(N <= 5, "hodge path is limited to N <= 5");
  auto gi = m.inverse_diag(y);
  const double sg = m.sqrt_det(y);
  auto two = form_indices(N, 2), nm1 = form_indices(N, N - 1), nm2 = form_indices(N, N - 2);
  StarMap s2 = star_map(N, 2, gi, sg), sN1 = star_map(N, N - 1, gi, sg);
  const FMat<double> zero(n, a.complex_valued());

  auto as_form = [&](const auto& F) {
    using M = std::decay_t<decltype(F[0][0])>;
    std::vector<M> c;
    for (const auto& I : two) c.push_back(F[I[0]][I[1]]);
    return c;
  };
  TensorVector B = ansatz_eval<double>(a, y);
  auto G = apply_star(as_form(curvature_closed(a, y)), s2, zero);
  auto dF = curvature_derivatives(a, y, fallback_step);
  std::vector<std::vector<FMat<double>>> dG(N);
  for (int ga = 0; ga < N; ++ga) dG[ga] = apply_star(as_form(dF[ga]), s2, zero);
  // d_B G = sum dx^g ^ (d_g G_J + [B_g, G_J]) dx^J
  std::vector<FMat<double>> K(nm1.size(), zero);
  for (int ga = 0; ga < N; ++ga)
    for (size_t j = 0; j < nm2.size(); ++j) {
      const auto& J = nm2[j];
      if (std::find(J.begin(), J.end(), ga) != J.end()) continue;
      std::vector<int> all{ga};
      all.insert(all.end(), J.begin(), J.end());
      const int sgn = levi_civita(std::span<const int>(all.data(), all.size())) != 0 ? 1 : 0;
      std::vector<int> sorted(all);
      std::sort(sorted.begin(), sorted.end());
      // sign of the permutation taking (g, J) to sorted order
      int inv = 0;
      for (size_t u = 0; u < all.size(); ++u)
        for (size_t v = u + 1; v < all.size(); ++v)
          if (all[u] > all[v]) ++inv;
      const double perm = (inv % 2 ? -1.0 : 1.0) * sgn;
      FMat<double> t = dG[ga][j] + bracket(B[ga], G[j]);
      K[position(nm1, sorted)].axpy(perm, t);
    }
  auto one = apply_star(K, sN1, zero);
  const double s = ((N + 1) % 2 ? -1.0 : 1.0) * m.det_sign();
  for (auto& v : one) v *= s;
  return one;
}

}  // namespace eqym
