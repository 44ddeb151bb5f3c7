#include "reduced.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace eqym {

double son_lhs(int n, double r, const Jet& g) {
  return g.rr + (n + 1) * g.r / r + (n - 2) * g.v * g.v * (3 - r * r * g.v);
}

double son_rhs(int n, double r, double g, double gp) {
  require(r > 0, "son_rhs: r must be positive (use series_start near 0)");
  return -((n + 1) * gp / r + (n - 2) * g * g * (3 - r * r * g));
}

namespace {
double parity(int p) { return p % 2 ? -1.0 : 1.0; }
}  // namespace

Dim4Lhs dim4_lhs(int p, double r, const Jet& f, const Jet& g) {
  const double s = parity(p), r2 = r * r;
  Dim4Lhs o;
  o.cg = g.rr + 5 * g.r / r + 6 * (g.v * g.v + s * f.v * f.v) - 2 * r2 * g.v * (g.v * g.v + 3 * s * f.v * f.v);
  o.cf = f.rr + 5 * f.r / r + 12 * f.v * g.v - 2 * r2 * f.v * (3 * g.v * g.v + s * f.v * f.v);
  return o;
}

std::array<double, 2> dim4_rhs(int p, double r, double f, double fp, double g, double gp) {
  require(r > 0, "dim4_rhs: r must be positive (use series_start near 0)");
  Dim4Lhs l = dim4_lhs(p, r, Jet{f, 0, fp, 0, 0, 0}, Jet{g, 0, gp, 0, 0, 0});
  return {-l.cf, -l.cg};
}

std::array<double, 2> hpm_transform(int p, double f, double g) {
  require(p >= 0 && p <= 4, "hpm_transform: p must be in 0..4");
  if (p % 2 == 0) return {g + f, g - f};
  return {g, f};
}

std::array<double, 2> hpm_inverse(int p, double h1, double h2) {
  require(p >= 0 && p <= 4, "hpm_inverse: p must be in 0..4");
  if (p % 2 == 0) return {(h1 - h2) / 2, (h1 + h2) / 2};
  return {h2, h1};
}

std::array<double, 2> hpm_rhs(int p, double r, double h1, double h1p, double h2, double h2p) {
  require(p >= 0 && p <= 4, "hpm_rhs: p must be in 0..4");
  require(r > 0, "hpm_rhs: r must be positive");
  // h'' + 5 h'/r + 2 h^2 (3 - r^2 h) = 0, real pair or complex
  if (p % 2 == 0) {
    auto one = [r](double h, double hp) { return -(5 * hp / r + 2 * h * h * (3 - r * r * h)); };
    return {one(h1, h1p), one(h2, h2p)};
  }
  cplx h(h1, h2), hp(h1p, h2p);
  cplx a = -(5.0 * hp / r + 2.0 * h * h * (3.0 - r * r * h));
  return {a.real(), a.imag()};
}

namespace {
struct IsoCoeffs {
  double E = 1, A = 0, fr = 0, ftp = 0, frp = 0;
};
IsoCoeffs iso_coeffs(int n, const MetricSpec& m, double r) {
  require(m.kind == MetricSpec::Kind::isotropic, "this system needs an isotropic metric");
  Jet ft = m.ft(0, r), fr = m.fr(0, r);
  IsoCoeffs c;
  c.E = std::exp(-ft.v + fr.v);
  require(std::isfinite(c.E), "e^{-ft+fr} overflow");
  c.A = 0.5 * (ft.r + (n - 4) * fr.r);
  c.fr = fr.v;
  c.ftp = ft.r;
  c.frp = fr.r;
  return c;
}
}  // namespace

double iso_son_lhs(int n, const MetricSpec& m, double r, const Jet& g) {
  auto c = iso_coeffs(n, m, r);
  return g.rr - c.E * g.tt + (n + 1) * g.r / r + (n - 2) * g.v * g.v * (3 - r * r * g.v) + c.A * (g.r + 2 * g.v / r);
}

SunEquations sun_equations(int n, const MetricSpec& m, double r, const Jet& h1, const Jet& h2, const Jet& h3) {
  auto c = iso_coeffs(n, m, r);
  const double r2 = r * r, mod2 = h1.v * h1.v + h2.v * h2.v;
  SunEquations e;
  e.time = 2 * n * (h1.v * h2.t - h2.v * h1.t) + r * h3.tr + (n - 2) * h3.t +
           0.5 * ((n - 2) * c.frp - c.ftp) * r * h3.t;
  e.h1 = h1.rr - c.E * h1.tt + c.A * (h1.r - h2.v * h3.v / r) + (n - 3) / r * h1.r -
         (h2.r * h3.v + h2.v * h3.r) / r - (n - 4) / r2 * h2.v * h3.v + (n - 2) / r2 * h1.v * (1 - mod2) -
         h3.v * (h2.r / r + h1.v * h3.v / r2);
  e.h2 = h2.rr - c.E * h2.tt + c.A * (h2.r + h1.v * h3.v / r) + (n - 3) / r * h2.r +
         (h1.r * h3.v + h1.v * h3.r) / r + (n - 4) / r2 * h1.v * h3.v + (n - 2) / r2 * h2.v * (1 - mod2) +
         h3.v * (h1.r / r - h2.v * h3.v / r2);
  e.h3 = c.E * h3.tt - 2 * n * ((h2.v * h1.r - h1.v * h2.r) / r - h3.v * mod2 / r2);
  return e;
}

std::array<double, 3> sun_rhs(int n, const MetricSpec& m, double r, const Jet& h1, const Jet& h2, const Jet& h3) {
  require(r > 0, "sun_rhs: r must be positive");
  Jet a = h1, b = h2, c = h3;
  a.tt = b.tt = c.tt = 0;
  auto e = sun_equations(n, m, r, a, b, c);
  const double E = iso_coeffs(n, m, r).E;
  return {e.h1 / E, e.h2 / E, -e.h3 / E};
}

cplx sun_complex_wave(int n, const MetricSpec& m, double r, const Jet& h1, const Jet& h2, const Jet& h3) {
  auto c = iso_coeffs(n, m, r);
  const cplx I(0, 1);
  cplx h(h1.v, h2.v), hr(h1.r, h2.r), hrr(h1.rr, h2.rr), htt(h1.tt, h2.tt);
  const double mod2 = std::norm(h);
  cplx d_h3h_over_r = (h3.r * h + h3.v * hr) / r - h3.v * h / (r * r);
  return hrr - c.E * htt + double(n - 2) / (r * r) * h * (1 - mod2) +
         (c.A + (n - 3) / r + I * h3.v / r) * (hr + I * h * h3.v / r) + I * d_h3h_over_r;
}

namespace {
Vec flatten(const TensorVector& v) {
  const int n = v[0].n, per = 2 * n * n;
  Vec out = Vec::Zero(per * static_cast<Eigen::Index>(v.size()));
  for (size_t mu = 0; mu < v.size(); ++mu)
    for (int k = 0; k < n * n; ++k) {
      out(mu * per + k) = v[mu].re[k];
      if (v[mu].cx) out(mu * per + n * n + k) = v[mu].im[k];
    }
  return out;
}

TensorVector spatial_field(int N, int n, int offset, const std::function<FMat<double>(int)>& comp) {
  TensorVector out(N, FMat<double>(n, true));
  for (int i = 0; i < n; ++i) out[offset + i] = comp(i);
  return out;
}
}  // namespace

ProjectionCheck projection_check(const GaugeAnsatz& a, const MetricSpec& m, const std::vector<double>& y) {
  using namespace detail;
  TensorVector R = ym_residual(a, m, y);
  auto pt = point(a, y);
  const int N = a.coord_dim(), n = a.n(), o = a.offset();
  const double r = pt.r;
  const double t = a.time_dependent() ? y[0] : 0.0;
  ProjectionCheck pc;
  std::vector<TensorVector> gens;
  auto Xf = [&](int i) { return X(pt, i); };
  switch (a.kind) {
    case AnsatzCase::son:
    case AnsatzCase::sopqn: {
      gens.push_back(spatial_field(N, n, o, Xf));
      pc.generators = {"X"};
      pc.predicted = {-son_lhs(n, r, a.prof[0](t, r))};
      break;
    }
    case AnsatzCase::so4:
    case AnsatzCase::sopq4: {
      gens.push_back(spatial_field(N, n, o, Xf));
      gens.push_back(spatial_field(N, n, o, [&](int i) { return Y(pt, i); }));
      auto l = dim4_lhs(a.sig.p, r, a.prof[0](t, r), a.prof[1](t, r));
      pc.generators = {"X", "Y"};
      pc.predicted = {-l.cg, -l.cf};
      break;
    }
    case AnsatzCase::iso_son: {
      gens.push_back(spatial_field(N, n, o, Xf));
      const double efr = std::exp(-m.fr(0, r).v);
      pc.generators = {"X"};
      pc.predicted = {efr * iso_son_lhs(n, m, r, a.prof[0](t, r))};
      break;
    }
    case AnsatzCase::sun_h: {
      FMat<double> G1 = su_G1(pt);
      gens.push_back(spatial_field(N, n, o, [&](int i) { return su_F(pt, i); }));
      gens.push_back(spatial_field(N, n, o, [&](int i) { return pt.x[i] * G1; }));
      gens.push_back(spatial_field(N, n, o, [&](int i) {
        FMat<double> g = su_G2(pt, i);
        g.axpy(-2 * pt.x[i], G1);
        return g;
      }));
      TensorVector tg(N, FMat<double>(n, true));
      tg[0] = G1;
      gens.push_back(tg);
      auto e = sun_equations(n, m, r, a.prof[0](t, r), a.prof[1](t, r), a.prof[2](t, r));
      const double efr = std::exp(-m.fr(0, r).v);
      pc.generators = {"F", "xG1", "G2-2xG1", "time:G1"};
      pc.predicted = {efr * e.h1, -efr * e.h3, efr * e.h2, -efr * e.time};
      break;
    }
    default:
      throw ValidationError("projection_check: no reduced system for case " + to_string(a.kind));
  }
  Mat G(flatten(R).size(), static_cast<Eigen::Index>(gens.size()));
  for (size_t k = 0; k < gens.size(); ++k) G.col(k) = flatten(gens[k]);
  Vec rv = flatten(R);
  Vec c = G.colPivHouseholderQr().solve(rv);
  pc.projected.assign(c.data(), c.data() + c.size());
  pc.remainder = (rv - G * c).cwiseAbs().maxCoeff();
  pc.scale = 1.0;
  for (double v : pc.predicted) pc.scale = std::max(pc.scale, std::abs(v));
  double err = pc.remainder;
  for (Eigen::Index k = 0; k < c.size(); ++k) err = std::max(err, std::abs(pc.projected[k] - pc.predicted[k]));
  pc.error = err / pc.scale;
  return pc;
}

namespace {
// |h| and its derivatives from the real pair.
Jet modulus_jet(const Jet& a, const Jet& b) {
  Jet m;
  m.v = std::hypot(a.v, b.v);
  m.r = (a.v * a.r + b.v * b.r) / m.v;
  m.t = (a.v * a.t + b.v * b.t) / m.v;
  m.rr = (a.r * a.r + a.v * a.rr + b.r * b.r + b.v * b.rr - m.r * m.r) / m.v;
  m.tt = (a.t * a.t + a.v * a.tt + b.t * b.t + b.v * b.tt - m.t * m.t) / m.v;
  m.tr = (a.t * a.r + a.v * a.tr + b.t * b.r + b.v * b.tr - m.t * m.r) / m.v;
  return m;
}
}  // namespace

ConstraintReport constraint_residuals(int n, const Profile& h1, const Profile& h2, const Profile& h3,
                                      const MetricSpec& m, const std::vector<double>& radii, double t,
                                      double modulus_floor) {
  require(n >= 4, "constraint_residuals: n must be >= 4");
  ConstraintReport rep;
  auto bump = [&](const std::string& k, double v) {
    auto& slot = rep.residuals[k];
    slot = std::max(slot, std::abs(v));
  };
  std::map<std::string, bool> masked;
  for (const char* k : {"timeq", "h1wave", "h2wave", "h3wave", "hwave_complex", "complextime",
                        "complexh3wave", "static", "wavemap"})
    rep.residuals[k] = 0;
  for (double r : radii) {
    require(r > 0, "constraint_residuals: radii must be positive");
    Jet a = h1(t, r), b = h2(t, r), c = h3(t, r);
    auto e = sun_equations(n, m, r, a, b, c);
    bump("timeq", e.time);
    bump("h1wave", e.h1);
    bump("h2wave", e.h2);
    bump("h3wave", e.h3);
    bump("hwave_complex", std::abs(sun_complex_wave(n, m, r, a, b, c) - cplx(e.h1, e.h2)));
    auto co = iso_coeffs(n, m, r);
    const double mod2 = a.v * a.v + b.v * b.v;
    const bool is_static = a.t == 0 && b.t == 0 && c.t == 0 && a.tt == 0 && b.tt == 0 && c.tt == 0;
    if (std::sqrt(mod2) <= modulus_floor) {
      masked["complextime"] = masked["complexh3wave"] = masked["static"] = masked["wavemap"] = true;
      continue;
    }
    const double phi_r = (a.v * b.r - b.v * a.r) / mod2, phi_t = (a.v * b.t - b.v * a.t) / mod2;
    const double cexp = 0.5 * ((n - 2) * co.fr - m.ft(0, r).v);
    const double w = std::pow(r, n - 3) * std::exp(cexp);
    const double dtdr = w * (r * c.tr + (n - 2) * c.t + 0.5 * ((n - 2) * co.frp - co.ftp) * r * c.t);
    bump("complextime", dtdr + 2 * n * w * mod2 * phi_t);
    bump("complexh3wave", co.E * c.tt + 2 * n * mod2 / (r * r) * c.v + 2 * n * mod2 / r * phi_r);
    if (is_static) bump("static", c.v + r * phi_r);
    else masked["static"] = true;
    Jet mj = modulus_jet(a, b);
    bump("wavemap", mj.rr - co.E * mj.tt + (co.A + (n - 3) / r) * mj.r + (n - 2) / (r * r) * mj.v * (1 - mod2));
  }
  for (const auto& [k, v] : masked)
    if (v) rep.not_applicable.push_back(k);
  return rep;
}

double energy_weight(int n, const MetricSpec& m, double r) {
  require(m.kind == MetricSpec::Kind::isotropic, "energy needs an isotropic metric");
  return std::pow(r, n - 3) * std::exp(0.5 * (m.ft(0, r).v + (n - 4) * m.fr(0, r).v));
}

EnergyReport energy_of_profile(int n, const Profile& h, const MetricSpec& m, double r_min, double r_max, double t) {
  require(r_min > 0 && r_max > r_min, "energy: need 0 < r_min < r_max");
  auto integrand = [&](double r) {
    Jet j = h(t, r);
    const double E = m.wave_factor(r), u = j.v * j.v - 1;
    return (j.r * j.r + E * j.t * j.t + (n - 2) / (2 * r * r) * u * u) * energy_weight(n, m, r);
  };
  EnergyReport rep;
  rep.t = t;
  rep.r_min = r_min;
  rep.r_max = r_max;
  rep.E = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, r_min, r_max, 20, 1e-14);
  return rep;
}

Profile scale_profile(const Profile& p, double lambda) {
  require(lambda > 0, "scale: lambda must be positive");
  return [p, lambda](double t, double r) {
    Jet j = p(t / lambda, r / lambda);
    const double l2 = lambda * lambda;
    return Jet{j.v, j.t / lambda, j.r / lambda, j.tt / l2, j.tr / l2, j.rr / l2};
  };
}

MetricSpec scale_metric(const MetricSpec& m, double lambda) {
  require(m.kind == MetricSpec::Kind::isotropic, "scale_metric: only isotropic metrics carry profiles");
  return isotropic_metric(m.spatial, scale_profile(m.ft, lambda), scale_profile(m.fr, lambda));
}

}  // namespace eqym
