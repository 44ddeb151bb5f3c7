#include "profile.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/interpolators/quintic_hermite.hpp>
#include <cmath>

#include "common.hpp"

namespace eqym {

Profile constant_profile(double c) {
  return [c](double, double) { return Jet{c, 0, 0, 0, 0, 0}; };
}

Profile wave_profile(double a, double b, double c, double d, double e) {
  return [=](double t, double r) {
    const double ph = b * r + c * t + d, co = std::cos(ph), si = std::sin(ph);
    return Jet{a * co + e, -a * c * si, -a * b * si, -a * c * c * co, -a * b * c * co, -a * b * b * co};
  };
}

Profile gauss_profile(double a, double r0, double w, double base) {
  return [=](double, double r) {
    const double z = (r - r0) / w, g = a * std::exp(-z * z);
    return Jet{g + base, 0, -2 * z / w * g, 0, 0, (4 * z * z - 2) / (w * w) * g};
  };
}

Profile spline_profile(std::vector<double> values, double r0, double dr) {
  require(values.size() >= 4, "spline_profile: need at least 4 samples");
  require(dr > 0, "spline_profile: spacing must be positive");
  auto s = std::make_shared<boost::math::interpolators::cardinal_cubic_b_spline<double>>(
      values.begin(), values.end(), r0, dr);
  const double rmax = r0 + dr * (values.size() - 1);
  return [s, r0, rmax](double, double r) {
    if (r < r0 - 1e-12 || r > rmax + 1e-12) throw ValidationError("profile evaluated outside its grid");
    return Jet{(*s)(r), 0, s->prime(r), 0, 0, s->double_prime(r)};
  };
}

Profile hermite_profile(std::vector<double> r, std::vector<double> v, std::vector<double> d1,
                        std::vector<double> d2) {
  require(r.size() >= 2 && r.size() == v.size() && v.size() == d1.size() && d1.size() == d2.size(),
          "hermite_profile: sample arrays must have equal length >= 2");
  const double lo = r.front(), hi = r.back();
  auto h = std::make_shared<boost::math::interpolators::quintic_hermite<std::vector<double>>>(
      std::move(r), std::move(v), std::move(d1), std::move(d2));
  return [h, lo, hi](double, double x) {
    if (x < lo - 1e-12 || x > hi + 1e-12) throw ValidationError("profile evaluated outside its grid");
    x = std::min(std::max(x, lo), hi);
    return Jet{(*h)(x), 0, h->prime(x), 0, 0, h->double_prime(x)};
  };
}

}  // namespace eqym
