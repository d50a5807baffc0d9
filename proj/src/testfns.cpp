#include "ckn/testfns.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ckn/errors.hpp"

namespace ckn {

double BumpH::value(double r) const {
  if (!(r > r_lo && r < r_hi)) return 0.0;
  return std::exp(-1.0 / ((r - r_lo) * (r_hi - r)));
}

double BumpH::derivative(double r) const {
  if (!(r > r_lo && r < r_hi)) return 0.0;
  const double g = (r - r_lo) * (r_hi - r);
  const double dg = (r_lo + r_hi) - 2.0 * r;
  return value(r) * dg / (g * g);
}

BumpH make_bump() { return BumpH{}; }

FrameGradient fk_frame_gradient(int k, double r, double phi, double theta) {
  const BumpH h;
  const double hr = h.value(r) / r;
  return FrameGradient{
      .radial = h.derivative(r) * std::sin(phi) * std::cos(k * theta),
      .polar = hr * std::cos(phi) * std::cos(k * theta),
      .azimuthal = -hr * k * std::sin(k * theta),
  };
}

ScalarField make_fk(int k) {
  if (k < 1) throw ArgumentError("f_k needs k >= 1");
  auto value = [k](const Vec& x) {
    const double r = x.norm();
    if (!(r > BumpH::r_lo && r < BumpH::r_hi)) return 0.0;
    const double rho = std::hypot(x[0], x[1]);
    const double theta = std::atan2(x[1], x[0]);
    return BumpH{}.value(r) * (rho / r) * std::cos(k * theta);
  };
  auto gradient = [k](const Vec& x) {
    Vec g = Vec::Zero(3);
    const double r = x.norm();
    if (!(r > BumpH::r_lo && r < BumpH::r_hi)) return g;
    const double rho = std::hypot(x[0], x[1]);
    const double sin_phi = rho / r;
    const double cos_phi = x[2] / r;
    const double theta = std::atan2(x[1], x[0]);
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    const FrameGradient c = fk_frame_gradient(k, r, std::atan2(rho, x[2]), theta);
    g[0] = c.radial * sin_phi * ct + c.polar * cos_phi * ct - c.azimuthal * st;
    g[1] = c.radial * sin_phi * st + c.polar * cos_phi * st + c.azimuthal * ct;
    g[2] = c.radial * cos_phi - c.polar * sin_phi;
    return g;
  };
  return ScalarField("f_" + std::to_string(k), 3, value, gradient, false,
                     SupportHint::compact(BumpH::r_lo, BumpH::r_hi));
}

std::string_view to_string(RadialKind kind) {
  switch (kind) {
    case RadialKind::sobolev_extremal: return "sobolev-extremal";
    case RadialKind::gns_power: return "gns-power";
    case RadialKind::gaussian: return "gaussian";
  }
  return "unknown";
}

std::optional<RadialKind> parse_radial_kind(std::string_view name) {
  for (RadialKind k : {RadialKind::sobolev_extremal, RadialKind::gns_power, RadialKind::gaussian}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

namespace {

// (1 + (r/scale)^q)^-gamma with q = p/(p-1).
struct PowerLaw {
  double gamma;
  double scale;
  double q;

  double value(double r) const { return std::pow(1.0 + std::pow(r / scale, q), -gamma); }
  double derivative(double r) const {
    if (r == 0.0) return 0.0;
    const double u = std::pow(r / scale, q);
    const double share = std::isinf(u) ? 1.0 : u / (1.0 + u);
    return -gamma * q * share * std::pow(1.0 + u, -gamma) / r;
  }
};

PowerLaw power_law(const RadialProfile& prof) {
  const double gamma = prof.kind == RadialKind::sobolev_extremal
                           ? (prof.n - prof.p) / prof.p
                           : prof.shape.exponent;
  return PowerLaw{gamma, prof.shape.scale, prof.p / (prof.p - 1.0)};
}

}  // namespace

double RadialProfile::value(double r) const {
  if (kind == RadialKind::gaussian) {
    const double u = r / shape.scale;
    return std::exp(-u * u);
  }
  return power_law(*this).value(r);
}

double RadialProfile::derivative(double r) const {
  if (kind == RadialKind::gaussian) {
    const double u = r / shape.scale;
    return -2.0 * u / shape.scale * std::exp(-u * u);
  }
  return power_law(*this).derivative(r);
}

RadialProfile make_profile(RadialKind kind, RadialShape shape, int n, double p) {
  if (n < 2 || n > kMaxDim) throw ArgumentError("radial profiles need 2 <= n <= " + std::to_string(kMaxDim));
  if (!(shape.scale > 0.0) || !std::isfinite(shape.scale)) {
    throw ArgumentError("profile scale must be positive");
  }
  if (kind != RadialKind::gaussian) {
    if (!(p > 1.0 && p < n)) throw ArgumentError(std::string(to_string(kind)) + " needs 1 < p < n");
  }
  if (kind == RadialKind::gns_power && !(shape.exponent > 0.0 && std::isfinite(shape.exponent))) {
    throw ArgumentError("gns-power exponent must be positive");
  }
  return RadialProfile{kind, shape, n, p};
}

ScalarField make_radial(const RadialProfile& profile) {
  auto value = [profile](const Vec& x) { return profile.value(x.norm()); };
  auto gradient = [profile](const Vec& x) -> Vec {
    const double r = x.norm();
    if (r == 0.0) return Vec::Zero(x.size());
    return (profile.derivative(r) / r) * x;
  };
  const SupportHint support = profile.kind == RadialKind::gaussian
                                  ? SupportHint::decaying(40.0 * profile.shape.scale)
                                  : SupportHint::decaying();
  return ScalarField(std::string(to_string(profile.kind)), 0, value, gradient, true, support);
}

ScalarField make_radial(RadialKind kind, RadialShape shape, int n, double p) {
  return make_radial(make_profile(kind, shape, n, p));
}

ScalarField compose_with_phi(const ScalarField& f, Alpha alpha) {
  const double inv = 1.0 / alpha.one_plus();
  SupportHint support = f.support();
  support.r_lo = std::pow(support.r_lo, inv);
  support.r_hi = std::pow(support.r_hi, inv);
  auto value = [f, alpha](const Vec& x) { return f.value(phi_map(x, alpha)); };
  std::string name = f.name() + " o phi";
  if (f.gradient_kind() == GradientKind::finite_difference) {
    return ScalarField(std::move(name), f.dimension(), value, f.is_radial(), support);
  }
  auto gradient = [f, alpha](const Vec& x) {
    return dphi_apply(x, f.gradient(phi_map(x, alpha)), alpha);
  };
  return ScalarField(std::move(name), f.dimension(), value, gradient, f.is_radial(), support);
}

ScalarField scaled(const ScalarField& f, double c) {
  auto value = [f, c](const Vec& x) { return c * f.value(x); };
  std::string name = std::to_string(c) + " * " + f.name();
  if (f.gradient_kind() == GradientKind::finite_difference) {
    return ScalarField(std::move(name), f.dimension(), value, f.is_radial(), f.support());
  }
  auto gradient = [f, c](const Vec& x) -> Vec { return c * f.gradient(x); };
  return ScalarField(std::move(name), f.dimension(), value, gradient, f.is_radial(), f.support());
}

}  // namespace ckn
