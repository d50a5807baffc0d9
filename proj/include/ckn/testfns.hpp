#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ckn/core_maps.hpp"
#include "ckn/scalar_field.hpp"

namespace ckn {

/// h(r) = exp(-1 / ((r-1)(4-r))) on (1, 4), zero elsewhere.
class BumpH {
 public:
  static constexpr double r_lo = 1.0;
  static constexpr double r_hi = 4.0;

  double value(double r) const;
  double derivative(double r) const;
};

BumpH make_bump();

/// Components of grad f_k in the orthonormal frame (u_r, u_phi, u_theta).
struct FrameGradient {
  double radial;
  double polar;
  double azimuthal;
};

FrameGradient fk_frame_gradient(int k, double r, double phi, double theta);

/// f_k = h(r) sin(phi) cos(k theta) on R^3, phi polar from +z, theta azimuthal.
ScalarField make_fk(int k);

enum class RadialKind { sobolev_extremal, gns_power, gaussian };

std::string_view to_string(RadialKind kind);
std::optional<RadialKind> parse_radial_kind(std::string_view name);

/// Shape parameters of a radial profile. `exponent` is only read by gns-power.
///   sobolev-extremal: (1 + (r/scale)^{p/(p-1)})^{-(n-p)/p}
///   gns-power:        (1 + (r/scale)^{p/(p-1)})^{-exponent}
///   gaussian:         exp(-(r/scale)^2)
struct RadialShape {
  double exponent = 1.0;
  double scale = 1.0;
};

/// Profile value and derivative in r.
struct RadialProfile {
  RadialKind kind;
  RadialShape shape;
  int n;
  double p;

  double value(double r) const;
  double derivative(double r) const;
};

RadialProfile make_profile(RadialKind kind, RadialShape shape, int n, double p);
ScalarField make_radial(RadialKind kind, RadialShape shape, int n, double p);
ScalarField make_radial(const RadialProfile& profile);

/// g = f o phi with grad g(x) = D phi(x) grad f(phi(x)).
ScalarField compose_with_phi(const ScalarField& f, Alpha alpha);

/// c * f.
ScalarField scaled(const ScalarField& f, double c);

}  // namespace ckn
