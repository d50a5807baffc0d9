#include "ckn/functionals.hpp"

#include <cmath>
#include <string>

#include "ckn/errors.hpp"

namespace ckn {
namespace {

void check_compatible(const ScalarField& f, const ProductGrid& grid) {
  if (f.dimension() != 0 && f.dimension() != grid.dimension()) {
    throw ArgumentError("field " + f.name() + " has dimension " + std::to_string(f.dimension()) +
                        " but the grid has dimension " + std::to_string(grid.dimension()));
  }
  if (grid.is_radial_only() && !f.is_radial()) {
    throw ArgumentError("field " + f.name() + " is not radial; a radial-only grid cannot integrate it");
  }
}

double norm_from_integral(double integral, double q, const ScalarField& f) {
  if (!(integral > 0.0)) {
    throw DegenerateFieldError("field " + f.name() + " is numerically zero on the grid");
  }
  return std::pow(integral, 1.0 / q);
}

}  // namespace

double derive_r(int n, double p, double s, double t) {
  if (n < 2) throw ArgumentError("n must be >= 2");
  if (!(p >= 1.0 && p < n)) throw ArgumentError("p must satisfy 1 <= p < n");
  if (!(s >= 1.0) || !std::isfinite(s)) throw ArgumentError("s must be >= 1");
  if (!(t >= 0.0 && t <= 1.0)) throw ArgumentError("t must lie in [0, 1]");
  const double inv_r = (1.0 - t) / s + t * (n - p) / (n * p);
  const double r = 1.0 / inv_r;
  if (!(r >= 1.0)) {
    throw UnsupportedParametersError("derived exponent r = " + std::to_string(r) + " is below 1");
  }
  return r;
}

CknParams::CknParams(int n, double p, double s, double t, Alpha alpha)
    : n_(n), p_(p), s_(s), t_(t), alpha_(alpha) {
  if (n > kMaxDim) throw ArgumentError("n must be <= " + std::to_string(kMaxDim));
  derive_r(n, p, s, t);
}

double weighted_norm(const ScalarField& f, double q, double beta, const ProductGrid& grid) {
  if (!(q >= 1.0)) throw ArgumentError("norm exponent must be >= 1");
  check_compatible(f, grid);
  const double integral = integrate(
      [&f, q](const Vec& x) { return std::pow(std::abs(f.value(x)), q); }, beta, grid,
      f.support().window());
  return norm_from_integral(integral, q, f);
}

double weighted_grad_norm(const ScalarField& f, double p, double beta, const ProductGrid& grid) {
  if (!(p >= 1.0)) throw ArgumentError("gradient exponent must be >= 1");
  check_compatible(f, grid);
  const double integral = integrate(
      [&f, p](const Vec& x) { return std::pow(f.gradient(x).norm(), p); }, beta, grid,
      f.support().window());
  return norm_from_integral(integral, p, f);
}

QuotientReport ckn_quotient(const ScalarField& f, const CknParams& params,
                            const ProductGrid& grid) {
  const double a = params.alpha().value();
  const double n = params.n();
  const double t = params.t();
  QuotientReport report;
  report.lhs_norm = weighted_norm(f, params.r(), a * n, grid);
  double denominator = 1.0;
  if (t < 1.0) {
    report.s_norm = weighted_norm(f, params.s(), a * n, grid);
    denominator *= std::pow(*report.s_norm, 1.0 - t);
  }
  if (t > 0.0) {
    report.grad_norm = weighted_grad_norm(f, params.p(), a * (n - params.p()), grid);
    denominator *= std::pow(*report.grad_norm, t);
  }
  report.quotient = report.lhs_norm / denominator;
  return report;
}

double ratio_F(const ScalarField& f, double p, Alpha alpha, const ProductGrid& grid) {
  if (!(p >= 1.0)) throw ArgumentError("gradient exponent must be >= 1");
  check_compatible(f, grid);
  const double beta = alpha.value() * (grid.dimension() - p);
  const RadialWindow window = f.support().window();
  const double numerator = integrate(
      [&](const Vec& x) { return std::pow(atilde_apply(f.gradient(x), x, alpha).norm(), p); },
      beta, grid, window);
  const double denominator = integrate(
      [&](const Vec& x) { return std::pow(f.gradient(x).norm(), p); }, beta, grid, window);
  if (!(denominator > 0.0)) {
    throw DegenerateFieldError("gradient of " + f.name() + " vanishes on the grid");
  }
  return numerator / denominator;
}

double ratio_F(const ScalarField& f, const CknParams& params, const ProductGrid& grid) {
  if (params.n() != grid.dimension()) throw ArgumentError("params and grid disagree on n");
  return ratio_F(f, params.p(), params.alpha(), grid);
}

InterpolationReport interpolation_check(const ScalarField& f, const CknParams& params,
                                        const ProductGrid& grid) {
  if (params.alpha().value() != 0.0) {
    throw ArgumentError("the interpolation chain is checked on the unweighted (alpha = 0) path");
  }
  const double t = params.t();
  InterpolationReport report;
  report.lhs = weighted_norm(f, params.r(), 0.0, grid);
  report.rhs = 1.0;
  if (t < 1.0) report.rhs *= std::pow(weighted_norm(f, params.s(), 0.0, grid), 1.0 - t);
  if (t > 0.0) {
    report.rhs *= std::pow(weighted_norm(f, params.sobolev_exponent(), 0.0, grid), t);
  }
  report.holds = report.lhs <= report.rhs * (1.0 + 1e-9);
  return report;
}

}  // namespace ckn
