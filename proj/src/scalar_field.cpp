#include "ckn/scalar_field.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ckn/errors.hpp"

namespace ckn {
namespace {

Vec central_difference(const ScalarField::ValueFn& value, const Vec& x, double h) {
  Vec grad(x.size());
  Vec probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = value(probe);
    probe[i] = x[i] - h;
    const double down = value(probe);
    probe[i] = x[i];
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

}  // namespace

ScalarField::ScalarField(std::string name, int dimension, ValueFn value, GradientFn gradient,
                         bool radial, SupportHint support)
    : name_(std::move(name)),
      dimension_(dimension),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      kind_(GradientKind::analytic),
      radial_(radial),
      support_(support) {
  if (!value_ || !gradient_) throw ArgumentError("field callbacks must be set");
}

ScalarField::ScalarField(std::string name, int dimension, ValueFn value, bool radial,
                         SupportHint support)
    : name_(std::move(name)),
      dimension_(dimension),
      value_(std::move(value)),
      kind_(GradientKind::finite_difference),
      radial_(radial),
      support_(support) {
  if (!value_) throw ArgumentError("field callbacks must be set");
}

Vec ScalarField::gradient(const Vec& x) const {
  if (kind_ == GradientKind::analytic) return gradient_(x);
  return finite_difference_gradient(x);
}

Vec ScalarField::finite_difference_gradient(const Vec& x) const {
  return central_difference(value_, x, 1e-5 * std::max(1.0, x.norm()));
}

GradientValidation validate_gradient(const ScalarField& field, int dimension,
                                     std::uint64_t seed, int points, double r_lo,
                                     double r_hi, double tolerance) {
  if (field.dimension() != 0 && field.dimension() != dimension) {
    throw ArgumentError("field " + field.name() + " is not defined in this dimension");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> radius(r_lo, r_hi);
  GradientValidation out;
  for (int i = 0; i < points; ++i) {
    Vec x(dimension);
    for (int d = 0; d < dimension; ++d) x[d] = normal(rng);
    x *= radius(rng) / x.norm();
    const Vec analytic = field.gradient(x);
    const Vec numeric = central_difference(
        [&field](const Vec& y) { return field.value(y); }, x, 1e-5);
    const double err = (analytic - numeric).norm() / std::max(analytic.norm(), 1e-3);
    out.max_relative_error = std::max(out.max_relative_error, err);
    ++out.points;
  }
  out.passed = out.max_relative_error <= tolerance;
  return out;
}

}  // namespace ckn
