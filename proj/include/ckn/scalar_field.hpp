#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>

#include "ckn/quadrature.hpp"
#include "ckn/vec.hpp"

namespace ckn {

enum class GradientKind { analytic, finite_difference };

/// Where a field lives radially. Compact fields vanish outside [r_lo, r_hi];
/// decaying fields are treated as zero beyond r_hi (infinite for power laws).
struct SupportHint {
  enum class Kind { compact, decaying };
  Kind kind = Kind::decaying;
  double r_lo = 0.0;
  double r_hi = std::numeric_limits<double>::infinity();

  static SupportHint compact(double lo, double hi) { return {Kind::compact, lo, hi}; }
  static SupportHint decaying(double sufficient = std::numeric_limits<double>::infinity()) {
    return {Kind::decaying, 0.0, sufficient};
  }
  RadialWindow window() const { return {r_lo, r_hi}; }
};

/// Scalar function on R^n with its gradient. Immutable; evaluation is pure
/// and safe to call from several threads.
class ScalarField {
 public:
  using ValueFn = std::function<double(const Vec&)>;
  using GradientFn = std::function<Vec(const Vec&)>;

  /// Field with an analytic gradient.
  ScalarField(std::string name, int dimension, ValueFn value, GradientFn gradient,
              bool radial, SupportHint support);
  /// Field whose gradient comes from central differences,
  /// step 1e-5 * max(1, |x|).
  ScalarField(std::string name, int dimension, ValueFn value, bool radial,
              SupportHint support);

  double value(const Vec& x) const { return value_(x); }
  Vec gradient(const Vec& x) const;
  Vec finite_difference_gradient(const Vec& x) const;

  const std::string& name() const { return name_; }
  // 0 means "any dimension" (radial profiles).
  int dimension() const { return dimension_; }
  GradientKind gradient_kind() const { return kind_; }
  bool is_radial() const { return radial_; }
  const SupportHint& support() const { return support_; }

 private:
  std::string name_;
  int dimension_;
  ValueFn value_;
  GradientFn gradient_;
  GradientKind kind_;
  bool radial_;
  SupportHint support_;
};

struct GradientValidation {
  double max_relative_error = 0.0;
  int points = 0;
  bool passed = false;
};

/// Compares the field's gradient with central differences (h = 1e-5) at
/// `points` seeded random points with |x| in [r_lo, r_hi]. Errors are taken
/// relative to max(|grad|, 1e-3).
GradientValidation validate_gradient(const ScalarField& field, int dimension,
                                     std::uint64_t seed, int points, double r_lo,
                                     double r_hi, double tolerance = 1e-6);

}  // namespace ckn
