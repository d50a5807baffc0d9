#pragma once

#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "ckn/vec.hpp"

namespace ckn {

/// One-dimensional rule for the dr integral.
///
/// Rules built by make_radial_rule cover [0, r_max] with equal Gauss-Legendre
/// panels. Graded rules additionally refine geometrically towards the origin
/// and continue past r_max with doubling panels plus a mapped final panel, so
/// `tail` is set and the rule integrates over [0, inf).
struct RadialRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double r_max = 0.0;
  bool tail = false;
};

struct GradedRadialOptions {
  double r_max = 40.0;
  int panels = 160;
  int points_per_panel = 32;
  // First uniform panel [0, h] is split into [0, h 2^-L], ..., [h/2, h].
  int origin_levels = 40;
  // Doubling panels [r_max 2^j, r_max 2^(j+1)], j < tail_levels, then
  // [r_max 2^tail_levels, inf) through r = R/u.
  int tail_levels = 160;
};

RadialRule make_radial_rule(double r_max, int panels, int points_per_panel);
RadialRule make_graded_radial_rule(const GradedRadialOptions& options);

/// Rule on S^{n-1}, n in {2, 3}. For n = 3 the angles are (phi, theta) with
/// phi the polar angle from +z; the sin(phi) factor lives in the weights.
/// For n = 2 only theta is meaningful and phi is stored as 0.
struct AngularRule {
  int dimension = 0;
  int theta_resolution = 0;
  int phi_resolution = 0;
  std::vector<std::array<double, 2>> angles;
  std::vector<double> weights;
  std::vector<Vec> directions;
};

AngularRule make_angular_rule(int dimension, int theta_resolution, int phi_resolution);
/// theta gets `resolution` points, phi gets resolution / 2.
AngularRule make_angular_rule(int dimension, int resolution);

/// Surface measure |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

/// Tensor grid. Without an angular rule the grid is radial-only: integrands
/// are sampled along the first axis and multiplied by |S^{n-1}|, which is
/// exact for radial integrands only.
class ProductGrid {
 public:
  static ProductGrid full(RadialRule radial, AngularRule angular);
  static ProductGrid radial_only(RadialRule radial, int dimension);

  const RadialRule& radial() const { return radial_; }
  const std::optional<AngularRule>& angular() const { return angular_; }
  int dimension() const { return dimension_; }
  bool is_radial_only() const { return !angular_.has_value(); }

 private:
  ProductGrid(RadialRule radial, std::optional<AngularRule> angular, int dimension);

  RadialRule radial_;
  std::optional<AngularRule> angular_;
  int dimension_;
};

/// Resolution knobs shared by the library entry points and the CLI.
struct GridSettings {
  // h = 0.25 puts the f_k support ends r = 1, 4 on panel boundaries.
  double r_max = 40.0;
  int radial_panels = 160;
  int radial_points = 32;
  int origin_levels = 40;
  int tail_levels = 160;
  int theta_resolution = 128;
  int phi_resolution = 64;

  GridSettings refined() const;  // every resolution doubled
};

ProductGrid make_grid(const GridSettings& settings, int dimension, bool radial_only);

/// Nodes outside [lo, hi] are skipped; used for compactly supported fields.
struct RadialWindow {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

using FieldEvaluator = std::function<double(const Vec&)>;

/// Quadrature of  int field(x) |x|^beta dx  in spherical coordinates:
///   sum_i sum_j w_i w_j field(r_i sigma_j) r_i^{beta+n-1}.
/// Parallel over radial nodes; per-node partial sums are reduced in node
/// order so the result does not depend on the thread count.
double integrate(const FieldEvaluator& field, double beta, const ProductGrid& grid,
                 RadialWindow window = {});

/// Single-threaded reference for `integrate`; same summation order.
double integrate_serial(const FieldEvaluator& field, double beta, const ProductGrid& grid,
                        RadialWindow window = {});

}  // namespace ckn
