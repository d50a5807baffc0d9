#include "ckn/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>

#include "ckn/errors.hpp"

namespace ckn {
namespace {

struct GlTableDeleter {
  void operator()(gsl_integration_glfixed_table* t) const { gsl_integration_glfixed_table_free(t); }
};
using GlTable = std::unique_ptr<gsl_integration_glfixed_table, GlTableDeleter>;

GlTable gl_table(int points) {
  GlTable table(gsl_integration_glfixed_table_alloc(static_cast<size_t>(points)));
  if (!table) throw ArgumentError("cannot build a Gauss-Legendre table");
  return table;
}

// Appends a Gauss-Legendre panel on [a, b].
void add_panel(const gsl_integration_glfixed_table* table, int points, double a, double b,
               std::vector<double>& nodes, std::vector<double>& weights) {
  for (int i = 0; i < points; ++i) {
    double xi = 0.0;
    double wi = 0.0;
    gsl_integration_glfixed_point(a, b, static_cast<size_t>(i), &xi, &wi, table);
    nodes.push_back(xi);
    weights.push_back(wi);
  }
}

void sort_rule(RadialRule& rule) {
  std::vector<size_t> order(rule.nodes.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return rule.nodes[a] < rule.nodes[b]; });
  std::vector<double> nodes;
  std::vector<double> weights;
  nodes.reserve(order.size());
  weights.reserve(order.size());
  for (size_t i : order) {
    nodes.push_back(rule.nodes[i]);
    weights.push_back(rule.weights[i]);
  }
  rule.nodes = std::move(nodes);
  rule.weights = std::move(weights);
}

void check_radial_args(double r_max, int panels, int points_per_panel) {
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw ArgumentError("r_max must be positive");
  if (panels < 1) throw ArgumentError("radial panels must be >= 1");
  if (points_per_panel < 2) throw ArgumentError("points per panel must be >= 2");
}

// exp(log_weight) * sum without overflowing when the weight alone would.
double scale_by_log_weight(double sum, double log_weight) {
  if (sum == 0.0) return 0.0;
  if (log_weight < 700.0) return sum * std::exp(log_weight);
  return std::copysign(std::exp(std::log(std::abs(sum)) + log_weight), sum);
}

[[noreturn]] void throw_non_finite(double r, const Vec& point) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "field value is not finite at r = " << r << ", x = (";
  for (Eigen::Index i = 0; i < point.size(); ++i) msg << (i ? ", " : "") << point[i];
  msg << ")";
  throw EvaluationError(msg.str());
}

// Angular sum at radial node i, already including |S^{n-1}| for radial-only
// grids.
double node_sum(const FieldEvaluator& field, const ProductGrid& grid, size_t i) {
  const double r = grid.radial().nodes[i];
  const int n = grid.dimension();
  if (grid.is_radial_only()) {
    Vec point = Vec::Zero(n);
    point[0] = r;
    const double v = field(point);
    if (!std::isfinite(v)) throw_non_finite(r, point);
    return sphere_area(n) * v;
  }
  const AngularRule& ang = *grid.angular();
  double sum = 0.0;
  for (size_t j = 0; j < ang.weights.size(); ++j) {
    const Vec point = r * ang.directions[j];
    const double v = field(point);
    if (!std::isfinite(v)) throw_non_finite(r, point);
    sum += ang.weights[j] * v;
  }
  return sum;
}

bool in_window(double r, const RadialWindow& window) { return r >= window.lo && r <= window.hi; }

double finish(const std::vector<double>& partial, const ProductGrid& grid, double beta) {
  const RadialRule& rule = grid.radial();
  const double power = beta + grid.dimension() - 1.0;
  double total = 0.0;
  for (size_t i = 0; i < partial.size(); ++i) {
    const double log_weight = std::log(rule.weights[i]) + power * std::log(rule.nodes[i]);
    total += scale_by_log_weight(partial[i], log_weight);
  }
  if (!std::isfinite(total)) throw EvaluationError("weighted integral is not finite");
  return total;
}

void check_beta(double beta, const ProductGrid& grid) {
  if (!(beta > -grid.dimension())) {
    throw ArgumentError("weight exponent beta must exceed -n for integrability at the origin");
  }
}

}  // namespace

RadialRule make_radial_rule(double r_max, int panels, int points_per_panel) {
  check_radial_args(r_max, panels, points_per_panel);
  const GlTable table = gl_table(points_per_panel);
  RadialRule rule;
  rule.r_max = r_max;
  const double h = r_max / panels;
  for (int k = 0; k < panels; ++k) {
    add_panel(table.get(), points_per_panel, k * h, (k + 1 == panels) ? r_max : (k + 1) * h,
              rule.nodes, rule.weights);
  }
  return rule;
}

RadialRule make_graded_radial_rule(const GradedRadialOptions& options) {
  check_radial_args(options.r_max, options.panels, options.points_per_panel);
  if (options.origin_levels < 0 || options.tail_levels < 0) {
    throw ArgumentError("grading levels must be >= 0");
  }
  const int m = options.points_per_panel;
  const GlTable table = gl_table(m);
  RadialRule rule;
  rule.r_max = options.r_max;
  rule.tail = true;
  const double h = options.r_max / options.panels;

  double inner = h * std::ldexp(1.0, -options.origin_levels);
  add_panel(table.get(), m, 0.0, inner, rule.nodes, rule.weights);
  for (int j = options.origin_levels - 1; j >= 0; --j) {
    const double outer = h * std::ldexp(1.0, -j);
    add_panel(table.get(), m, inner, outer, rule.nodes, rule.weights);
    inner = outer;
  }
  for (int k = 1; k < options.panels; ++k) {
    add_panel(table.get(), m, k * h, (k + 1 == options.panels) ? options.r_max : (k + 1) * h,
              rule.nodes, rule.weights);
  }
  double lo = options.r_max;
  for (int j = 0; j < options.tail_levels; ++j) {
    add_panel(table.get(), m, lo, 2.0 * lo, rule.nodes, rule.weights);
    lo *= 2.0;
  }
  // [lo, inf) through r = lo / u, dr = lo / u^2 du, u in (0, 1).
  std::vector<double> us;
  std::vector<double> wus;
  add_panel(table.get(), m, 0.0, 1.0, us, wus);
  for (int i = 0; i < m; ++i) {
    rule.nodes.push_back(lo / us[i]);
    rule.weights.push_back(wus[i] * lo / (us[i] * us[i]));
  }
  sort_rule(rule);
  return rule;
}

AngularRule make_angular_rule(int dimension, int theta_resolution, int phi_resolution) {
  if (dimension != 2 && dimension != 3) {
    throw ArgumentError("angular rules exist for n = 2 and n = 3 only");
  }
  if (theta_resolution < 4) throw ArgumentError("theta resolution must be >= 4");
  if (dimension == 3 && phi_resolution < 2) throw ArgumentError("phi resolution must be >= 2");

  AngularRule rule;
  rule.dimension = dimension;
  rule.theta_resolution = theta_resolution;
  const double dtheta = 2.0 * std::numbers::pi / theta_resolution;
  if (dimension == 2) {
    rule.phi_resolution = 0;
    for (int j = 0; j < theta_resolution; ++j) {
      const double theta = j * dtheta;
      rule.angles.push_back({0.0, theta});
      rule.weights.push_back(dtheta);
      Vec d(2);
      d << std::cos(theta), std::sin(theta);
      rule.directions.push_back(d);
    }
    return rule;
  }

  rule.phi_resolution = phi_resolution;
  const GlTable table = gl_table(phi_resolution);
  for (int i = 0; i < phi_resolution; ++i) {
    double u = 0.0;
    double wu = 0.0;
    gsl_integration_glfixed_point(-1.0, 1.0, static_cast<size_t>(i), &u, &wu, table.get());
    const double phi = std::acos(u);
    const double sin_phi = std::sqrt(std::max(0.0, 1.0 - u * u));
    for (int j = 0; j < theta_resolution; ++j) {
      const double theta = j * dtheta;
      rule.angles.push_back({phi, theta});
      rule.weights.push_back(wu * dtheta);
      Vec d(3);
      d << sin_phi * std::cos(theta), sin_phi * std::sin(theta), u;
      rule.directions.push_back(d);
    }
  }
  return rule;
}

AngularRule make_angular_rule(int dimension, int resolution) {
  if (resolution < 4) throw ArgumentError("angular resolution must be >= 4");
  return make_angular_rule(dimension, resolution, resolution / 2);
}

double sphere_area(int n) {
  if (n < 1) throw ArgumentError("dimension must be >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

ProductGrid::ProductGrid(RadialRule radial, std::optional<AngularRule> angular, int dimension)
    : radial_(std::move(radial)), angular_(std::move(angular)), dimension_(dimension) {}

ProductGrid ProductGrid::full(RadialRule radial, AngularRule angular) {
  const int n = angular.dimension;
  return ProductGrid(std::move(radial), std::move(angular), n);
}

ProductGrid ProductGrid::radial_only(RadialRule radial, int dimension) {
  if (dimension < 2 || dimension > kMaxDim) {
    throw ArgumentError("dimension must be in [2, " + std::to_string(kMaxDim) + "]");
  }
  return ProductGrid(std::move(radial), std::nullopt, dimension);
}

GridSettings GridSettings::refined() const {
  GridSettings g = *this;
  g.radial_panels *= 2;
  g.theta_resolution *= 2;
  g.phi_resolution *= 2;
  return g;
}

ProductGrid make_grid(const GridSettings& s, int dimension, bool radial_only) {
  RadialRule radial = make_graded_radial_rule(GradedRadialOptions{
      .r_max = s.r_max,
      .panels = s.radial_panels,
      .points_per_panel = s.radial_points,
      .origin_levels = s.origin_levels,
      .tail_levels = s.tail_levels,
  });
  if (radial_only) return ProductGrid::radial_only(std::move(radial), dimension);
  return ProductGrid::full(std::move(radial),
                           make_angular_rule(dimension, s.theta_resolution, s.phi_resolution));
}

double integrate(const FieldEvaluator& field, double beta, const ProductGrid& grid,
                 RadialWindow window) {
  check_beta(beta, grid);
  const auto count = static_cast<long>(grid.radial().nodes.size());
  std::vector<double> partial(static_cast<size_t>(count), 0.0);
  std::vector<char> failed(static_cast<size_t>(count), 0);

#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < count; ++i) {
    const auto idx = static_cast<size_t>(i);
    if (!in_window(grid.radial().nodes[idx], window)) continue;
    try {
      partial[idx] = node_sum(field, grid, idx);
    } catch (...) {
      failed[idx] = 1;
    }
  }

  for (size_t i = 0; i < failed.size(); ++i) {
    // Re-run the first failing node on this thread to surface its error.
    if (failed[i]) {
      node_sum(field, grid, i);
      throw EvaluationError("field evaluation failed at r = " +
                            std::to_string(grid.radial().nodes[i]));
    }
  }
  return finish(partial, grid, beta);
}

double integrate_serial(const FieldEvaluator& field, double beta, const ProductGrid& grid,
                        RadialWindow window) {
  check_beta(beta, grid);
  const size_t count = grid.radial().nodes.size();
  std::vector<double> partial(count, 0.0);
  for (size_t i = 0; i < count; ++i) {
    if (in_window(grid.radial().nodes[i], window)) partial[i] = node_sum(field, grid, i);
  }
  return finish(partial, grid, beta);
}

}  // namespace ckn
