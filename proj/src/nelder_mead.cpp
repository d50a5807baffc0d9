#include "ckn/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ckn/errors.hpp"

namespace ckn {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             std::vector<double> start, const std::vector<double>& steps,
                             const NelderMeadOptions& options) {
  const size_t dim = start.size();
  if (dim == 0 || steps.size() != dim) throw ArgumentError("simplex start and steps disagree");

  std::vector<std::vector<double>> simplex(dim + 1, start);
  for (size_t i = 0; i < dim; ++i) simplex[i + 1][i] += steps[i];
  std::vector<double> values(dim + 1);
  for (size_t i = 0; i <= dim; ++i) values[i] = objective(simplex[i]);

  std::vector<size_t> order(dim + 1);
  auto point_along = [&](const std::vector<double>& centroid, const std::vector<double>& worst,
                         double coeff) {
    std::vector<double> p(dim);
    for (size_t j = 0; j < dim; ++j) p[j] = centroid[j] + coeff * (worst[j] - centroid[j]);
    return p;
  };

  NelderMeadResult result;
  if (options.record_trace) result.trace.push_back(*std::min_element(values.begin(), values.end()));
  for (int it = 0; it < options.max_iterations; ++it) {
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return values[a] < values[b]; });
    const size_t best = order.front();
    const size_t worst = order.back();
    const size_t second_worst = order[dim - 1];

    const double spread = values[worst] - values[best];
    if (std::isfinite(spread) &&
        spread <= options.value_tolerance * std::max(std::abs(values[best]), 1e-300)) {
      result.converged = true;
      break;
    }

    std::vector<double> centroid(dim, 0.0);
    for (size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j] / dim;
    }

    const auto reflected = point_along(centroid, simplex[worst], -1.0);
    const double f_reflected = objective(reflected);
    if (f_reflected < values[best]) {
      const auto expanded = point_along(centroid, simplex[worst], -2.0);
      const double f_expanded = objective(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        values[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
      }
    } else if (f_reflected < values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = f_reflected;
    } else {
      const bool outside = f_reflected < values[worst];
      const auto contracted = point_along(centroid, simplex[worst], outside ? -0.5 : 0.5);
      const double f_contracted = objective(contracted);
      if (f_contracted < std::min(f_reflected, values[worst])) {
        simplex[worst] = contracted;
        values[worst] = f_contracted;
      } else {
        for (size_t i = 0; i <= dim; ++i) {
          if (i == best) continue;
          for (size_t j = 0; j < dim; ++j) {
            simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
          }
          values[i] = objective(simplex[i]);
        }
      }
    }
    result.iterations = it + 1;
    if (options.record_trace) {
      result.trace.push_back(*std::min_element(values.begin(), values.end()));
    }
  }

  const auto best = static_cast<size_t>(
      std::distance(values.begin(), std::min_element(values.begin(), values.end())));
  result.x = simplex[best];
  result.value = values[best];
  return result;
}

}  // namespace ckn
