#pragma once

#include <functional>
#include <vector>

namespace ckn {

struct NelderMeadOptions {
  int max_iterations = 2000;
  // Stop once every simplex value is within this relative spread of the best.
  double value_tolerance = 1e-12;
  bool record_trace = false;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  // Best value of the start simplex, then after each iteration, when requested.
  std::vector<double> trace;
};

/// Minimizes `objective` from `start` with initial simplex edges `steps`.
/// The objective may return +inf to mark infeasible points.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             std::vector<double> start, const std::vector<double>& steps,
                             const NelderMeadOptions& options = {});

}  // namespace ckn
