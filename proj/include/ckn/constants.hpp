#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ckn/functionals.hpp"
#include "ckn/nelder_mead.hpp"
#include "ckn/quadrature.hpp"
#include "ckn/testfns.hpp"

namespace ckn {

struct ConstantEstimate {
  double value = 0.0;
  RadialKind family = RadialKind::gns_power;
  RadialShape optimizer;
  int iterations = 0;
  bool converged = false;
  GridSettings grid;
  std::vector<double> trace;
};

/// Estimate of M in ||f||_r <= M ||f||_s^{1-t} ||grad f||_p^t, obtained by
/// maximizing the unweighted quotient over the shape parameters of a radial
/// family with Nelder-Mead. The alpha of `params` is ignored.
///
/// gns-power searches (exponent, log scale), starting at twice the smallest
/// exponent with finite norms (at least 1); the other families
/// only have a scale. Scale is a flat direction of the quotient, so the
/// estimate only depends on the exponent found.
ConstantEstimate estimate_M(const CknParams& params, RadialKind family,
                            const GridSettings& grid, const NelderMeadOptions& options = {});

/// Proven value of A_alpha: (1+a)^{-t} for a <= 0 and 1 for a > 0.
double a_alpha(Alpha alpha, double t);

/// (1+a)^{t/n} A_alpha M.
double sharp_constant(const CknParams& params, double M);

/// (1+a)^{t/n - t} M, the best constant among radial functions.
double radial_sharp_constant(const CknParams& params, double M);

struct SymmetryScan {
  double alpha = 0.0;
  double p = 0.0;
  std::vector<std::pair<int, double>> values;  // (k, F(f_k))
  double extrapolated_limit = 0.0;
};

/// Limit of F(k) assuming F(k) = L + c / k^2 + O(k^-4), from the two largest k.
double richardson_limit_inv_k2(std::span<const std::pair<int, double>> values);

/// F(f_k) over `ks` on a full three-dimensional grid. The theta rule must
/// resolve cos^2(k theta), i.e. theta resolution > 2 max(k).
SymmetryScan symmetry_scan(Alpha alpha, double p, std::span<const int> ks,
                           const ProductGrid& grid);

struct TheoremCheck {
  std::string id;
  std::string description;
  bool passed = false;
  bool skipped = false;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct TheoremReport {
  double M_hat = 0.0;
  ConstantEstimate estimate;
  double sharp = 0.0;
  double radial = 0.0;
  std::vector<TheoremCheck> checks;
  bool all_passed = false;
};

/// Runs the radial-optimizer identity, the symmetry-breaking witness (n = 3)
/// and the upper-bound sanity over the bundled fields. Failures are recorded
/// per check; nothing throws for a failed check.
TheoremReport verify_theorems(const CknParams& params, const GridSettings& grid,
                              RadialKind family = RadialKind::gns_power);

/// False when some norm of the quotient of `profile` (of profile o phi when
/// `composed`) diverges under the weights of `params`. Conservative near the
/// borderline decay.
bool quotient_norms_finite(const RadialProfile& profile, const CknParams& params, bool composed);

/// k = 1, 2, 4, ... up to k_max.
std::vector<int> powers_of_two_up_to(int k_max);

}  // namespace ckn
