#pragma once

#include <optional>

#include "ckn/core_maps.hpp"
#include "ckn/quadrature.hpp"
#include "ckn/scalar_field.hpp"

namespace ckn {

/// 1/r = (1-t)/s + t(n-p)/(np). Throws UnsupportedParametersError if r < 1.
double derive_r(int n, double p, double s, double t);

/// Exponent tuple (n, p, s, t, alpha); r is derived on demand.
class CknParams {
 public:
  CknParams(int n, double p, double s, double t, Alpha alpha);

  int n() const { return n_; }
  double p() const { return p_; }
  double s() const { return s_; }
  double t() const { return t_; }
  Alpha alpha() const { return alpha_; }
  double r() const { return derive_r(n_, p_, s_, t_); }
  /// np/(n-p).
  double sobolev_exponent() const { return n_ * p_ / (n_ - p_); }

  CknParams with_alpha(Alpha alpha) const { return {n_, p_, s_, t_, alpha}; }

 private:
  int n_;
  double p_;
  double s_;
  double t_;
  Alpha alpha_;
};

struct QuotientReport {
  double lhs_norm = 0.0;
  // Absent when its exponent in the quotient is zero (t = 1 or t = 0).
  std::optional<double> s_norm;
  std::optional<double> grad_norm;
  double quotient = 0.0;
  std::optional<double> reference_constant;
  std::optional<double> slack;

  void set_reference(double constant) {
    reference_constant = constant;
    slack = constant - quotient;
  }
};

/// (int |f|^q |x|^beta dx)^{1/q}.
double weighted_norm(const ScalarField& f, double q, double beta, const ProductGrid& grid);
/// (int |grad f|^p |x|^beta dx)^{1/p}.
double weighted_grad_norm(const ScalarField& f, double p, double beta,
                          const ProductGrid& grid);

/// ||f||_{r, alpha n} / (||f||_{s, alpha n}^{1-t} ||grad f||_{p, alpha(n-p)}^t).
QuotientReport ckn_quotient(const ScalarField& f, const CknParams& params,
                            const ProductGrid& grid);

/// F(f) = int |A~ grad f|^p |x|^{a(n-p)} / int |grad f|^p |x|^{a(n-p)}.
/// Returned without the t/p power.
double ratio_F(const ScalarField& f, double p, Alpha alpha, const ProductGrid& grid);
double ratio_F(const ScalarField& f, const CknParams& params, const ProductGrid& grid);

struct InterpolationReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// ||f||_r <= ||f||_s^{1-t} ||f||_{np/(n-p)}^t, unweighted (alpha must be 0),
/// accepted within 1e-9 * rhs.
InterpolationReport interpolation_check(const ScalarField& f, const CknParams& params,
                                        const ProductGrid& grid);

}  // namespace ckn
