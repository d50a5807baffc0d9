#pragma once

#include <Eigen/Core>

#include "ckn/vec.hpp"

namespace ckn {

/// Exponent of the map x -> x|x|^alpha. Checked once at construction, so
/// everything downstream may assume alpha > -1.
class Alpha {
 public:
  explicit Alpha(double value);

  double value() const { return value_; }
  double one_plus() const { return 1.0 + value_; }

 private:
  double value_;
};

/// Closed-form spectrum of D(phi) at a point: one radial eigenvalue, and a
/// tangential eigenvalue of multiplicity n-1.
struct EigenSummary {
  double lambda_radial;
  double lambda_tangential;
  Vec eigenvector_radial;
  double jacobian_det;
};

Vec phi_map(const Vec& x, Alpha alpha);
Vec inverse_phi(const Vec& y, Alpha alpha);

/// Entry (i,j) is |x|^a delta_ij + a x_i x_j |x|^(a-2).
Eigen::MatrixXd dphi_matrix(const Vec& x, Alpha alpha);

/// dphi_matrix(x) * v without forming the matrix.
Vec dphi_apply(const Vec& x, const Vec& v, Alpha alpha);

EigenSummary analytic_eigen(const Vec& x, Alpha alpha);

/// Factored characteristic polynomial
///   |x|^{n(a-2)} (|x|^2 - l|x|^{2-a})^{n-1} ((1+a)|x|^2 - l|x|^{2-a}).
double char_poly_factored(const Vec& x, Alpha alpha, double lambda);

/// det(matrix - lambda I) - char_poly_factored(x, alpha, lambda). The matrix
/// overload lets callers probe a perturbed differential.
double char_poly_residual(const Eigen::MatrixXd& matrix, const Vec& x, Alpha alpha,
                          double lambda);
double char_poly_residual(const Vec& x, Alpha alpha, double lambda);

/// Q D Q^t v: the radial component of v is divided by (1+a), tangential
/// components pass through.
Vec atilde_apply(const Vec& v, const Vec& x, Alpha alpha);

}  // namespace ckn
