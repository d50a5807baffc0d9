#include "ckn/core_maps.hpp"

#include <Eigen/LU>

#include <cmath>
#include <string>

#include "ckn/errors.hpp"

namespace ckn {
namespace {

double checked_norm(const Vec& x) {
  const double norm = x.norm();
  if (!(norm > 0.0)) {
    throw DomainError("point must be nonzero (the differential is undefined at the origin)");
  }
  return norm;
}

}  // namespace

Alpha::Alpha(double value) : value_(value) {
  if (!(value > -1.0) || !std::isfinite(value)) {
    throw ArgumentError("alpha must be finite and > -1, got " + std::to_string(value));
  }
}

Vec phi_map(const Vec& x, Alpha alpha) {
  const double norm = checked_norm(x);
  return x * std::pow(norm, alpha.value());
}

Vec inverse_phi(const Vec& y, Alpha alpha) {
  const double norm = checked_norm(y);
  return y * std::pow(norm, -alpha.value() / alpha.one_plus());
}

Eigen::MatrixXd dphi_matrix(const Vec& x, Alpha alpha) {
  const double norm = checked_norm(x);
  const double a = alpha.value();
  const double diag = std::pow(norm, a);
  const double outer = a * std::pow(norm, a - 2.0);
  const Eigen::Index n = x.size();
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double entry = outer * x[i] * x[j] + (i == j ? diag : 0.0);
      m(i, j) = entry;
      m(j, i) = entry;
    }
  }
  return m;
}

Vec dphi_apply(const Vec& x, const Vec& v, Alpha alpha) {
  const double norm = checked_norm(x);
  const double a = alpha.value();
  return std::pow(norm, a) * v + (a * std::pow(norm, a - 2.0) * x.dot(v)) * x;
}

EigenSummary analytic_eigen(const Vec& x, Alpha alpha) {
  const double norm = checked_norm(x);
  const double tangential = std::pow(norm, alpha.value());
  const auto n = static_cast<double>(x.size());
  return EigenSummary{
      .lambda_radial = alpha.one_plus() * tangential,
      .lambda_tangential = tangential,
      .eigenvector_radial = x / norm,
      .jacobian_det = alpha.one_plus() * std::pow(norm, alpha.value() * n),
  };
}

double char_poly_factored(const Vec& x, Alpha alpha, double lambda) {
  const double norm = checked_norm(x);
  const double a = alpha.value();
  const auto n = static_cast<double>(x.size());
  const double norm2 = norm * norm;
  const double shifted = lambda * std::pow(norm, 2.0 - a);
  return std::pow(norm, n * (a - 2.0)) * std::pow(norm2 - shifted, n - 1.0) *
         (alpha.one_plus() * norm2 - shifted);
}

double char_poly_residual(const Eigen::MatrixXd& matrix, const Vec& x, Alpha alpha,
                          double lambda) {
  if (matrix.rows() != x.size() || matrix.cols() != x.size()) {
    throw ArgumentError("matrix size does not match the point dimension");
  }
  const Eigen::MatrixXd shifted =
      matrix - lambda * Eigen::MatrixXd::Identity(matrix.rows(), matrix.cols());
  return shifted.determinant() - char_poly_factored(x, alpha, lambda);
}

double char_poly_residual(const Vec& x, Alpha alpha, double lambda) {
  return char_poly_residual(dphi_matrix(x, alpha), x, alpha, lambda);
}

Vec atilde_apply(const Vec& v, const Vec& x, Alpha alpha) {
  const double norm = checked_norm(x);
  const Vec sigma = x / norm;
  return v + ((1.0 / alpha.one_plus() - 1.0) * v.dot(sigma)) * sigma;
}

}  // namespace ckn
