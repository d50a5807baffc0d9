#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <random>

#include "ckn/core_maps.hpp"
#include "ckn/errors.hpp"

namespace ckn {
namespace {

Vec vec3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

TEST(Alpha, RejectsMinusOneAndBelow) {
  EXPECT_THROW(Alpha(-1.0), ArgumentError);
  EXPECT_THROW(Alpha(-2.0), ArgumentError);
  EXPECT_THROW(Alpha(std::nan("")), ArgumentError);
  EXPECT_NO_THROW(Alpha(-0.999));
  EXPECT_DOUBLE_EQ(Alpha(0.5).one_plus(), 1.5);
}

TEST(PhiMap, ScalesByNormPower) {
  const Vec x = vec3(3.0, 0.0, 4.0);  // |x| = 5
  const Vec y = phi_map(x, Alpha(1.0));
  EXPECT_NEAR(y[0], 15.0, 1e-14);
  EXPECT_NEAR(y[2], 20.0, 1e-14);
  EXPECT_NEAR(y.norm(), 25.0, 1e-13);
}

TEST(PhiMap, InverseRoundTrips) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  for (double a : {-0.9, -0.5, 0.0, 0.7, 2.5}) {
    for (int i = 0; i < 20; ++i) {
      Vec x(4);
      for (int d = 0; d < 4; ++d) x[d] = normal(rng);
      const Vec back = inverse_phi(phi_map(x, Alpha(a)), Alpha(a));
      EXPECT_LT((back - x).norm(), 1e-12 * x.norm());
    }
  }
}

TEST(PhiMap, OriginIsADomainError) {
  const Vec zero = Vec::Zero(3);
  EXPECT_THROW(dphi_matrix(zero, Alpha(1.0)), DomainError);
  EXPECT_THROW(analytic_eigen(zero, Alpha(1.0)), DomainError);
}

// Central differences of phi reproduce the closed-form differential.
TEST(Dphi, MatchesFiniteDifferences) {
  const Vec x = vec3(0.3, -1.2, 0.8);
  for (double a : {-0.5, 1.0, 2.0}) {
    const Eigen::MatrixXd m = dphi_matrix(x, Alpha(a));
    const double h = 1e-6;
    for (int j = 0; j < 3; ++j) {
      Vec xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      const Vec col = (phi_map(xp, Alpha(a)) - phi_map(xm, Alpha(a))) / (2 * h);
      for (int i = 0; i < 3; ++i) EXPECT_NEAR(m(i, j), col[i], 1e-8);
    }
  }
}

TEST(Dphi, ApplyAgreesWithMatrix) {
  const Vec x = vec3(1.0, 2.0, -0.5);
  const Vec v = vec3(-0.3, 0.4, 1.1);
  const Alpha a(0.8);
  EXPECT_LT((dphi_matrix(x, a) * v - dphi_apply(x, v, a)).norm(), 1e-14);
}

// Oracle: Eigen's symmetric eigensolver and LU determinant.
TEST(AnalyticEigen, MatchesNumericSolverOnRandomPoints) {
  std::mt19937_64 rng(20240611);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> radius(0.1, 10.0), alpha(-0.9, 3.0);
  std::uniform_int_distribution<int> dim(2, 6);
  for (int i = 0; i < 200; ++i) {
    const int n = dim(rng);
    Vec x(n);
    for (int d = 0; d < n; ++d) x[d] = normal(rng);
    x *= radius(rng) / x.norm();
    const Alpha a(alpha(rng));
    const EigenSummary e = analytic_eigen(x, a);
    const Eigen::MatrixXd m = dphi_matrix(x, a);

    std::vector<double> expected(n, e.lambda_tangential);
    expected[0] = e.lambda_radial;
    std::sort(expected.begin(), expected.end());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    for (int k = 0; k < n; ++k) {
      EXPECT_NEAR(solver.eigenvalues()[k], expected[k], 1e-10 * std::abs(expected[k]));
    }
    EXPECT_NEAR(m.determinant(), e.jacobian_det, 1e-10 * e.jacobian_det);

    // Radial eigenvector is x/|x|.
    const Vec mv = m * e.eigenvector_radial;
    EXPECT_LT((mv - e.lambda_radial * e.eigenvector_radial).norm(), 1e-10 * e.lambda_radial);
    EXPECT_NEAR(std::abs(e.eigenvector_radial.dot(x)), x.norm(), 1e-12 * x.norm());
  }
}

TEST(AnalyticEigen, ClosedFormValues) {
  const Vec x = vec3(0.0, 2.0, 0.0);
  const EigenSummary e = analytic_eigen(x, Alpha(1.0));
  EXPECT_DOUBLE_EQ(e.lambda_radial, 4.0);
  EXPECT_DOUBLE_EQ(e.lambda_tangential, 2.0);
  EXPECT_DOUBLE_EQ(e.jacobian_det, 2.0 * 8.0);
}

TEST(AnalyticEigen, AlphaZeroIsIdentity) {
  const Vec x = vec3(0.4, -0.2, 3.0);
  const Eigen::MatrixXd m = dphi_matrix(x, Alpha(0.0));
  EXPECT_LT((m - Eigen::MatrixXd::Identity(3, 3)).norm(), 1e-15);
  const EigenSummary e = analytic_eigen(x, Alpha(0.0));
  EXPECT_DOUBLE_EQ(e.lambda_radial, 1.0);
  EXPECT_DOUBLE_EQ(e.jacobian_det, 1.0);
}

TEST(CharPoly, FactorizationOnRandomTriples) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> radius(0.1, 10.0), alpha(-0.9, 3.0), unit(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    Vec x(3);
    for (int d = 0; d < 3; ++d) x[d] = normal(rng);
    x *= radius(rng) / x.norm();
    const Alpha a(alpha(rng));
    const EigenSummary e = analytic_eigen(x, a);
    const double top = std::max(e.lambda_radial, e.lambda_tangential);
    const double lambda = -top + 3.0 * top * unit(rng);
    const double det =
        (dphi_matrix(x, a) - lambda * Eigen::MatrixXd::Identity(3, 3)).determinant();
    EXPECT_LE(std::abs(char_poly_residual(x, a, lambda)), 1e-9 * std::max(1.0, std::abs(det)));
  }
}

TEST(CharPoly, VanishesAtEigenvalues) {
  const Vec x = vec3(1.5, 0.5, -0.5);
  const Alpha a(1.3);
  const EigenSummary e = analytic_eigen(x, a);
  EXPECT_NEAR(char_poly_factored(x, a, e.lambda_radial), 0.0, 1e-12);
  EXPECT_NEAR(char_poly_factored(x, a, e.lambda_tangential), 0.0, 1e-12);
}

TEST(CharPoly, DetectsPerturbedMatrix) {
  const Vec x = vec3(1.0, 1.0, 1.0);
  const Alpha a(1.0);
  Eigen::MatrixXd m = dphi_matrix(x, a);
  m(0, 0) += 1e-3;
  EXPECT_GT(std::abs(char_poly_residual(m, x, a, 0.1)), 1e-6);
}

TEST(Atilde, ScalesOnlyTheRadialComponent) {
  const Vec x = vec3(0.0, 0.0, 2.0);
  const Alpha a(1.0);
  const Vec radial = vec3(0.0, 0.0, 3.0);
  const Vec tangential = vec3(1.0, -2.0, 0.0);
  EXPECT_LT((atilde_apply(radial, x, a) - radial / 2.0).norm(), 1e-15);
  EXPECT_LT((atilde_apply(tangential, x, a) - tangential).norm(), 1e-15);
  EXPECT_LT((atilde_apply(radial + tangential, x, a) - (radial / 2.0 + tangential)).norm(), 1e-15);
}

}  // namespace
}  // namespace ckn
