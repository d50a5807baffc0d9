#include <gtest/gtest.h>

#include <gsl/gsl_integration.h>

#include <cmath>
#include <numbers>

#include "ckn/constants.hpp"
#include "ckn/errors.hpp"
#include "ckn/functionals.hpp"

namespace ckn {
namespace {

constexpr double kPi = std::numbers::pi;

// Best constant K in ||f||_{np/(n-p)} <= K ||grad f||_p (Talenti, Aubin).
double talenti(double n, double p) {
  const double g = std::tgamma(1 + n / 2) * std::tgamma(n) /
                   (std::tgamma(n / p) * std::tgamma(1 + n - n / p));
  return std::pow(kPi, -0.5) * std::pow(n, -1 / p) * std::pow((p - 1) / (n - p), 1 - 1 / p) *
         std::pow(g, 1 / n);
}

struct Power {
  double q;
  bool gradient;
};

// Profile (1 + r^2)^{-2/3} in R^3; integrand of the q-th power (or of |f'|^q) times r^2.
double dd_integrand(double r, void* params) {
  const auto* pw = static_cast<Power*>(params);
  const double v = pw->gradient ? (4.0 / 3.0) * r * std::pow(1 + r * r, -5.0 / 3.0)
                                : std::pow(1 + r * r, -2.0 / 3.0);
  return std::pow(v, pw->q) * r * r;
}

double radial_integral(Power pw) {
  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(2000);
  gsl_function fn{&dd_integrand, &pw};
  double result = 0.0, error = 0.0;
  gsl_integration_qagiu(&fn, 0.0, 0.0, 1e-13, 2000, ws, &result, &error);
  gsl_integration_workspace_free(ws);
  return 4 * kPi * result;
}

TEST(EstimateM, MatchesTalentiConstant) {
  const CknParams sobolev(3, 2.0, 3.5, 1.0, Alpha(0.0));
  const double oracle = talenti(3, 2);
  EXPECT_NEAR(oracle, 0.42726054286, 1e-10);
  for (RadialKind family : {RadialKind::gns_power, RadialKind::sobolev_extremal}) {
    const ConstantEstimate est = estimate_M(sobolev, family, GridSettings{});
    EXPECT_TRUE(est.converged);
    EXPECT_NEAR(est.value, oracle, 1e-4 * oracle) << to_string(family);
  }
}

TEST(EstimateM, TalentiForOtherExponents) {
  const CknParams params(3, 1.5, 2.0, 1.0, Alpha(0.0));
  const ConstantEstimate est = estimate_M(params, RadialKind::sobolev_extremal, GridSettings{});
  EXPECT_NEAR(est.value, talenti(3, 1.5), 1e-4 * talenti(3, 1.5));
}

// With r = 5, s = 3.5 and p = 2 the optimizer is (1 + |x|^2)^{-2/3}; its
// quotient is computed here with adaptive GSL quadrature on [0, inf).
TEST(EstimateM, FindsKnownGnsOptimizer) {
  const CknParams params(3, 2.0, 3.5, 0.72, Alpha(0.0));
  const ConstantEstimate est = estimate_M(params, RadialKind::gns_power, GridSettings{});
  EXPECT_TRUE(est.converged);
  EXPECT_NEAR(est.optimizer.exponent, 2.0 / 3.0, 1e-4);
  const double lhs = std::pow(radial_integral({5.0, false}), 1 / 5.0);
  const double s = std::pow(radial_integral({3.5, false}), 1 / 3.5);
  const double g = std::pow(radial_integral({2.0, true}), 1 / 2.0);
  const double oracle = lhs / (std::pow(s, 0.28) * std::pow(g, 0.72));
  EXPECT_NEAR(est.value, oracle, 1e-8 * oracle);
}

TEST(EstimateM, TraceRecordsProgress) {
  NelderMeadOptions opts;
  opts.record_trace = true;
  const ConstantEstimate est =
      estimate_M(CknParams(3, 2.0, 3.5, 0.72, Alpha(1.0)), RadialKind::gaussian, GridSettings{}, opts);
  ASSERT_FALSE(est.trace.empty());
  EXPECT_DOUBLE_EQ(est.trace.back(), est.value);
  for (size_t i = 1; i < est.trace.size(); ++i) EXPECT_GE(est.trace[i], est.trace[i - 1]);
}

TEST(Constants, AAlphaFormula) {
  EXPECT_DOUBLE_EQ(a_alpha(Alpha(1.0), 0.72), 1.0);
  EXPECT_DOUBLE_EQ(a_alpha(Alpha(0.0), 0.72), 1.0);
  EXPECT_NEAR(a_alpha(Alpha(-0.5), 0.5), std::sqrt(2.0), 1e-15);
}

TEST(Constants, SharpAndRadial) {
  const double M = 0.5;
  const CknParams pos(3, 2.0, 3.5, 0.72, Alpha(1.0));
  EXPECT_NEAR(sharp_constant(pos, M), std::pow(2.0, 0.24) * M, 1e-15);
  EXPECT_NEAR(radial_sharp_constant(pos, M), std::pow(2.0, 0.24 - 0.72) * M, 1e-15);
  EXPECT_NEAR(sharp_constant(pos, M) / radial_sharp_constant(pos, M), std::pow(2.0, 0.72), 1e-14);
  const CknParams neg = pos.with_alpha(Alpha(-0.5));
  EXPECT_NEAR(sharp_constant(neg, M), radial_sharp_constant(neg, M), 1e-15);
  const CknParams zero = pos.with_alpha(Alpha(0.0));
  EXPECT_DOUBLE_EQ(sharp_constant(zero, M), M);
  EXPECT_THROW(sharp_constant(pos, 0.0), ArgumentError);
}

TEST(Richardson, ExactOnInverseSquareModel) {
  std::vector<std::pair<int, double>> v;
  for (int k : {4, 8, 16}) v.emplace_back(k, 0.75 - 3.0 / (k * k));
  EXPECT_NEAR(richardson_limit_inv_k2(v), 0.75, 1e-14);
  EXPECT_THROW(richardson_limit_inv_k2({}), ArgumentError);
}

TEST(PowersOfTwo, UpToLimit) {
  EXPECT_EQ(powers_of_two_up_to(32), (std::vector<int>{1, 2, 4, 8, 16, 32}));
  EXPECT_EQ(powers_of_two_up_to(5), (std::vector<int>{1, 2, 4}));
  EXPECT_THROW(powers_of_two_up_to(0), ArgumentError);
}

TEST(SymmetryScan, RejectsBadInputs) {
  GridSettings s;
  s.theta_resolution = 16;
  s.phi_resolution = 8;
  const ProductGrid full = make_grid(s, 3, false);
  const std::vector<int> too_big = {1, 8};
  const std::vector<int> unsorted = {2, 1};
  EXPECT_THROW(symmetry_scan(Alpha(1.0), 2.0, too_big, full), ArgumentError);
  EXPECT_THROW(symmetry_scan(Alpha(1.0), 2.0, unsorted, full), ArgumentError);
  const std::vector<int> ok = {1};
  EXPECT_THROW(symmetry_scan(Alpha(1.0), 2.0, ok, make_grid(s, 3, true)), ArgumentError);
}

// Two-resolution check behind the frozen acceptance thresholds.
TEST(SymmetryScan, StableUnderRefinement) {
  const std::vector<int> ks = {16, 32};
  const SymmetryScan base = symmetry_scan(Alpha(1.0), 2.0, ks, make_grid(GridSettings{}, 3, false));
  const SymmetryScan fine =
      symmetry_scan(Alpha(1.0), 2.0, ks, make_grid(GridSettings{}.refined(), 3, false));
  for (size_t i = 0; i < ks.size(); ++i) {
    EXPECT_NEAR(base.values[i].second, fine.values[i].second, 1e-8);
  }
  EXPECT_GE(base.values.back().second, 0.99);
  EXPECT_NEAR(base.extrapolated_limit, 1.0, 1e-3);
  EXPECT_NEAR(base.extrapolated_limit, fine.extrapolated_limit, 1e-8);
}

void expect_all_passed(const TheoremReport& r) {
  for (const TheoremCheck& c : r.checks) {
    EXPECT_TRUE(c.passed) << c.id << ": measured " << c.measured << " expected " << c.expected
                          << " " << c.note;
  }
  EXPECT_TRUE(r.all_passed);
}

TEST(Verify, PositiveAlpha) {
  const TheoremReport r = verify_theorems(CknParams(3, 2.0, 3.5, 0.72, Alpha(1.0)), GridSettings{});
  expect_all_passed(r);
  bool saw_gap = false;
  for (const TheoremCheck& c : r.checks) saw_gap = saw_gap || c.id == "constant-gap";
  EXPECT_TRUE(saw_gap);
}

TEST(Verify, NegativeAlpha) {
  expect_all_passed(verify_theorems(CknParams(3, 2.0, 3.5, 0.72, Alpha(-0.5)), GridSettings{}));
}

TEST(Verify, ZeroAlphaAndOtherDimension) {
  expect_all_passed(verify_theorems(CknParams(3, 2.0, 3.5, 0.72, Alpha(0.0)), GridSettings{}));
  const TheoremReport r4 =
      verify_theorems(CknParams(4, 2.0, 3.0, 0.5, Alpha(1.0)), GridSettings{}, RadialKind::gaussian);
  expect_all_passed(r4);
  bool skipped = false;
  for (const TheoremCheck& c : r4.checks) skipped = skipped || c.skipped;
  EXPECT_TRUE(skipped);
}

}  // namespace
}  // namespace ckn
