#include <benchmark/benchmark.h>

#include "ckn/quadrature.hpp"
#include "ckn/testfns.hpp"

namespace {

using namespace ckn;

// |grad f_k|^2 |x|, the heaviest integrand the scans evaluate.
template <double (*Integrate)(const FieldEvaluator&, double, const ProductGrid&, RadialWindow)>
void BM_fk_gradient(benchmark::State& state) {
  GridSettings s;
  s.theta_resolution = static_cast<int>(state.range(0));
  s.phi_resolution = s.theta_resolution / 2;
  const ProductGrid grid = make_grid(s, 3, false);
  const ScalarField f = make_fk(8);
  auto integrand = [&f](const Vec& x) { return f.gradient(x).squaredNorm(); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(Integrate(integrand, 1.0, grid, f.support().window()));
  }
}

double parallel(const FieldEvaluator& f, double b, const ProductGrid& g, RadialWindow w) {
  return integrate(f, b, g, w);
}
double serial(const FieldEvaluator& f, double b, const ProductGrid& g, RadialWindow w) {
  return integrate_serial(f, b, g, w);
}

BENCHMARK(BM_fk_gradient<parallel>)->Name("integrate/fk_grad")->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fk_gradient<serial>)->Name("integrate_serial/fk_grad")->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

// Radial-only grid over the full graded rule (origin refinement and tail).
void BM_radial_gaussian(benchmark::State& state) {
  const ProductGrid grid = make_grid(GridSettings{}, 3, true);
  const ScalarField g = make_radial(RadialKind::gaussian, {}, 3, 2.0);
  auto integrand = [&g](const Vec& x) { return g.value(x) * g.value(x); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(state.range(0) ? integrate(integrand, 3.0, grid, g.support().window())
                                            : integrate_serial(integrand, 3.0, grid, g.support().window()));
  }
}
BENCHMARK(BM_radial_gaussian)->Name("radial_only/gaussian")->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
