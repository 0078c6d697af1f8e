#include <benchmark/benchmark.h>

#include "g2lap/experiments.hpp"
#include "g2lap/ledger.hpp"
#include "g2lap/solve.hpp"

using namespace g2lap;

namespace {

KForm<Rational> phi0() {
  using F = KForm<Rational>;
  return F::basis({1, 2, 3}) + F::basis({1, 4, 5}) + F::basis({1, 6, 7}) + F::basis({2, 4, 6}) -
         F::basis({2, 5, 7}) - F::basis({3, 4, 7}) - F::basis({3, 5, 6});
}

void BM_WedgeExact(benchmark::State& state) {
  const auto p = phi0();
  const auto a = interior(1, p);
  for (auto _ : state) benchmark::DoNotOptimize(wedge(a, a, p));
}
BENCHMARK(BM_WedgeExact);

void BM_HodgeStarExact(benchmark::State& state) {
  const auto p = phi0();
  const auto g = unit_metric<Rational>(BlockStructure::whole());
  for (auto _ : state) benchmark::DoNotOptimize(hodge_star(p, g, BlockStructure::whole()));
}
BENCHMARK(BM_HodgeStarExact);

void BM_LaplacianExact(benchmark::State& state) {
  ParamPoint<Rational> p;
  p.symmetry = Symmetry::Sp2U1;
  p.A = Rational(1, 2);
  p.B = Rational(2, 3);
  p.R = Rational(3, 2);
  p.cos_alpha = Rational(3, 5);
  p.sin_alpha = Rational(4, 5);
  for (auto _ : state) benchmark::DoNotOptimize(laplacian_coefficients(p));
}
BENCHMARK(BM_LaplacianExact);

void BM_LaplacianFloat(benchmark::State& state) {
  const auto p = make_point(Symmetry::Sp2U1, std::vector<double>{0.7, 1.1, 1.3, 0.4});
  for (auto _ : state) benchmark::DoNotOptimize(laplacian_coefficients(p));
}
BENCHMARK(BM_LaplacianFloat);

void BM_ClosedFormFloat(benchmark::State& state) {
  const auto p = make_point(Symmetry::Sp2U1, std::vector<double>{0.7, 1.1, 1.3, 0.4});
  for (auto _ : state) benchmark::DoNotOptimize(closed_form_laplacian(p));
}
BENCHMARK(BM_ClosedFormFloat);

void BM_PoissonSp2U1(benchmark::State& state) {
  const auto p = make_point(Symmetry::Sp2U1, std::vector<double>{1.2, 0.9, 0.92, 0.03});
  const auto target = closed_form_laplacian(p);
  const auto seed = make_point(Symmetry::Sp2U1, std::vector<double>{1.2, 0.9, 0.9, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(poisson_solve(target, Symmetry::Sp2U1, seed));
}
BENCHMARK(BM_PoissonSp2U1);

void BM_RayImage(benchmark::State& state) {
  RayImageOptions opt;
  opt.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ray_image(opt));
}
BENCHMARK(BM_RayImage)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Ledger(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(formula_ledger());
}
BENCHMARK(BM_Ledger)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
