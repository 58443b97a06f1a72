// Microbenchmarks for the hot paths: Chebyshev evaluation, word evaluation,
// Riley evaluation/solves, phase computation and full certificate solves.
#include <benchmark/benchmark.h>

#include <complex>

#include "ordslope/representation.hpp"
#include "ordslope/riley.hpp"
#include "ordslope/slopes.hpp"
#include "ordslope/word.hpp"

using namespace ordslope;

namespace {

void BM_cheb_pair(benchmark::State& state) {
  const long long j = state.range(0);
  const Complex v = std::polar(1.0, 0.7);
  for (auto _ : state) {
    auto p = cheb_pair<Complex>(j, v);
    benchmark::DoNotOptimize(p);
  }
  state.SetComplexityN(j);
}
BENCHMARK(BM_cheb_pair)->Range(8, 4096)->Complexity();

void BM_evaluate_word(benchmark::State& state) {
  const KnotSpec spec = make_knot_spec(Family::even_minus, int(state.range(0)), int(state.range(0)));
  const Presentation pres = build_presentation(spec);
  const Representation rep = build_representation(spec, 0.8 * even_theta0(spec.m, spec.n));
  for (auto _ : state) {
    Matrix2C w = evaluate_word(pres.w, rep.rho_a, rep.rho_b);
    benchmark::DoNotOptimize(w);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_evaluate_word)->DenseRange(1, 4)->Complexity(benchmark::oN);

void BM_riley_eval(benchmark::State& state) {
  const KnotSpec spec = make_knot_spec(Family::odd_minus, 2, 3);
  for (auto _ : state) {
    double r = riley_eval(spec, 3.1, 2.4);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_riley_eval);

void BM_solve_y_of_x(benchmark::State& state) {
  for (auto _ : state) {
    double y = solve_y_of_x(2, 2, 3.9);
    benchmark::DoNotOptimize(y);
  }
}
BENCHMARK(BM_solve_y_of_x);

void BM_solve_x_of_y(benchmark::State& state) {
  const KnotSpec spec = make_knot_spec(Family::odd_plus, 1, 2);
  for (auto _ : state) {
    double x = solve_x_of_y(spec, 2.3);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_solve_x_of_y);

void BM_phi(benchmark::State& state) {
  const KnotSpec spec = make_knot_spec(Family::even_minus, 1, 1);
  for (auto _ : state) {
    double p = phi(spec, Branch::even_low, 0.3);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_phi);

void BM_solve_slope(benchmark::State& state) {
  const KnotSpec spec = make_knot_spec(Family::odd_minus, 1, 2);
  const Rational r = make_rational(22, 7);
  for (auto _ : state) {
    SurgeryCertificate cert = solve_slope(spec, r);
    benchmark::DoNotOptimize(cert);
  }
}
BENCHMARK(BM_solve_slope);

}  // namespace

BENCHMARK_MAIN();
