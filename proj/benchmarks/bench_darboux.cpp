#include "darboux/classify2d.hpp"
#include "darboux/hierarchy.hpp"

#include <benchmark/benchmark.h>

using namespace darboux;

namespace {

void BM_SolveRecursionScalar(benchmark::State& state) {
    auto p = make_problem(builtin_algebra("t1"));
    for (auto _ : state) benchmark::DoNotOptimize(solve_recursion(p, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SolveRecursionScalar)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_SolveRecursionBuiltin(benchmark::State& state, const char* name) {
    auto p = make_problem(builtin_algebra(name));
    for (auto _ : state) benchmark::DoNotOptimize(solve_recursion(p, 3));
}
BENCHMARK_CAPTURE(BM_SolveRecursionBuiltin, t2, "t2")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SolveRecursionBuiltin, t3, "t3")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SolveRecursionBuiltin, example4d, "example4d")->Unit(benchmark::kMillisecond);

void BM_VerifyChain(benchmark::State& state) {
    auto p = make_problem(builtin_algebra("t2"));
    auto sol = solve_recursion(p, 5);
    auto ops = chain_operators(p);
    for (auto _ : state) benchmark::DoNotOptimize(verify_chain(sol, ops.A, ops.B, 2));
}
BENCHMARK(BM_VerifyChain)->Unit(benchmark::kMillisecond);

void BM_DarbouxOperator(benchmark::State& state) {
    auto chart = MetricChart::affine(builtin_algebra("t3"));
    auto lower = christoffel(chart).lower;
    for (auto _ : state) benchmark::DoNotOptimize(build_darboux_operator(chart.g, lower, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_DarbouxOperator)->Arg(1)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_CompatibilityCheck(benchmark::State& state) {
    auto t = builtin_algebra("t2");
    auto chart = MetricChart::affine(t);
    SMatrix h = t.h.map([](const Rational& x) { return ScalarField(x); });
    for (auto _ : state) benchmark::DoNotOptimize(compatibility_check(chart, h, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CompatibilityCheck)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Normalize(benchmark::State& state, const char* family) {
    std::vector<ScalarField> params;
    for (std::size_t i = 0; i < family_parameters(family).size(); ++i) params.emplace_back(static_cast<long>(i + 2));
    auto op = rebuild(make_normal_form(family, params));
    RMatrix m(2, 2);
    m(0, 0) = 2;
    m(0, 1) = 1;
    m(1, 0) = 1;
    m(1, 1) = 1;
    AffineMap map{m, {Rational(1), Rational(-2)}};
    auto moved = transform_operator(op, map);
    for (auto _ : state) benchmark::DoNotOptimize(normalize(moved, map.c));
}
BENCHMARK_CAPTURE(BM_Normalize, f02, "02")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Normalize, f21, "21")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Normalize, f41, "41")->Unit(benchmark::kMillisecond);

void BM_HunterSaxton(benchmark::State& state) {
    auto t = builtin_algebra("example4d");
    for (auto _ : state) benchmark::DoNotOptimize(hs_equation(t));
}
BENCHMARK(BM_HunterSaxton)->Unit(benchmark::kMicrosecond);

void BM_EulerOperator(benchmark::State& state) {
    auto sol = solve_recursion(make_problem(builtin_algebra("t1")), 6);
    DiffPoly h = sol.density(1, 3);
    for (auto _ : state) benchmark::DoNotOptimize(variational_derivative(total_derivative(h), 1));
}
BENCHMARK(BM_EulerOperator)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
